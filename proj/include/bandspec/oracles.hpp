#pragma once
// Closed-form reference data for the explicitly solvable symbols, written from the displayed
// formulas only (no calls into the numerical pipeline), and the named fixture registry.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bandspec/symbol.hpp"

namespace bandspec {

struct OracleBundle {
    std::string name;
    Symbol symbol;
    std::function<mpq_class(int)> moment;                       // h_m
    std::optional<std::function<double(double)>> density;       // d mu / dx
    std::optional<std::function<double(double)>> distribution;  // F_mu
    std::optional<std::function<mpq_class(int)>> det_H;         // det H_n
    std::optional<std::function<mpq_class(int)>> det_Ht;        // det H~_n
    std::optional<std::function<mpq_class(int)>> jacobi_a2;     // a_k^2, k >= 1
    std::optional<std::function<mpq_class(int)>> jacobi_b;      // b_k, k >= 1
    std::optional<std::function<double(double)>> curve_rho;     // rho(t) on [-pi, pi]
    std::optional<std::function<double(double)>> curve_value;   // b(gamma(t))
    std::pair<double, double> support;
};

mpq_class binomial(long n, long k);

// b(z) = 1/z + a z, a > 0
OracleBundle oracle_tridiag(const mpq_class& a);
// b(z) = (1 + a z)^3 / z, a != 0; the density is the a = 4/27 formula rescaled to [0, 27a/4]
OracleBundle oracle_fourdiag(const mpq_class& a);
// b(z) = (1 + a z)^{r+s} / z^r; curve and support need a > 0, density only for
// (r,s) in {(1,1), (1,2), (2,2)}
OracleBundle oracle_example3(int r, int s, const mpq_class& a);

struct Fixture {
    std::string name;
    std::string description;
    Symbol symbol;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);  // throws std::invalid_argument

}  // namespace bandspec
