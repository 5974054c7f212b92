#pragma once
// Jacobi parameters of the moment functional and the monic orthogonal polynomials.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bandspec/moments.hpp"

namespace bandspec {

enum class JacobiMode { exact_hankel, chebyshev };

struct JacobiParameters {
    JacobiMode mode = JacobiMode::exact_hankel;
    // index 0 holds a_1, b_1
    std::vector<double> a;
    std::vector<double> b;
    std::optional<std::vector<mpq_class>> a2_exact;  // a_n^2
    std::optional<std::vector<mpq_class>> b_exact;
    int requested = 0;
    // chebyshev mode: number of leading (a_n, b_n) trusted to about 1e-12 relative
    int reliable = 0;
    int N() const { return static_cast<int>(a.size()); }
};

// N parameter pairs from h_0..h_{2N}.
// exact: a_n^2 = det H_{n-1} det H_{n+1} / det H_n^2, b_n = det H~_n / det H_n - det H~_{n-1} / det H_{n-1}.
// chebyshev: the modified Chebyshev algorithm on ordinary moments in double-double (N <= 40); the
// output is cut at the first index whose estimated error exceeds 1e-12 or where a_n^2 <= 0.
JacobiParameters jacobi_params(const MomentSequence& ms, int N, JacobiMode mode = JacobiMode::exact_hankel);

// monic p_n(x) from p_{n+1} = (x - b_{n+1}) p_n - a_n^2 p_{n-1}, p_{-1} = 0, p_0 = 1
double orthopoly_eval(const JacobiParameters& params, int n, double x);

std::string mode_name(JacobiMode m);

struct NevaiResiduals {
    int index = 0;
    double residual_a = 0.0;  // |a_N - (beta - alpha)/4|
    double residual_b = 0.0;  // |b_N - (alpha + beta)/2|
};
NevaiResiduals nevai_limits_check(const JacobiParameters& params, double alpha, double beta);

}  // namespace bandspec
