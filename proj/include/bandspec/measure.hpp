#pragma once
// The limiting measure mu: density and distribution from a traced curve, the Weyl m-function,
// Stieltjes-Perron inversion, Cauchy transform and eigenvalue histograms.
//
// On a polar curve gamma with values v(t) = b(gamma(t)), mu is the image of dt / pi on [0, pi]
// under v, so every integral against mu is computed as (1/pi) int_0^pi f(v(t)) dt.

#include <functional>
#include <utility>
#include <vector>

#include "bandspec/curve.hpp"
#include "bandspec/jacobi.hpp"
#include "bandspec/symbol.hpp"

namespace bandspec {

struct DensitySamples {
    Symbol symbol;
    JordanCurveSamples curve;
    double alpha = 0.0, beta = 0.0;  // support
    // per-branch samples at interior nodes, branch-major
    std::vector<double> x;
    std::vector<double> rho;
    std::vector<int> branch;  // 1-based partition interval
};

// K interior nodes per branch, equally spaced in x; rho is that branch's contribution
// (1/pi) / |d/dt b(gamma(t))| at the t with b(gamma(t)) = x.
DensitySamples density_from_curve(const Symbol& b, const JordanCurveSamples& curve, int K = 64);

// summed density at x (sum over branches whose image contains x)
double density_at(const DensitySamples& ds, double x);
// contribution of one branch (1-based), 0 outside its image
double branch_density_at(const DensitySamples& ds, int branch, double x);

// F_mu(b(gamma(t))) for a single monotone branch
double distribution_from_curve(const Symbol& b, const JordanCurveSamples& curve, double t);
// F_mu(x) = |{t in [0, pi] : v(t) <= x}| / pi, any number of branches
double distribution_at(const DensitySamples& ds, double x);

// (1/pi) int_0^pi f(v(t)) dt with the periodic trapezoid rule on the stored samples
double integrate_mu(const DensitySamples& ds, const std::function<double(double)>& f);
cplx integrate_mu_c(const DensitySamples& ds, const std::function<cplx(double)>& f);

// int f(x) rho(x) dx over [alpha, beta] in the x variable (adaptive Gauss-Kronrod per branch
// after an endpoint-flattening substitution)
double integrate_density(const DensitySamples& ds, const std::function<double(double)>& f);

struct OrthogonalityResult {
    double integral = 0.0;
    double expected = 0.0;
};
// int p_n p_m dmu against prod_{k<=n} a_k^2 (= det H_{n+1} / det H_n) when n = m, 0 otherwise
OrthogonalityResult orthogonality_check(const JacobiParameters& params, const DensitySamples& ds, int n, int m);

// int dmu(x) / (x - z); z must keep distance 1e-6 from the support
cplx cauchy_transform(const DensitySamples& ds, cplx z);

// (1/2pi) int dtheta / (b(rho e^{i theta}) - lambda) with rho = sqrt(|z_r| |z_{r+1}|)
cplx weyl_m(const Symbol& b, cplx lambda, double tol = 1e-12);

struct InversionResult {
    double density = 0.0;
    double error = 0.0;  // difference of the last two extrapolants
};
// Neville extrapolation to eps -> 0 of (1/pi) Im m(x + i eps), eps = eps0 2^{-k}, k < levels
InversionResult density_from_m(const Symbol& b, double x, double eps0, int levels = 7);
// eps0 from the distance of x to the exceptional points of b
double default_eps0(const Symbol& b, double x);

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<long> counts;
};
Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi);

// sup |F_n - F_mu| for the empirical distribution of the given points
double kolmogorov_distance(std::vector<double> points, const std::function<double(double)>& F);

}  // namespace bandspec
