#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bandspec/symbol.hpp"

namespace bandspec {

struct JordanCurveSamples;

struct ToeplitzSection {
    int n = 0;
    Symbol symbol;
    Eigen::MatrixXcd entries;  // (i,j) = a_{i-j}
};

ToeplitzSection toeplitz_section(const Symbol& b, int n);

enum class Precision { float64, double_double };

struct EigenReport {
    int n = 0;
    std::vector<cplx> eigenvalues;  // sorted by (Re, Im)
    double max_imag = 0.0;
    double residual = 0.0;          // max sampled ||A v - lambda v|| / ||A|| on the balanced matrix
    double balance_radius = 1.0;    // eigenvalues computed for T_n(b(R z)), similar to T_n(b)
    Precision precision = Precision::float64;
    double max_imag_float64 = 0.0;  // best max |Im| among double-precision runs
    bool hermitian = false;         // balanced matrix was Hermitian
};

struct EigenOptions {
    double real_tol = 0.0;   // stop escalating once max_imag <= real_tol (0: never escalate)
    bool allow_escalation = true;
    int residual_samples = 2;
};

// Dense eigenvalues of T_n(b). Non-normal real sections are first similarity-scaled by
// diag(R^i); if the result has |Im| above opts.real_tol the solve is repeated with other
// radii and then in double-double arithmetic, keeping the run with smallest max |Im|.
EigenReport eigenvalues(const ToeplitzSection& section, const EigenOptions& opts = {});
EigenReport eigenvalues(const Symbol& b, int n, const EigenOptions& opts = {});

// Radius R minimizing the mean |Im b(R e^{it})| relative to the mean |b|.
double balancing_radius(const Symbol& b);

// D_n = det T_n(b) for r = 1, n = 1..N
std::vector<cplx> hessenberg_det_sequence(const Symbol& b, int N);

// (1/n) tr T_n(b)^m using banded products
cplx trace_power_mean(const Symbol& b, int n, int m);

// <u, T_n(a) v> (conjugate-linear in u) as a contour integral over the curve.
// Node count doubles through the stored samples until two estimates agree to 1e-12.
cplx bilinear_form_curve(const Symbol& a, const std::vector<cplx>& u, const std::vector<cplx>& v,
                         const JordanCurveSamples& curve);

enum class RealityVerdict { real, nonreal, inconclusive };

struct RealityReport {
    std::vector<int> n_values;
    std::vector<double> max_imag;
    RealityVerdict verdict = RealityVerdict::real;
    int witness_n = 0;
    cplx witness_lambda{0.0, 0.0};
    double tol = 1e-10;
};

// Checks that T_n(a) has real spectrum for the given sizes (default: all n <= n_max when n_max <= 40,
// otherwise 1..40 followed by a geometric ladder to n_max). tol is relative to norm_bound.
RealityReport reality_check(const Symbol& a, int n_max, double tol = 1e-10,
                            std::optional<std::vector<int>> n_values = std::nullopt);

std::string verdict_name(RealityVerdict v);

}  // namespace bandspec
