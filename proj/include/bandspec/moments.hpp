#pragma once
// Moments h_m = [z^0] b^m, Hankel matrices and their determinants.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "bandspec/symbol.hpp"

namespace bandspec {

struct MomentSequence {
    std::vector<cplx> values;                   // h_0 .. h_M
    std::optional<std::vector<mpq_class>> exact;  // present for rational symbols
    int M() const { return static_cast<int>(values.size()) - 1; }
    bool is_exact() const { return exact.has_value(); }
};

// Constant coefficient of b^m for m = 0..M by repeated convolution; exact when b is rational
// unless force_float is set.
MomentSequence moments(const Symbol& b, int M, bool force_float = false);

using QMatrix = std::vector<std::vector<mpq_class>>;

struct HankelData {
    int n = 0;
    bool exact = false;
    // exact mode
    QMatrix H, Ht;
    mpq_class det_H, det_Ht;
    // float mode (also filled from the exact values in exact mode)
    Eigen::MatrixXcd Hf, Htf;
    cplx det_Hf, det_Htf;
};

// H_n = (h_{i+j-2}) and H~_n (H_{n+1} without row n and column n+1). Needs h_0..h_{2n-1}.
// Exact mode uses Bareiss elimination; float mode uses partial-pivot LU and refuses n > 14.
HankelData hankel(const MomentSequence& ms, int n);

struct PositivityReport {
    bool pass = true;
    int checked = 0;        // N
    int first_failure = 0;  // smallest n with H_n not positive definite (0 when pass)
    bool exact = false;
};

// Leading principal minors det H_1..det H_N (exact) or Cholesky of each H_n (float).
PositivityReport hankel_positivity(const MomentSequence& ms, int N);

struct MonteCarloEstimate {
    cplx estimate;
    double std_error = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

// Mean of (1/n!) prod_{i<j} (b(e^{it_j}) - b(e^{it_i}))^2 over uniform t in [-pi, pi]^n.
// Sample k draws from its own engine seeded by (seed, k), so results do not depend on threads.
MonteCarloEstimate hankel_det_mc(const Symbol& b, int n, long samples, std::uint64_t seed, int threads = 1);

}  // namespace bandspec
