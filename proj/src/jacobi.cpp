#include "bandspec/jacobi.hpp"

#include <cmath>
#include <stdexcept>

#include "bandspec/double_double.hpp"
#include "bandspec/qpoly.hpp"

namespace bandspec {

namespace {

dd to_dd(const mpq_class& q) {
    double hi = q.get_d();
    mpq_class rest = q - mpq_class(hi);
    return dd(hi) + dd(rest.get_d());
}

// modified Chebyshev algorithm with ordinary moments: alpha_k, beta_k for k = 0..n-1
void chebyshev(const std::vector<dd>& mu, int n, std::vector<dd>& alpha, std::vector<dd>& beta) {
    alpha.assign(n, dd(0.0));
    beta.assign(n, dd(0.0));
    std::vector<dd> prev(2 * n, dd(0.0)), cur(mu.begin(), mu.begin() + 2 * n), next(2 * n, dd(0.0));
    alpha[0] = mu[1] / mu[0];
    beta[0] = mu[0];
    for (int k = 1; k < n; ++k) {
        for (int l = k; l < 2 * n - k; ++l) next[l] = cur[l + 1] - alpha[k - 1] * cur[l] - beta[k - 1] * prev[l];
        alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
        beta[k] = next[k] / cur[k - 1];
        prev.swap(cur);
        cur.swap(next);
    }
}

}  // namespace

std::string mode_name(JacobiMode m) { return m == JacobiMode::exact_hankel ? "exact-hankel" : "chebyshev-extended"; }

JacobiParameters jacobi_params(const MomentSequence& ms, int N, JacobiMode mode) {
    if (N < 1) throw std::invalid_argument("jacobi_params: N must be >= 1");
    if (ms.M() < 2 * N) throw std::invalid_argument("jacobi_params: need moments h_0..h_{2N}");
    JacobiParameters jp;
    jp.mode = mode;
    jp.requested = N;
    if (mode == JacobiMode::exact_hankel) {
        if (!ms.is_exact()) throw std::invalid_argument("jacobi_params: exact mode needs rational moments");
        std::vector<mpq_class> dH(N + 2), dHt(N + 1);
        for (int n = 0; n <= N + 1; ++n) {
            if (n <= N) {
                HankelData hd = hankel(ms, n);
                dH[n] = hd.det_H;
                dHt[n] = hd.det_Ht;
            } else {
                // H_{N+1} only reaches h_{2N}; H~_{N+1} is not needed
                QMatrix H(n, std::vector<mpq_class>(n));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) H[i][j] = (*ms.exact)[i + j];
                dH[n] = exact_determinant(std::move(H));
            }
            if (n >= 1 && dH[n] <= 0)
                throw std::runtime_error("jacobi_params: det H_" + std::to_string(n) +
                                         " <= 0 in exact arithmetic; the moment problem has no positive solution");
        }
        std::vector<mpq_class> a2(N), bb(N);
        for (int n = 1; n <= N; ++n) {
            a2[n - 1] = dH[n - 1] * dH[n + 1] / (dH[n] * dH[n]);
            bb[n - 1] = dHt[n] / dH[n] - (n >= 2 ? mpq_class(dHt[n - 1] / dH[n - 1]) : mpq_class(0));
            jp.a.push_back(std::sqrt(a2[n - 1].get_d()));
            jp.b.push_back(bb[n - 1].get_d());
        }
        jp.a2_exact = a2;
        jp.b_exact = bb;
        jp.reliable = N;
        return jp;
    }

    if (N > 40) throw std::invalid_argument("jacobi_params: chebyshev mode supports N <= 40");
    const int n = N + 1;
    std::vector<dd> mu(2 * n), pert(2 * n);
    double unit;
    if (ms.is_exact()) {
        for (int l = 0; l < 2 * n && l <= ms.M(); ++l) mu[l] = to_dd((*ms.exact)[l]);
        unit = 1e-32;
    } else {
        for (int l = 0; l < 2 * n && l <= ms.M(); ++l) {
            if (std::abs(ms.values[l].imag()) > 1e-12 * (1.0 + std::abs(ms.values[l])))
                throw std::invalid_argument("jacobi_params: complex moments");
            mu[l] = dd(ms.values[l].real());
        }
        unit = 2.2e-16;
    }
    // the recurrence only touches mu_0..mu_{2N}; the last entry is padding
    if (ms.M() < 2 * n - 1) mu[2 * n - 1] = dd(0.0);
    const double delta = 1e-26;
    // relative perturbation added in dd (1 + 1e-26 would round to 1 in double)
    for (int l = 0; l < 2 * n; ++l) pert[l] = mu[l] + mu[l] * dd(((l % 3) - 1) * delta);
    std::vector<dd> al, be, al2, be2;
    chebyshev(mu, n, al, be);
    chebyshev(pert, n, al2, be2);
    for (int k = 1; k <= N; ++k) {
        // a_k^2 = beta_k, b_k = alpha_{k-1}
        double a2 = to_double(be[k]);
        double scale = std::sqrt(std::abs(a2)) + std::abs(to_double(al[k - 1]));
        double err_a = std::abs(to_double(be[k] - be2[k])) / std::abs(a2) * unit / delta;
        double err_b = std::abs(to_double(al[k - 1] - al2[k - 1])) / scale * unit / delta;
        if (!(a2 > 0.0) || !(err_a <= 1e-12) || !(err_b <= 1e-12) || !std::isfinite(a2)) break;
        jp.a.push_back(std::sqrt(a2));
        jp.b.push_back(to_double(al[k - 1]));
    }
    jp.reliable = jp.N();
    return jp;
}

double orthopoly_eval(const JacobiParameters& params, int n, double x) {
    if (n < 0 || n > params.N()) throw std::invalid_argument("orthopoly_eval: n outside the parameter range");
    double pm = 0.0, p = 1.0;
    for (int k = 0; k < n; ++k) {
        double a2 = k == 0 ? 0.0 : params.a[k - 1] * params.a[k - 1];
        if (k > 0 && params.a2_exact) a2 = (*params.a2_exact)[k - 1].get_d();
        double next = (x - params.b[k]) * p - a2 * pm;
        pm = p;
        p = next;
    }
    return p;
}

NevaiResiduals nevai_limits_check(const JacobiParameters& params, double alpha, double beta) {
    if (params.N() == 0) throw std::invalid_argument("nevai_limits_check: no parameters");
    NevaiResiduals r;
    r.index = params.N();
    r.residual_a = std::abs(params.a.back() - (beta - alpha) / 4.0);
    r.residual_b = std::abs(params.b.back() - (alpha + beta) / 2.0);
    return r;
}

}  // namespace bandspec
