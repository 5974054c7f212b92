#include "bandspec/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bandspec/curve.hpp"
#include "bandspec/double_double.hpp"

namespace bandspec {

ToeplitzSection toeplitz_section(const Symbol& b, int n) {
    if (n < 1) throw std::invalid_argument("toeplitz_section: n must be >= 1");
    ToeplitzSection T;
    T.n = n;
    T.symbol = b;
    T.entries = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - b.hi()); j <= std::min(n - 1, i - b.lo()); ++j) T.entries(i, j) = b.coeff(i - j);
    return T;
}

namespace {

double imag_ratio(const Symbol& b, double R) {
    const int K = 128;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < K; ++j) {
        double t = std::numbers::pi * (j + 0.5) / K;
        cplx v = eval(b, std::polar(R, t));
        num += std::abs(v.imag());
        den += std::abs(v);
    }
    return den > 0 ? num / den : 0.0;
}

// radius making T_n(b(R z)) Hermitian, if one exists
std::optional<double> hermitian_radius(const Symbol& b) {
    int K = std::max(b.r(), b.s());
    double R = -1.0;
    for (int k = 1; k <= K; ++k) {
        double am = std::abs(b.coeff(-k)), ap = std::abs(b.coeff(k));
        if ((am == 0.0) != (ap == 0.0)) return std::nullopt;
        if (am == 0.0) continue;
        R = std::pow(am / ap, 1.0 / (2.0 * k));
        break;
    }
    if (R <= 0.0) return std::nullopt;
    double scale = norm_bound(b);
    if (std::abs(b.coeff(0).imag()) > 1e-14 * scale) return std::nullopt;
    for (int k = 1; k <= K; ++k) {
        cplx cm = b.coeff(-k) * std::pow(R, -k), cp = b.coeff(k) * std::pow(R, k);
        if (std::abs(cm - std::conj(cp)) > 1e-13 * scale) return std::nullopt;
    }
    return R;
}

template <class S>
std::vector<cplx> quasi_triangular_eigenvalues(const Eigen::Matrix<S, -1, -1>& T) {
    int n = static_cast<int>(T.rows());
    std::vector<cplx> ev;
    ev.reserve(n);
    int i = 0;
    while (i < n) {
        if (i == n - 1 || T(i + 1, i) == S(0.0)) {
            ev.emplace_back(static_cast<double>(T(i, i)), 0.0);
            ++i;
            continue;
        }
        S p = T(i, i), q = T(i + 1, i + 1), bb = T(i, i + 1), cc = T(i + 1, i);
        S mean = (p + q) / S(2.0);
        S half = (p - q) / S(2.0);
        S disc = half * half + bb * cc;
        if (disc >= S(0.0)) {
            S sq = sqrt(disc);
            ev.emplace_back(static_cast<double>(mean + sq), 0.0);
            ev.emplace_back(static_cast<double>(mean - sq), 0.0);
        } else {
            double im = static_cast<double>(sqrt(-disc));
            ev.emplace_back(static_cast<double>(mean), im);
            ev.emplace_back(static_cast<double>(mean), -im);
        }
        i += 2;
    }
    return ev;
}

double max_abs_imag(const std::vector<cplx>& ev) {
    double m = 0.0;
    for (auto& v : ev) m = std::max(m, std::abs(v.imag()));
    return m;
}

Eigen::MatrixXcd balanced_complex(const Symbol& b, int n, double R) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - b.hi()); j <= std::min(n - 1, i - b.lo()); ++j)
            A(i, j) = b.coeff(i - j) * std::pow(R, i - j);
    return A;
}

std::vector<cplx> solve_real_double(const Symbol& b, int n, double R) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - b.hi()); j <= std::min(n - 1, i - b.lo()); ++j)
            A(i, j) = b.coeff(i - j).real() * std::pow(R, i - j);
    Eigen::RealSchur<Eigen::MatrixXd> rs(A, false);
    if (rs.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration did not converge");
    return quasi_triangular_eigenvalues<double>(rs.matrixT());
}

std::vector<cplx> solve_real_dd(const Symbol& b, int n, double R) {
    using M = Eigen::Matrix<dd, -1, -1>;
    M A = M::Zero(n, n);
    std::vector<dd> c(b.hi() - b.lo() + 1);
    for (int k = b.lo(); k <= b.hi(); ++k) c[k - b.lo()] = b.coeff_dd(k) * pow(dd(R), k);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - b.hi()); j <= std::min(n - 1, i - b.lo()); ++j) A(i, j) = c[i - j - b.lo()];
    Eigen::RealSchur<M> rs(A, false);
    if (rs.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration did not converge");
    return quasi_triangular_eigenvalues<dd>(rs.matrixT());
}

double sampled_residual(const Eigen::MatrixXcd& A, const std::vector<cplx>& ev, int samples) {
    if (samples <= 0 || ev.empty()) return 0.0;
    int n = static_cast<int>(A.rows());
    double normA = A.cwiseAbs().rowwise().sum().maxCoeff();
    if (normA == 0.0) return 0.0;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::size_t idx = samples == 1 ? ev.size() / 2 : (ev.size() - 1) * s / (samples - 1);
        cplx lam = ev[idx];
        Eigen::MatrixXcd M = A;
        for (int i = 0; i < n; ++i) M(i, i) -= lam + cplx(1e-10 * normA, 1e-10 * normA);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
        Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n);
        for (int it = 0; it < 2; ++it) {
            x = lu.solve(x);
            double nx = x.norm();
            if (!(nx > 0) || !std::isfinite(nx)) break;
            x /= nx;
        }
        Eigen::VectorXcd r = A * x - lam * x;
        worst = std::max(worst, r.norm() / normA);
    }
    return worst;
}

void sort_eigenvalues(std::vector<cplx>& ev) {
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx c) {
        if (a.real() != c.real()) return a.real() < c.real();
        return a.imag() < c.imag();
    });
}

}  // namespace

double balancing_radius(const Symbol& b) {
    if (!b.is_banded()) return 1.0;
    if (auto h = hermitian_radius(b)) return *h;
    double u0 = std::pow(std::abs(b.coeff(b.lo())) / std::abs(b.coeff(b.hi())), 1.0 / (b.hi() - b.lo()));
    const int K = 97;
    double best = u0, bestv = std::numeric_limits<double>::infinity();
    for (int j = 0; j < K; ++j) {
        double R = u0 * std::exp(std::log(8.0) * (2.0 * j / (K - 1) - 1.0));
        double v = imag_ratio(b, R);
        if (v < bestv) {
            bestv = v;
            best = R;
        }
    }
    // golden-section refinement in log R
    double step = std::log(8.0) * 2.0 / (K - 1);
    double lo = std::log(best) - step, hi = std::log(best) + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = imag_ratio(b, std::exp(x1)), f2 = imag_ratio(b, std::exp(x2));
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = imag_ratio(b, std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = imag_ratio(b, std::exp(x2));
        }
    }
    return std::exp(0.5 * (lo + hi));
}

EigenReport eigenvalues(const ToeplitzSection& section, const EigenOptions& opts) {
    const Symbol& b = section.symbol;
    int n = section.n;
    EigenReport rep;
    rep.n = n;
    if (n < 1) throw std::invalid_argument("eigenvalues: n must be >= 1");
    double R = b.is_banded() ? balancing_radius(b) : 1.0;
    rep.balance_radius = R;

    if (b.is_banded() && hermitian_radius(b)) {
        Eigen::MatrixXcd A = balanced_complex(b, n, R);
        A = (0.5 * (A + A.adjoint())).eval();
        rep.hermitian = true;
        if (b.real_coefficients()) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.real(), Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues: symmetric solver failed");
            for (int i = 0; i < n; ++i) rep.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues: Hermitian solver failed");
            for (int i = 0; i < n; ++i) rep.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
        }
        rep.residual = sampled_residual(A, rep.eigenvalues, opts.residual_samples);
        sort_eigenvalues(rep.eigenvalues);
        return rep;
    }

    if (!b.real_coefficients()) {
        Eigen::MatrixXcd A = balanced_complex(b, n, R);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
        if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration did not converge");
        rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
        rep.max_imag = rep.max_imag_float64 = max_abs_imag(rep.eigenvalues);
        rep.residual = sampled_residual(A, rep.eigenvalues, opts.residual_samples);
        sort_eigenvalues(rep.eigenvalues);
        return rep;
    }

    std::vector<double> radii{R};
    if (b.is_banded())
        for (double f : {1.15, 1.3, 1.0 / 1.15, 1.5, 1.0 / 1.3}) radii.push_back(R * f);
    bool escalate = opts.allow_escalation && opts.real_tol > 0.0;

    auto better = [](double a, double c) { return a < c; };
    rep.eigenvalues = solve_real_double(b, n, R);
    rep.max_imag = rep.max_imag_float64 = max_abs_imag(rep.eigenvalues);
    if (escalate && rep.max_imag > opts.real_tol) {
        for (std::size_t k = 1; k < radii.size() && rep.max_imag > opts.real_tol; ++k) {
            auto ev = solve_real_double(b, n, radii[k]);
            double mi = max_abs_imag(ev);
            if (better(mi, rep.max_imag)) {
                rep.eigenvalues = std::move(ev);
                rep.max_imag = rep.max_imag_float64 = mi;
                rep.balance_radius = radii[k];
            }
        }
        // the dd runs start from the radius that did best in double
        std::stable_sort(radii.begin(), radii.end(), [&](double x, double y) {
            return std::abs(x - rep.balance_radius) < std::abs(y - rep.balance_radius);
        });
        bool first_dd = true;
        for (std::size_t k = 0; k < radii.size() && rep.max_imag > opts.real_tol; ++k) {
            auto ev = solve_real_dd(b, n, radii[k]);
            double mi = max_abs_imag(ev);
            if (first_dd || better(mi, rep.max_imag)) {
                rep.eigenvalues = std::move(ev);
                rep.max_imag = mi;
                rep.balance_radius = radii[k];
                rep.precision = Precision::double_double;
            }
            first_dd = false;
        }
    }
    if (opts.residual_samples > 0)
        rep.residual = sampled_residual(balanced_complex(b, n, rep.balance_radius), rep.eigenvalues,
                                        opts.residual_samples);
    sort_eigenvalues(rep.eigenvalues);
    return rep;
}

EigenReport eigenvalues(const Symbol& b, int n, const EigenOptions& opts) {
    return eigenvalues(toeplitz_section(b, n), opts);
}

std::vector<cplx> hessenberg_det_sequence(const Symbol& b, int N) {
    if (b.lo() != -1) throw std::invalid_argument("hessenberg_det_sequence: requires r = 1");
    if (N < 1) return {};
    cplx am1 = b.coeff(-1);
    std::vector<cplx> D(N + 1);
    D[0] = 1.0;
    std::vector<cplx> w(N);  // (-a_{-1})^k a_k
    cplx p = 1.0;
    for (int k = 0; k < N; ++k) {
        w[k] = p * b.coeff(k);
        p *= -am1;
    }
    for (int n = 1; n <= N; ++n) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) s += w[k] * D[n - k - 1];
        D[n] = s;
    }
    return std::vector<cplx>(D.begin() + 1, D.end());
}

namespace {

struct Band {
    int n = 0, klo = 0, khi = 0;  // offsets k = i - j in [klo, khi]
    std::vector<cplx> d;          // d[i * w + (k - klo)]
    int w() const { return khi - klo + 1; }
    cplx get(int i, int k) const { return d[static_cast<std::size_t>(i) * w() + (k - klo)]; }
    cplx& at(int i, int k) { return d[static_cast<std::size_t>(i) * w() + (k - klo)]; }
};

Band band_of(const Symbol& b, int n) {
    Band B;
    B.n = n;
    B.klo = std::max(b.lo(), -(n - 1));
    B.khi = std::min(b.hi(), n - 1);
    if (B.klo > B.khi) B.klo = B.khi = 0;
    B.d.assign(static_cast<std::size_t>(n) * B.w(), cplx(0.0));
    for (int i = 0; i < n; ++i)
        for (int k = B.klo; k <= B.khi; ++k) {
            int j = i - k;
            if (j >= 0 && j < n) B.at(i, k) = b.coeff(k);
        }
    return B;
}

Band band_mul(const Band& A, const Band& B) {
    Band C;
    C.n = A.n;
    C.klo = std::max(A.klo + B.klo, -(A.n - 1));
    C.khi = std::min(A.khi + B.khi, A.n - 1);
    C.d.assign(static_cast<std::size_t>(C.n) * C.w(), cplx(0.0));
    for (int i = 0; i < A.n; ++i)
        for (int ka = A.klo; ka <= A.khi; ++ka) {
            int l = i - ka;
            if (l < 0 || l >= A.n) continue;
            cplx a = A.get(i, ka);
            if (a == cplx(0.0)) continue;
            for (int kb = B.klo; kb <= B.khi; ++kb) {
                int j = l - kb;
                if (j < 0 || j >= A.n) continue;
                int kc = ka + kb;
                if (kc < C.klo || kc > C.khi) continue;
                C.at(i, kc) += a * B.get(l, kb);
            }
        }
    return C;
}

}  // namespace

cplx trace_power_mean(const Symbol& b, int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("trace_power_mean: n, m must be >= 1");
    Band T = band_of(b, n);
    Band P = T;
    for (int k = 1; k < m; ++k) P = band_mul(P, T);
    cplx tr = 0.0;
    if (P.klo <= 0 && P.khi >= 0)
        for (int i = 0; i < n; ++i) tr += P.get(i, 0);
    return tr / static_cast<double>(n);
}

cplx bilinear_form_curve(const Symbol& a, const std::vector<cplx>& u, const std::vector<cplx>& v,
                         const JordanCurveSamples& curve) {
    if (u.size() != v.size() || u.empty()) throw std::invalid_argument("bilinear_form_curve: u, v must have equal length n >= 1");
    int N = curve.intervals();
    if (N < 2 || curve.rho.size() != curve.t.size() || curve.drho.size() != curve.t.size())
        throw std::invalid_argument("bilinear_form_curve: malformed curve samples");
    if (std::abs(curve.rho.front() - curve.rho.back()) > 1e-10 * curve.rho.front() ||
        std::abs(curve.t.back() - curve.t.front() - 2.0 * std::numbers::pi) > 1e-12)
        throw std::invalid_argument("bilinear_form_curve: curve is not closed");
    int n = static_cast<int>(u.size());
    std::vector<cplx> g(N);
    for (int j = 0; j < N; ++j) {
        cplx z = curve.point(j);
        cplx fv = 0.0, fu = 0.0;
        cplx w = 1.0 / z;  // conj(gamma*) = 1/gamma
        for (int i = n - 1; i >= 0; --i) {
            fv = fv * z + v[i];
            fu = fu * w + std::conj(u[i]);
        }
        g[j] = eval(a, z) * fv * fu * cplx(1.0, -curve.drho[j] / curve.rho[j]);
    }
    // Nested trapezoid rules through strides N/2^k with Romberg extrapolation. The curve is
    // smooth on [-pi, 0] and [0, pi] but may have a corner at a real multiple critical point,
    // where the error expands in even powers of the step. The floor covers rounding in sums
    // of large cancelling terms.
    double gmax = 0.0;
    for (auto x : g) gmax = std::max(gmax, std::abs(x));
    double floor = 1e3 * std::numeric_limits<double>::epsilon() * gmax;
    int stride = 1;
    while (stride * 2 <= N / 16 && N % (stride * 2) == 0) stride *= 2;
    auto rule = [&](int st) {
        cplx s = 0.0;
        for (int j = 0; j < N; j += st) s += g[j];
        return s / static_cast<double>(N / st);
    };
    std::vector<cplx> row{rule(stride)};
    while (stride > 1) {
        stride /= 2;
        std::vector<cplx> next{rule(stride)};
        double f = 1.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            f *= 4.0;
            next.push_back(next[k] + (next[k] - row[k]) / (f - 1.0));
        }
        cplx cur = next.back(), prev = row.back();
        if (std::abs(cur - prev) <= std::max(1e-12 * std::max(1.0, std::abs(cur)), floor)) return cur;
        row.swap(next);
    }
    throw std::runtime_error("bilinear_form_curve: insufficient samples (trapezoid estimates disagree)");
}

std::string verdict_name(RealityVerdict v) {
    switch (v) {
        case RealityVerdict::real: return "REAL";
        case RealityVerdict::nonreal: return "NONREAL";
        default: return "INCONCLUSIVE";
    }
}

RealityReport reality_check(const Symbol& a, int n_max, double tol, std::optional<std::vector<int>> n_values) {
    if (n_max < 1) throw std::invalid_argument("reality_check: n_max must be >= 1");
    RealityReport rep;
    rep.tol = tol;
    std::vector<int> ns;
    if (n_values) {
        for (int n : *n_values)
            if (n >= 1 && n <= n_max) ns.push_back(n);
    } else {
        for (int n = 1; n <= std::min(n_max, 40); ++n) ns.push_back(n);
        for (double x = 50; x < n_max; x *= 1.25) ns.push_back(static_cast<int>(std::lround(x)));
        if (n_max > 40) ns.push_back(n_max);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    double thr = tol * std::max(norm_bound(a), std::numeric_limits<double>::min());
    bool unstable = false;
    for (int n : ns) {
        EigenOptions opts;
        opts.real_tol = thr;
        opts.residual_samples = 0;
        EigenReport er = eigenvalues(a, n, opts);
        rep.n_values.push_back(n);
        rep.max_imag.push_back(er.max_imag);
        if (er.max_imag <= thr) continue;
        // a witness must persist when precision is raised
        bool stable = er.precision != Precision::double_double || er.max_imag >= 0.5 * er.max_imag_float64;
        if (!a.real_coefficients()) stable = true;
        if (!stable) {
            unstable = true;
            continue;
        }
        rep.verdict = RealityVerdict::nonreal;
        rep.witness_n = n;
        for (auto& lam : er.eigenvalues)
            if (std::abs(lam.imag()) >= std::abs(rep.witness_lambda.imag())) rep.witness_lambda = lam;
        return rep;
    }
    rep.verdict = unstable ? RealityVerdict::inconclusive : RealityVerdict::real;
    return rep;
}

}  // namespace bandspec
