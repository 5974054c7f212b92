#include "bandspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bandspec/limiting_set.hpp"
#include "bandspec/polyroots.hpp"

namespace bandspec {

namespace {

constexpr double pi = std::numbers::pi;

void require_partition(const JordanCurveSamples& c) {
    if (c.values.empty() || c.partition.phi.size() < 2)
        throw std::invalid_argument("measure: curve has no values or partition");
}

// t in branch i (1-based) with b(gamma(t)) = x; x must lie in the branch image
double invert_branch(const Symbol& b, const JordanCurveSamples& c, int i, double x) {
    const auto& P = c.partition;
    double lo = P.phi[i - 1], hi = P.phi[i];
    int o = P.orientation[i - 1];
    // bracket from the stored samples (t_j = -pi + 2 pi j / N)
    for (int j = 0; j <= c.intervals(); ++j) {
        double tj = c.t[j];
        if (tj <= lo) continue;
        if (tj >= hi) break;
        if ((c.values[j] - x) * o < 0) {
            lo = tj;
        } else {
            hi = tj;
            break;
        }
    }
    // safeguarded Newton
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        CurvePoint cp = resample(b, c, t);
        double f = (cp.value - x) * o;
        if (f == 0.0) break;
        if (f < 0)
            lo = t;
        else
            hi = t;
        double tn = t - (cp.value - x) / cp.dvalue;
        bool inside = tn > lo && tn < hi && std::isfinite(tn);
        double step = std::abs(tn - t);
        t = inside ? tn : 0.5 * (lo + hi);
        if ((inside && step <= 1e-15 * (1.0 + std::abs(t))) || hi - lo <= 1e-15) break;
    }
    return t;
}

}  // namespace

DensitySamples density_from_curve(const Symbol& b, const JordanCurveSamples& curve, int K) {
    require_partition(curve);
    if (K < 1) throw std::invalid_argument("density_from_curve: K must be >= 1");
    DensitySamples ds;
    ds.symbol = b;
    ds.curve = curve;
    const auto& P = curve.partition;
    ds.alpha = *std::min_element(P.alpha.begin(), P.alpha.end());
    ds.beta = *std::max_element(P.beta.begin(), P.beta.end());
    for (int i = 1; i <= P.ell() + 1; ++i) {
        double a = P.alpha[i - 1], w = P.beta[i - 1] - a;
        for (int k = 0; k < K; ++k) {
            double x = a + w * (k + 0.5) / K;
            ds.x.push_back(x);
            ds.rho.push_back(branch_density_at(ds, i, x));
            ds.branch.push_back(i);
        }
    }
    return ds;
}

double branch_density_at(const DensitySamples& ds, int i, double x) {
    const auto& P = ds.curve.partition;
    if (i < 1 || i > P.ell() + 1) throw std::invalid_argument("branch index out of range");
    if (!(x > P.alpha[i - 1] && x < P.beta[i - 1])) return 0.0;
    double t = invert_branch(ds.symbol, ds.curve, i, x);
    CurvePoint cp = resample(ds.symbol, ds.curve, t);
    return 1.0 / (pi * std::abs(cp.dvalue));
}

double density_at(const DensitySamples& ds, double x) {
    double s = 0.0;
    for (int i = 1; i <= ds.curve.partition.ell() + 1; ++i) s += branch_density_at(ds, i, x);
    return s;
}

double distribution_from_curve(const Symbol& b, const JordanCurveSamples& curve, double t) {
    (void)b;
    require_partition(curve);
    if (curve.partition.ell() != 0) throw std::invalid_argument("distribution_from_curve: needs a single branch");
    if (t < 0.0 || t > pi) throw std::invalid_argument("distribution_from_curve: t outside [0, pi]");
    return curve.partition.orientation[0] > 0 ? t / pi : 1.0 - t / pi;
}

double distribution_at(const DensitySamples& ds, double x) {
    const auto& P = ds.curve.partition;
    double len = 0.0;
    for (int i = 1; i <= P.ell() + 1; ++i) {
        double lo = P.phi[i - 1], hi = P.phi[i];
        if (x >= P.beta[i - 1]) {
            len += hi - lo;
        } else if (x > P.alpha[i - 1]) {
            double t = invert_branch(ds.symbol, ds.curve, i, x);
            len += P.orientation[i - 1] > 0 ? t - lo : hi - t;
        }
    }
    return len / pi;
}

double integrate_mu(const DensitySamples& ds, const std::function<double(double)>& f) {
    int N = ds.curve.intervals();
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += f(ds.curve.values[j]);
    return s / N;
}

cplx integrate_mu_c(const DensitySamples& ds, const std::function<cplx(double)>& f) {
    int N = ds.curve.intervals();
    cplx s = 0.0;
    for (int j = 0; j < N; ++j) s += f(ds.curve.values[j]);
    return s / static_cast<double>(N);
}

double integrate_density(const DensitySamples& ds, const std::function<double(double)>& f) {
    // Each branch image [a, a + w] is cut 1e-6 w short of both ends. The core is integrated with
    // x = a + d + (w - 2d) g(u), g(u) = u^4 / (u^4 + (1-u)^4), which flattens |x - e|^{-p}
    // growth; each tail gets its exact mass |t(x_cut) - phi| / pi times f at the end point.
    // Near a multiple critical point b(gamma(t)) has no relative accuracy in double, so the
    // density cannot be integrated all the way to the end.
    double total = 0.0;
    const auto& P = ds.curve.partition;
    for (int i = 1; i <= P.ell() + 1; ++i) {
        double a = P.alpha[i - 1], w = P.beta[i - 1] - a, d = 1e-6 * w, wc = w - 2.0 * d;
        auto g = [&](double u) {
            double p = std::pow(u, 4), q = std::pow(1.0 - u, 4), den = p + q;
            double x = a + d + wc * p / den;
            double dg = 4.0 * std::pow(u, 3) * std::pow(1.0 - u, 3) / (den * den);
            double r = branch_density_at(ds, i, x);
            return r == 0.0 ? 0.0 : f(x) * r * wc * dg;
        };
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 10, 1e-12);
        double lo_t = invert_branch(ds.symbol, ds.curve, i, a + d);
        double hi_t = invert_branch(ds.symbol, ds.curve, i, a + w - d);
        bool inc = P.orientation[i - 1] > 0;
        // alpha is reached at phi_{i-1} on an increasing branch, at phi_i otherwise
        double m_lo = inc ? lo_t - P.phi[i - 1] : P.phi[i] - lo_t;
        double m_hi = inc ? P.phi[i] - hi_t : hi_t - P.phi[i - 1];
        total += (f(a) * m_lo + f(a + w) * m_hi) / pi;
    }
    return total;
}

OrthogonalityResult orthogonality_check(const JacobiParameters& params, const DensitySamples& ds, int n, int m) {
    if (n < 0 || m < 0 || n > params.N() || m > params.N())
        throw std::invalid_argument("orthogonality_check: index outside the parameter range");
    OrthogonalityResult r;
    r.integral = integrate_mu(ds, [&](double x) { return orthopoly_eval(params, n, x) * orthopoly_eval(params, m, x); });
    r.expected = 0.0;
    if (n == m) {
        r.expected = 1.0;
        for (int k = 0; k < n; ++k) r.expected *= params.a[k] * params.a[k];
    }
    return r;
}

cplx cauchy_transform(const DensitySamples& ds, cplx z) {
    double dmin = z.real() < ds.alpha   ? std::abs(z - ds.alpha)
                  : z.real() > ds.beta ? std::abs(z - ds.beta)
                                       : std::abs(z.imag());
    if (dmin < 1e-6) throw std::invalid_argument("cauchy_transform: z too close to the support");
    return integrate_mu_c(ds, [&](double x) { return 1.0 / (x - z); });
}

cplx weyl_m(const Symbol& b, cplx lambda, double tol) {
    RootsByModulus rb = roots_by_modulus(b, lambda);
    double zr = std::abs(rb.roots[rb.r - 1]), zs = std::abs(rb.roots[rb.r]);
    if (rb.defect <= 1e-12 * (1.0 + zr)) throw std::invalid_argument("weyl_m: lambda lies on the limiting set");
    double rho = std::sqrt(zr * zs);
    auto f = [&](double th) { return 1.0 / (eval(b, std::polar(rho, th)) - lambda); };
    int N = 64;
    cplx sum = 0.0;
    for (int j = 0; j < N; ++j) sum += f(2.0 * pi * j / N);
    cplx est = sum / static_cast<double>(N);
    while (N < (1 << 24)) {
        cplx add = 0.0;
        for (int j = 0; j < N; ++j) add += f(2.0 * pi * (j + 0.5) / N);
        sum += add;
        N *= 2;
        cplx next = sum / static_cast<double>(N);
        bool done = std::abs(next - est) <= tol * std::max(1.0, std::abs(next));
        est = next;
        if (done) return est;
    }
    throw std::runtime_error("weyl_m: trapezoid rule did not converge");
}

double default_eps0(const Symbol& b, double x) {
    double d = 1e300;
    for (const auto& e : exceptional_points(b)) d = std::min(d, std::abs(e.lambda - cplx(x)));
    return std::min(1.0, 0.2 * d);
}

InversionResult density_from_m(const Symbol& b, double x, double eps0, int levels) {
    if (!(eps0 > 0.0) || levels < 2) throw std::invalid_argument("density_from_m: bad extrapolation sequence");
    std::vector<double> e(levels), T(levels);
    for (int k = 0; k < levels; ++k) {
        e[k] = eps0 * std::ldexp(1.0, -k);
        T[k] = weyl_m(b, cplx(x, e[k])).imag() / pi;
    }
    // Neville at eps = 0
    double last = T[0], before = T[0];
    std::vector<double> P = T;
    for (int m = 1; m < levels; ++m) {
        for (int k = levels - 1; k >= m; --k) P[k] = (e[k - m] * P[k] - e[k] * P[k - 1]) / (e[k - m] - e[k]);
        before = last;
        last = P[levels - 1];
    }
    InversionResult r;
    r.density = last;
    r.error = std::abs(last - before);
    if (!std::isfinite(last)) throw std::runtime_error("density_from_m: extrapolation failed");
    return r;
}

Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi) {
    if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram: bad bins or range");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    for (double v : values) {
        if (v < lo || v > hi) continue;
        int k = static_cast<int>((v - lo) / (hi - lo) * bins);
        h.counts[std::min(k, bins - 1)]++;
    }
    return h;
}

double kolmogorov_distance(std::vector<double> points, const std::function<double(double)>& F) {
    if (points.empty()) throw std::invalid_argument("kolmogorov_distance: no points");
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double d = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        double f = F(points[i]);
        d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
    }
    return d;
}

}  // namespace bandspec
