#include "bandspec/limiting_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "bandspec/curve.hpp"
#include "bandspec/polyroots.hpp"
#include "bandspec/qpoly.hpp"

namespace bandspec {

namespace {

double rel_defect(const Symbol& b, cplx lambda) {
    RootsByModulus rb = roots_by_modulus(b, lambda);
    return rb.defect / (1.0 + std::abs(rb.roots[rb.r - 1]));
}

// golden section for the minimum of f on [a, c]
template <class F>
double golden(F f, double a, double c, int iters = 60) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = c - g * (c - a), x2 = a + g * (c - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 <= f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - g * (c - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (c - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

template <class Body>
void parallel_rows(int n, int threads, Body body) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(body, n * w / threads, n * (w + 1) / threads);
    for (auto& t : pool) t.join();
}

cplx resultant_with_derivative(const std::vector<cplx>& p) {
    int d = static_cast<int>(p.size()) - 1;
    std::vector<cplx> q(d);
    for (int i = 1; i <= d; ++i) q[i - 1] = static_cast<double>(i) * p[i];
    int n = 2 * d - 1;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    // rows 0..d-2: shifts of p (descending powers); rows d-1..2d-2: shifts of q
    for (int row = 0; row < d - 1; ++row)
        for (int k = 0; k <= d; ++k) S(row, row + k) = p[d - k];
    for (int row = 0; row < d; ++row)
        for (int k = 0; k < d; ++k) S(d - 1 + row, row + k) = q[d - 1 - k];
    return S.partialPivLu().determinant();
}

// Sylvester matrix of p and p' (ascending coefficients) over Q
mpq_class exact_resultant_with_derivative(const QPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    QPoly q(d);
    for (int i = 1; i <= d; ++i) q[i - 1] = i * p[i];
    int n = 2 * d - 1;
    std::vector<std::vector<mpq_class>> S(n, std::vector<mpq_class>(n, 0));
    for (int row = 0; row < d - 1; ++row)
        for (int k = 0; k <= d; ++k) S[row][row + k] = p[d - k];
    for (int row = 0; row < d; ++row)
        for (int k = 0; k < d; ++k) S[d - 1 + row][row + k] = q[d - 1 - k];
    return exact_determinant(std::move(S));
}

// exact discriminant (up to a constant) in lambda; multiplicities from its square-free split
std::vector<ExceptionalPoint> exact_exceptional(const Symbol& b) {
    const int d = b.r() + b.s();
    std::vector<mpq_class> xs, ys;
    for (int k = 0; k <= d; ++k) {
        QPoly p(d + 1, 0);
        for (auto& [k2, a] : b.exact_entries()) p[k2 + b.r()] = a;
        p[b.r()] -= k;
        xs.emplace_back(k);
        ys.push_back(exact_resultant_with_derivative(p));
    }
    QPoly disc = interpolate(xs, ys);
    if (degree(disc) < 1) throw std::runtime_error("exceptional points: degenerate leading coefficient");
    std::vector<ExceptionalPoint> out;
    for (const auto& [factor, mult] : squarefree_decomposition(disc)) {
        if (degree(factor) < 1) continue;
        std::vector<cplx> c;
        for (const auto& v : factor) c.emplace_back(v.get_d(), 0.0);
        for (cplx z : roots(c, 1e-14)) {
            ExceptionalPoint e;
            e.lambda = std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z)) ? cplx(z.real(), 0.0) : z;
            e.multiplicity = mult;
            out.push_back(e);
        }
    }
    return out;
}

std::vector<ExceptionalPoint> float_exceptional(const Symbol& b) {
    const int d = b.r() + b.s();
    const int m = d + 1;
    double rad = norm_bound(b) + 1.0;
    std::vector<cplx> vals(m);
    for (int k = 0; k < m; ++k) {
        cplx lam = std::polar(rad, 2.0 * std::numbers::pi * k / m);
        vals[k] = resultant_with_derivative(shifted_poly(b, lam));
    }
    std::vector<cplx> c(m);
    double cmax = 0.0;
    for (int j = 0; j < m; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < m; ++k) s += vals[k] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / m);
        c[j] = s / static_cast<double>(m) / std::pow(rad, j);
        cmax = std::max(cmax, std::abs(c[j]));
    }
    if (cmax == 0.0) throw std::runtime_error("exceptional points: vanishing discriminant");
    while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * cmax) c.pop_back();
    if (c.size() < 2) throw std::runtime_error("exceptional points: degenerate leading coefficient");
    std::vector<cplx> lam = roots(c);
    std::sort(lam.begin(), lam.end(), [](cplx p, cplx q) {
        return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
    });

    // clusters of a multiple discriminant root
    std::vector<ExceptionalPoint> out;
    std::vector<bool> used(lam.size(), false);
    for (size_t i = 0; i < lam.size(); ++i) {
        if (used[i]) continue;
        cplx sum = lam[i];
        int cnt = 1;
        used[i] = true;
        for (size_t j = i + 1; j < lam.size(); ++j)
            if (!used[j] && std::abs(lam[j] - lam[i]) <= 1e-4 * (1.0 + rad)) {
                used[j] = true;
                sum += lam[j];
                ++cnt;
            }
        ExceptionalPoint e;
        e.lambda = sum / static_cast<double>(cnt);
        if (std::abs(e.lambda.imag()) <= 1e-12 * (1.0 + std::abs(e.lambda)) && b.real_coefficients())
            e.lambda = e.lambda.real();
        e.multiplicity = cnt;
        out.push_back(e);
    }
    return out;
}

}  // namespace

Region default_region(const Symbol& b) {
    double R = norm_bound(b);
    return {-R, R, -R, R};
}

LimitingSetCloud limiting_set_scan(const Symbol& b, std::optional<Region> region, int resolution, double tol,
                                   int threads) {
    if (!b.is_banded()) throw std::invalid_argument("limiting set needs a two-sided symbol");
    if (resolution < 8) throw std::invalid_argument("resolution must be at least 8");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    Region reg = region ? *region : default_region(b);
    if (!(reg.re_max > reg.re_min) || !(reg.im_max > reg.im_min)) throw std::invalid_argument("degenerate region");
    const int n = resolution;
    double dx = (reg.re_max - reg.re_min) / (n - 1), dy = (reg.im_max - reg.im_min) / (n - 1);
    auto X = [&](int i) { return reg.re_min + i * dx; };
    auto Y = [&](int j) { return reg.im_min + j * dy; };

    std::vector<double> d(static_cast<size_t>(n) * n);
    parallel_rows(n, threads, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j)
            for (int i = 0; i < n; ++i) d[static_cast<size_t>(j) * n + i] = rel_defect(b, {X(i), Y(j)});
    });
    auto D = [&](int i, int j) { return d[static_cast<size_t>(j) * n + i]; };

    std::vector<std::vector<std::pair<cplx, double>>> found(n);
    parallel_rows(n, threads, [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            if (j == 0 || j == n - 1) continue;
            for (int i = 1; i + 1 < n; ++i) {
                double c = D(i, j);
                if (c <= D(i - 1, j) && c <= D(i + 1, j)) {
                    double y = Y(j);
                    double x = golden([&](double t) { return rel_defect(b, {t, y}); }, X(i - 1), X(i + 1));
                    double v = rel_defect(b, {x, y});
                    if (v <= tol) found[j].push_back({{x, y}, v});
                }
                if (c <= D(i, j - 1) && c <= D(i, j + 1)) {
                    double x = X(i);
                    double y = golden([&](double t) { return rel_defect(b, {x, t}); }, Y(j - 1), Y(j + 1));
                    double v = rel_defect(b, {x, y});
                    if (v <= tol) found[j].push_back({{x, y}, v});
                }
            }
        }
    });
    std::vector<std::pair<cplx, double>> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    for (const auto& e : exceptional_points(b)) {
        cplx z = e.lambda;
        if (z.real() < reg.re_min || z.real() > reg.re_max || z.imag() < reg.im_min || z.imag() > reg.im_max) continue;
        double v = rel_defect(b, z);
        if (v <= tol) all.push_back({z, v});
    }
    double R = norm_bound(b) * (1.0 + 1e-12);
    std::erase_if(all, [&](const auto& p) { return std::abs(p.first) > R; });
    std::sort(all.begin(), all.end(), [](const auto& p, const auto& q) {
        if (p.first.real() != q.first.real()) return p.first.real() < q.first.real();
        return p.first.imag() < q.first.imag();
    });
    all.erase(std::unique(all.begin(), all.end(), [](const auto& p, const auto& q) { return p.first == q.first; }),
              all.end());
    LimitingSetCloud cloud;
    cloud.grid_step = std::max(dx, dy);
    cloud.tol = tol;
    for (auto& [z, v] : all) {
        cloud.points.push_back(z);
        cloud.defects.push_back(v);
    }
    return cloud;
}

std::vector<ExceptionalPoint> exceptional_points(const Symbol& b) {
    if (!b.is_banded()) throw std::invalid_argument("exceptional points need a two-sided symbol");
    std::vector<ExceptionalPoint> out;
    if (b.has_exact()) {
        out = exact_exceptional(b);
    } else {
        out = float_exceptional(b);
    }
    for (auto& e : out) {
        std::vector<cplx> z = roots(shifted_poly(b, e.lambda));
        double md = 1e300;
        for (size_t p = 0; p < z.size(); ++p)
            for (size_t q = p + 1; q < z.size(); ++q)
                md = std::min(md, std::abs(z[p] - z[q]) / (1.0 + std::abs(z[p])));
        e.residual = md;
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
        return p.lambda.real() != q.lambda.real() ? p.lambda.real() < q.lambda.real() : p.lambda.imag() < q.lambda.imag();
    });
    return out;
}

std::pair<double, double> support_interval(const Symbol& b) {
    TraceResult tr = trace_polar(b);
    if (!tr.found) throw std::invalid_argument("support_interval: no Jordan curve certified (" + tr.reason + ")");
    const auto& p = tr.curve.partition;
    return {*std::min_element(p.alpha.begin(), p.alpha.end()), *std::max_element(p.beta.begin(), p.beta.end())};
}

}  // namespace bandspec
