#include "bandspec/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bandspec {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// p(z), p'(z) and sum |c_i||z|^i by Horner
void horner(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp, double& scale) {
    p = c.back();
    dp = 0.0;
    scale = std::abs(c.back());
    double az = std::abs(z);
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + c[i];
        scale = scale * az + std::abs(c[i]);
    }
}

std::vector<cplx> initial_guess(const std::vector<cplx>& c) {
    int d = static_cast<int>(c.size()) - 1;
    // upper convex hull of (i, log|c_i|)
    std::vector<int> hull;
    std::vector<double> lg(d + 1);
    for (int i = 0; i <= d; ++i)
        lg[i] = c[i] == cplx(0.0) ? -std::numeric_limits<double>::infinity() : std::log(std::abs(c[i]));
    for (int i = 0; i <= d; ++i) {
        if (!std::isfinite(lg[i])) continue;
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull.back();
            double cross = (b - a) * (lg[i] - lg[a]) - (i - a) * (lg[b] - lg[a]);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    std::vector<cplx> z;
    z.reserve(d);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        int i = hull[h], j = hull[h + 1];
        int m = j - i;
        double u = std::exp((lg[i] - lg[j]) / m);
        for (int k = 0; k < m; ++k) {
            double ang = two_pi * k / m + two_pi * i / d + 0.4;
            z.push_back(std::polar(u, ang));
        }
    }
    return z;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& c) {
    int d = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("roots: companion eigensolver failed");
    std::vector<cplx> z(es.eigenvalues().data(), es.eigenvalues().data() + d);
    // two Newton polishing steps
    for (auto& x : z)
        for (int it = 0; it < 2; ++it) {
            cplx p, dp;
            double s;
            horner(c, x, p, dp, s);
            if (dp == cplx(0.0)) break;
            cplx step = p / dp;
            if (std::abs(step) > 1e-3 * (1.0 + std::abs(x))) break;
            x -= step;
        }
    return z;
}

bool aberth(const std::vector<cplx>& c, std::vector<cplx>& z) {
    int d = static_cast<int>(c.size()) - 1;
    z = initial_guess(c);
    std::vector<bool> done(d, false);
    int remaining = d;
    for (int iter = 0; iter < 200 && remaining > 0; ++iter) {
        for (int k = 0; k < d; ++k) {
            if (done[k]) continue;
            cplx p, dp;
            double s;
            horner(c, z[k], p, dp, s);
            if (std::abs(p) <= 4.0 * eps * s) {
                done[k] = true;
                --remaining;
                continue;
            }
            cplx ratio = p / dp;
            cplx sum = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
            z[k] -= w;
            if (std::abs(w) <= 2.0 * eps * std::abs(z[k])) {
                done[k] = true;
                --remaining;
            }
        }
    }
    return remaining == 0;
}

}  // namespace

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * z + *it;
    return p;
}

std::vector<cplx> roots(const std::vector<cplx>& coeffs, double tol) {
    for (const auto& v : coeffs)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("roots: non-finite coefficient");
    std::vector<cplx> c = coeffs;
    while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
    if (c.empty()) throw std::invalid_argument("roots: zero polynomial");
    if (c.size() < 2) throw std::invalid_argument("roots: degree must be at least 1");
    std::vector<cplx> out;
    std::size_t lowzero = 0;
    while (c[lowzero] == cplx(0.0)) ++lowzero;
    out.assign(lowzero, cplx(0.0));
    c.erase(c.begin(), c.begin() + static_cast<long>(lowzero));
    int d = static_cast<int>(c.size()) - 1;
    if (d == 0) return out;
    if (d == 1) {
        out.push_back(-c[0] / c[1]);
        return out;
    }
    if (d == 2) {
        cplx a = c[2], b = c[1], cc = c[0];
        cplx disc = std::sqrt(b * b - 4.0 * a * cc);
        cplx q = std::real(std::conj(b) * disc) >= 0 ? -0.5 * (b + disc) : -0.5 * (b - disc);
        if (q == cplx(0.0)) {
            out.push_back(0.0);
            out.push_back(0.0);
        } else {
            out.push_back(q / a);
            out.push_back(cc / q);
        }
        return out;
    }
    std::vector<cplx> z;
    bool ok = aberth(c, z);
    if (ok) {
        for (const auto& x : z) {
            cplx p, dp;
            double s;
            horner(c, x, p, dp, s);
            if (std::abs(p) > std::max(tol, 64.0 * eps) * s) {
                ok = false;
                break;
            }
        }
    }
    if (!ok) z = companion_roots(c);
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

std::vector<cplx> shifted_poly(const Symbol& b, cplx lambda) {
    if (!b.is_banded()) throw std::invalid_argument("symbol must have r, s >= 1");
    int r = b.r();
    std::vector<cplx> c(b.r() + b.s() + 1);
    for (int k = -r; k <= b.s(); ++k) c[k + r] = b.coeff(k);
    c[r] -= lambda;
    return c;
}

RootsByModulus roots_by_modulus(const Symbol& b, cplx lambda) {
    std::vector<cplx> c = shifted_poly(b, lambda);
    RootsByModulus out;
    out.lambda = lambda;
    out.r = b.r();
    out.roots = roots(c, 1e-12);
    std::stable_sort(out.roots.begin(), out.roots.end(),
                     [](cplx a, cplx d) { return std::abs(a) < std::abs(d); });
    int r = b.r();
    out.defect = std::max(0.0, std::abs(out.roots[r]) - std::abs(out.roots[r - 1]));
    double cond = 0.0;
    for (int j : {r - 1, r}) {
        cplx p, dp;
        double s;
        horner(c, out.roots[j], p, dp, s);
        double a = std::abs(dp) * std::max(std::abs(out.roots[j]), 1e-300);
        cond = std::max(cond, a > 0 ? eps * s / a : std::numeric_limits<double>::infinity());
    }
    out.condition = cond;
    return out;
}

double defect(const Symbol& b, cplx lambda) { return roots_by_modulus(b, lambda).defect; }

}  // namespace bandspec
