#include "bandspec/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bandspec/double_double.hpp"

namespace bandspec {

namespace {

constexpr double pi = std::numbers::pi;

// h(rho, t) = Im b(rho e^{it}) / sin t = sum_k a_k rho^k sgn(k) U_{|k|-1}(cos t),
// regular at t = 0 and t = pi. Evaluated in double-double for a real symbol.
struct PolarImag {
    const Symbol& b;
    int K;
    explicit PolarImag(const Symbol& sym) : b(sym), K(std::max(sym.r(), sym.s())) {}

    // U_{m}(c) and U_m'(c) for m = 0..K-1
    void cheb(dd c, std::vector<dd>& U, std::vector<dd>& dU) const {
        U.assign(K + 1, dd(0.0));
        dU.assign(K + 1, dd(0.0));
        if (K == 0) return;
        U[0] = dd(1.0);
        if (K > 1) {
            U[1] = dd(2.0) * c;
            dU[1] = dd(2.0);
        }
        for (int m = 1; m + 1 < K; ++m) {
            U[m + 1] = dd(2.0) * c * U[m] - U[m - 1];
            dU[m + 1] = dd(2.0) * U[m] + dd(2.0) * c * dU[m] - dU[m - 1];
        }
    }

    // h, dh/drho and dh/dc
    void eval(dd rho, dd c, dd& h, dd& h_rho, dd& h_c) const {
        std::vector<dd> U, dU;
        cheb(c, U, dU);
        h = h_rho = h_c = dd(0.0);
        dd inv = dd(1.0) / rho;
        dd pp = rho, pn = inv;  // rho^k, rho^{-k}
        for (int k = 1; k <= K; ++k) {
            dd ap = b.coeff_dd(k), an = b.coeff_dd(-k);
            dd u = U[k - 1], du = dU[k - 1];
            // a_k rho^k U - a_{-k} rho^{-k} U
            dd term = ap * pp - an * pn;
            h += term * u;
            h_c += term * du;
            h_rho += (ap * pp + an * pn) * dd(static_cast<double>(k)) * inv * u;
            pp *= rho;
            pn *= inv;
        }
    }
};

dd cos_dd(double t) { return dd(std::cos(t)); }

struct NewtonResult {
    bool ok = false;
    dd rho;
    int iters = 0;
};

NewtonResult newton_rho(const PolarImag& P, double t, dd rho0) {
    dd c = cos_dd(t);
    dd rho = rho0;
    NewtonResult res;
    double prev = 1e300;
    for (int it = 0; it < 50; ++it) {
        dd h, hr, hc;
        P.eval(rho, c, h, hr, hc);
        if (hr.hi == 0.0 || !isfinite(hr)) return res;
        dd step = h / hr;
        rho -= step;
        res.iters = it + 1;
        if (!(rho.hi > 0.0) || !isfinite(rho)) return res;
        double a = std::abs(step.hi);
        // converged, or stalled at the rounding floor of h
        if (a <= 1e-29 * rho.hi || (it >= 2 && a >= 0.5 * prev && a <= 1e-18 * rho.hi)) {
            res.ok = true;
            res.rho = rho;
            return res;
        }
        prev = a;
    }
    return res;
}

double drho_at(const PolarImag& P, double t, dd rho) {
    double st = std::sin(t);
    if (st == 0.0 || std::abs(t) == pi) return 0.0;
    dd h, hr, hc;
    P.eval(rho, cos_dd(t), h, hr, hc);
    // h_t = h_c * (-sin t)
    if (hr.hi == 0.0) return 0.0;
    return to_double(hc * dd(st) / hr);
}

double value_at(const Symbol& b, double rho, double t) { return eval(b, std::polar(rho, t)).real(); }

double dvalue_at(const Symbol& b, const Symbol& db, double rho, double drho, double t) {
    cplx z = std::polar(rho, t);
    cplx w = eval(db, z) * cplx(drho, rho) * std::polar(1.0, t);
    return w.real();
}

// Lagrange extrapolation through the last (up to) three accepted points
dd extrapolate(const std::vector<double>& ts, const std::vector<dd>& rs, double t) {
    std::size_t m = ts.size();
    if (m == 1) return rs[0];
    if (m == 2) {
        double w = (t - ts[0]) / (ts[1] - ts[0]);
        return rs[0] + (rs[1] - rs[0]) * dd(w);
    }
    double t0 = ts[m - 3], t1 = ts[m - 2], t2 = ts[m - 1];
    double l0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2));
    double l1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2));
    double l2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
    return rs[m - 3] * dd(l0) + rs[m - 2] * dd(l1) + rs[m - 1] * dd(l2);
}

struct Sweep {
    bool ok = false;
    std::vector<dd> rho;  // at grid angles pi*j/M, j = 0..M (always ordered from t = 0)
    std::string reason;
};

// Continuation from (t_start, rho_start) toward the opposite end of [0, pi]; the final grid
// point is snapped to the critical point found on the opposite half axis.
Sweep sweep(const PolarImag& P, int M, bool forward, dd rho_start,
            const std::vector<CriticalPoint>& crit, double rho_lo, double rho_hi) {
    Sweep sw;
    std::vector<dd> grid(M + 1);
    const double dt0 = pi / M;
    int j0 = forward ? 0 : M;
    int dir = forward ? 1 : -1;
    grid[j0] = rho_start;
    std::vector<double> hts{forward ? 0.0 : pi};
    std::vector<dd> hrs{rho_start};
    double t = hts[0];
    dd rho = rho_start;
    for (int step = 1; step < M; ++step) {
        int j = j0 + dir * step;
        double target = pi * j / M;
        double sub = dt0;
        while (dir * (target - t) > 1e-15) {
            double tn = t + dir * std::min(sub, dir * (target - t));
            if (dir * (target - tn) < 1e-15) tn = target;
            double dt = std::abs(tn - t);
            dd pred = extrapolate(hts, hrs, tn);
            NewtonResult nr = newton_rho(P, tn, pred);
            double corr = nr.ok ? std::abs(to_double(nr.rho - pred)) : 0.0;
            double slope = hrs.size() >= 2
                               ? std::abs(to_double(hrs.back() - hrs[hrs.size() - 2])) /
                                     std::abs(hts.back() - hts[hts.size() - 2])
                               : 0.0;
            bool accept = nr.ok && nr.iters <= 12 && corr <= 1e-2 * dt * (to_double(rho) + slope);
            if (accept) {
                double rv = to_double(nr.rho);
                if (rv < rho_lo || rv > rho_hi) {
                    std::ostringstream os;
                    os << "curve leaves the radius window near t=" << tn;
                    sw.reason = os.str();
                    return sw;
                }
                t = tn;
                rho = nr.rho;
                hts.push_back(t);
                hrs.push_back(rho);
                if (hts.size() > 3) {
                    hts.erase(hts.begin());
                    hrs.erase(hrs.begin());
                }
                sub = std::min(dt0, 2.0 * sub);
            } else {
                sub *= 0.5;
                if (sub < pi / (1 << 20)) {
                    std::ostringstream os;
                    os << "continuation stalled at t=" << t;
                    sw.reason = os.str();
                    return sw;
                }
            }
        }
        grid[j] = rho;
    }
    // snap the end point to a critical point on the opposite half axis
    double tend = forward ? pi : 0.0;
    double pred = to_double(extrapolate(hts, hrs, tend));
    double best = -1.0, bestd = 1e300;
    for (const auto& c : crit) {
        if (std::abs(c.z.imag()) > 1e-7 * (1.0 + std::abs(c.z))) continue;
        double x = c.z.real();
        if (forward ? x >= 0.0 : x <= 0.0) continue;
        double d = std::abs(std::abs(x) - pred);
        if (d < bestd) {
            bestd = d;
            best = std::abs(x);
        }
    }
    if (best < 0.0 || bestd > 1e-3 * pred) {
        std::ostringstream os;
        os << "continuation reached t=" << tend << " at rho=" << pred << " without meeting a critical point";
        sw.reason = os.str();
        return sw;
    }
    grid[forward ? M : 0] = dd(best);
    sw.ok = true;
    sw.rho = std::move(grid);
    return sw;
}

}  // namespace

JordanCurveSamples circle_curve(double radius, int N) {
    if (N < 2 || radius <= 0.0) throw std::invalid_argument("circle_curve: need N >= 2 and radius > 0");
    JordanCurveSamples c;
    for (int j = 0; j <= N; ++j) {
        c.t.push_back(-pi + 2.0 * pi * j / N);
        c.rho.push_back(radius);
        c.drho.push_back(0.0);
    }
    return c;
}

TraceResult trace_polar(const Symbol& b, int N) {
    TraceResult out;
    if (!b.is_banded()) throw std::invalid_argument("trace_polar: symbol must have r, s >= 1");
    if (!b.real_coefficients()) throw std::invalid_argument("trace_polar: symbol must have real coefficients");
    if (N < 8 || N % 4 != 0) throw std::invalid_argument("trace_polar: N must be a multiple of 4, >= 8");
    int M = N / 2;
    PolarImag P(b);
    std::vector<CriticalPoint> crit = critical_points(b);
    double u0 = std::pow(std::abs(b.coeff(b.lo())) / std::abs(b.coeff(b.hi())), 1.0 / (b.hi() - b.lo()));
    double rho_lo = 1e-6 * u0, rho_hi = 1e6 * u0;

    struct Start {
        double rho;
        bool forward;
        int mult;
    };
    std::vector<Start> starts;
    for (const auto& c : crit) {
        if (std::abs(c.z.imag()) > 1e-7 * (1.0 + std::abs(c.z))) continue;
        if (c.z.real() > 0) starts.push_back({c.z.real(), true, c.multiplicity});
    }
    std::sort(starts.begin(), starts.end(), [](const Start& a, const Start& c) { return a.rho < c.rho; });
    std::vector<Start> back;
    for (const auto& c : crit) {
        if (std::abs(c.z.imag()) > 1e-7 * (1.0 + std::abs(c.z))) continue;
        if (c.z.real() < 0) back.push_back({-c.z.real(), false, c.multiplicity});
    }
    std::sort(back.begin(), back.end(), [](const Start& a, const Start& c) { return a.rho < c.rho; });
    // simple critical points first; a multiple start only as a last resort
    std::stable_partition(starts.begin(), starts.end(), [](const Start& s) { return s.mult == 1; });
    std::stable_partition(back.begin(), back.end(), [](const Start& s) { return s.mult == 1; });
    std::vector<Start> order;
    for (auto& s : starts)
        if (s.mult == 1) order.push_back(s);
    for (auto& s : back)
        if (s.mult == 1) order.push_back(s);
    for (auto& s : starts)
        if (s.mult > 1) order.push_back(s);
    for (auto& s : back)
        if (s.mult > 1) order.push_back(s);

    if (order.empty()) {
        out.reason = "no real critical point to start from";
        return out;
    }
    std::string reasons;
    for (const auto& s : order) {
        Sweep sw = sweep(P, M, s.forward, dd(s.rho), crit, rho_lo, rho_hi);
        if (!sw.ok) {
            std::ostringstream os;
            os << "start " << (s.forward ? "+" : "-") << s.rho << ": " << sw.reason;
            if (!reasons.empty()) reasons += "; ";
            reasons += os.str();
            continue;
        }
        JordanCurveSamples c;
        Symbol db = derivative(b);
        c.t.resize(N + 1);
        c.rho.resize(N + 1);
        c.drho.resize(N + 1);
        c.values.resize(N + 1);
        for (int j = 0; j <= M; ++j) {
            double t = pi * j / M;
            double r = to_double(sw.rho[j]);
            double dr = (j == 0 || j == M) ? 0.0 : drho_at(P, t, sw.rho[j]);
            for (int sgn : {1, -1}) {
                int idx = M + sgn * j;
                c.t[idx] = sgn * t;
                c.rho[idx] = r;
                c.drho[idx] = sgn * dr;
            }
        }
        c.t[0] = -pi;
        c.t[N] = pi;
        for (int j = 0; j <= N; ++j) {
            cplx v = eval(b, c.point(j));
            c.values[j] = v.real();
            c.max_residual = std::max(c.max_residual, std::abs(v.imag()));
        }
        out.found = true;
        out.start = c.rho[M];
        out.end = c.rho[N];
        out.curve = curve_critical_partition(b, std::move(c));
        return out;
    }
    out.reason = reasons;
    return out;
}

CurvePoint resample(const Symbol& b, const JordanCurveSamples& curve, double t) {
    if (curve.t.size() < 3) throw std::invalid_argument("resample: empty curve");
    double ta = std::abs(t);
    if (ta > pi) ta = pi;
    int N = curve.intervals();
    double h = 2.0 * pi / N;
    int j = std::clamp(static_cast<int>(std::floor((ta + pi) / h)), 0, N - 1);
    double t0 = curve.t[j], t1 = curve.t[j + 1];
    double s = (ta - t0) / (t1 - t0);
    // cubic Hermite guess
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s), h01 = s * s * (3 - 2 * s),
           h11 = s * s * (s - 1);
    double guess = h00 * curve.rho[j] + h10 * (t1 - t0) * curve.drho[j] + h01 * curve.rho[j + 1] +
                   h11 * (t1 - t0) * curve.drho[j + 1];
    CurvePoint p;
    p.t = t;
    if (s == 0.0 || s == 1.0) {
        int k = s == 0.0 ? j : j + 1;
        p.rho = curve.rho[k];
        p.drho = curve.drho[k];
    } else {
        PolarImag P(b);
        NewtonResult nr = newton_rho(P, ta, dd(guess));
        if (!nr.ok || std::abs(to_double(nr.rho) - guess) > 1e-3 * guess)
            throw std::runtime_error("resample: Newton failed to return to the curve");
        p.rho = to_double(nr.rho);
        p.drho = drho_at(P, ta, nr.rho);
    }
    if (t < 0) p.drho = -p.drho;
    p.z = std::polar(p.rho, t);
    p.value = eval(b, p.z).real();
    p.dvalue = dvalue_at(b, derivative(b), p.rho, p.drho, t);
    return p;
}

JordanCurveSamples curve_critical_partition(const Symbol& b, JordanCurveSamples curve) {
    int N = curve.intervals();
    int M = N / 2;
    Symbol db = derivative(b);
    std::vector<double> dv(M + 1, 0.0);
    for (int j = 1; j < M; ++j) dv[j] = dvalue_at(b, db, curve.rho[M + j], curve.drho[M + j], curve.t[M + j]);
    std::vector<double> phi{0.0};
    auto dv_at = [&](double t) { return resample(b, curve, t).dvalue; };
    // rounding level of dv: |b'| is evaluated in double
    auto noise = [&](int j) {
        double r = curve.rho[M + j], sc = 0.0;
        for (int k = b.lo(); k <= b.hi(); ++k) sc += std::abs(k * b.coeff(k).real()) * std::pow(r, k);
        return 256.0 * 2.220446049250313e-16 * sc * (1.0 + std::abs(curve.drho[M + j]) / r);
    };
    int prev = -1;
    for (int j = 1; j < M; ++j) {
        if (std::abs(dv[j]) <= noise(j)) continue;
        if (prev > 0 && (dv[prev] > 0) != (dv[j] > 0)) {
            double lo = curve.t[M + prev], hi = curve.t[M + j];
            double flo = dv[prev];
            for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = dv_at(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            phi.push_back(0.5 * (lo + hi));
        }
        prev = j;
    }
    phi.push_back(pi);
    CurvePartition part;
    part.phi = phi;
    std::vector<double> vals;
    for (double f : phi) {
        if (f == 0.0) vals.push_back(curve.values[M]);
        else if (f == pi) vals.push_back(curve.values[N]);
        else vals.push_back(resample(b, curve, f).value);
    }
    for (std::size_t i = 1; i < phi.size(); ++i) {
        part.alpha.push_back(std::min(vals[i - 1], vals[i]));
        part.beta.push_back(std::max(vals[i - 1], vals[i]));
        part.orientation.push_back(vals[i] > vals[i - 1] ? 1 : -1);
    }
    curve.partition = part;
    return curve;
}

JordanCurveSamples reflect_curve(const JordanCurveSamples& curve) {
    JordanCurveSamples c;
    c.t = curve.t;
    for (std::size_t j = 0; j < curve.rho.size(); ++j) {
        c.rho.push_back(1.0 / curve.rho[j]);
        c.drho.push_back(-curve.drho[j] / (curve.rho[j] * curve.rho[j]));
    }
    return c;
}

int winding_number(const JordanCurveSamples& curve) {
    double total = 0.0;
    int N = curve.intervals();
    for (int j = 0; j < N; ++j) {
        cplx a = curve.point(j), c = curve.point(j + 1);
        total += std::arg(c / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

std::string class_name(ClassR v) {
    switch (v) {
        case ClassR::yes: return "YES";
        case ClassR::no: return "NO";
        default: return "UNKNOWN";
    }
}

ClassRVerdict is_class_R(const Symbol& b, int n_probe, int curve_samples) {
    if (!b.is_banded()) throw std::invalid_argument("is_class_R: symbol must have r, s >= 1");
    ClassRVerdict v;
    if (b.real_coefficients()) {
        TraceResult tr = trace_polar(b, curve_samples);
        if (tr.found) {
            v.verdict = ClassR::yes;
            v.curve_residual = tr.curve.max_residual;
            v.curve = std::move(tr.curve);
            return v;
        }
        v.note = "no polar Jordan curve: " + tr.reason;
    } else {
        v.note = "complex coefficients: curve search skipped";
    }
    RealityReport rr = reality_check(b, n_probe);
    v.reality = rr;
    if (rr.verdict == RealityVerdict::nonreal) {
        v.verdict = ClassR::no;
        v.witness_n = rr.witness_n;
        v.witness_lambda = rr.witness_lambda;
    } else {
        v.verdict = ClassR::unknown;
    }
    return v;
}

}  // namespace bandspec
