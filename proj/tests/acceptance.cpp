// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "bandspec/curve.hpp"
#include "bandspec/jacobi.hpp"
#include "bandspec/limiting_set.hpp"
#include "bandspec/measure.hpp"
#include "bandspec/moments.hpp"
#include "bandspec/oracles.hpp"
#include "bandspec/toeplitz.hpp"

using namespace bandspec;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) note << "; ";
            pass = false;
            note << what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.note << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
                o.note.str().empty() ? "" : ": ", o.note.str().c_str());
    std::fflush(stdout);
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

DensitySamples traced_density(const Symbol& b, int K, int N = 4096) {
    TraceResult tr = trace_polar(b, N);
    if (!tr.found) throw std::runtime_error("no curve: " + tr.reason);
    return density_from_curve(b, tr.curve, K);
}

Symbol trinomial(const mpq_class& alpha, const mpq_class& beta) {
    return make_symbol_exact({{-1, mpq_class(1)}, {1, alpha}, {2, beta}});
}

}  // namespace

int main() {
    criterion(1, "exact det H_n = 2^{n-1} for 1/z + z, n = 1..20", [](Outcome& o) {
        auto ms = moments(oracle_tridiag(1).symbol, 40);
        for (int n = 1; n <= 20; ++n) {
            mpz_class want = mpz_class(1) << (n - 1);
            o.require(hankel(ms, n).det_H == mpq_class(want), "n=" + std::to_string(n));
        }
    });

    criterion(2, "exact det H_n, det H~_n of (1 + z)^3 / z match the product formulas, n = 1..12", [](Outcome& o) {
        OracleBundle ob = oracle_fourdiag(1);
        auto ms = moments(ob.symbol, 24);
        for (int n = 1; n <= 12; ++n) {
            HankelData h = hankel(ms, n);
            o.require(h.exact, "not exact");
            o.require(h.det_H == (*ob.det_H)(n), "det H_" + std::to_string(n));
            o.require(h.det_Ht == (*ob.det_Ht)(n), "det H~_" + std::to_string(n));
        }
    });

    criterion(3, "exact Jacobi parameters: tridiagonal (a_1^2 = 2, a_n = 1, b_n = 0 to n = 15), 4-diagonal k = 2..12",
              [](Outcome& o) {
                  auto ms = moments(oracle_tridiag(1).symbol, 31);
                  JacobiParameters jp = jacobi_params(ms, 15);
                  o.require(jp.a2_exact && jp.b_exact, "no exact output");
                  for (int k = 1; k <= 15; ++k) {
                      mpq_class want = k == 1 ? 2 : 1;
                      o.require((*jp.a2_exact)[k - 1] == want, "a_" + std::to_string(k) + "^2");
                      o.require((*jp.b_exact)[k - 1] == 0, "b_" + std::to_string(k));
                  }
                  OracleBundle ob = oracle_fourdiag(1);
                  JacobiParameters jf = jacobi_params(moments(ob.symbol, 30), 12);
                  for (int k = 2; k <= 12; ++k) {
                      o.require((*jf.a2_exact)[k - 1] == (*ob.jacobi_a2)(k), "4-diag a_" + std::to_string(k) + "^2");
                      o.require((*jf.b_exact)[k - 1] == (*ob.jacobi_b)(k), "4-diag b_" + std::to_string(k));
                  }
              });

    criterion(4, "Weyl m-function of 1/z + z against -1/sqrt(lambda^2 - 4)", [](Outcome& o) {
        Symbol t = oracle_tridiag(1).symbol;
        double e3 = std::abs(weyl_m(t, 3.0) + 1.0 / std::sqrt(5.0));
        o.require(e3 <= 1e-10, "lambda=3 error " + num(e3));
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> R(2.5, 8.0), A(-pi, pi);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            cplx lam = std::polar(R(rng), A(rng));
            // branch with sqrt ~ lambda at infinity
            cplx s = lam * std::sqrt(1.0 - 4.0 / (lam * lam));
            worst = std::max(worst, std::abs(weyl_m(t, lam) + 1.0 / s));
        }
        o.require(worst <= 1e-9, "random lambda error " + num(worst));
        o.note << (o.pass ? "max error " + num(std::max(e3, worst)) : "");
    });

    criterion(5, "curve densities against closed forms", [](Outcome& o) {
        struct Case {
            OracleBundle ob;
            double lo, hi, tol;
        };
        for (const Case& c : {Case{oracle_tridiag(1), -1.9, 1.9, 1e-8}, Case{oracle_fourdiag(mpq_class(4, 27)), 0.01, 0.99, 1e-6},
                              Case{oracle_example3(2, 2, 1), 0.1, 15.9, 1e-6}}) {
            DensitySamples ds = traced_density(c.ob.symbol, 16);
            double worst = 0.0;
            for (int j = 0; j <= 400; ++j) {
                double x = c.lo + (c.hi - c.lo) * j / 400;
                worst = std::max(worst, std::abs(density_at(ds, x) - (*c.ob.density)(x)));
            }
            o.require(worst <= c.tol, c.ob.name + " sup error " + num(worst));
            if (!o.note.str().empty()) o.note << ", ";
            o.note << c.ob.name << " " << num(worst);
        }
    });

    criterion(6, "density from the m-function equals density from the curve at 50 interior nodes", [](Outcome& o) {
        for (const auto& ob : {oracle_tridiag(1), oracle_fourdiag(mpq_class(4, 27)), oracle_example3(2, 2, 1)}) {
            DensitySamples ds = traced_density(ob.symbol, 50);
            double worst = 0.0;
            for (std::size_t i = 0; i < ds.x.size(); ++i) {
                double x = ds.x[i];
                InversionResult r = density_from_m(ob.symbol, x, default_eps0(ob.symbol, x));
                worst = std::max(worst, std::abs(r.density - ds.rho[i]));
            }
            o.require(ds.x.size() == 50, ob.name + " node count");
            o.require(worst <= 1e-5, ob.name + " error " + num(worst));
            if (!o.note.str().empty()) o.note << ", ";
            o.note << ob.name << " " << num(worst);
        }
    });

    criterion(7, "traced curves of (1 + z)^{r+s} / z^r and support endpoints", [](Outcome& o) {
        double worst = 0.0, wend = 0.0;
        for (auto [r, s] : {std::pair{1, 2}, {1, 5}, {4, 2}, {2, 2}}) {
            OracleBundle ob = oracle_example3(r, s, 1);
            TraceResult tr = trace_polar(ob.symbol, 4096);
            std::string tag = "(" + std::to_string(r) + "," + std::to_string(s) + ")";
            o.require(tr.found, tag + " not traced");
            if (!tr.found) continue;
            for (int j = 0; j <= tr.curve.intervals(); ++j)
                worst = std::max(worst, std::abs(tr.curve.rho[j] - (*ob.curve_rho)(tr.curve.t[j])));
            double top = std::pow(r + s, r + s) / (std::pow(r, r) * std::pow(s, s));
            double e = std::abs(support_interval(ob.symbol).second - top);
            wend = std::max(wend, e);
            o.require(e <= 1e-10, tag + " endpoint error " + num(e));
        }
        o.require(worst <= 1e-8, "rho error " + num(worst));
        if (o.pass) o.note << "rho error " << num(worst) << ", endpoint error " << num(wend);
    });

    criterion(8, "class verdicts for 1/z + alpha z + z^2, alpha = 2.9, 3.0, 3.1", [](Outcome& o) {
        const char* want[] = {"NO", "YES", "YES"};
        mpq_class alphas[] = {mpq_class(29, 10), mpq_class(3), mpq_class(31, 10)};
        for (int i = 0; i < 3; ++i) {
            ClassRVerdict v = is_class_R(trinomial(alphas[i], 1), 30);
            std::string got = class_name(v.verdict);
            o.require(got == want[i], "alpha=" + num(alphas[i].get_d()) + " gave " + got);
            if (v.verdict == ClassR::no) {
                o.require(std::abs(v.witness_lambda.imag()) > 1e-3, "weak witness");
                o.note << "NO witness n=" << v.witness_n << " |Im|=" << num(std::abs(v.witness_lambda.imag())) << " ";
            }
        }
    });

    criterion(9, "every YES fixture has real spectrum for n <= 200", [](Outcome& o) {
        int yes = 0;
        for (const auto& f : fixtures()) {
            ClassRVerdict v = is_class_R(f.symbol);
            if (v.verdict != ClassR::yes) continue;
            ++yes;
            RealityReport rr = reality_check(f.symbol, 200, 1e-8);
            double worst = *std::max_element(rr.max_imag.begin(), rr.max_imag.end());
            o.require(rr.verdict == RealityVerdict::real && worst <= 1e-8 * norm_bound(f.symbol),
                      f.name + " max|Im| " + num(worst));
        }
        o.note << yes << " fixtures certified";
    });

    criterion(10, "trace means converge monotonically to the moments", [](Outcome& o) {
        for (const char* name : {"tridiag-a1", "fourdiag-a1"}) {
            Symbol b = fixture(name).symbol;
            MomentSequence ms = moments(b, 4);
            for (int m = 1; m <= 4; ++m) {
                double h = ms.values[m].real(), prev = INFINITY, last = 0.0;
                for (int n : {64, 128, 256, 512}) {
                    double e = std::abs(trace_power_mean(b, n, m) - h);
                    o.require(e <= prev && (e < prev || e == 0.0),
                              std::string(name) + " m=" + std::to_string(m) + " not decreasing at n=" + std::to_string(n));
                    prev = e;
                    last = e;
                }
                if (h != 0.0) o.require(last / std::abs(h) < 0.02, std::string(name) + " m=" + std::to_string(m) + " relative " + num(last / std::abs(h)));
            }
        }
    });

    criterion(11, "limiting-set scans at 512^2", [](Outcome& o) {
        LimitingSetCloud c = limiting_set_scan(fixture("tridiag-a1").symbol, std::nullopt, 512, 1e-6, 4);
        double d1 = 0.0, d2 = 0.0;
        for (auto z : c.points) d1 = std::max(d1, std::abs(z - cplx(std::clamp(z.real(), -2.0, 2.0), 0.0)));
        for (int j = 0; j <= 4000; ++j) {
            double x = -2.0 + 4.0 * j / 4000, best = INFINITY;
            for (auto z : c.points) best = std::min(best, std::abs(z - x));
            d2 = std::max(d2, best);
        }
        double haus = std::max(d1, d2);
        o.require(!c.points.empty() && haus <= 2 * c.grid_step,
                  "Hausdorff " + num(haus) + " vs 2 step " + num(2 * c.grid_step));
        o.note << "tridiag Hausdorff " << num(haus) << " (2 step " << num(2 * c.grid_step) << ")";

        LimitingSetCloud e = limiting_set_scan(fixture("example4").symbol, std::nullopt, 512, 1e-6, 4);
        o.require(!e.points.empty(), "empty example4 cloud");
        if (e.points.empty()) return;
        double im = 0.0, lo = INFINITY, hi = -INFINITY;
        for (auto z : e.points) {
            im = std::max(im, std::abs(z.imag()));
            lo = std::min(lo, z.real());
            hi = std::max(hi, z.real());
        }
        o.require(im <= 2 * e.grid_step, "example4 cloud off the axis by " + num(im));
        o.require(std::abs(lo + 22.0915) <= 1e-2 && std::abs(hi - 14.9641) <= 1e-2,
                  "example4 extremes " + num(lo) + ", " + num(hi));
        o.note << "; example4 extremes " << lo << ", " << hi << ", max|Im| " << num(im);
    });

    criterion(12, "z^-3 + z^-2 + z^-1 + z + z^2 + z^3: partition, branches, mass and spectrum", [](Outcome& o) {
        Symbol b = fixture("example5").symbol;
        TraceResult tr = trace_polar(b, 4096);
        o.require(tr.found, "not traced");
        if (!tr.found) return;
        const CurvePartition& p = tr.curve.partition;
        o.require(p.ell() == 2, "ell=" + std::to_string(p.ell()));
        if (p.ell() != 2) return;
        std::vector<double> cv;
        for (int i = 1; i <= 2; ++i) cv.push_back(resample(b, tr.curve, p.phi[i]).value);
        std::sort(cv.begin(), cv.end());
        o.require(std::abs(cv[0] + 2.63113) <= 1e-4 && std::abs(cv[1] - 0.112612) <= 1e-4,
                  "critical values " + num(cv[0]) + ", " + num(cv[1]));
        double want[3][2] = {{-2.63, 6.0}, {-2.63, 0.11}, {-2.0, 0.11}};
        for (int i = 0; i < 3; ++i)
            o.require(std::abs(p.alpha[i] - want[i][0]) <= 1e-2 && std::abs(p.beta[i] - want[i][1]) <= 1e-2,
                      "branch " + std::to_string(i + 1) + " [" + num(p.alpha[i]) + "," + num(p.beta[i]) + "]");
        DensitySamples ds = density_from_curve(b, tr.curve, 32);
        double mass = integrate_density(ds, [](double) { return 1.0; });
        o.require(std::abs(mass - 1.0) <= 1e-6, "mass " + num(mass));
        EigenReport er = eigenvalues(b, 400, EigenOptions{1e-8 * norm_bound(b)});
        std::vector<double> x;
        for (auto l : er.eigenvalues) x.push_back(l.real());
        double kd = kolmogorov_distance(x, [&](double v) { return distribution_at(ds, v); });
        o.require(kd <= 0.05, "Kolmogorov " + num(kd));
        o.note << "critical values " << cv[0] << ", " << cv[1] << "; mass error " << num(std::abs(mass - 1.0))
               << "; Kolmogorov " << num(kd);
    });

    criterion(13, "bilinear form as a contour integral equals the direct product", [](Outcome& o) {
        std::mt19937_64 rng(13);
        std::normal_distribution<double> N;
        std::uniform_int_distribution<int> D(1, 8);
        Symbol tri = oracle_tridiag(1).symbol;
        std::vector<cplx> ex(16);
        double f = 1.0;
        for (int m = 0; m < 16; ++m) {
            ex[m] = 1.0 / f;
            f *= m + 1;
        }
        // exp(1/z + z) truncated to [-12, 12]
        Symbol ea = compose_entire(ex, tri, 12, 12).series;
        JordanCurveSamples circle = circle_curve(1.0, 1024);
        TraceResult tr = trace_polar(oracle_example3(1, 2, 1).symbol, 4096);
        o.require(tr.found, "(1,2) curve not traced");
        if (!tr.found) return;
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            int n = D(rng);
            std::vector<cplx> u(n), v(n);
            Eigen::VectorXcd U(n), V(n);
            for (int i = 0; i < n; ++i) {
                U(i) = u[i] = cplx(N(rng), N(rng));
                V(i) = v[i] = cplx(N(rng), N(rng));
            }
            const Symbol& a = trial % 2 ? ea : tri;
            const JordanCurveSamples& c = trial % 4 < 2 ? circle : tr.curve;
            cplx want = U.dot(toeplitz_section(a, n).entries * V);
            worst = std::max(worst, std::abs(bilinear_form_curve(a, u, v, c) - want));
        }
        o.require(worst <= 1e-10, "error " + num(worst));
        o.note << "max error " << num(worst);
    });

    criterion(14, "Monte Carlo det H_2 within 3 standard errors, 1e5 samples", [](Outcome& o) {
        struct Case {
            const char* name;
            double exact;
        };
        for (Case c : {Case{"tridiag-a1", 2.0}, Case{"fourdiag-a1", 6.0}}) {
            MonteCarloEstimate e = hankel_det_mc(fixture(c.name).symbol, 2, 100000, 20240607, 4);
            double dev = std::abs(e.estimate - c.exact);
            o.require(dev <= 3 * e.std_error, std::string(c.name) + " off by " + num(dev / e.std_error) + " se");
            o.note << c.name << " " << e.estimate.real() << " +- " << num(e.std_error) << " ";
        }
    });

    criterion(15, "Hankel positivity to N = 15 for YES fixtures, failure at n = 2 for 1/z + z^2", [](Outcome& o) {
        for (const auto& f : fixtures()) {
            if (is_class_R(f.symbol).verdict != ClassR::yes) continue;
            PositivityReport pr = hankel_positivity(moments(f.symbol, 30), 15);
            o.require(pr.pass && pr.checked == 15, f.name + " fails at n=" + std::to_string(pr.first_failure));
        }
        PositivityReport t = hankel_positivity(moments(fixture("trinomial").symbol, 30), 15);
        o.require(!t.pass && t.first_failure == 2, "trinomial first failure " + std::to_string(t.first_failure));
    });

    criterion(16, "breaking family: alpha = -2 YES, alpha = 2 NO with a witness at n <= 30", [](Outcome& o) {
        ClassRVerdict a = is_class_R(fixture("break-m2").symbol, 30);
        o.require(a.verdict == ClassR::yes, "alpha=-2 gave " + class_name(a.verdict));
        ClassRVerdict b = is_class_R(fixture("break-2").symbol, 30);
        o.require(b.verdict == ClassR::no && b.witness_n >= 1 && b.witness_n <= 30 && b.witness_lambda.imag() != 0.0,
                  "alpha=2 gave " + class_name(b.verdict));
        if (b.verdict == ClassR::no) o.note << "witness n=" << b.witness_n << " lambda=" << b.witness_lambda;
    });

    std::printf("%d of 16 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
