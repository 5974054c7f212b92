// bandspec: command-line front end for the banded Toeplitz spectral pipelines.
//
// Exit codes: 0 success, 1 numeric failure (error JSON on stderr), 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandspec/curve.hpp"
#include "bandspec/jacobi.hpp"
#include "bandspec/limiting_set.hpp"
#include "bandspec/measure.hpp"
#include "bandspec/moments.hpp"
#include "bandspec/oracles.hpp"
#include "bandspec/symbol.hpp"
#include "bandspec/toeplitz.hpp"

using namespace bandspec;
using json = nlohmann::json;

namespace {

// thrown for bad user input discovered after parsing (unknown fixture, bad symbol text)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SymbolSource {
    std::string fixture, inline_json, file;
};

struct Common {
    SymbolSource src;
    std::string format = "csv";
    std::string output;
    int threads = 1;
};

int default_threads() {
    if (const char* e = std::getenv("BANDSPEC_THREADS")) {
        int v = std::atoi(e);
        if (v >= 1) return v;
    }
    return 1;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Symbol load_symbol(const SymbolSource& s) {
    int given = !s.fixture.empty() + !s.inline_json.empty() + !s.file.empty();
    if (given != 1) throw UsageError("exactly one of --fixture, --symbol, --symbol-file is required");
    try {
        if (!s.fixture.empty()) return fixture(s.fixture).symbol;
        if (!s.inline_json.empty()) return symbol_from_json(s.inline_json);
        std::ifstream in(s.file);
        if (!in) throw UsageError("cannot read " + s.file);
        std::stringstream ss;
        ss << in.rdbuf();
        return symbol_from_json(ss.str());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void add_common(CLI::App* sub, Common& c, bool needs_symbol = true) {
    if (needs_symbol) {
        auto* f = sub->add_option("--fixture", c.src.fixture, "named fixture (see `fixtures`)");
        auto* s = sub->add_option("--symbol", c.src.inline_json,
                                  "symbol as JSON: {\"coeffs\":[{\"k\":-1,\"num\":\"1\",\"den\":\"1\"},...]} "
                                  "or entries with \"re\"/\"im\"");
        auto* p = sub->add_option("--symbol-file", c.src.file, "file holding symbol JSON");
        f->excludes(s, p);
        s->excludes(p);
    }
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads (default: $BANDSPEC_THREADS or 1)")
        ->check(CLI::PositiveNumber);
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw UsageError("cannot write " + c.output);
    out << text;
}

std::string csv(const std::string& header, const std::vector<std::vector<std::string>>& rows) {
    std::string s = header + "\n";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
        s += "\n";
    }
    return s;
}

std::string rational(const mpq_class& q) { return q.get_den() == 1 ? q.get_num().get_str() : q.get_str(); }

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of banded Toeplitz matrices: limiting sets, class-R test, limiting measures"};
    app.require_subcommand(1);
    Common c;
    c.threads = default_threads();

    int n = 0, m = 0, bins = 20, resolution = 512, n_r = 512, n_theta = 512, samples = 4096, n_probe = 30;
    int nodes = 32, levels = 7;
    long mc_samples = 0;
    std::uint64_t seed = 1;
    double tol = 1e-6, eps0 = 0.0;
    std::vector<double> region, lambda, range;
    std::string mode = "exact", from = "both";

    auto* eig = app.add_subcommand("eig", "eigenvalues of the n x n section T_n(b)");
    add_common(eig, c);
    eig->add_option("-n", n, "matrix size")->required()->check(CLI::PositiveNumber);
    eig->footer("Output: re,im per eigenvalue sorted by (Re, Im); dimensionless (same units as b).");

    auto* lim = app.add_subcommand("limit-set", "point cloud of the limiting eigenvalue set (zero root-modulus defect)");
    add_common(lim, c);
    lim->add_option("--resolution", resolution, "grid points per side")->check(CLI::Range(8, 8192));
    lim->add_option("--tol", tol, "acceptance threshold on the relative defect")->check(CLI::PositiveNumber);
    lim->add_option("--region", region, "re_min re_max im_min im_max (default: square around |lambda| <= norm bound)")
        ->expected(4);
    lim->footer("Output: re,im,defect; defect = (|z_{r+1}| - |z_r|) / (1 + |z_r|).");

    auto* net = app.add_subcommand("net", "polylines of the set where b is real, on a log-polar grid");
    add_common(net, c);
    net->add_option("--nr", n_r, "grid points in log|z|")->check(CLI::Range(8, 8192));
    net->add_option("--ntheta", n_theta, "grid points in arg z (even)")->check(CLI::Range(8, 8192));
    net->footer("Output: polyline,re,im (points in the z-plane); json adds the encircling flag.");

    auto* curve = app.add_subcommand("curve", "polar Jordan curve z = rho(t) e^{it} on which b is real");
    add_common(curve, c);
    curve->add_option("--samples", samples, "intervals on [-pi, pi] (multiple of 4)")->check(CLI::PositiveNumber);
    curve->footer("Output: t (radians),rho,value = b(rho e^{it}); json adds the critical-angle partition.");

    auto* cls = app.add_subcommand("class-r", "decide whether every T_n(b) has real spectrum");
    add_common(cls, c);
    cls->add_option("--n-probe", n_probe, "largest n checked for a non-real witness")->check(CLI::PositiveNumber);
    cls->footer("Output: verdict YES|NO|UNKNOWN; YES carries the curve residual, NO the witness n and eigenvalue.");

    auto* mom = app.add_subcommand("moments", "h_m = constant coefficient of b^m");
    add_common(mom, c);
    mom->add_option("-m", m, "largest m")->required()->check(CLI::NonNegativeNumber);
    mom->footer("Output: m,value (exact rationals for rational symbols, else re,im).");

    auto* hk = app.add_subcommand("hankel", "Hankel determinants det H_k, det H~_k and positivity");
    add_common(hk, c);
    hk->add_option("-n", n, "largest k")->required()->check(CLI::PositiveNumber);
    hk->add_option("--mc-samples", mc_samples, "also estimate det H_n by Monte Carlo on the unit circle (>= 1000)");
    hk->add_option("--seed", seed, "RNG seed for --mc-samples");
    hk->footer("Output: k,det_H,det_Ht (exact for rational symbols); json adds positivity and the MC estimate.");

    auto* jac = app.add_subcommand("jacobi", "recurrence coefficients a_k, b_k of the orthogonal polynomials");
    add_common(jac, c);
    jac->add_option("-n", n, "number of pairs")->required()->check(CLI::PositiveNumber);
    jac->add_option("--mode", mode, "exact (Hankel determinants) or chebyshev (double-double, n <= 40)")
        ->check(CLI::IsMember({"exact", "chebyshev"}));
    jac->footer("Output: k,a_k,b_k,a_k^2 (a_k^2 and b_k exact in exact mode).");

    auto* den = app.add_subcommand("density", "density of the limiting measure from the curve and from the m-function");
    add_common(den, c);
    den->add_option("--nodes", nodes, "interior nodes per branch")->check(CLI::PositiveNumber);
    den->add_option("--from", from, "curve, m or both")->check(CLI::IsMember({"curve", "m", "both"}));
    den->add_option("--levels", levels, "extrapolation levels for the m route")->check(CLI::Range(2, 20));
    den->footer("Output: branch,x,density_curve,density_m,error_m; density in 1/(units of x).");

    auto* mf = app.add_subcommand("mfunc", "Weyl m-function m(lambda) = int dmu(x) / (x - lambda)");
    add_common(mf, c);
    mf->add_option("--lambda", lambda, "re im of lambda (off the limiting set)")->required()->expected(2);
    mf->add_option("--tol", tol, "relative tolerance of the contour quadrature")->check(CLI::PositiveNumber);
    mf->footer("Output: re,im of m(lambda).");

    auto* hist = app.add_subcommand("hist", "histogram of Re of the eigenvalues of T_n(b)");
    add_common(hist, c);
    hist->add_option("-n", n, "matrix size")->required()->check(CLI::PositiveNumber);
    hist->add_option("--bins", bins, "number of equal bins")->check(CLI::PositiveNumber);
    hist->add_option("--range", range, "lo hi (default: min and max of Re lambda)")->expected(2);
    hist->footer("Output: lo,hi,count per bin; counts sum to n when the range covers all eigenvalues.");

    auto* fx = app.add_subcommand("fixtures", "list the named fixtures");
    add_common(fx, c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const bool js = c.format == "json";
        std::string out;
        if (fx->parsed()) {
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (const auto& f : fixtures()) {
                arr.push_back({{"name", f.name}, {"description", f.description}, {"symbol", json::parse(symbol_to_json(f.symbol))}});
                rows.push_back({f.name, "\"" + f.description + "\""});
            }
            out = js ? arr.dump(2) + "\n" : csv("name,description", rows);
            emit(c, out);
            return 0;
        }
        Symbol b = load_symbol(c.src);

        if (eig->parsed()) {
            EigenOptions opts;
            opts.real_tol = 1e-10 * norm_bound(b);
            EigenReport r = eigenvalues(b, n, opts);
            if (js) {
                json ev = json::array();
                for (auto z : r.eigenvalues) ev.push_back(cjson(z));
                out = json{{"n", n}, {"max_imag", r.max_imag}, {"residual", r.residual},
                           {"precision", r.precision == Precision::float64 ? "float64" : "double-double"},
                           {"eigenvalues", ev}}
                          .dump(2) +
                      "\n";
            } else {
                std::vector<std::vector<std::string>> rows;
                for (auto z : r.eigenvalues) rows.push_back({num(z.real()), num(z.imag())});
                out = csv("re,im", rows);
            }
        } else if (lim->parsed()) {
            std::optional<Region> reg;
            if (!region.empty()) reg = Region{region[0], region[1], region[2], region[3]};
            LimitingSetCloud cl = limiting_set_scan(b, reg, resolution, tol, c.threads);
            if (js) {
                json pts = json::array();
                for (size_t i = 0; i < cl.points.size(); ++i)
                    pts.push_back({cl.points[i].real(), cl.points[i].imag(), cl.defects[i]});
                out = json{{"grid_step", cl.grid_step}, {"tol", cl.tol}, {"points", pts}}.dump(2) + "\n";
            } else {
                std::vector<std::vector<std::string>> rows;
                for (size_t i = 0; i < cl.points.size(); ++i)
                    rows.push_back({num(cl.points[i].real()), num(cl.points[i].imag()), num(cl.defects[i])});
                out = csv("re,im,defect", rows);
            }
        } else if (net->parsed()) {
            if (n_theta % 2) throw UsageError("--ntheta must be even");
            NetPlot p = compute_net(b, default_net_window(b), n_r, n_theta, c.threads);
            if (js) {
                json lines = json::array();
                for (const auto& pl : p.polylines) {
                    json l = json::array();
                    for (auto z : pl) l.push_back(cjson(z));
                    lines.push_back(l);
                }
                out = json{{"encircling", p.encircling}, {"max_vertex_residual", p.max_vertex_residual},
                           {"log_rho_min", p.window.log_rho_min}, {"log_rho_max", p.window.log_rho_max},
                           {"polylines", lines}}
                          .dump() +
                      "\n";
            } else {
                std::vector<std::vector<std::string>> rows;
                for (size_t i = 0; i < p.polylines.size(); ++i)
                    for (auto z : p.polylines[i]) rows.push_back({std::to_string(i), num(z.real()), num(z.imag())});
                out = csv("polyline,re,im", rows);
            }
        } else if (curve->parsed()) {
            if (samples % 4) throw UsageError("--samples must be a multiple of 4");
            TraceResult tr = trace_polar(b, samples);
            if (!tr.found) throw std::runtime_error("no polar curve: " + tr.reason);
            JordanCurveSamples jc = curve_critical_partition(b, tr.curve);
            if (js) {
                const auto& P = jc.partition;
                json pts = json::array();
                for (int j = 0; j <= jc.intervals(); ++j) pts.push_back({jc.t[j], jc.rho[j], jc.values[j]});
                out = json{{"max_residual", jc.max_residual},
                           {"partition", {{"phi", P.phi}, {"alpha", P.alpha}, {"beta", P.beta}, {"orientation", P.orientation}}},
                           {"samples", pts}}
                          .dump() +
                      "\n";
            } else {
                std::vector<std::vector<std::string>> rows;
                for (int j = 0; j <= jc.intervals(); ++j) rows.push_back({num(jc.t[j]), num(jc.rho[j]), num(jc.values[j])});
                out = csv("t,rho,value", rows);
            }
        } else if (cls->parsed()) {
            ClassRVerdict v = is_class_R(b, n_probe);
            json j{{"verdict", class_name(v.verdict)}, {"note", v.note}};
            if (v.verdict == ClassR::yes) j["curve_residual"] = v.curve_residual;
            if (v.witness_n > 0) {
                j["witness_n"] = v.witness_n;
                j["witness_lambda"] = cjson(v.witness_lambda);
            }
            if (js) {
                out = j.dump(2) + "\n";
            } else {
                out = csv("verdict,witness_n,witness_re,witness_im,curve_residual",
                          {{class_name(v.verdict), std::to_string(v.witness_n), num(v.witness_lambda.real()),
                            num(v.witness_lambda.imag()), num(v.curve_residual)}});
            }
        } else if (mom->parsed()) {
            MomentSequence ms = moments(b, m);
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (int k = 0; k <= m; ++k) {
                if (ms.is_exact()) {
                    arr.push_back(rational((*ms.exact)[k]));
                    rows.push_back({std::to_string(k), rational((*ms.exact)[k])});
                } else {
                    arr.push_back(cjson(ms.values[k]));
                    rows.push_back({std::to_string(k), num(ms.values[k].real()), num(ms.values[k].imag())});
                }
            }
            out = js ? json{{"exact", ms.is_exact()}, {"moments", arr}}.dump(2) + "\n"
                     : csv(ms.is_exact() ? "m,value" : "m,re,im", rows);
        } else if (hk->parsed()) {
            MomentSequence ms = moments(b, 2 * n);
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (int k = 1; k <= n; ++k) {
                HankelData hd = hankel(ms, k);
                std::string d = hd.exact ? rational(hd.det_H) : num(hd.det_Hf.real());
                std::string dt = hd.exact ? rational(hd.det_Ht) : num(hd.det_Htf.real());
                arr.push_back({{"k", k}, {"det_H", d}, {"det_Ht", dt}});
                rows.push_back({std::to_string(k), d, dt});
            }
            PositivityReport pr = hankel_positivity(ms, n);
            json j{{"exact", ms.is_exact()}, {"determinants", arr},
                   {"positivity", {{"pass", pr.pass}, {"checked", pr.checked}, {"first_failure", pr.first_failure}}}};
            if (mc_samples > 0) {
                MonteCarloEstimate e = hankel_det_mc(b, n, mc_samples, seed, c.threads);
                j["monte_carlo"] = {{"estimate", cjson(e.estimate)}, {"std_error", e.std_error},
                                    {"samples", e.samples}, {"seed", e.seed}};
            }
            out = js ? j.dump(2) + "\n" : csv("k,det_H,det_Ht", rows);
        } else if (jac->parsed()) {
            JacobiMode jm = mode == "exact" ? JacobiMode::exact_hankel : JacobiMode::chebyshev;
            MomentSequence ms = moments(b, 2 * n + 1, jm == JacobiMode::chebyshev && !b.has_exact());
            JacobiParameters jp = jacobi_params(ms, n, jm);
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (int k = 0; k < jp.N(); ++k) {
                std::string a2 = jp.a2_exact ? rational((*jp.a2_exact)[k]) : num(jp.a[k] * jp.a[k]);
                std::string bk = jp.b_exact ? rational((*jp.b_exact)[k]) : num(jp.b[k]);
                arr.push_back({{"k", k + 1}, {"a", jp.a[k]}, {"b", bk}, {"a2", a2}});
                rows.push_back({std::to_string(k + 1), num(jp.a[k]), bk, a2});
            }
            out = js ? json{{"mode", mode_name(jm)}, {"requested", jp.requested}, {"reliable", jp.reliable}, {"params", arr}}
                               .dump(2) + "\n"
                     : csv("k,a,b,a2", rows);
        } else if (den->parsed()) {
            TraceResult tr = trace_polar(b);
            if (!tr.found) throw std::runtime_error("no polar curve: " + tr.reason);
            JordanCurveSamples jc = curve_critical_partition(b, tr.curve);
            DensitySamples ds = density_from_curve(b, jc, nodes);
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (size_t i = 0; i < ds.x.size(); ++i) {
                double x = ds.x[i];
                std::string rc = from != "m" ? num(ds.rho[i]) : "";
                std::string rm, em;
                if (from != "curve") {
                    InversionResult ir = density_from_m(b, x, eps0 > 0 ? eps0 : default_eps0(b, x), levels);
                    // the m route sees the summed density over all branches
                    rm = num(ir.density);
                    em = num(ir.error);
                }
                arr.push_back({{"branch", ds.branch[i]}, {"x", x}, {"density_curve", rc}, {"density_m", rm}, {"error_m", em}});
                rows.push_back({std::to_string(ds.branch[i]), num(x), rc, rm, em});
            }
            json j{{"support", {ds.alpha, ds.beta}}, {"nodes", arr}};
            out = js ? j.dump(2) + "\n" : csv("branch,x,density_curve,density_m,error_m", rows);
        } else if (mf->parsed()) {
            cplx v = weyl_m(b, cplx(lambda[0], lambda[1]), tol);
            out = js ? json{{"lambda", {lambda[0], lambda[1]}}, {"m", cjson(v)}}.dump(2) + "\n"
                     : csv("re,im", {{num(v.real()), num(v.imag())}});
        } else if (hist->parsed()) {
            EigenOptions opts;
            opts.real_tol = 1e-10 * norm_bound(b);
            EigenReport r = eigenvalues(b, n, opts);
            std::vector<double> re;
            for (auto z : r.eigenvalues) re.push_back(z.real());
            double lo = range.empty() ? *std::min_element(re.begin(), re.end()) : range[0];
            double hi = range.empty() ? *std::max_element(re.begin(), re.end()) : range[1];
            if (!(hi > lo)) hi = lo + 1.0;
            Histogram h = histogram(re, bins, lo, hi);
            json arr = json::array();
            std::vector<std::vector<std::string>> rows;
            for (int k = 0; k < bins; ++k) {
                double a = lo + (hi - lo) * k / bins, e = lo + (hi - lo) * (k + 1) / bins;
                arr.push_back({{"lo", a}, {"hi", e}, {"count", h.counts[k]}});
                rows.push_back({num(a), num(e), std::to_string(h.counts[k])});
            }
            out = js ? json{{"n", n}, {"max_imag", r.max_imag}, {"bins", arr}}.dump(2) + "\n" : csv("lo,hi,count", rows);
        }
        emit(c, out);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "numeric"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
