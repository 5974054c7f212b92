#include "bandspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bandspec/polyroots.hpp"
#include "bandspec/qpoly.hpp"

namespace bandspec {

namespace {

dd mpq_to_dd(const mpq_class& q) {
    double h = q.get_d();
    mpq_class rest = q - mpq_class(h);
    return dd(h) + dd(rest.get_d());
}

void check_duplicates(const std::vector<int>& ks) {
    std::set<int> seen;
    for (int k : ks)
        if (!seen.insert(k).second) throw std::invalid_argument("duplicate power k=" + std::to_string(k));
}

void check_kind(int lo, int hi, bool empty, SymbolKind kind) {
    if (kind != SymbolKind::banded) return;
    if (empty) throw std::invalid_argument("symbol has no nonzero coefficient");
    if (!(lo < 0 && hi > 0))
        throw std::invalid_argument("symbol needs nonzero negative and positive powers (r, s >= 1)");
}

}  // namespace

cplx Symbol::coeff(int k) const {
    if (k < lo_ || k > hi_) return {0.0, 0.0};
    return coeffs_[k - lo_];
}

mpq_class Symbol::exact_coeff(int k) const {
    if (!exact_) throw std::logic_error("symbol has no exact coefficients");
    if (k < lo_ || k > hi_) return 0;
    return (*exact_)[k - lo_];
}

dd Symbol::coeff_dd(int k) const {
    if (k < lo_ || k > hi_) return dd(0.0);
    return coeffs_dd_[k - lo_];
}

std::vector<std::pair<int, cplx>> Symbol::entries() const {
    std::vector<std::pair<int, cplx>> out;
    for (int k = lo_; k <= hi_; ++k)
        if (coeffs_[k - lo_] != cplx(0.0)) out.emplace_back(k, coeffs_[k - lo_]);
    return out;
}

std::vector<std::pair<int, mpq_class>> Symbol::exact_entries() const {
    if (!exact_) throw std::logic_error("symbol has no exact coefficients");
    std::vector<std::pair<int, mpq_class>> out;
    for (int k = lo_; k <= hi_; ++k)
        if ((*exact_)[k - lo_] != 0) out.emplace_back(k, (*exact_)[k - lo_]);
    return out;
}

Symbol make_symbol(const std::vector<std::pair<int, cplx>>& entries, SymbolKind kind) {
    if (entries.empty()) throw std::invalid_argument("empty coefficient list");
    std::vector<int> ks;
    for (const auto& [k, a] : entries) {
        ks.push_back(k);
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("non-finite coefficient at k=" + std::to_string(k));
    }
    check_duplicates(ks);
    std::map<int, cplx> m;
    for (const auto& [k, a] : entries)
        if (a != cplx(0.0)) m[k] = a;
    Symbol b;
    if (!m.empty()) {
        b.lo_ = m.begin()->first;
        b.hi_ = m.rbegin()->first;
    }
    check_kind(b.lo_, b.hi_, m.empty(), kind);
    if (m.empty()) return b;
    b.coeffs_.assign(b.hi_ - b.lo_ + 1, cplx(0.0));
    b.coeffs_dd_.assign(b.hi_ - b.lo_ + 1, dd(0.0));
    for (const auto& [k, a] : m) {
        b.coeffs_[k - b.lo_] = a;
        b.coeffs_dd_[k - b.lo_] = dd(a.real());
        if (a.imag() != 0.0) b.real_ = false;
    }
    return b;
}

Symbol make_symbol_exact(const std::vector<std::pair<int, mpq_class>>& entries, SymbolKind kind) {
    if (entries.empty()) throw std::invalid_argument("empty coefficient list");
    std::vector<int> ks;
    for (const auto& e : entries) ks.push_back(e.first);
    check_duplicates(ks);
    std::map<int, mpq_class> m;
    for (const auto& [k, a] : entries)
        if (a != 0) m[k] = a;
    Symbol b;
    if (!m.empty()) {
        b.lo_ = m.begin()->first;
        b.hi_ = m.rbegin()->first;
    }
    check_kind(b.lo_, b.hi_, m.empty(), kind);
    b.exact_ = std::vector<mpq_class>();
    if (m.empty()) return b;
    int w = b.hi_ - b.lo_ + 1;
    b.coeffs_.assign(w, cplx(0.0));
    b.coeffs_dd_.assign(w, dd(0.0));
    b.exact_->assign(w, mpq_class(0));
    for (auto& [k, a] : m) {
        a.canonicalize();
        (*b.exact_)[k - b.lo_] = a;
        b.coeffs_[k - b.lo_] = cplx(a.get_d(), 0.0);
        b.coeffs_dd_[k - b.lo_] = mpq_to_dd(a);
    }
    return b;
}

cplx eval(const Symbol& b, cplx z) {
    if (z == cplx(0.0)) throw std::invalid_argument("eval: z = 0 is a pole");
    if (b.is_zero()) return {0.0, 0.0};
    cplx pos(0.0), neg(0.0);
    for (int k = b.hi(); k >= std::max(b.lo(), 0); --k) pos = pos * z + b.coeff(k);
    if (b.lo() > 0) pos *= std::pow(z, b.lo());
    if (b.lo() < 0) {
        cplx w = 1.0 / z;
        for (int k = b.lo(); k <= std::min(b.hi(), -1); ++k) neg = neg * w + b.coeff(k);
        neg *= std::pow(w, -std::min(b.hi(), -1));
    }
    return pos + neg;
}

Symbol derivative(const Symbol& b) {
    if (b.has_exact()) {
        std::vector<std::pair<int, mpq_class>> e;
        for (auto& [k, a] : b.exact_entries())
            if (k != 0) e.emplace_back(k - 1, a * k);
        if (e.empty()) e.emplace_back(0, mpq_class(0));
        return make_symbol_exact(e, SymbolKind::general);
    }
    std::vector<std::pair<int, cplx>> e;
    for (auto& [k, a] : b.entries())
        if (k != 0) e.emplace_back(k - 1, a * static_cast<double>(k));
    if (e.empty()) e.emplace_back(0, cplx(0.0));
    return make_symbol(e, SymbolKind::general);
}

std::vector<CriticalPoint> critical_points(const Symbol& b) {
    // Q(z) = sum_k k a_k z^{k - kmin}: z^{r+1} b'(z) with zero roots divided out
    int kmin = 0, kmax = 0;
    bool any = false;
    for (int k = b.lo(); k <= b.hi(); ++k) {
        if (k == 0 || b.coeff(k) == cplx(0.0)) continue;
        if (!any) kmin = k;
        kmax = k;
        any = true;
    }
    if (!any) throw std::invalid_argument("critical_points: constant symbol");
    std::vector<CriticalPoint> out;
    if (kmax == kmin) return out;

    if (b.has_exact()) {
        QPoly q(kmax - kmin + 1);
        for (int k = kmin; k <= kmax; ++k) q[k - kmin] = b.exact_coeff(k) * k;
        for (const auto& [factor, mult] : squarefree_decomposition(q)) {
            if (degree(factor) < 1) continue;
            std::vector<cplx> c;
            for (const auto& v : factor) c.emplace_back(v.get_d(), 0.0);
            for (cplx z : roots(c, 1e-14)) out.push_back({z, mult});
        }
    } else {
        std::vector<cplx> c(kmax - kmin + 1);
        for (int k = kmin; k <= kmax; ++k) c[k - kmin] = b.coeff(k) * static_cast<double>(k);
        std::vector<cplx> z = roots(c, 1e-14);
        std::vector<bool> used(z.size(), false);
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (used[i]) continue;
            cplx sum = z[i];
            int m = 1;
            used[i] = true;
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                if (!used[j] && std::abs(z[j] - z[i]) < 1e-4 * (1.0 + std::abs(z[i]))) {
                    used[j] = true;
                    sum += z[j];
                    ++m;
                }
            }
            cplx z0 = sum / static_cast<double>(m);
            // a root of multiplicity m is a simple root of the (m-1)-th derivative
            if (m > 1) {
                std::vector<cplx> d = c;
                for (int k = 1; k < m; ++k) {
                    for (std::size_t i = 1; i < d.size(); ++i) d[i - 1] = d[i] * static_cast<double>(i);
                    d.pop_back();
                }
                for (int it = 0; it < 8; ++it) {
                    cplx p = 0.0, dp = 0.0;
                    for (std::size_t i = d.size(); i-- > 0;) {
                        dp = dp * z0 + p;
                        p = p * z0 + d[i];
                    }
                    if (dp == cplx(0.0)) break;
                    cplx step = p / dp;
                    if (!(std::abs(step) < 1e-4 * (1.0 + std::abs(z0)))) break;
                    z0 -= step;
                    if (std::abs(step) <= 1e-16 * std::abs(z0)) break;
                }
            }
            out.push_back({z0, m});
        }
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& c) {
        if (a.z.real() != c.z.real()) return a.z.real() < c.z.real();
        return a.z.imag() < c.z.imag();
    });
    return out;
}

TruncatedSymbol compose_entire(const std::vector<cplx>& f, const Symbol& b, int R, int S, Annulus annulus) {
    if (f.empty()) throw std::invalid_argument("compose_entire: empty Taylor list");
    if (R < 0 || S < 0) throw std::invalid_argument("compose_entire: negative truncation bound");
    int m0 = -1;
    for (std::size_t m = 1; m < f.size(); ++m)
        if (f[m] != cplx(0.0)) {
            m0 = static_cast<int>(m);
            break;
        }
    if (m0 > 0 && (R < m0 * b.r() || S < m0 * b.s()))
        throw std::invalid_argument("compose_entire: truncation [-" + std::to_string(R) + "," + std::to_string(S) +
                                    "] excludes the band of the first nonconstant term");
    // running power b^m as a dense Laurent array over [plo, phi]
    int plo = 0, phi = 0;
    std::vector<cplx> p{cplx(1.0)};
    std::map<int, cplx> acc;
    acc[0] += f[0];
    for (std::size_t m = 1; m < f.size(); ++m) {
        int nlo = plo + b.lo(), nhi = phi + b.hi();
        std::vector<cplx> q(nhi - nlo + 1, cplx(0.0));
        for (int i = plo; i <= phi; ++i)
            for (int k = b.lo(); k <= b.hi(); ++k) q[i + k - nlo] += p[i - plo] * b.coeff(k);
        p.swap(q);
        plo = nlo;
        phi = nhi;
        if (f[m] == cplx(0.0)) continue;
        for (int i = plo; i <= phi; ++i) acc[i] += f[m] * p[i - plo];
    }
    TruncatedSymbol out;
    out.R = R;
    out.S = S;
    std::vector<std::pair<int, cplx>> kept;
    for (const auto& [k, c] : acc) {
        if (k >= -R && k <= S) {
            kept.emplace_back(k, c);
        } else {
            double rho = k < 0 ? annulus.rho_min : annulus.rho_max;
            out.tail_bound += std::abs(c) * std::pow(rho, k);
        }
    }
    if (kept.empty()) kept.emplace_back(0, cplx(0.0));
    out.series = make_symbol(kept, SymbolKind::general);
    return out;
}

double norm_bound(const Symbol& b) {
    double s = 0.0;
    for (const auto& c : b.coeffs()) s += std::abs(c);
    return s;
}

Symbol symbol_from_json(const std::string& text, SymbolKind kind) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("symbol JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("symbol JSON: expected an object with a \"coeffs\" array");
    std::vector<std::pair<int, mpq_class>> exact;
    std::vector<std::pair<int, cplx>> flt;
    bool all_exact = true;
    for (const auto& item : j["coeffs"]) {
        if (!item.contains("k") || !item["k"].is_number_integer())
            throw std::invalid_argument("symbol JSON: each entry needs an integer \"k\"");
        int k = item["k"].get<int>();
        if (item.contains("num")) {
            auto as_str = [](const nlohmann::json& v) {
                return v.is_string() ? v.get<std::string>() : v.dump();
            };
            std::string num = as_str(item["num"]);
            std::string den = item.contains("den") ? as_str(item["den"]) : "1";
            mpq_class q;
            try {
                q = mpq_class(mpz_class(num), mpz_class(den));
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("symbol JSON: bad rational at k=" + std::to_string(k));
            }
            if (q.get_den() == 0) throw std::invalid_argument("symbol JSON: zero denominator");
            q.canonicalize();
            exact.emplace_back(k, q);
            flt.emplace_back(k, cplx(q.get_d(), 0.0));
        } else if (item.contains("re") || item.contains("im")) {
            double re = item.value("re", 0.0), im = item.value("im", 0.0);
            flt.emplace_back(k, cplx(re, im));
            all_exact = false;
        } else {
            throw std::invalid_argument("symbol JSON: entry k=" + std::to_string(k) + " has no value");
        }
    }
    if (all_exact) return make_symbol_exact(exact, kind);
    return make_symbol(flt, kind);
}

std::string symbol_to_json(const Symbol& b) {
    nlohmann::json arr = nlohmann::json::array();
    if (b.has_exact()) {
        for (const auto& [k, q] : b.exact_entries())
            arr.push_back({{"k", k}, {"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}});
    } else {
        for (const auto& [k, c] : b.entries()) arr.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    }
    return nlohmann::json{{"coeffs", arr}}.dump();
}

std::string describe(const Symbol& b) {
    std::ostringstream os;
    bool first = true;
    for (int k = b.lo(); k <= b.hi(); ++k) {
        cplx c = b.coeff(k);
        if (c == cplx(0.0)) continue;
        if (!first) os << " + ";
        first = false;
        if (b.has_exact())
            os << b.exact_coeff(k).get_str();
        else if (c.imag() == 0.0)
            os << c.real();
        else
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (k != 0) os << "*z^" << k;
    }
    return first ? "0" : os.str();
}

}  // namespace bandspec
