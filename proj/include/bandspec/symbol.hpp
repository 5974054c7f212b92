#pragma once
// Laurent polynomial symbols b(z) = sum_{k=lo}^{hi} a_k z^k.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bandspec/double_double.hpp"

namespace bandspec {

using cplx = std::complex<double>;

enum class SymbolKind {
    banded,   // requires r, s >= 1
    general   // any Laurent polynomial (derivatives, one-sided series)
};

class Symbol {
public:
    Symbol() = default;

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    // band widths; only meaningful as a Toeplitz band when lo < 0 < hi
    int r() const { return lo_ < 0 ? -lo_ : 0; }
    int s() const { return hi_ > 0 ? hi_ : 0; }
    bool is_banded() const { return lo_ < 0 && hi_ > 0; }
    bool is_zero() const { return coeffs_.empty(); }
    bool real_coefficients() const { return real_; }
    bool has_exact() const { return exact_.has_value(); }

    cplx coeff(int k) const;
    // exact coefficient; throws if the symbol carries no rational data
    mpq_class exact_coeff(int k) const;
    // real part of a_k in double-double (exact rational input converts to full dd accuracy)
    dd coeff_dd(int k) const;

    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::vector<std::pair<int, cplx>> entries() const;
    std::vector<std::pair<int, mpq_class>> exact_entries() const;

    friend Symbol make_symbol(const std::vector<std::pair<int, cplx>>&, SymbolKind);
    friend Symbol make_symbol_exact(const std::vector<std::pair<int, mpq_class>>&, SymbolKind);

private:
    int lo_ = 0;
    int hi_ = -1;
    std::vector<cplx> coeffs_;   // coeffs_[k - lo_]
    std::vector<dd> coeffs_dd_;  // real parts
    std::optional<std::vector<mpq_class>> exact_;
    bool real_ = true;
};

// Trims zero band edges. Throws std::invalid_argument on empty input, duplicate powers,
// non-finite values, or (kind == banded) a trimmed symbol without both negative and positive powers.
Symbol make_symbol(const std::vector<std::pair<int, cplx>>& entries, SymbolKind kind = SymbolKind::banded);
Symbol make_symbol_exact(const std::vector<std::pair<int, mpq_class>>& entries,
                         SymbolKind kind = SymbolKind::banded);

cplx eval(const Symbol& b, cplx z);
Symbol derivative(const Symbol& b);

struct CriticalPoint {
    cplx z;
    int multiplicity = 1;
};

// Roots of z^{r+1} b'(z) other than 0. Multiplicities come from an exact square-free
// decomposition when rational coefficients are available, otherwise from clustering.
std::vector<CriticalPoint> critical_points(const Symbol& b);

struct TruncatedSymbol {
    Symbol series;            // general kind
    double tail_bound = 0.0;  // dropped absolute coefficient mass on the annulus
    int R = 0;
    int S = 0;
};

struct Annulus {
    double rho_min = 0.5;
    double rho_max = 2.0;
};

// Truncated Laurent expansion of f(b(z)) with f given by Taylor coefficients f_0, f_1, ...
TruncatedSymbol compose_entire(const std::vector<cplx>& f_taylor, const Symbol& b, int R, int S,
                               Annulus annulus = {});

double norm_bound(const Symbol& b);

// {"coeffs":[{"k":-1,"re":1.0,"im":0.0},...]} or {"coeffs":[{"k":-1,"num":"1","den":"1"},...]}
Symbol symbol_from_json(const std::string& text, SymbolKind kind = SymbolKind::banded);
std::string symbol_to_json(const Symbol& b);

std::string describe(const Symbol& b);

}  // namespace bandspec
