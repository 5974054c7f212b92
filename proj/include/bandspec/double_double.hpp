#pragma once
// Unevaluated sum of two doubles (about 31 significant digits).
// Algorithms follow the usual error-free transformations (two_sum, fma-based two_prod).

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include <Eigen/Core>

namespace bandspec {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    dd(int v) : hi(static_cast<double>(v)), lo(0.0) {}
    dd(long v) : hi(static_cast<double>(v)), lo(static_cast<double>(v - static_cast<long>(static_cast<double>(v)))) {}
    dd(long long v) : dd(static_cast<long>(v)) {}
    dd(unsigned v) : hi(static_cast<double>(v)), lo(0.0) {}
    dd(unsigned long v) : dd(static_cast<long>(v)) {}

    explicit operator double() const { return hi + lo; }
    explicit operator int() const { return static_cast<int>(hi); }
    explicit operator long() const { return static_cast<long>(hi) + static_cast<long>(lo); }
};

namespace ddetail {
inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}
inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}
#ifdef __FMA__
inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}
#else
inline void split(double a, double& h, double& l) {
    const double c = 134217729.0 * a;  // 2^27 + 1
    h = c - (c - a);
    l = a - h;
}
inline dd two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}
#endif
}  // namespace ddetail

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
    dd s = ddetail::two_sum(a.hi, b.hi);
    dd t = ddetail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = ddetail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return ddetail::quick_two_sum(s.hi, s.lo);
}
inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    dd p = ddetail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return ddetail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = ddetail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline dd abs(const dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }
inline dd fabs(const dd& a) { return abs(a); }

inline dd sqrt(const dd& a) {
    if (a.hi <= 0.0) return dd(a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd diff = a - ddetail::two_prod(ax, ax);
    return ddetail::two_sum(ax, diff.hi * (x * 0.5));
}

inline bool isfinite(const dd& a) { return std::isfinite(a.hi); }
inline bool isnan(const dd& a) { return std::isnan(a.hi); }
inline bool isinf(const dd& a) { return std::isinf(a.hi); }

inline dd ldexp(const dd& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }
inline dd floor(const dd& a) {
    double h = std::floor(a.hi);
    if (h != a.hi) return dd(h);
    return ddetail::quick_two_sum(h, std::floor(a.lo));
}

inline dd pow(dd a, int n) {
    dd r(1.0);
    bool inv = n < 0;
    unsigned m = inv ? static_cast<unsigned>(-n) : static_cast<unsigned>(n);
    while (m) {
        if (m & 1u) r *= a;
        a *= a;
        m >>= 1u;
    }
    return inv ? dd(1.0) / r : r;
}

inline dd hypot(const dd& a, const dd& b) {
    dd x = abs(a), y = abs(b);
    if (x < y) std::swap(x, y);
    if (x.hi == 0.0) return dd(0.0);
    dd q = y / x;
    return x * sqrt(dd(1.0) + q * q);
}

inline double to_double(const dd& a) { return a.hi + a.lo; }

inline std::ostream& operator<<(std::ostream& os, const dd& a) { return os << to_double(a); }

inline dd real(const dd& a) { return a; }
inline dd imag(const dd&) { return dd(0.0); }
inline dd conj(const dd& a) { return a; }
inline dd abs2(const dd& a) { return a * a; }

}  // namespace bandspec

namespace Eigen {
template <>
struct NumTraits<bandspec::dd> : GenericNumTraits<bandspec::dd> {
    using Real = bandspec::dd;
    using NonInteger = bandspec::dd;
    using Nested = bandspec::dd;
    using Literal = bandspec::dd;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 10
    };
    static inline Real epsilon() { return Real(4.93038065763132e-32); }
    static inline Real dummy_precision() { return Real(1e-28); }
    static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
    static inline Real lowest() { return Real(-std::numeric_limits<double>::max()); }
    static inline int digits10() { return 31; }
    static inline int digits() { return 106; }
    static inline Real infinity() { return Real(std::numeric_limits<double>::infinity()); }
    static inline Real quiet_NaN() { return Real(std::numeric_limits<double>::quiet_NaN()); }
};
}  // namespace Eigen
