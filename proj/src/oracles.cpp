#include "bandspec/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bandspec {

namespace {

constexpr double pi = std::numbers::pi;

mpz_class factorial(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

mpq_class frac(const mpz_class& p, const mpz_class& q) {
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

mpq_class qpow(const mpq_class& a, long e) {
    mpq_class r = 1;
    mpq_class base = e >= 0 ? a : mpq_class(1 / a);
    for (long i = 0; i < std::abs(e); ++i) r *= base;
    return r;
}

// density of the a = 4/27 four-diagonal case on [0, 1]; the two cube roots add (with a
// difference the expression has total mass 0.38 and no 1/sqrt(1-x) edge)
double fourdiag_unit_density(double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    double s = std::sqrt(1.0 - x);
    return std::sqrt(3.0) / (4.0 * pi) * (std::cbrt(1.0 + s) + std::cbrt(1.0 - s)) / (std::pow(x, 2.0 / 3.0) * s);
}

double fivediag_unit_density(double x) {
    if (!(x > 0.0 && x < 16.0)) return 0.0;
    return std::sqrt(4.0 + std::sqrt(x)) / (2.0 * pi * std::pow(x, 0.75) * std::sqrt(16.0 - x));
}

Symbol binomial_symbol(int r, int s, const mpq_class& a) {
    std::vector<std::pair<int, mpq_class>> e;
    for (int k = 0; k <= r + s; ++k) e.push_back({k - r, binomial(r + s, k) * qpow(a, k)});
    return make_symbol_exact(e);
}

}  // namespace

mpq_class binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(c);
}

OracleBundle oracle_tridiag(const mpq_class& a) {
    if (a <= 0) throw std::invalid_argument("oracle_tridiag: a must be positive");
    OracleBundle o;
    o.name = "tridiag";
    o.symbol = make_symbol_exact({{-1, mpq_class(1)}, {1, a}});
    double ad = a.get_d(), sa = std::sqrt(ad);
    o.moment = [a](int m) -> mpq_class { return m % 2 ? mpq_class(0) : binomial(m, m / 2) * qpow(a, m / 2); };
    o.density = [ad](double x) { return x * x < 4.0 * ad ? 1.0 / (pi * std::sqrt(4.0 * ad - x * x)) : 0.0; };
    o.distribution = [sa](double x) {
        if (x <= -2.0 * sa) return 0.0;
        if (x >= 2.0 * sa) return 1.0;
        return 0.5 + std::asin(x / (2.0 * sa)) / pi;
    };
    o.det_H = [a](int n) -> mpq_class { return n == 0 ? mpq_class(1) : qpow(2, n - 1) * qpow(a, static_cast<long>(n) * (n - 1) / 2); };
    o.det_Ht = [](int) -> mpq_class { return mpq_class(0); };
    // det H_n = 2^{n-1} a^{n(n-1)/2} gives a_1^2 = 2a, a_n^2 = a
    o.jacobi_a2 = [a](int k) -> mpq_class { return k == 1 ? mpq_class(2 * a) : a; };
    o.jacobi_b = [](int) -> mpq_class { return mpq_class(0); };
    o.curve_rho = [sa](double) { return 1.0 / sa; };
    o.curve_value = [sa](double t) { return 2.0 * sa * std::cos(t); };
    o.support = {-2.0 * sa, 2.0 * sa};
    return o;
}

OracleBundle oracle_fourdiag(const mpq_class& a) {
    if (a == 0) throw std::invalid_argument("oracle_fourdiag: a must be nonzero");
    OracleBundle o = oracle_example3(1, 2, a);
    o.name = "fourdiag";
    o.det_H = [a](int n) -> mpq_class {
        if (n == 0) return mpq_class(1);
        mpq_class p = qpow(3, n - 1);
        for (int i = 0; i < n; ++i)
            p *= frac((3 * i + 1) * factorial(6 * i) * factorial(2 * i), factorial(4 * i) * factorial(4 * i + 1));
        return p * qpow(a, static_cast<long>(n) * (n - 1));
    };
    auto detH = *o.det_H;
    // the displayed ratio is for a = 1; one extra factor a for general a
    o.det_Ht = [a, detH](int n) -> mpq_class {
        if (n == 0) return mpq_class(0);
        return frac(27 * n * n - 8 * n - 1, 2 * (4 * n - 1)) * detH(n) * a;
    };
    o.jacobi_a2 = [a](int k) -> mpq_class {
        if (k == 1) return mpq_class(6 * a * a);
        mpz_class num = 9 * mpz_class(6 * k - 5) * (6 * k - 1) * (3 * k - 1) * (3 * k + 1);
        mpz_class den = 4 * mpz_class(4 * k - 3) * (4 * k - 1) * (4 * k - 1) * (4 * k + 1);
        return frac(num, den) * a * a;
    };
    o.jacobi_b = [a](int k) -> mpq_class {
        if (k == 1) return mpq_class(3 * a);
        return frac(3 * (36 * k * k - 54 * k + 13), 2 * (4 * k - 5) * (4 * k - 1)) * a;
    };
    return o;
}

OracleBundle oracle_example3(int r, int s, const mpq_class& a) {
    if (r < 1 || s < 1) throw std::invalid_argument("oracle_example3: r, s must be >= 1");
    if (a == 0) throw std::invalid_argument("oracle_example3: a must be nonzero");
    OracleBundle o;
    o.name = "example3-" + std::to_string(r) + "-" + std::to_string(s);
    o.symbol = binomial_symbol(r, s, a);
    o.moment = [r, s, a](int m) -> mpq_class { return binomial(static_cast<long>(r + s) * m, static_cast<long>(r) * m) * qpow(a, static_cast<long>(r) * m); };
    double ad = a.get_d();
    double ar = std::pow(ad, r);
    double top = ar * std::pow(r + s, r + s) / (std::pow(r, r) * std::pow(s, s));
    o.support = ar > 0 ? std::make_pair(0.0, top) : std::make_pair(top, 0.0);
    if (ad > 0) {
        double w = static_cast<double>(r) / (r + s);
        o.curve_rho = [w, ad, r, s](double t) {
            if (t == 0.0) return static_cast<double>(r) / (s * ad);
            return std::sin(w * t) / std::sin((1.0 - w) * t) / ad;
        };
        o.curve_value = [w, ar, r, s, top](double t) {
            if (t == 0.0) return top;
            return ar * std::pow(std::sin(t), r + s) / (std::pow(std::sin(w * t), r) * std::pow(std::sin((1.0 - w) * t), s));
        };
        if (r == 1 && s == 1) {
            double c = 4.0 * ad;  // arcsine law on [0, 4a]
            o.density = [c](double x) { return x > 0 && x < c ? 1.0 / (pi * std::sqrt(x * (c - x))) : 0.0; };
        } else if (r == 1 && s == 2) {
            double c = 27.0 * ad / 4.0;
            o.density = [c](double x) { return fourdiag_unit_density(x / c) / c; };
        } else if (r == 2 && s == 2) {
            double c = ad * ad;
            o.density = [c](double x) { return fivediag_unit_density(x / c) / c; };
        }
    } else if (r == 1 && s == 2) {
        double c = 27.0 * ad / 4.0;  // negative: reflected support
        o.density = [c](double x) { return fourdiag_unit_density(x / c) / std::abs(c); };
    }
    return o;
}

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> list = [] {
        auto Q = [](long p, long q = 1) { mpq_class r(p, q); r.canonicalize(); return r; };
        auto breaking = [&](const mpq_class& alpha) {
            return make_symbol_exact({{-3, Q(1)}, {-2, Q(-1)}, {-1, Q(7)}, {1, Q(9)}, {2, alpha}, {3, Q(2)}, {4, Q(-1)}});
        };
        std::vector<std::pair<int, mpq_class>> separ{{-1, Q(1)}};
        for (int k = 1; k <= 10; ++k) separ.push_back({k, Q(k)});
        std::vector<Fixture> v{
            {"tridiag-a1", "1/z + z", oracle_tridiag(1).symbol},
            {"tridiag-a4", "1/z + 4z", oracle_tridiag(4).symbol},
            {"fourdiag-a1", "(1 + z)^3 / z", oracle_fourdiag(1).symbol},
            {"fourdiag-a4_27", "(1 + 4z/27)^3 / z", oracle_fourdiag(Q(4, 27)).symbol},
            {"example3-2-2", "(1 + z)^4 / z^2", oracle_example3(2, 2, 1).symbol},
            {"trinomial", "1/z + z^2", make_symbol_exact({{-1, Q(1)}, {2, Q(1)}})},
            {"example4", "z^-3 - z^-2 + 7 z^-1 + 9z - 2z^2 + 2z^3 - z^4", breaking(Q(-2))},
            {"example5", "z^-3 + z^-2 + z^-1 + z + z^2 + z^3",
             make_symbol_exact({{-3, Q(1)}, {-2, Q(1)}, {-1, Q(1)}, {1, Q(1)}, {2, Q(1)}, {3, Q(1)}})},
            {"break-m2", "breaking family, alpha = -2 (same as example4)", breaking(Q(-2))},
            {"break-0", "breaking family, alpha = 0", breaking(Q(0))},
            {"break-0.77", "breaking family, alpha = 0.77", breaking(Q(77, 100))},
            {"break-1", "breaking family, alpha = 1", breaking(Q(1))},
            {"break-2", "breaking family, alpha = 2", breaking(Q(2))},
            {"separ", "1/z + sum_{k=1}^{10} k z^k", make_symbol_exact(separ)},
        };
        return v;
    }();
    return list;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace bandspec
