#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bandspec/symbol.hpp"

using namespace bandspec;

namespace {
mpq_class Q(long p, long q = 1) { return mpq_class(p, q); }
}

TEST_CASE("make_symbol trims and records the band") {
    Symbol b = make_symbol({{-1, 1.0}, {1, 1.0}});
    CHECK(b.r() == 1);
    CHECK(b.s() == 1);
    CHECK(b.real_coefficients());
    CHECK(b.coeff(0) == cplx(0.0));
    CHECK(b.coeff(5) == cplx(0.0));

    Symbol t = make_symbol({{-2, 0.0}, {-1, 1.0}, {1, 2.0}, {3, 0.0}});
    CHECK(t.lo() == -1);
    CHECK(t.hi() == 1);

    Symbol c = make_symbol({{-1, cplx(0, 1)}, {1, 1.0}});
    CHECK_FALSE(c.real_coefficients());
}

TEST_CASE("make_symbol rejects bad input") {
    CHECK_THROWS_AS(make_symbol({}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol({{1, 1.0}, {1, 2.0}, {-1, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol({{2, 1.0}, {-2, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_symbol({{-1, NAN}, {1, 1.0}}), std::invalid_argument);
    // one-sided input is fine for general symbols
    CHECK_NOTHROW(make_symbol({{2, 1.0}}, SymbolKind::general));
}

TEST_CASE("four-diagonal symbol from alpha = 3a^2, beta = a^3") {
    mpq_class a = Q(4, 27);
    Symbol b = make_symbol_exact({{-1, Q(1)}, {1, 3 * a * a}, {2, a * a * a}});
    CHECK(b.r() == 1);
    CHECK(b.s() == 2);
    CHECK(b.exact_coeff(2) == Q(64, 19683));
}

TEST_CASE("eval") {
    Symbol b = make_symbol({{-1, 1.0}, {1, 1.0}});
    CHECK(std::abs(eval(b, 1.0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(eval(b, 0.0), std::invalid_argument);
    // (1 + z)^3 / z at 1/2 is 27/4
    Symbol f = make_symbol_exact({{-1, Q(1)}, {0, Q(3)}, {1, Q(3)}, {2, Q(1)}});
    CHECK(std::abs(eval(f, 0.5) - 6.75) < 1e-14);
    cplx z(0.3, -1.7);
    CHECK(std::abs(eval(f, z) - std::pow(1.0 + z, 3) / z) < 1e-13);
}

TEST_CASE("derivative") {
    Symbol b = make_symbol({{-1, 1.0}, {1, 1.0}});
    Symbol d = derivative(b);
    CHECK(d.coeff(-2) == cplx(-1.0));
    CHECK(d.coeff(0) == cplx(1.0));
    Symbol g = make_symbol_exact({{-1, Q(1)}, {1, Q(5, 2)}, {2, Q(7)}});
    Symbol dg = derivative(g);
    CHECK(dg.exact_coeff(-2) == Q(-1));
    CHECK(dg.exact_coeff(0) == Q(5, 2));
    CHECK(dg.exact_coeff(1) == Q(14));
    CHECK(derivative(make_symbol({{0, 3.0}}, SymbolKind::general)).is_zero());
}

TEST_CASE("critical points") {
    auto sorted = [](std::vector<CriticalPoint> v) {
        std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.z.real() < y.z.real(); });
        return v;
    };
    auto cp = sorted(critical_points(make_symbol({{-1, 1.0}, {1, 1.0}})));
    REQUIRE(cp.size() == 2);
    CHECK(std::abs(cp[0].z + 1.0) < 1e-12);
    CHECK(std::abs(cp[1].z - 1.0) < 1e-12);

    auto cf = sorted(critical_points(make_symbol_exact({{-1, Q(1)}, {0, Q(3)}, {1, Q(3)}, {2, Q(1)}})));
    REQUIRE(cf.size() == 2);
    CHECK(std::abs(cf[0].z + 1.0) < 1e-12);
    CHECK(cf[0].multiplicity == 2);
    CHECK(std::abs(cf[1].z - 0.5) < 1e-12);

    // 1/z + z^2: 2 z^3 = 1
    auto ct = critical_points(make_symbol({{-1, 1.0}, {2, 1.0}}));
    REQUIRE(ct.size() == 3);
    for (const auto& c : ct) CHECK(std::abs(2.0 * std::pow(c.z, 3) - 1.0) < 1e-12);

    CHECK_THROWS(critical_points(make_symbol({{0, 1.0}}, SymbolKind::general)));
}

TEST_CASE("compose_entire") {
    Symbol b = make_symbol({{-1, 1.0}, {1, 1.0}});
    TruncatedSymbol id = compose_entire({0.0, 1.0}, b, 1, 1);
    CHECK(id.tail_bound == 0.0);
    CHECK(std::abs(id.series.coeff(-1) - 1.0) < 1e-15);
    CHECK(std::abs(id.series.coeff(1) - 1.0) < 1e-15);

    // exp: brute-force expansion of sum_m (z + 1/z)^m / m!; [z^k] (z + 1/z)^m = C(m, (m+k)/2)
    std::vector<cplx> ex(10);
    double f = 1.0;
    for (int m = 0; m < 10; ++m) {
        ex[m] = 1.0 / f;
        f *= m + 1;
    }
    TruncatedSymbol e = compose_entire(ex, b, 10, 10);
    for (int k = -9; k <= 9; ++k) {
        double want = 0.0, fact = 1.0;
        for (int m = 0; m < 10; ++m) {
            if (m > 0) fact *= m;
            if ((m + k) % 2 == 0 && std::abs(k) <= m) want += std::tgamma(m + 1.0) / (std::tgamma((m + k) / 2 + 1.0) * std::tgamma((m - k) / 2 + 1.0)) / fact;
        }
        CHECK(std::abs(e.series.coeff(k) - want) < 1e-13);
    }
    // constant term: sum over even m = 2k <= 9 of C(2k, k) / (2k)! = 1 / (k!)^2
    double c0 = 0.0;
    for (int k = 0; k <= 4; ++k) c0 += 1.0 / std::pow(std::tgamma(k + 1.0), 2);
    CHECK(std::abs(e.series.coeff(0) - c0) < 1e-13);

    std::vector<cplx> cosine{1.0, 0.0, -0.5, 0.0, 1.0 / 24};
    CHECK_THROWS_AS(compose_entire(cosine, b, 0, 0), std::invalid_argument);
}

TEST_CASE("norm_bound") {
    CHECK(norm_bound(make_symbol({{-1, 1.0}, {1, 1.0}})) == doctest::Approx(2.0));
    CHECK(norm_bound(make_symbol({{-1, 1.0}, {1, 3.0}, {2, 1.0}})) == doctest::Approx(5.0));
    Symbol ex4 = make_symbol({{-3, 1.0}, {-2, -1.0}, {-1, 7.0}, {1, 9.0}, {2, -2.0}, {3, 2.0}, {4, -1.0}});
    CHECK(norm_bound(ex4) == doctest::Approx(23.0));
}

TEST_CASE("JSON round trip") {
    Symbol b = symbol_from_json(R"({"coeffs":[{"k":-1,"num":"1","den":"1"},{"k":1,"num":"0","den":"1"},{"k":2,"num":"3","den":"4"}]})");
    CHECK(b.has_exact());
    CHECK(b.lo() == -1);
    CHECK(b.hi() == 2);
    CHECK(b.exact_coeff(2) == Q(3, 4));
    Symbol c = symbol_from_json(symbol_to_json(b));
    CHECK(c.exact_entries() == b.exact_entries());

    Symbol f = symbol_from_json(R"({"coeffs":[{"k":-1,"re":1.5},{"k":1,"re":0.5,"im":-2}]})");
    CHECK_FALSE(f.has_exact());
    CHECK(f.coeff(1) == cplx(0.5, -2.0));
    CHECK_THROWS_AS(symbol_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(symbol_from_json(R"({"coeffs":[{"k":1,"num":"x"}]})"), std::invalid_argument);
}
