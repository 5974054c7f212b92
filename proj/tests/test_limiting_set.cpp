#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bandspec/limiting_set.hpp"
#include "bandspec/oracles.hpp"
#include "bandspec/polyroots.hpp"

using namespace bandspec;

namespace {

bool has_point(const std::vector<ExceptionalPoint>& v, cplx z, double tol, int mult = 0) {
    for (const auto& e : v)
        if (std::abs(e.lambda - z) < tol && (mult == 0 || e.multiplicity == mult)) return true;
    return false;
}

}  // namespace

TEST_CASE("tridiagonal cloud covers [-2, 2]") {
    Symbol b = fixture("tridiag-a1").symbol;
    LimitingSetCloud c = limiting_set_scan(b, std::nullopt, 256, 1e-6);
    REQUIRE(!c.points.empty());
    double far = 0.0;
    for (auto z : c.points) {
        // distance to the segment
        far = std::max(far, std::abs(z - cplx(std::clamp(z.real(), -2.0, 2.0), 0.0)));
        CHECK(std::abs(z) <= norm_bound(b) + 1e-12);
    }
    CHECK(far <= 2 * c.grid_step);
    // every point of the segment is near the cloud
    for (double x = -2.0; x <= 2.0; x += 0.01) {
        double best = 1e9;
        for (auto z : c.points) best = std::min(best, std::abs(z - x));
        CHECK(best <= 2 * c.grid_step);
    }
    for (double d : c.defects) CHECK(d <= c.tol);
}

TEST_CASE("trinomial cloud is not real") {
    Symbol b = fixture("trinomial").symbol;
    LimitingSetCloud c = limiting_set_scan(b, std::nullopt, 128, 1e-6);
    double maxim = 0.0;
    for (auto z : c.points) maxim = std::max(maxim, std::abs(z.imag()));
    CHECK(maxim > 0.5);
    // sampled points really have equal middle moduli
    for (size_t i = 0; i < c.points.size(); i += 7) CHECK(defect(b, c.points[i]) < 1e-5);
}

TEST_CASE("scan arguments") {
    Symbol b = fixture("tridiag-a1").symbol;
    CHECK_THROWS_AS(limiting_set_scan(b, std::nullopt, 4), std::invalid_argument);
    CHECK_THROWS_AS(limiting_set_scan(b, std::nullopt, 64, 0.0), std::invalid_argument);
    // threading does not change the output
    auto a = limiting_set_scan(b, Region{-3, 3, -1, 1}, 64, 1e-6, 1);
    auto c = limiting_set_scan(b, Region{-3, 3, -1, 1}, 64, 1e-6, 4);
    CHECK(a.points == c.points);
}

TEST_CASE("exceptional points") {
    auto t = exceptional_points(fixture("tridiag-a1").symbol);
    CHECK(has_point(t, 2.0, 1e-12));
    CHECK(has_point(t, -2.0, 1e-12));

    auto f = exceptional_points(fixture("fourdiag-a1").symbol);
    CHECK(has_point(f, 0.0, 1e-12, 2));
    CHECK(has_point(f, 6.75, 1e-12));

    // boundary case alpha^3 = 27 beta^2: all exceptional points real
    Symbol b = make_symbol_exact({{-1, mpq_class(1)}, {1, mpq_class(3)}, {2, mpq_class(1)}});
    auto e = exceptional_points(b);
    REQUIRE(!e.empty());
    for (const auto& p : e) CHECK(std::abs(p.lambda.imag()) < 1e-10);
    // each one makes z (b - lambda) degenerate; a triple root only splits to about eps^{1/3}
    for (const auto& p : e) CHECK(p.residual < 1e-4);

    // float-only symbols go through the numerical path
    Symbol fl = make_symbol({{-1, 1.0}, {1, 1.0}});
    auto ef = exceptional_points(fl);
    CHECK(has_point(ef, 2.0, 1e-8));
    CHECK(has_point(ef, -2.0, 1e-8));
}

TEST_CASE("support intervals") {
    auto s = support_interval(make_symbol({{-1, 1.0}, {1, 2.25}}));
    CHECK(s.first == doctest::Approx(-3.0).epsilon(1e-13));
    CHECK(s.second == doctest::Approx(3.0).epsilon(1e-13));
    for (auto [r, sv] : {std::pair{1, 2}, {2, 3}}) {
        auto iv = support_interval(oracle_example3(r, sv, 1).symbol);
        CHECK(std::abs(iv.first) < 1e-10);
        CHECK(iv.second == doctest::Approx(std::pow(r + sv, r + sv) / (std::pow(r, r) * std::pow(sv, sv))).epsilon(1e-12));
    }
    auto e5 = support_interval(fixture("example5").symbol);
    CHECK(e5.first == doctest::Approx(-2.63113).epsilon(1e-5));
    CHECK(e5.second == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS(support_interval(fixture("trinomial").symbol));
}
