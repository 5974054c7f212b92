#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bandspec/polyroots.hpp"

using namespace bandspec;

namespace {

// every expected root has a computed root within tol (multiset match)
bool same_roots(std::vector<cplx> got, std::vector<cplx> want, double tol) {
    if (got.size() != want.size()) return false;
    for (auto w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
        if (std::abs(*it - w) > tol) return false;
        got.erase(it);
    }
    return true;
}

const double pi = std::numbers::pi;

}  // namespace

TEST_CASE("roots of small polynomials") {
    CHECK(same_roots(roots({-1.0, 0.0, 1.0}), {-1.0, 1.0}, 1e-14));
    std::vector<cplx> unity;
    for (int k = 0; k < 3; ++k) unity.push_back(std::polar(1.0, 2 * pi * k / 3));
    CHECK(same_roots(roots({-1.0, 0.0, 0.0, 1.0}), unity, 1e-14));
    CHECK(same_roots(roots({1.0, 0.0, 0.0, -1.0}), unity, 1e-14));
    // (z - 2)^3 (z + 1): multiple root
    CHECK(same_roots(roots({-8.0, 4.0, 6.0, -5.0, 1.0}), {2.0, 2.0, 2.0, -1.0}, 1e-4));
    CHECK_THROWS_AS(roots({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(roots({1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("roots recover random prescribed roots") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    for (int trial = 0; trial < 20; ++trial) {
        int d = 3 + trial % 10;
        std::vector<cplx> z(d);
        for (auto& x : z) x = cplx(N(rng), N(rng));
        std::vector<cplx> c{1.0};
        for (auto r : z) {
            std::vector<cplx> n(c.size() + 1, 0.0);
            for (size_t i = 0; i < c.size(); ++i) {
                n[i + 1] += c[i];
                n[i] -= r * c[i];
            }
            c = n;
        }
        CHECK(same_roots(roots(c), z, 1e-8));
    }
}

TEST_CASE("roots_by_modulus and defect") {
    Symbol b = make_symbol({{-1, 1.0}, {1, 1.0}});
    RootsByModulus r0 = roots_by_modulus(b, 0.0);
    CHECK(same_roots(r0.roots, {cplx(0, 1), cplx(0, -1)}, 1e-14));
    CHECK(r0.defect < 1e-14);

    RootsByModulus r5 = roots_by_modulus(b, 5.0);
    CHECK(std::abs(r5.roots[0] - (5 - std::sqrt(21.0)) / 2) < 1e-14);
    CHECK(std::abs(r5.roots[1] - (5 + std::sqrt(21.0)) / 2) < 1e-13);
    CHECK(r5.defect == doctest::Approx(std::sqrt(21.0)).epsilon(1e-13));
    CHECK(defect(b, 3.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));

    Symbol t = make_symbol({{-1, 1.0}, {2, 1.0}});
    RootsByModulus rt = roots_by_modulus(t, 0.0);
    for (auto z : rt.roots) CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
    CHECK(rt.defect < 1e-14);
    CHECK(defect(t, 1e4) > 1.0);
}

TEST_CASE("root moduli sorted and product identity") {
    Symbol b = make_symbol({{-3, 1.0}, {-2, -1.0}, {-1, 7.0}, {1, 9.0}, {2, -2.0}, {3, 2.0}, {4, -1.0}});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-30, 30);
    for (int i = 0; i < 50; ++i) {
        cplx lam(U(rng), U(rng));
        RootsByModulus r = roots_by_modulus(b, lam);
        REQUIRE(r.roots.size() == 7);
        cplx prod = 1.0;
        for (size_t j = 0; j < r.roots.size(); ++j) {
            prod *= r.roots[j];
            if (j) CHECK(std::abs(r.roots[j - 1]) <= std::abs(r.roots[j]));
            CHECK(std::abs(r.roots[j]) > 0.0);
        }
        // (-1)^{r+s} a_{-r} / a_s
        CHECK(std::abs(prod - (-1.0) * 1.0 / -1.0) < 1e-8);
        CHECK(r.defect >= 0.0);
        // every root solves z^r (b - lambda) = 0
        auto p = shifted_poly(b, lam);
        for (auto z : r.roots) CHECK(std::abs(poly_eval(p, z)) < 1e-9 * (1 + std::pow(std::abs(z), 7)) * 40);
    }
}
