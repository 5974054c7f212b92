#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bandspec/curve.hpp"
#include "bandspec/toeplitz.hpp"

using namespace bandspec;

namespace {
const double pi = std::numbers::pi;
Symbol tri() { return make_symbol({{-1, 1.0}, {1, 1.0}}); }
Symbol trinomial(double alpha, double beta) { return make_symbol({{-1, 1.0}, {1, alpha}, {2, beta}}); }
}  // namespace

TEST_CASE("toeplitz_section layout") {
    auto s = toeplitz_section(tri(), 2);
    CHECK(s.entries(0, 0) == cplx(0.0));
    CHECK(s.entries(0, 1) == cplx(1.0));
    CHECK(s.entries(1, 0) == cplx(1.0));

    auto t = toeplitz_section(trinomial(2.5, 7.0), 3);
    // (i,j) = a_{i-j}: a_{-1} above the diagonal, alpha and beta below
    double want[3][3] = {{0, 1, 0}, {2.5, 0, 1}, {7, 2.5, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(t.entries(i, j) == cplx(want[i][j]));

    auto one = toeplitz_section(make_symbol({{-1, 1.0}, {0, 4.0}, {1, 1.0}}), 1);
    CHECK(one.entries(0, 0) == cplx(4.0));
    CHECK_THROWS_AS(toeplitz_section(tri(), 0), std::invalid_argument);
}

TEST_CASE("eigenvalues of small sections") {
    auto r = eigenvalues(tri(), 3);
    REQUIRE(r.eigenvalues.size() == 3);
    CHECK(std::abs(r.eigenvalues[0] + std::sqrt(2.0)) < 1e-13);
    CHECK(std::abs(r.eigenvalues[1]) < 1e-13);
    CHECK(std::abs(r.eigenvalues[2] - std::sqrt(2.0)) < 1e-13);

    auto c = eigenvalues(trinomial(0.0, 1.0), 3);
    CHECK(c.max_imag == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    for (auto z : c.eigenvalues) CHECK(std::abs(std::pow(z, 3) - 1.0) < 1e-12);

    auto one = eigenvalues(make_symbol({{-1, 1.0}, {0, 4.0}, {1, 1.0}}), 1);
    CHECK(std::abs(one.eigenvalues[0] - 4.0) < 1e-15);
}

TEST_CASE("tridiagonal eigenvalues match 2 cos(k pi / (n + 1))") {
    for (int n : {10, 57, 200}) {
        auto r = eigenvalues(tri(), n);
        for (int k = 1; k <= n; ++k) {
            double want = 2.0 * std::cos(pi * (n + 1 - k) / (n + 1));
            CHECK(std::abs(r.eigenvalues[k - 1] - want) < 1e-12);
        }
    }
}

TEST_CASE("trace identity and residual on a non-normal section") {
    Symbol b = make_symbol({{-3, 1.0}, {-2, -1.0}, {-1, 7.0}, {0, 0.5}, {1, 9.0}, {2, -2.0}, {3, 2.0}, {4, -1.0}});
    for (int n : {20, 80}) {
        auto r = eigenvalues(b, n, EigenOptions{1e-10 * norm_bound(b)});
        cplx tr = 0.0;
        for (auto z : r.eigenvalues) tr += z;
        CHECK(std::abs(tr - n * 0.5) < 1e-8 * n * norm_bound(b));
        CHECK(r.residual < 1e-10);
    }
}

TEST_CASE("hessenberg determinant sequence") {
    auto d = hessenberg_det_sequence(tri(), 3);
    CHECK(std::abs(d[0]) < 1e-15);
    CHECK(std::abs(d[1] + 1.0) < 1e-15);
    CHECK(std::abs(d[2]) < 1e-15);
    auto e = hessenberg_det_sequence(trinomial(0.0, 1.0), 3);
    CHECK(std::abs(e[0]) < 1e-15);
    CHECK(std::abs(e[1]) < 1e-15);
    CHECK(std::abs(e[2] - 1.0) < 1e-15);

    // against dense determinants of the sections
    Symbol b = make_symbol({{-1, 1.5}, {0, -0.25}, {1, 2.0}, {2, 0.5}, {3, -1.0}});
    auto s = hessenberg_det_sequence(b, 12);
    for (int n = 1; n <= 12; ++n) {
        cplx want = toeplitz_section(b, n).entries.determinant();
        CHECK(std::abs(s[n - 1] - want) < 1e-10 * (1 + std::abs(want)));
        CHECK(s[n - 1].imag() == 0.0);
    }
    CHECK_THROWS_AS(hessenberg_det_sequence(make_symbol({{-2, 1.0}, {1, 1.0}}), 3), std::invalid_argument);
}

TEST_CASE("trace_power_mean") {
    CHECK(std::abs(trace_power_mean(tri(), 17, 1)) < 1e-15);
    for (int n : {3, 10, 64}) CHECK(std::abs(trace_power_mean(tri(), n, 2) - (2.0 - 2.0 / n)) < 1e-13);
    // against a dense matrix power
    Symbol b = make_symbol({{-2, 1.0}, {-1, -0.5}, {1, 2.0}, {2, 0.25}});
    for (int m = 1; m <= 5; ++m) {
        auto T = toeplitz_section(b, 15).entries;
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(15, 15);
        for (int k = 0; k < m; ++k) P = P * T;
        CHECK(std::abs(trace_power_mean(b, 15, m) - P.trace() / 15.0) < 1e-11);
    }
}

TEST_CASE("norm bound of the breaking symbol") {
    Symbol ex4 = make_symbol({{-3, 1.0}, {-2, -1.0}, {-1, 7.0}, {1, 9.0}, {2, -2.0}, {3, 2.0}, {4, -1.0}});
    CHECK(norm_bound(ex4) == doctest::Approx(23.0));
}

TEST_CASE("bilinear form on the unit circle equals the direct product") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N;
    Symbol a = tri();
    JordanCurveSamples circle = circle_curve(1.0, 256);
    std::vector<cplx> e1{1.0, 0.0, 0.0};
    CHECK(std::abs(bilinear_form_curve(a, e1, e1, circle)) < 1e-14);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cplx> u(4), v(4);
        for (int i = 0; i < 4; ++i) {
            u[i] = cplx(N(rng), N(rng));
            v[i] = cplx(N(rng), N(rng));
        }
        auto T = toeplitz_section(a, 4).entries;
        Eigen::VectorXcd U(4), V(4);
        for (int i = 0; i < 4; ++i) {
            U(i) = u[i];
            V(i) = v[i];
        }
        cplx want = U.dot(T * V);  // conjugate-linear in u
        CHECK(std::abs(bilinear_form_curve(a, u, v, circle) - want) < 1e-10);
    }
}

TEST_CASE("reality_check") {
    auto yes = reality_check(trinomial(3.0, 1.0), 30);
    CHECK(yes.verdict == RealityVerdict::real);
    auto no = reality_check(trinomial(0.0, 1.0), 3);
    CHECK(no.verdict == RealityVerdict::nonreal);
    CHECK(no.witness_n == 3);
    CHECK(std::abs(no.witness_lambda.imag()) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    auto n1 = reality_check(make_symbol({{-1, 1.0}, {0, cplx(0.0, 0.5)}, {1, 1.0}}), 1);
    CHECK(n1.verdict == RealityVerdict::nonreal);
    auto n1r = reality_check(make_symbol({{-1, 1.0}, {0, 0.5}, {1, 1.0}}), 1);
    CHECK(n1r.verdict == RealityVerdict::real);
}

TEST_CASE("bilinear form on a curve with a corner") {
    // (1 + z)^3 / z: the curve meets z = -1, a double critical point, at an angle
    Symbol b = make_symbol({{-1, 1.0}, {0, 3.0}, {1, 3.0}, {2, 1.0}});
    TraceResult tr = trace_polar(b, 2048);
    REQUIRE(tr.found);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> N;
    Symbol a = tri();
    for (int n : {2, 5, 8}) {
        std::vector<cplx> u(n), v(n);
        Eigen::VectorXcd U(n), V(n);
        for (int i = 0; i < n; ++i) {
            U(i) = u[i] = cplx(N(rng), N(rng));
            V(i) = v[i] = cplx(N(rng), N(rng));
        }
        cplx want = U.dot(toeplitz_section(a, n).entries * V);
        CHECK(std::abs(bilinear_form_curve(a, u, v, tr.curve) - want) < 1e-10);
    }
}
