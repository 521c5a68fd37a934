#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neucert/closed_form.hpp"
#include "neucert/geometry.hpp"
#include "neucert/quadrature.hpp"
#include "neucert/trig_eigen.hpp"

using namespace neucert;
using namespace neucert::closed_form;
using geometry::Point2;
constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

namespace {

quadrature::Triangle north_triangle(double a) {
    return {{-a / 2, kSqrt3 * (1 - a) / 2}, {a / 2, kSqrt3 * (1 - a) / 2}, {0.0, kSqrt3 / 2}};
}
quadrature::Triangle tn_triangle(double a, double c) {
    return {{a * (1 - 2 * c) / (2 * (1 - 2 * a)), kSqrt3 * (1 - a) / 2},
            {a / 2, kSqrt3 * (1 - a) / 2},
            {c / 2, kSqrt3 * (1 - c) / 2}};
}
quadrature::Triangle td_triangle(double a, double c) {
    return {{0.0, kSqrt3 * (1 - a) / 2},
            {a / 2, kSqrt3 * (1 - a) / 2},
            {c / 2, kSqrt3 * (1 - c) / 2}};
}

double quad_tri(const std::function<double(Point2)>& f, const quadrature::Triangle& t) {
    return quadrature::integrate_triangle(f, t, 1e-12).value;
}

double phi_at(Point2 p) { return trig_eigen::phi_psi_eta(p).phi; }
double psi_at(Point2 p) { return trig_eigen::phi_psi_eta(p).psi; }
double eta_at(Point2 p) { return trig_eigen::phi_psi_eta(p).eta; }

}  // namespace

TEST_CASE("layer integrals vanish at a = 0 and match quadrature") {
    const auto zero = layer_integrals(0.0);
    CHECK(zero.f1 == 0.0);
    CHECK(zero.f2 == 0.0);
    CHECK(zero.f3 == 0.0);
    CHECK(zero.f4 == 0.0);
    CHECK(std::abs(zero.f5) < 1e-15);
    CHECK(std::abs(zero.f6) < 1e-15);

    const auto at02 = layer_integrals(0.2);
    CHECK(at02.f1 == doctest::Approx(quad_tri([](Point2 p) { return trig_eigen::sym_combos(p).u1_sq; },
                                              north_triangle(0.2)))
                         .epsilon(1e-10));
    const auto at01 = layer_integrals(0.1);
    CHECK(at01.f6 ==
          doctest::Approx(quad_tri([](Point2 p) { return trig_eigen::sym_combos(p).grad_cross; },
                                   north_triangle(0.1)))
              .epsilon(1e-10));
    // signs per the family invariants
    for (const double a : {0.05, 0.2, 0.4}) {
        const auto l = layer_integrals(a);
        CHECK(l.f1 >= 0.0);
        CHECK(l.f2 >= 0.0);
        CHECK(l.f3 >= 0.0);
        CHECK(l.f4 >= 0.0);
    }
}

TEST_CASE("layer integral derivatives match finite differences") {
    const double h = 1e-6;
    for (const double a : {0.03, 0.15, 0.24}) {
        const auto dp = layer_integrals(a + h);
        const auto dm = layer_integrals(a - h);
        const auto d = layer_integrals_deriv(a);
        CHECK(d.f1 == doctest::Approx((dp.f1 - dm.f1) / (2 * h)).epsilon(1e-8));
        CHECK(d.f2 == doctest::Approx((dp.f2 - dm.f2) / (2 * h)).epsilon(1e-8));
        CHECK(d.f3 == doctest::Approx((dp.f3 - dm.f3) / (2 * h)).epsilon(1e-8));
        CHECK(d.f4 == doctest::Approx((dp.f4 - dm.f4) / (2 * h)).epsilon(1e-8));
        CHECK(d.f5 == doctest::Approx((dp.f5 - dm.f5) / (2 * h)).epsilon(1e-8));
        CHECK(d.f6 == doctest::Approx((dp.f6 - dm.f6) / (2 * h)).epsilon(1e-8));
    }
}

TEST_CASE("I1 and I2 degenerate at c = a and match quadrature") {
    CHECK(I1(0.2, 0.2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(I2(0.2, 0.2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(I1(0.1, 0.3) == doctest::Approx(quad_tri(phi_at, tn_triangle(0.1, 0.3))).epsilon(1e-10));
    CHECK(I2(0.05, 0.4) == doctest::Approx(quad_tri(phi_at, td_triangle(0.05, 0.4))).epsilon(1e-10));
}

TEST_CASE("the two phi printings agree") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double a = 0.01 + 0.47 * u(rng);
        const double c = a + (0.5 - a) * u(rng);
        CHECK(tn_integrals(a, c).phi ==
              doctest::Approx(I1(a, c)).epsilon(1e-13));
        CHECK(td_integrals(a, c).phi ==
              doctest::Approx(I2(a, c)).epsilon(1e-13));
    }
}

TEST_CASE("triangle integrals match quadrature, including near-singular lines") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sample = [&](int which) {
        double a, c;
        switch (which) {
            case 0: a = 1e-5 + 1e-4 * u(rng); c = 0.2 + 0.3 * u(rng); break;      // a -> 0
            case 1: a = 0.05 + 0.3 * u(rng); c = a + 1e-8 + 1e-4 * u(rng); break; // c -> a
            case 2: a = 1.0 / 3.0 + 2e-4 * (u(rng) - 0.5); c = 0.42; break;       // 1 - 3a -> 0
            case 3: a = 0.2 + 0.1 * u(rng); c = 1.5 * a + 1e-4 * (u(rng) - 0.5); break;  // 3a-2c
            default: a = 0.01 + 0.47 * u(rng); c = a + (0.5 - a) * u(rng); break;
        }
        return std::pair(a, std::min(c, 0.5));
    };
    for (int i = 0; i < 50; ++i) {
        const auto [a, c] = sample(i % 5);
        if (!(c >= a)) continue;
        const auto tn = tn_integrals(a, c);
        const auto td = td_integrals(a, c);
        const auto close = [&](double got, double want) {
            CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        };
        close(tn.phi, quad_tri(phi_at, tn_triangle(a, c)));
        close(tn.psi, quad_tri(psi_at, tn_triangle(a, c)));
        close(tn.eta, quad_tri(eta_at, tn_triangle(a, c)));
        close(td.phi, quad_tri(phi_at, td_triangle(a, c)));
        close(td.psi, quad_tri(psi_at, td_triangle(a, c)));
        close(td.eta, quad_tri(eta_at, td_triangle(a, c)));
    }
}

TEST_CASE("analytic continuation across c < a (lines 3a = 4c and 2c = a)") {
    // T_D formulas continue as the orientation-signed integral; T_N unsigned.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 12; ++i) {
        const double a = 0.15 + 0.2 * u(rng);
        const double c =
            i % 2 == 0 ? 0.75 * a + 1e-4 * (u(rng) - 0.5) : 0.5 * a + 1e-4 * (u(rng) - 0.5);
        const double sign = c >= a ? 1.0 : -1.0;
        const auto tn = tn_integrals(a, c);
        const auto td = td_integrals(a, c);
        CHECK(std::abs(tn.psi - quad_tri(psi_at, tn_triangle(a, c))) < 1e-9);
        CHECK(std::abs(td.phi - sign * quad_tri(phi_at, td_triangle(a, c))) < 1e-9);
        CHECK(std::abs(td.psi - sign * quad_tri(psi_at, td_triangle(a, c))) < 1e-9);
        CHECK(std::abs(td.eta - sign * quad_tri(eta_at, td_triangle(a, c))) < 1e-9);
    }
}

TEST_CASE("areas of the certification triangles") {
    const double a = 0.1, c = 0.3;
    CHECK(area_tn(a, c) ==
          doctest::Approx(quad_tri([](Point2) { return 1.0; }, tn_triangle(a, c))).epsilon(1e-13));
    CHECK(area_td(a, c) ==
          doctest::Approx(quad_tri([](Point2) { return 1.0; }, td_triangle(a, c))).epsilon(1e-13));
    CHECK(area_tn(a, c) == doctest::Approx(kSqrt3 / 4 * a * (c - a) * (c - a) / (1 - 2 * a)));
}

TEST_CASE("ptilde endpoints") {
    for (const double c : {0.1, 0.3, 0.5}) CHECK(ptilde(0.0, c) == doctest::Approx(3.0).epsilon(1e-14));
    for (const double a : {0.05, 0.2, 0.3}) {
        CHECK(ptilde(a, a) == doctest::Approx(3.0 * (1.0 - a)).epsilon(1e-13));
        CHECK(ptilde(a, a) ==
              doctest::Approx(geometry::metrics(geometry::omega_a(a)).perimeter).epsilon(1e-13));
        CHECK(ptilde(a, 0.5) ==
              doctest::Approx(geometry::metrics(geometry::hex_Ha(a)).perimeter).epsilon(1e-13));
    }
}

TEST_CASE("F vanishes on the equilateral triangle for the pure test function") {
    for (const double c : {0.2, 0.35, 0.5}) {
        CHECK(std::abs(ndf({0.0, 0.0, c}).f) < 1e-12);
    }
    // for k > 0 the mixed test function is suboptimal on T itself and F(0, c)
    // is strictly positive: 18 sqrt3 pi^2 k^2
    for (const double k : {0.06, 0.12}) {
        const double expect = 18.0 * kSqrt3 * kPi * kPi * k * k;
        CHECK(ndf({k, 0.0, 0.3}).f == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("k = 0 general path matches the separately printed route") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double a = 0.01 + 0.45 * u(rng);
        const double c = a + (0.5 - a) * u(rng);
        const auto g = ndf({0.0, a, c});
        const auto p = ndf_k0(a, c);
        CHECK(g.n == doctest::Approx(p.n).epsilon(1e-12));
        CHECK(g.d == doctest::Approx(p.d).epsilon(1e-12));
        CHECK(g.f == doctest::Approx(p.f).epsilon(1e-11));
    }
}

TEST_CASE("N and D match the full quadrature assembly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double k = u(rng) / 6.0;
        const double a = 0.02 + 0.4 * u(rng);
        const double c = a + (0.5 - a) * (0.05 + 0.95 * u(rng));
        const trig_eigen::MixParam mix(k);
        const auto v = ndf({k, a, c});

        const auto ha = geometry::hex_Ha(a);
        const Point2 A{0.0, kSqrt3 * (1 - a) / 2};
        const Point2 Q1{a * (1 - 2 * c) / (2 * (1 - 2 * a)), kSqrt3 * (1 - a) / 2};
        const Point2 Q2{c / 2, kSqrt3 * (1 - c) / 2};
        const Point2 C{0.25, kSqrt3 / 4};
        double n_quad =
            quadrature::integrate_polygon(
                [&](Point2 p) {
                    const Point2 g = trig_eigen::grad_v_k(mix, p);
                    return g.x * g.x + g.y * g.y;
                },
                ha, 1e-11)
                .value +
            2.0 * quadrature::integrate_polygon([&](Point2 p) { return trig_eigen::V(mix, p); },
                                                geometry::ConvexPolygon({C, Q2, Q1, A}), 1e-11)
                      .value;
        double d_quad =
            quadrature::integrate_polygon(
                [&](Point2 p) {
                    const double w = trig_eigen::v_k(mix, p);
                    return w * w;
                },
                ha, 1e-11)
                .value +
            2.0 * quad_tri([&](Point2 p) { return trig_eigen::U(mix, p); }, {A, Q2, C});
        CHECK(v.n == doctest::Approx(n_quad).epsilon(1e-8));
        CHECK(v.d == doctest::Approx(d_quad).epsilon(1e-8));
    }
}

TEST_CASE("ndf validates its domain") {
    CHECK_THROWS_AS(ndf({0.0, 0.6, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(ndf({0.0, 0.3, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(ndf({2.0, 0.1, 0.3}), std::invalid_argument);
}

TEST_CASE("small-a certificate functions") {
    // f1 < 0 on a dense grid of (0, 1/2]
    for (int i = 1; i <= 10000; ++i) {
        const double c = 0.5 * i / 10000.0;
        CHECK(smalla_f1(c) < 0.0);
        CHECK(smalla_f1(c) + (1.0 / 60.0) * smalla_f2(1.0 / 60.0, c) <= 0.0);
    }
    // a0 = 4/25 regime on (0, 0.16]
    for (int i = 1; i <= 10000; ++i) {
        const double c = 0.16 * i / 10000.0;
        CHECK(smalla_f1(c) + 0.16 * smalla_f2(0.16, c) <= 0.0);
    }
    CHECK(smalla_f1(0.0) == doctest::Approx(-2.0 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("G bound used by the small-a certificate") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double a = 1e-6 + 0.25 * u(rng);
        const double c = a + (0.5 - a) * std::max(1e-9, u(rng));
        const double bound = 2.0 * std::sin(kPi * c) * std::sin(kPi * c) / c * a;
        CHECK(smalla_G(a, c) <= bound + 1e-12);
    }
}

TEST_CASE("sinc branches agree across the switchover") {
    for (double w = 2e-7; w < 5e-6; w *= 1.4) {
        CHECK(std::abs(sinc_direct(w) - sinc_series(w)) < 1e-15);
        CHECK(std::abs(sinc_direct(-w) - sinc_series(-w)) < 1e-15);
    }
}

TEST_CASE("td_eta branches agree across the 2c = a switchover") {
    // reachable only through the analytic continuation (c < a)
    for (const double c : {0.11, 0.2, 0.31}) {
        for (double m = 2e-7; m < 2e-5; m *= 2.1) {
            for (const double s : {1.0, -1.0}) {
                const double a = 2.0 * c - s * m;
                CHECK(std::abs(td_eta_direct(a, c) - td_eta_series(a, c)) < 1e-9);
            }
        }
    }
}

TEST_CASE("continuity across singular parameters") {
    // values straddling each removable line differ only by the local slope
    const auto check_pair = [](double f1v, double f2v) { CHECK(std::abs(f1v - f2v) < 1e-8); };
    check_pair(tn_integrals(1.0 / 3.0 - 1e-9, 0.4).psi, tn_integrals(1.0 / 3.0 + 1e-9, 0.4).psi);
    check_pair(td_integrals(0.2, 0.3 - 1e-9).psi, td_integrals(0.2, 0.3 + 1e-9).psi);  // 3a = 2c
    check_pair(td_integrals(0.2, 0.2).eta, td_integrals(0.2, 0.2 + 1e-9).eta);          // c = a
}
