#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "neucert/bounds.hpp"
#include "neucert/fem.hpp"
#include "neucert/geometry.hpp"
#include "neucert/quadrature.hpp"
#include "neucert/trig_eigen.hpp"

using namespace neucert;
using namespace neucert::fem;
using geometry::Point2;
constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

namespace {
const std::vector<Point2> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

double mesh_area(const Mesh& m) {
    double s = 0.0;
    for (const auto& e : m.elements) {
        const Point2 a = m.nodes[e[0]], b = m.nodes[e[1]], c = m.nodes[e[2]];
        s += 0.5 * geometry::cross({b.x - a.x, b.y - a.y}, {c.x - a.x, c.y - a.y});
    }
    return s;
}
}  // namespace

TEST_CASE("triangulation covers the square and respects h") {
    const Mesh m = triangulate(kUnitSquare, 0.1);
    CHECK(m.max_diameter() <= 0.1 + 1e-12);
    CHECK(m.min_signed_area() > 0.0);
    CHECK(mesh_area(m) == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& p : m.nodes) {
        CHECK(p.x >= -1e-12);
        CHECK(p.x <= 1.0 + 1e-12);
        CHECK(p.y >= -1e-12);
        CHECK(p.y <= 1.0 + 1e-12);
    }
    // all polygon vertices are mesh nodes
    for (const auto& v : kUnitSquare) {
        bool found = false;
        for (const auto& p : m.nodes) found = found || (p.x == v.x && p.y == v.y);
        CHECK(found);
    }
}

TEST_CASE("uniform refinement quadruples the element count") {
    const Mesh m = triangulate(kUnitSquare, 0.25);
    const Mesh r = refine_uniform(m);
    CHECK(r.elements.size() == 4 * m.elements.size());
    CHECK(r.max_diameter() == doctest::Approx(m.max_diameter() / 2).epsilon(1e-12));
    CHECK(mesh_area(r) == doctest::Approx(mesh_area(m)).epsilon(1e-12));
}

TEST_CASE("zigzag meshes without inverted elements") {
    const auto poly = geometry::zigzag_domain(0.2, 10);
    const Mesh m = triangulate(poly, 0.2 / 40.0);
    CHECK(m.min_signed_area() > 0.0);
    CHECK(m.max_diameter() <= 0.2 / 40.0 + 1e-12);
    // covers the union of square and teeth
    double teeth = 0.0;
    const double b = std::sqrt(1.0 / (16.0 * 0.04) - 1.0);
    teeth = 4 * 10 * 0.5 * (0.2 / 10.0) * (b * 0.2 / 20.0);
    CHECK(mesh_area(m) == doctest::Approx(0.04 + teeth).epsilon(1e-12));
}

TEST_CASE("self-intersecting input is rejected") {
    CHECK_THROWS(triangulate({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, 0.2));
}

TEST_CASE("unit square eigenvalue") {
    const EigResult e = mu1_fem(kUnitSquare, 0.02);
    CHECK(std::abs(e.mu1 - kPi * kPi) / (kPi * kPi) < 0.005);
    CHECK(e.residual <= 1e-8);
    CHECK(std::abs(e.zero_mode) <= 1e-9 * e.mu1);
}

TEST_CASE("equilateral triangle eigenvalue") {
    const EigResult e = mu1_fem(geometry::triangle_T().vertices(), 0.02);
    const double want = 16.0 * kPi * kPi / 9.0;
    CHECK(std::abs(e.mu1 - want) / want < 0.005);
}

TEST_CASE("area-pi 64-gon approximates the disk value") {
    const auto gon = geometry::regular_polygon(64);
    const double area = gon.signed_area();
    const auto scaled = geometry::transformed(gon, 0.0, {0, 0}, std::sqrt(kPi / area));
    const EigResult e = mu1_fem(scaled.vertices(), 0.05, true);
    CHECK(std::abs(e.best() - bounds::kJ1PrimeSq) / bounds::kJ1PrimeSq < 0.01);
}

TEST_CASE("discrete eigenvalue decreases monotonically under refinement") {
    Mesh m = triangulate(kUnitSquare, 0.2);
    double prev = mu1_fem_mesh(m).mu1;
    for (int i = 0; i < 3; ++i) {
        m = refine_uniform(m);
        const double cur = mu1_fem_mesh(m).mu1;
        CHECK(cur <= prev + 1e-3);
        CHECK(cur >= kPi * kPi - 1e-6);  // conforming Rayleigh-Ritz stays above
        prev = cur;
    }
}

TEST_CASE("Rayleigh quotient of v_k dominates the FEM value on C_a shapes") {
    const auto shape = geometry::omega_a(0.2);
    const trig_eigen::MixParam k(0.0);
    const double num =
        quadrature::integrate_polygon(
            [&](Point2 p) {
                const Point2 g = trig_eigen::grad_v_k(k, p);
                return g.x * g.x + g.y * g.y;
            },
            shape, 1e-11)
            .value;
    const double den = quadrature::integrate_polygon(
                           [&](Point2 p) {
                               const double v = trig_eigen::v_k(k, p);
                               return v * v;
                           },
                           shape, 1e-11)
                           .value;
    const auto e = mu1_fem(shape.vertices(), 0.02);
    CHECK(num / den >= e.mu1 * 0.99);
}

TEST_CASE("bound sandwich on random convex polygons") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 8; ++i) {
        const auto poly = geometry::random_convex_polygon(rng);
        const auto m = geometry::metrics(poly);
        const auto b = bounds::bound_set(m);
        const auto e = mu1_fem(poly.vertices(), m.diameter / 40.0);
        CHECK(b.pw_lower <= e.mu1 * 1.01);
        CHECK(e.mu1 <= 1.01 * std::min({b.sw_upper, b.cheng_upper, b.width_upper}));
    }
}

TEST_CASE("width bound equality for rectangles within FEM tolerance") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 3; ++i) {
        const auto rect = geometry::random_rectangle(rng, 2.5);
        const auto m = geometry::metrics(rect);
        const auto b = bounds::bound_set(m);
        const auto e = mu1_fem(rect.vertices(), m.min_width / 25.0, true);
        CHECK(std::abs(e.best() - b.width_upper) / b.width_upper < 0.01);
    }
}

TEST_CASE("conjecture scan stays below the target") {
    const auto rows = conjecture_scan(
        [](std::mt19937_64& rng) { return geometry::random_two_axis_symmetric(rng); }, 6, 42);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.p2_mu1 <= bounds::kTarget16PiSq * 1.01);
    // reproducibility with the same seed
    const auto again = conjecture_scan(
        [](std::mt19937_64& rng) { return geometry::random_two_axis_symmetric(rng); }, 6, 42);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].mu1 == again[i].mu1);
        CHECK(rows[i].perimeter == again[i].perimeter);
    }
}
