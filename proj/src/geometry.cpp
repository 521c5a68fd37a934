#include "neucert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace neucert::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

double max_abs_coord(const std::vector<Point2>& vs) {
    double m = 0.0;
    for (const auto& p : vs) m = std::max({m, std::abs(p.x), std::abs(p.y)});
    return m;
}

}  // namespace

double norm(Point2 p) { return std::hypot(p.x, p.y); }
double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (const auto& p : vertices_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon vertex is not finite");
    }
    const std::size_t n = vertices_.size();
    const double scale = std::max(1.0, max_abs_coord(vertices_));
    const double cross_tol = 1e-12 * scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = vertices_[i];
        const Point2& b = vertices_[(i + 1) % n];
        const Point2& c = vertices_[(i + 2) % n];
        if (dist(a, b) == 0.0) throw std::invalid_argument("duplicate consecutive vertices");
        if (cross(b - a, c - b) < -cross_tol)
            throw std::invalid_argument("polygon is not convex counter-clockwise");
    }
    if (signed_area() <= 0.0) throw std::invalid_argument("polygon must be counter-clockwise");
}

double ConvexPolygon::signed_area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point2& a = vertices_[i];
        const Point2& b = vertices_[(i + 1) % vertices_.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

Point2 ConvexPolygon::centroid() const {
    double cx = 0.0, cy = 0.0, s = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point2& a = vertices_[i];
        const Point2& b = vertices_[(i + 1) % vertices_.size()];
        const double w = cross(a, b);
        cx += w * (a.x + b.x);
        cy += w * (a.y + b.y);
        s += w;
    }
    return {cx / (3.0 * s), cy / (3.0 * s)};
}

namespace {

// Diameter by rotating calipers: walk antipodal vertex pairs.
double calipers_diameter(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    if (n == 3) {
        return std::max({dist(v[0], v[1]), dist(v[1], v[2]), dist(v[2], v[0])});
    }
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 e = v[(i + 1) % n] - v[i];
        // advance j while the next vertex is farther from edge i
        while (cross(e, v[(j + 1) % n] - v[i]) > cross(e, v[j % n] - v[i])) ++j;
        best = std::max(best, dist(v[i], v[j % n]));
        best = std::max(best, dist(v[(i + 1) % n], v[j % n]));
    }
    return best;
}

// Width by rotating calipers: min over edges of the max vertex distance to
// the edge's supporting line (the minimum projection is attained at an edge
// normal for polygons).
std::pair<double, Point2> calipers_width(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    Point2 dir{0.0, 0.0};
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = v[i];
        const Point2 e = v[(i + 1) % n] - a;
        while (cross(e, v[(j + 1) % n] - a) > cross(e, v[j % n] - a)) ++j;
        const double w = cross(e, v[j % n] - a) / norm(e);
        if (w < best) {
            best = w;
            const double len = norm(e);
            dir = {-e.y / len, e.x / len};  // inward edge normal
        }
    }
    return {best, dir};
}

}  // namespace

ShapeMetrics metrics(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    ShapeMetrics m;
    m.area = poly.signed_area();
    if (m.area < 1e-14) throw std::invalid_argument("degenerate polygon: area below 1e-14");
    for (std::size_t i = 0; i < v.size(); ++i) m.perimeter += dist(v[i], v[(i + 1) % v.size()]);
    m.diameter = calipers_diameter(v);
    auto [w, dir] = calipers_width(v);
    m.min_width = w;
    m.width_direction = dir;
    return m;
}

ConvexPolygon triangle_T() {
    return ConvexPolygon({{-0.5, 0.0}, {0.5, 0.0}, {0.0, kSqrt3 / 2.0}});
}

ConvexPolygon hat_triangle(double a) {
    if (!(a >= 0.0 && a <= 0.5)) throw std::invalid_argument("hat_triangle: a must be in [0, 1/2]");
    // bounded by y = (sqrt3/2)(1-a) and y = +-sqrt3 x - sqrt3 (1/2 - a)
    const double top = kSqrt3 / 2.0 * (1.0 - a);
    const double xr = 1.0 - 1.5 * a;
    const double ya = kSqrt3 * (a - 0.5);
    return ConvexPolygon({{0.0, ya}, {xr, top}, {-xr, top}});
}

ConvexPolygon omega_a(double a) {
    if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("omega_a: a must be in (0, 1/2)");
    const double h = kSqrt3 / 2.0 * (1.0 - a);
    return ConvexPolygon({{0.5 - a, 0.0},
                          {0.5 * (1.0 - a), kSqrt3 / 2.0 * a},
                          {0.5 * a, h},
                          {-0.5 * a, h},
                          {-0.5 * (1.0 - a), kSqrt3 / 2.0 * a},
                          {-(0.5 - a), 0.0}});
}

ConvexPolygon hex_Ha(double a) {
    if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("hex_Ha: a must be in (0, 1/2)");
    return ConvexPolygon({{0.0, 0.0},
                          {0.5 - 0.75 * a, kSqrt3 / 4.0 * a},
                          {0.25, kSqrt3 / 4.0},
                          {0.0, kSqrt3 / 2.0 * (1.0 - a)},
                          {-0.25, kSqrt3 / 4.0},
                          {-(0.5 - 0.75 * a), kSqrt3 / 4.0 * a}});
}

ConvexPolygon regular_polygon(int n) {
    if (n < 3) throw std::invalid_argument("regular_polygon: need n >= 3");
    std::vector<Point2> v(n);
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * kPi * k / n;
        v[k] = {std::cos(t), std::sin(t)};
    }
    return ConvexPolygon(std::move(v));
}

std::vector<Point2> zigzag_domain(double a, int n) {
    if (!(a > 0.0 && a <= 0.25)) throw std::invalid_argument("zigzag_domain: a must be in (0, 1/4]");
    if (n < 1) throw std::invalid_argument("zigzag_domain: n must be >= 1");
    const double b = std::sqrt(std::max(0.0, 1.0 / (16.0 * a * a) - 1.0));
    const double height = b * a / (2.0 * n);

    const std::array<Point2, 4> corners = {{{0.0, 0.0}, {a, 0.0}, {a, a}, {0.0, a}}};
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(8 * n));
    for (int side = 0; side < 4; ++side) {
        const Point2 p0 = corners[side];
        const Point2 p1 = corners[(side + 1) % 4];
        const Point2 along = {(p1.x - p0.x) / (2.0 * n), (p1.y - p0.y) / (2.0 * n)};
        const Point2 outward = {(p1.y - p0.y) / a, -(p1.x - p0.x) / a};  // unit, points away from the square
        out.push_back(p0);
        for (int k = 0; k < n; ++k) {
            if (height > 0.0) {
                const Point2 base_mid = p0 + static_cast<double>(2 * k + 1) * along;
                out.push_back(base_mid + height * outward);
            }
            if (k + 1 < n) out.push_back(p0 + static_cast<double>(2 * k + 2) * along);
        }
    }
    return out;
}

namespace {

std::vector<Point2> parse_vertices(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polygon file: " + path.string());
    nlohmann::json j;
    in >> j;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::runtime_error("polygon file missing \"vertices\" array: " + path.string());
    std::vector<Point2> v;
    for (const auto& e : j["vertices"]) {
        if (!e.is_array() || e.size() != 2)
            throw std::runtime_error("polygon vertex must be a [x, y] pair");
        v.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return v;
}

void dump_vertices(const std::vector<Point2>& vertices, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("cannot write polygon file: " + path.string());
    std::fputs("{\"vertices\": [", f);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::fprintf(f, "%s[%.17g, %.17g]", i == 0 ? "" : ", ", vertices[i].x, vertices[i].y);
    }
    std::fputs("]}\n", f);
    std::fclose(f);
}

}  // namespace

ConvexPolygon read_polygon(const std::filesystem::path& path) {
    return ConvexPolygon(parse_vertices(path));
}

void write_polygon(const ConvexPolygon& poly, const std::filesystem::path& path) {
    dump_vertices(poly.vertices(), path);
}

std::vector<Point2> read_vertex_list(const std::filesystem::path& path) {
    return parse_vertices(path);
}

void write_vertex_list(const std::vector<Point2>& vertices, const std::filesystem::path& path) {
    dump_vertices(vertices, path);
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int max_points) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const int m = 4 + static_cast<int>(unit(rng) * std::max(1, max_points - 4));
        const double sx = 0.4 + 2.0 * unit(rng);
        const double sy = 0.4 + 2.0 * unit(rng);
        std::vector<Point2> pts;
        for (int i = 0; i < m; ++i) pts.push_back({sx * unit(rng), sy * unit(rng)});
        auto hull = convex_hull(pts);
        if (hull.size() < 3) continue;
        try {
            ConvexPolygon poly(hull);
            if (poly.signed_area() > 1e-3) return poly;
        } catch (const std::invalid_argument&) {
        }
    }
}

ConvexPolygon random_two_axis_symmetric(std::mt19937_64& rng, int max_points) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const int m = 2 + static_cast<int>(unit(rng) * std::max(1, max_points - 2));
        const double sx = 0.3 + 1.5 * unit(rng);
        const double sy = 0.3 + 1.5 * unit(rng);
        std::vector<Point2> pts;
        for (int i = 0; i < m; ++i) {
            const double x = sx * (0.1 + 0.9 * unit(rng));
            const double y = sy * (0.1 + 0.9 * unit(rng));
            pts.push_back({x, y});
            pts.push_back({-x, y});
            pts.push_back({x, -y});
            pts.push_back({-x, -y});
        }
        auto hull = convex_hull(pts);
        if (hull.size() < 4) continue;
        try {
            ConvexPolygon poly(hull);
            if (poly.signed_area() > 1e-3) return poly;
        } catch (const std::invalid_argument&) {
        }
    }
}

ConvexPolygon random_rectangle(std::mt19937_64& rng, double max_aspect) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double l = 0.3 + unit(rng);
    const double aspect = 1.0 + (max_aspect - 1.0) * unit(rng);
    const double L = l * aspect;
    return ConvexPolygon({{0.0, 0.0}, {L, 0.0}, {L, l}, {0.0, l}});
}

ConvexPolygon random_parallelogram(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double L = 0.5 + 1.5 * unit(rng);
    const double h = 0.2 + unit(rng);
    const double shear = (unit(rng) - 0.5) * 2.0 * L;
    return ConvexPolygon({{0.0, 0.0}, {L, 0.0}, {L + shear, h}, {shear, h}});
}

ConvexPolygon transformed(const ConvexPolygon& poly, double angle, Point2 shift, double scale) {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Point2> v;
    v.reserve(poly.size());
    for (const auto& p : poly.vertices())
        v.push_back({scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y});
    return ConvexPolygon(std::move(v));
}

}  // namespace neucert::geometry
