#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace neucert::geometry {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 p);
double dist(Point2 a, Point2 b);

/// Counter-clockwise convex polygon. The constructor validates: at least 3
/// vertices, finite coordinates, no duplicate consecutive points, positive
/// signed area, and convexity up to a cross-product tolerance of 1e-12
/// (scaled for shapes far from unit size). Throws std::invalid_argument.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }

    double signed_area() const;
    Point2 centroid() const;

  private:
    std::vector<Point2> vertices_;
};

struct ShapeMetrics {
    double perimeter = 0.0;
    double area = 0.0;
    double diameter = 0.0;
    double min_width = 0.0;
    Point2 width_direction{0.0, 0.0};  // unit normal of the minimizing edge
};

/// Area by shoelace, perimeter by edge sum, diameter and minimal width by
/// rotating calipers. Rejects degenerate input (area < 1e-14).
ShapeMetrics metrics(const ConvexPolygon& poly);

// Shape family generators. All emit exact closed-form vertex coordinates.
ConvexPolygon triangle_T();
ConvexPolygon hat_triangle(double a);   // a in [0, 1/2]
ConvexPolygon omega_a(double a);        // a in (0, 1/2)
ConvexPolygon hex_Ha(double a);         // a in (0, 1/2)
ConvexPolygon regular_polygon(int n);   // n >= 3, circumradius 1

/// Sawtooth perturbation of the square [0,a]^2 with n teeth per side and
/// total perimeter exactly 1. NOT convex; accepted only by the FEM module.
/// Requires a in (0, 1/4]; at a = 1/4 the teeth vanish and the square is
/// returned.
std::vector<Point2> zigzag_domain(double a, int n);

// Polygon JSON file format: {"vertices": [[x, y], ...]}, counter-clockwise,
// 17 significant digits on write.
ConvexPolygon read_polygon(const std::filesystem::path& path);
void write_polygon(const ConvexPolygon& poly, const std::filesystem::path& path);
std::vector<Point2> read_vertex_list(const std::filesystem::path& path);
void write_vertex_list(const std::vector<Point2>& vertices, const std::filesystem::path& path);

// Helpers shared by generators, tests and the FEM conjecture scan.
std::vector<Point2> convex_hull(std::vector<Point2> points);
ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int max_points = 12);
ConvexPolygon random_two_axis_symmetric(std::mt19937_64& rng, int max_points = 8);
ConvexPolygon random_rectangle(std::mt19937_64& rng, double max_aspect = 3.0);
ConvexPolygon random_parallelogram(std::mt19937_64& rng);
ConvexPolygon transformed(const ConvexPolygon& poly, double angle, Point2 shift, double scale = 1.0);

}  // namespace neucert::geometry
