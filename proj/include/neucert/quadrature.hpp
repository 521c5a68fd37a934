#pragma once

#include <functional>

#include "neucert/geometry.hpp"

namespace neucert::quadrature {

using geometry::ConvexPolygon;
using geometry::Point2;

struct Triangle {
    Point2 a, b, c;
    double signed_area() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int cells = 0;
    bool converged = true;
    static constexpr int rule_degree = 7;  // conical-product Gauss rule, positive weights
};

/// Adaptive integration over a triangle: fixed degree-7 positive rule per
/// cell, 4-way subdivision driven by the parent/children discrepancy.
/// Terminates when the estimate drops below rel_tol * |value| + 1e-14.
/// Heuristic error estimates only; this is a testing oracle, never part of
/// the certified verdict path.
QuadResult integrate_triangle(const std::function<double(Point2)>& f, const Triangle& t,
                              double rel_tol, int max_cells = 1'000'000);

/// Fan triangulation from the centroid; root-sum-square error.
QuadResult integrate_polygon(const std::function<double(Point2)>& f, const ConvexPolygon& poly,
                             double rel_tol, int max_cells = 1'000'000);

}  // namespace neucert::quadrature
