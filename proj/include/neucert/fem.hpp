#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "neucert/geometry.hpp"

namespace neucert::fem {

using geometry::ConvexPolygon;
using geometry::Point2;

/// Conforming P1 triangulation: every input polygon vertex is a mesh node,
/// no inverted elements.
struct Mesh {
    std::vector<Point2> nodes;
    std::vector<std::array<int, 3>> elements;

    double max_diameter() const;
    double min_signed_area() const;
};

/// Triangulates a simple polygon (convex: centroid fan; non-convex: ear
/// clipping) and bisects until every element diameter is at most h_target.
/// Self-intersecting input is rejected.
Mesh triangulate(const std::vector<Point2>& polygon, double h_target);

/// Mesh dump: JSON {"nodes": [[x, y], ...], "elements": [[i, j, k], ...]}.
void write_mesh(const Mesh& mesh, const std::string& path);

/// Splits every triangle into four via edge midpoints (exactly quadruples
/// the element count; halves the mesh size).
Mesh refine_uniform(const Mesh& mesh);

struct EigResult {
    double mu1 = 0.0;                 // smallest nontrivial Neumann eigenvalue
    double h = 0.0;                   // max element diameter of the solved mesh
    int dof = 0;
    std::optional<double> extrapolated;  // Richardson value from (h, h/2)
    double residual = 0.0;            // ||K v - mu M v|| / ||M v||
    double zero_mode = 0.0;           // Rayleigh quotient of the constant mode

    double best() const { return extrapolated.value_or(mu1); }
};

/// P1 Neumann eigensolver: consistent mass, constant mode deflated, smallest
/// nontrivial eigenvalue via shift-inverted block iteration (dense solve for
/// tiny meshes). Residual contract: ||K v - mu M v|| <= 1e-8 ||M v||.
EigResult mu1_fem(const std::vector<Point2>& polygon, double h_target, bool richardson = false);
EigResult mu1_fem_mesh(const Mesh& mesh, bool richardson = false);

struct ScanRow {
    std::string id;
    double perimeter;
    double mu1;
    double p2_mu1;
    double margin_to_target;  // 16 pi^2 - P^2 mu1
};

/// Runs mu1_fem over `count` shapes drawn from the generator and reports
/// P^2 mu1 against the 16 pi^2 target.
std::vector<ScanRow> conjecture_scan(
    const std::function<ConvexPolygon(std::mt19937_64&)>& generator, int count, std::uint64_t seed);

}  // namespace neucert::fem
