#include "neucert/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace neucert::quadrature {

namespace {

using geometry::cross;

// Conical-product rule on the reference triangle {(u,v): u,v >= 0, u+v <= 1}:
// x = u, y = v(1-u) with 5-point Gauss-Legendre in u and 4-point in v.
// Exact for total degree <= 7, all 20 weights positive.
struct RulePoint {
    double l1, l2;  // reference coordinates
    double w;
};

const std::array<RulePoint, 20>& rule() {
    static const std::array<RulePoint, 20> pts = [] {
        // 5-point Gauss-Legendre on [0,1]
        const double u5[5] = {0.5 - 0.9061798459386640 / 2.0, 0.5 - 0.5384693101056831 / 2.0, 0.5,
                              0.5 + 0.5384693101056831 / 2.0, 0.5 + 0.9061798459386640 / 2.0};
        const double w5[5] = {0.2369268850561891 / 2.0, 0.4786286704993665 / 2.0,
                              0.5688888888888889 / 2.0, 0.4786286704993665 / 2.0,
                              0.2369268850561891 / 2.0};
        // 4-point Gauss-Legendre on [0,1]
        const double u4[4] = {0.5 - 0.8611363115940526 / 2.0, 0.5 - 0.3399810435848563 / 2.0,
                              0.5 + 0.3399810435848563 / 2.0, 0.5 + 0.8611363115940526 / 2.0};
        const double w4[4] = {0.3478548451374538 / 2.0, 0.6521451548625461 / 2.0,
                              0.6521451548625461 / 2.0, 0.3478548451374538 / 2.0};
        std::array<RulePoint, 20> r{};
        int k = 0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double x = u5[i];
                const double y = u4[j] * (1.0 - u5[i]);
                // Duffy factor (1-u); x2 normalizes the rule to integrate 1 to 1.
                r[k++] = {x, y, w5[i] * w4[j] * (1.0 - u5[i]) * 2.0};
            }
        }
        return r;
    }();
    return pts;
}

double rule_eval(const std::function<double(Point2)>& f, const Triangle& t, double area) {
    double s = 0.0;
    for (const RulePoint& rp : rule()) {
        const double l0 = 1.0 - rp.l1 - rp.l2;
        const Point2 p{l0 * t.a.x + rp.l1 * t.b.x + rp.l2 * t.c.x,
                       l0 * t.a.y + rp.l1 * t.b.y + rp.l2 * t.c.y};
        s += rp.w * f(p);
    }
    return s * area;
}

Point2 mid(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

struct Cell {
    Triangle tri;
    double area;       // unsigned
    double coarse;     // one-shot rule value
    double refined;    // sum over the 4 children
    double err;        // |coarse - refined|
};

Cell make_cell(const std::function<double(Point2)>& f, const Triangle& t, double area) {
    Cell c{t, area, rule_eval(f, t, area), 0.0, 0.0};
    const Point2 ab = mid(t.a, t.b), bc = mid(t.b, t.c), ca = mid(t.c, t.a);
    const Triangle kids[4] = {{t.a, ab, ca}, {ab, t.b, bc}, {ca, bc, t.c}, {ab, bc, ca}};
    for (const Triangle& k : kids) c.refined += rule_eval(f, k, 0.25 * area);
    c.err = std::abs(c.coarse - c.refined);
    return c;
}

}  // namespace

double Triangle::signed_area() const { return 0.5 * cross(b - a, c - a); }

QuadResult integrate_triangle(const std::function<double(Point2)>& f, const Triangle& t,
                              double rel_tol, int max_cells) {
    QuadResult out;
    const double area = std::abs(t.signed_area());
    if (area == 0.0) return out;

    auto cmp = [](const Cell& x, const Cell& y) { return x.err < y.err; };
    std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
    heap.push(make_cell(f, t, area));
    double total = heap.top().refined;
    double total_err = heap.top().err;
    int cells = 1;

    while (total_err > rel_tol * std::abs(total) + 1e-14) {
        if (cells >= max_cells || heap.empty()) {
            out.converged = false;
            break;
        }
        const Cell worst = heap.top();
        heap.pop();
        total -= worst.refined;
        total_err -= worst.err;
        const Point2 ab = mid(worst.tri.a, worst.tri.b), bc = mid(worst.tri.b, worst.tri.c),
                     ca = mid(worst.tri.c, worst.tri.a);
        const Triangle kids[4] = {{worst.tri.a, ab, ca},
                                  {ab, worst.tri.b, bc},
                                  {ca, bc, worst.tri.c},
                                  {ab, bc, ca}};
        for (const Triangle& k : kids) {
            Cell c = make_cell(f, k, 0.25 * worst.area);
            total += c.refined;
            total_err += c.err;
            heap.push(std::move(c));
        }
        cells += 4;
    }
    out.value = total;
    out.error_estimate = total_err;
    out.cells = cells;
    return out;
}

QuadResult integrate_polygon(const std::function<double(Point2)>& f, const ConvexPolygon& poly,
                             double rel_tol, int max_cells) {
    const Point2 c = poly.centroid();
    QuadResult out;
    double err_sq = 0.0;
    const auto& v = poly.vertices();
    const int per_tri = std::max(1000, max_cells / static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Triangle t{v[i], v[(i + 1) % v.size()], c};
        const QuadResult r = integrate_triangle(f, t, rel_tol, per_tri);
        out.value += r.value;
        out.cells += r.cells;
        out.converged = out.converged && r.converged;
        err_sq += r.error_estimate * r.error_estimate;
    }
    out.error_estimate = std::sqrt(err_sq);
    return out;
}

}  // namespace neucert::quadrature
