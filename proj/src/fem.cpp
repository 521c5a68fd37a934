#include "neucert/fem.hpp"

#include "neucert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace neucert::fem {

namespace {

using geometry::cross;
using geometry::dist;

constexpr double kPi = std::numbers::pi;

double tri_diameter(const Point2& a, const Point2& b, const Point2& c) {
    return std::max({dist(a, b), dist(b, c), dist(c, a)});
}

double tri_signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return 0.5 * cross(b - a, c - a);
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
    const auto orient = [](Point2 p, Point2 q, Point2 r) { return cross(q - p, r - p); };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

bool simple_polygon(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // shared endpoint
            if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool polygon_convex(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (cross(v[(i + 1) % n] - v[i], v[(i + 2) % n] - v[(i + 1) % n]) < -1e-12) return false;
    }
    return true;
}

bool point_in_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
    const double d1 = cross(b - a, p - a);
    const double d2 = cross(c - b, p - b);
    const double d3 = cross(a - c, p - c);
    return d1 >= -1e-15 && d2 >= -1e-15 && d3 >= -1e-15;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Point2>& pts) {
    std::vector<int> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::array<int, 3>> tris;
    int guard = 0;
    while (idx.size() > 3) {
        bool clipped = false;
        const std::size_t m = idx.size();
        for (std::size_t i = 0; i < m; ++i) {
            const int ip = idx[(i + m - 1) % m], ic = idx[i], in = idx[(i + 1) % m];
            const Point2 &a = pts[ip], &b = pts[ic], &c = pts[in];
            if (cross(b - a, c - b) <= 1e-15) continue;  // reflex or flat corner
            bool blocked = false;
            for (std::size_t j = 0; j < m && !blocked; ++j) {
                const int q = idx[j];
                if (q == ip || q == ic || q == in) continue;
                blocked = point_in_triangle(pts[q], a, b, c);
            }
            if (blocked) continue;
            tris.push_back({ip, ic, in});
            idx.erase(idx.begin() + static_cast<long>(i));
            clipped = true;
            break;
        }
        if (!clipped) throw std::runtime_error("ear clipping stuck; polygon may be degenerate");
        if (++guard > 100000) throw std::runtime_error("ear clipping did not terminate");
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

using EdgeKey = std::uint64_t;
EdgeKey edge_key(int a, int b) {
    const std::uint64_t lo = static_cast<std::uint32_t>(std::min(a, b));
    const std::uint64_t hi = static_cast<std::uint32_t>(std::max(a, b));
    return (lo << 32) | hi;
}
int edge_first(EdgeKey k) { return static_cast<int>(k >> 32); }
int edge_second(EdgeKey k) { return static_cast<int>(k & 0xffffffffu); }

// Longest edge under a strict global order (length, then vertex ids): ties
// are broken identically on both sides of an edge, so LEPP chains strictly
// ascend and cannot cycle.
int longest_edge(const Mesh& m, const std::array<int, 3>& t) {
    int side = 0;
    auto rank = [&](int s) {
        return std::pair(dist(m.nodes[t[s]], m.nodes[t[(s + 1) % 3]]),
                         edge_key(t[s], t[(s + 1) % 3]));
    };
    for (int s = 1; s < 3; ++s)
        if (rank(s) > rank(side)) side = s;
    return side;
}

/// Conforming longest-edge (Rivara) bisection until all diameters <= h.
void bisect_to(Mesh& m, double h) {
    std::vector<bool> alive(m.elements.size(), true);
    std::unordered_map<EdgeKey, std::vector<int>> edges;  // every triangle ever created; filter by alive
    std::unordered_map<EdgeKey, int> midpoint;
    edges.reserve(4 * m.elements.size());

    auto register_tri = [&](int t) {
        const auto& e = m.elements[t];
        for (int s = 0; s < 3; ++s) edges[edge_key(e[s], e[(s + 1) % 3])].push_back(t);
    };
    for (std::size_t t = 0; t < m.elements.size(); ++t) register_tri(static_cast<int>(t));

    auto midpoint_of = [&](int a, int b) {
        const EdgeKey k = edge_key(a, b);
        auto it = midpoint.find(k);
        if (it != midpoint.end()) return it->second;
        m.nodes.push_back({0.5 * (m.nodes[a].x + m.nodes[b].x), 0.5 * (m.nodes[a].y + m.nodes[b].y)});
        const int id = static_cast<int>(m.nodes.size()) - 1;
        midpoint.emplace(k, id);
        return id;
    };

    auto oversized = [&](int t) {
        const auto& e = m.elements[t];
        return tri_diameter(m.nodes[e[0]], m.nodes[e[1]], m.nodes[e[2]]) > h;
    };

    std::vector<int> work;
    auto split = [&](int t, int side) {
        const auto e = m.elements[t];
        const int a = e[side], b = e[(side + 1) % 3], c = e[(side + 2) % 3];
        const int mid = midpoint_of(a, b);
        alive[t] = false;
        for (const std::array<int, 3> child : {std::array<int, 3>{a, mid, c}, {mid, b, c}}) {
            m.elements.push_back(child);
            alive.push_back(true);
            const int id = static_cast<int>(m.elements.size()) - 1;
            register_tri(id);
            if (oversized(id)) work.push_back(id);
        }
    };

    for (std::size_t t = 0; t < m.elements.size(); ++t)
        if (oversized(static_cast<int>(t))) work.push_back(static_cast<int>(t));

    // LEPP: a triangle is bisected across its longest edge only together with
    // the neighbor sharing that edge (when it is the neighbor's longest edge
    // too); otherwise the neighbor is refined first.
    while (!work.empty()) {
        const int t = work.back();
        if (!alive[t]) {
            work.pop_back();
            continue;
        }
        const auto& e = m.elements[t];
        const int side = longest_edge(m, e);
        const EdgeKey k = edge_key(e[side], e[(side + 1) % 3]);
        int nb = -1;
        for (int cand : edges[k])
            if (cand != t && alive[cand]) nb = cand;
        if (nb < 0) {
            split(t, side);
            continue;
        }
        const auto& en = m.elements[nb];
        const int nb_side = longest_edge(m, en);
        if (edge_key(en[nb_side], en[(nb_side + 1) % 3]) == k) {
            split(t, side);
            split(nb, nb_side);
        } else {
            work.push_back(nb);  // refine the neighbor first
        }
        if (m.elements.size() > 8'000'000)
            throw std::runtime_error("bisection budget exhausted; h_target too small");
    }

    // compact
    Mesh out;
    out.nodes = m.nodes;
    for (std::size_t t = 0; t < m.elements.size(); ++t)
        if (alive[t]) out.elements.push_back(m.elements[t]);
    m = std::move(out);
}

bool in_circumcircle(Point2 a, Point2 b, Point2 c, Point2 d) {
    // d strictly inside the circumcircle of CCW triangle (a, b, c); the
    // threshold is relative so near-cocircular quads never flip back and forth
    const double ax = a.x - d.x, ay = a.y - d.y;
    const double bx = b.x - d.x, by = b.y - d.y;
    const double cx = c.x - d.x, cy = c.y - d.y;
    const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                       (bx * bx + by * by) * (ax * cy - cx * ay) +
                       (cx * cx + cy * cy) * (ax * by - bx * ay);
    const double l2 = std::max({ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy});
    return det > 1e-9 * l2 * l2 * l2;
}

/// Lawson sweeps: flip interior edges to the Delaunay configuration. Ear
/// clipping can leave boundary-to-boundary needles whose stiffness scale
/// ruins the eigensolver's attainable residual; flipping removes them.
void lawson_flip(Mesh& m, int max_sweeps = 60) {
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        std::unordered_map<EdgeKey, std::vector<int>> edges;
        edges.reserve(4 * m.elements.size());
        for (std::size_t t = 0; t < m.elements.size(); ++t) {
            const auto& e = m.elements[t];
            for (int s = 0; s < 3; ++s)
                edges[edge_key(e[s], e[(s + 1) % 3])].push_back(static_cast<int>(t));
        }
        int flips = 0;
        const auto has_edge = [](const std::array<int, 3>& t, EdgeKey k) {
            int hits = 0;
            for (int v : t) hits += (v == edge_first(k) || v == edge_second(k));
            return hits == 2;
        };
        for (const auto& [key, tris] : edges) {
            if (tris.size() != 2) continue;
            auto& t1 = m.elements[tris[0]];
            auto& t2 = m.elements[tris[1]];
            if (!has_edge(t1, key) || !has_edge(t2, key)) continue;  // stale after a flip
            const int u = edge_first(key), w = edge_second(key);
            // vertices opposite the shared edge
            int c1 = -1, c2 = -1;
            for (int v : t1)
                if (v != u && v != w) c1 = v;
            for (int v : t2)
                if (v != u && v != w) c2 = v;
            if (c1 < 0 || c2 < 0 || c1 == c2) continue;
            if (!in_circumcircle(m.nodes[t1[0]], m.nodes[t1[1]], m.nodes[t1[2]], m.nodes[c2]))
                continue;
            // orient the shared edge as it appears in t1
            int a = u, b = w;
            for (int s = 0; s < 3; ++s)
                if (t1[s] == w && t1[(s + 1) % 3] == u) {
                    a = w;
                    b = u;
                }
            const std::array<int, 3> n1{a, c2, c1};
            const std::array<int, 3> n2{c2, b, c1};
            const double l2 = dist(m.nodes[a], m.nodes[b]);
            const double min_area = 1e-6 * l2 * l2;
            if (tri_signed_area(m.nodes[n1[0]], m.nodes[n1[1]], m.nodes[n1[2]]) <= min_area ||
                tri_signed_area(m.nodes[n2[0]], m.nodes[n2[1]], m.nodes[n2[2]]) <= min_area)
                continue;
            t1 = n1;
            t2 = n2;
            ++flips;
        }
        if (std::getenv("NEUCERT_DEBUG_EIG"))
            std::fprintf(stderr, "lawson sweep %d: %d flips over %zu tris\n", sweep, flips,
                         m.elements.size());
        if (flips == 0) return;
    }
}

}  // namespace

void write_mesh(const Mesh& mesh, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write mesh file: " + path);
    std::fputs("{\"nodes\": [", f);
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
        std::fprintf(f, "%s[%.17g, %.17g]", i ? ", " : "", mesh.nodes[i].x, mesh.nodes[i].y);
    std::fputs("], \"elements\": [", f);
    for (std::size_t i = 0; i < mesh.elements.size(); ++i)
        std::fprintf(f, "%s[%d, %d, %d]", i ? ", " : "", mesh.elements[i][0], mesh.elements[i][1],
                     mesh.elements[i][2]);
    std::fputs("]}\n", f);
    std::fclose(f);
}

double Mesh::max_diameter() const {
    double h = 0.0;
    for (const auto& e : elements)
        h = std::max(h, tri_diameter(nodes[e[0]], nodes[e[1]], nodes[e[2]]));
    return h;
}

double Mesh::min_signed_area() const {
    double a = std::numeric_limits<double>::infinity();
    for (const auto& e : elements)
        a = std::min(a, tri_signed_area(nodes[e[0]], nodes[e[1]], nodes[e[2]]));
    return a;
}

Mesh triangulate(const std::vector<Point2>& polygon, double h_target) {
    if (polygon.size() < 3) throw std::invalid_argument("triangulate: need at least 3 vertices");
    if (!(h_target > 0.0)) throw std::invalid_argument("triangulate: h_target must be positive");
    std::vector<Point2> v = polygon;
    double area2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) area2 += cross(v[i], v[(i + 1) % v.size()]);
    if (area2 < 0.0) std::reverse(v.begin(), v.end());
    if (!simple_polygon(v)) throw std::invalid_argument("triangulate: polygon self-intersects");

    Mesh m;
    m.nodes = v;
    if (polygon_convex(v)) {
        Point2 cen{0.0, 0.0};
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double w = cross(v[i], v[(i + 1) % v.size()]);
            cen.x += w * (v[i].x + v[(i + 1) % v.size()].x);
            cen.y += w * (v[i].y + v[(i + 1) % v.size()].y);
            s += w;
        }
        cen = {cen.x / (3.0 * s), cen.y / (3.0 * s)};
        m.nodes.push_back(cen);
        const int ci = static_cast<int>(m.nodes.size()) - 1;
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            m.elements.push_back({i, (i + 1) % static_cast<int>(v.size()), ci});
    } else {
        m.elements = ear_clip(v);
    }
    // staged refinement: halve the diameter target and re-establish the
    // Delaunay property each stage, so poor initial ears never cascade
    lawson_flip(m);
    double stage = m.max_diameter();
    while (stage > h_target) {
        stage = std::max(h_target, 0.5 * stage);
        bisect_to(m, stage);
        lawson_flip(m);
    }
    for (int round = 0; round < 4 && m.max_diameter() > h_target; ++round) {
        bisect_to(m, h_target);  // flips may have lengthened a diagonal
        lawson_flip(m);
    }
    if (m.max_diameter() > h_target) bisect_to(m, h_target);
    if (m.min_signed_area() <= 0.0) throw std::runtime_error("triangulate: inverted element");
    return m;
}

Mesh refine_uniform(const Mesh& mesh) {
    Mesh out;
    out.nodes = mesh.nodes;
    std::unordered_map<EdgeKey, int> midpoint;
    auto midpoint_of = [&](int a, int b) {
        const EdgeKey k = edge_key(a, b);
        auto it = midpoint.find(k);
        if (it != midpoint.end()) return it->second;
        out.nodes.push_back({0.5 * (out.nodes[a].x + out.nodes[b].x),
                             0.5 * (out.nodes[a].y + out.nodes[b].y)});
        const int id = static_cast<int>(out.nodes.size()) - 1;
        midpoint.emplace(k, id);
        return id;
    };
    for (const auto& e : mesh.elements) {
        const int ab = midpoint_of(e[0], e[1]);
        const int bc = midpoint_of(e[1], e[2]);
        const int ca = midpoint_of(e[2], e[0]);
        out.elements.push_back({e[0], ab, ca});
        out.elements.push_back({ab, e[1], bc});
        out.elements.push_back({ca, bc, e[2]});
        out.elements.push_back({ab, bc, ca});
    }
    return out;
}

namespace {

void assemble(const Mesh& m, Eigen::SparseMatrix<double>& K, Eigen::SparseMatrix<double>& M) {
    const int n = static_cast<int>(m.nodes.size());
    std::vector<Eigen::Triplet<double>> tk, tm;
    tk.reserve(m.elements.size() * 9);
    tm.reserve(m.elements.size() * 9);
    for (const auto& e : m.elements) {
        const Point2 p[3] = {m.nodes[e[0]], m.nodes[e[1]], m.nodes[e[2]]};
        const double area = tri_signed_area(p[0], p[1], p[2]);
        double b[3], c[3];
        for (int i = 0; i < 3; ++i) {
            const Point2& pj = p[(i + 1) % 3];
            const Point2& pk = p[(i + 2) % 3];
            b[i] = pj.y - pk.y;
            c[i] = pk.x - pj.x;
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                tk.emplace_back(e[i], e[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * area));
                tm.emplace_back(e[i], e[j], area / 12.0 * (i == j ? 2.0 : 1.0));
            }
        }
    }
    K.resize(n, n);
    M.resize(n, n);
    K.setFromTriplets(tk.begin(), tk.end());
    M.setFromTriplets(tm.begin(), tm.end());
}

EigResult solve_mesh(const Mesh& mesh) {
    Eigen::SparseMatrix<double> K, M;
    assemble(mesh, K, M);
    const int n = static_cast<int>(mesh.nodes.size());

    EigResult r;
    r.h = mesh.max_diameter();
    r.dof = n;

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd m_ones = M * ones;
    const double ones_m = ones.dot(m_ones);
    r.zero_mode = ones.dot(K * ones) / ones_m;

    if (n <= 500) {
        const Eigen::MatrixXd Kd(K), Md(M);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kd, Md);
        r.mu1 = es.eigenvalues()(1);
        const Eigen::VectorXd v = es.eigenvectors().col(1);
        r.residual = (K * v - r.mu1 * (M * v)).norm() / (M * v).norm();
        return r;
    }

    // shift-inverted block iteration with the constant mode deflated;
    // diameter estimate from the bounding box sets the shift scale
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : mesh.nodes) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double diam = std::hypot(xmax - xmin, ymax - ymin);
    const double sigma = 0.1 * kPi * kPi / (diam * diam);

    Eigen::SparseMatrix<double> A = K + sigma * M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("mu1_fem: factorization failed");

    constexpr int kBlock = 4;
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd X(n, kBlock);
    for (int j = 0; j < kBlock; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);

    const auto deflate = [&](Eigen::VectorXd& x) { x -= (m_ones.dot(x) / ones_m) * ones; };
    const auto m_orthonormalize = [&](Eigen::MatrixXd& Y) {
        for (int j = 0; j < Y.cols(); ++j) {
            Eigen::VectorXd y = Y.col(j);
            deflate(y);
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i < j; ++i) y -= (Y.col(i).dot(M * y)) * Y.col(i);
            const double nrm = std::sqrt(y.dot(M * y));
            if (nrm < 1e-14) throw std::runtime_error("mu1_fem: block collapsed");
            Y.col(j) = y / nrm;
        }
    };

    m_orthonormalize(X);
    double res_prev = 1e300;
    int stalled = 0;
    for (int it = 0; it < 200; ++it) {
        Eigen::MatrixXd Y(n, kBlock);
        for (int j = 0; j < kBlock; ++j) Y.col(j) = ldlt.solve(M * X.col(j));
        m_orthonormalize(Y);
        const Eigen::MatrixXd Kr = Y.transpose() * (K * Y).eval();
        const Eigen::MatrixXd Mr = Y.transpose() * (M * Y).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rs(Kr, Mr);
        X = Y * rs.eigenvectors();
        const double mu = rs.eigenvalues()(0);
        const Eigen::VectorXd v = X.col(0);
        const double res = (K * v - mu * (M * v)).norm() / (M * v).norm();
        if (std::getenv("NEUCERT_DEBUG_EIG"))
            std::fprintf(stderr, "it %d mu %.12f res %.3e\n", it, mu, res);
        if (res <= 1e-8) {
            r.mu1 = mu;
            r.residual = res;
            return r;
        }
        stalled = res > 0.98 * res_prev ? stalled + 1 : 0;
        res_prev = res;
        if (stalled >= 8) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "mu1_fem: residual stalled at %.3e (target 1e-8)", res);
            throw std::runtime_error(buf);
        }
    }
    throw std::runtime_error("mu1_fem: eigensolver did not converge to the residual target");
}

}  // namespace

namespace {

// The residual contract carries eigenvalue units, so it is enforced on a
// diameter-normalized copy of the mesh; eigenvalues scale back exactly.
EigResult solve_normalized(const Mesh& mesh) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : mesh.nodes) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double d0 = std::hypot(xmax - xmin, ymax - ymin);
    Mesh scaled;
    scaled.elements = mesh.elements;
    scaled.nodes.reserve(mesh.nodes.size());
    for (const auto& p : mesh.nodes) scaled.nodes.push_back({p.x / d0, p.y / d0});
    EigResult r = solve_mesh(scaled);
    r.mu1 /= d0 * d0;
    r.zero_mode /= d0 * d0;
    r.h = mesh.max_diameter();
    return r;
}

}  // namespace

EigResult mu1_fem_mesh(const Mesh& mesh, bool richardson) {
    EigResult r = solve_normalized(mesh);
    if (richardson) {
        const EigResult fine = solve_normalized(refine_uniform(mesh));
        r.extrapolated = (4.0 * fine.mu1 - r.mu1) / 3.0;
    }
    return r;
}

EigResult mu1_fem(const std::vector<Point2>& polygon, double h_target, bool richardson) {
    // resolve the shortest boundary edge so the mesh conforms to every feature
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < polygon.size(); ++i)
        shortest = std::min(shortest, dist(polygon[i], polygon[(i + 1) % polygon.size()]));
    const Mesh mesh = triangulate(polygon, std::min(h_target, shortest));
    return mu1_fem_mesh(mesh, richardson);
}

std::vector<ScanRow> conjecture_scan(
    const std::function<ConvexPolygon(std::mt19937_64&)>& generator, int count,
    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ScanRow> rows;
    for (int i = 0; i < count; ++i) {
        const ConvexPolygon poly = generator(rng);
        const auto m = geometry::metrics(poly);
        const EigResult e = mu1_fem(poly.vertices(), m.diameter / 40.0);
        ScanRow row;
        row.id = "shape-" + std::to_string(i);
        row.perimeter = m.perimeter;
        row.mu1 = e.mu1;
        row.p2_mu1 = m.perimeter * m.perimeter * e.mu1;
        row.margin_to_target = bounds::kTarget16PiSq - row.p2_mu1;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace neucert::fem
