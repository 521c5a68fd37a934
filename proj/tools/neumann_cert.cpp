#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "neucert/bounds.hpp"
#include "neucert/certify.hpp"
#include "neucert/closed_form.hpp"
#include "neucert/fem.hpp"
#include "neucert/geometry.hpp"
#include "neucert/quadrature.hpp"
#include "neucert/trig_eigen.hpp"

namespace {

namespace geo = neucert::geometry;
namespace cert = neucert::certify;
namespace cf = neucert::closed_form;
namespace fem = neucert::fem;
namespace bnd = neucert::bounds;
namespace quad = neucert::quadrature;
namespace trig = neucert::trig_eigen;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // operational failure
constexpr int kExitVerdict = 2;  // mathematical verdict failure

int default_workers() {
    if (const char* env = std::getenv("NEUMANN_CERT_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void emit(const nlohmann::json& report, const std::string& out_path) {
    if (out_path.empty()) return;
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write report: " + out_path);
    f << report.dump(2) << "\n";
}

std::optional<cert::ZoneName> parse_zone(const std::string& s) {
    if (s == "I" || s == "1") return cert::ZoneName::I;
    if (s == "II" || s == "2") return cert::ZoneName::II;
    if (s == "III" || s == "3") return cert::ZoneName::III;
    return std::nullopt;
}

void print_zone_report(const cert::GridReport& r) {
    std::printf("zone %-3s: %ld points, max F = %.6f at (a, c) = (%.6f, %.6f)\n", r.zone.c_str(),
                r.points_evaluated, r.max_f, r.argmax_a, r.argmax_c);
    std::printf("          budget = %.5f (L_a = %.4f, L_c = %.4f, %s), certified max = %.5f -> %s\n",
                r.error_budget, r.lip_a, r.lip_c, r.lip_source.c_str(), r.certified_upper,
                r.verdict ? "NEGATIVE (ok)" : "NOT CERTIFIED");
}

std::vector<geo::Point2> shape_by_name(const std::string& shape) {
    if (shape == "square")
        return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    if (shape == "triangle") return geo::triangle_T().vertices();
    if (shape.rfind("ngon:", 0) == 0) {
        const int n = std::stoi(shape.substr(5));
        return geo::regular_polygon(n).vertices();
    }
    if (shape.rfind("hexagon:", 0) == 0) return geo::hex_Ha(std::stod(shape.substr(8))).vertices();
    if (shape.rfind("omega:", 0) == 0) return geo::omega_a(std::stod(shape.substr(6))).vertices();
    if (shape.rfind("file:", 0) == 0) return geo::read_vertex_list(shape.substr(5));
    throw std::runtime_error("unknown shape: " + shape +
                             " (use square, triangle, ngon:N, hexagon:a, omega:a or file:path)");
}

// --------------------------------------------------------------------------

int cmd_verify(const std::string& zone_sel, const std::string& lip, int workers,
               const std::string& dump, const std::string& out) {
    const cert::LipSource src =
        lip == "computed" ? cert::LipSource::computed : cert::LipSource::paper;
    if (!zone_sel.empty()) {
        const auto zn = parse_zone(zone_sel);
        if (!zn) throw std::runtime_error("unknown zone: " + zone_sel);
        const cert::Zone& z = cert::zone(*zn);
        if (!dump.empty()) cert::sweep_dump_csv(z, dump);
        const cert::GridReport r = cert::sweep(z, src, workers);
        print_zone_report(r);
        emit(cert::to_json(r), out);
        return r.verdict ? kExitOk : kExitVerdict;
    }
    if (!dump.empty()) cert::sweep_dump_csv(cert::zone(cert::ZoneName::I), dump);
    const cert::FullVerdict v = cert::full_verdict(src, workers);
    std::printf("small-a certificate: f1 margin %.4f, a0=1/60 margin %.4f, a0=4/25 margin %.4f -> %s\n",
                v.small_a.f1_margin, v.small_a.a60_margin, v.small_a.a16_margin,
                v.small_a.verdict ? "ok" : "FAILED");
    for (const auto& r : v.zone_reports) print_zone_report(r);
    std::printf("midrange certificate: P^2/|H| = %.12f, bound = %.6f < 50 pi = %.6f -> %s\n",
                v.midrange.ratio, v.midrange.bound, 50.0 * std::numbers::pi,
                v.midrange.verdict ? "ok" : "FAILED");
    std::printf("overall verdict: %s\n", v.verdict ? "TRUE" : "FALSE");
    emit(cert::to_json(v), out);
    return v.verdict ? kExitOk : kExitVerdict;
}

int cmd_bounds(const std::string& input, bool with_fem, double h, const std::string& out) {
    const bool is_spec = input.find(':') != std::string::npos || input == "square" ||
                         input == "triangle";
    const geo::ConvexPolygon poly =
        is_spec ? geo::ConvexPolygon(shape_by_name(input)) : geo::read_polygon(input);
    const geo::ShapeMetrics m = geo::metrics(poly);
    const bnd::BoundSet b = bnd::bound_set(m);
    const double p2 = m.perimeter * m.perimeter;
    std::printf("P = %.10f  A = %.10f  D = %.10f  w = %.10f\n", m.perimeter, m.area, m.diameter,
                m.min_width);
    std::printf("P^2/A = %.12f\n", p2 / m.area);
    std::printf("%-22s %14s %14s\n", "bound", "mu1 bound", "P^2 * bound");
    std::printf("%-22s %14.6f %14.6f\n", "Payne-Weinberger (lo)", b.pw_lower, p2 * b.pw_lower);
    std::printf("%-22s %14.6f %14.6f\n", "Szego-Weinberger (up)", b.sw_upper, p2 * b.sw_upper);
    std::printf("%-22s %14.6f %14.6f\n", "Cheng (up)", b.cheng_upper, p2 * b.cheng_upper);
    std::printf("%-22s %14.6f %14.6f\n", "width bound (up)", b.width_upper, p2 * b.width_upper);
    std::printf("target 16 pi^2 = %.6f\n", bnd::kTarget16PiSq);
    nlohmann::json rep = {{"perimeter", m.perimeter},
                          {"area", m.area},
                          {"diameter", m.diameter},
                          {"min_width", m.min_width},
                          {"pw_lower", b.pw_lower},
                          {"sw_upper", b.sw_upper},
                          {"cheng_upper", b.cheng_upper},
                          {"width_upper", b.width_upper},
                          {"target", bnd::kTarget16PiSq}};
    if (with_fem) {
        const fem::EigResult e = fem::mu1_fem(poly.vertices(), h > 0 ? h : m.diameter / 40.0, true);
        std::printf("mu1 (FEM) = %.6f (dof %d, h %.4f, Richardson %.6f), P^2 mu1 = %.6f\n", e.mu1,
                    e.dof, e.h, e.best(), p2 * e.best());
        rep["mu1_fem"] = e.best();
        rep["p2_mu1_fem"] = p2 * e.best();
    }
    emit(rep, out);
    return kExitOk;
}

int cmd_crossval(int samples, std::uint64_t seed, double rel_tol, const std::string& out);

int cmd_fem(const std::string& shape, double h, bool richardson, const std::string& dump_mesh,
            const std::string& out) {
    const auto vertices = shape_by_name(shape);
    if (!dump_mesh.empty()) fem::write_mesh(fem::triangulate(vertices, h), dump_mesh);
    const fem::EigResult e = fem::mu1_fem(vertices, h, richardson);
    std::printf("mu1 = %.8f  (dof %d, h = %.5f, residual %.2e, zero mode %.2e)\n", e.mu1, e.dof,
                e.h, e.residual, e.zero_mode);
    if (e.extrapolated) std::printf("Richardson (h, h/2) = %.8f\n", *e.extrapolated);
    emit({{"mu1", e.mu1},
          {"dof", e.dof},
          {"h", e.h},
          {"residual", e.residual},
          {"zero_mode", e.zero_mode},
          {"extrapolated", e.extrapolated ? nlohmann::json(*e.extrapolated) : nlohmann::json()}},
         out);
    return kExitOk;
}

int cmd_scan(int count, std::uint64_t seed, const std::string& out) {
    const auto rows = fem::conjecture_scan(
        [](std::mt19937_64& rng) { return geo::random_two_axis_symmetric(rng); }, count, seed);
    nlohmann::json arr = nlohmann::json::array();
    int violations = 0;
    for (const auto& r : rows) {
        std::printf("%-10s P = %8.5f  mu1 = %10.5f  P^2 mu1 = %10.5f  margin = %+9.5f\n",
                    r.id.c_str(), r.perimeter, r.mu1, r.p2_mu1, r.margin_to_target);
        if (r.p2_mu1 > bnd::kTarget16PiSq * 1.01) ++violations;
        arr.push_back({{"id", r.id},
                       {"perimeter", r.perimeter},
                       {"mu1", r.mu1},
                       {"p2_mu1", r.p2_mu1},
                       {"margin", r.margin_to_target}});
    }
    emit({{"rows", arr}, {"violations", violations}}, out);
    return violations == 0 ? kExitOk : kExitVerdict;
}

int cmd_demo_nonexistence(double a, int n, double h, const std::string& out) {
    const auto poly = geo::zigzag_domain(a, n);
    double perimeter = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        perimeter += geo::dist(poly[i], poly[(i + 1) % poly.size()]);
    const double h_eff = h > 0 ? std::min(h, a / (4.0 * n)) : a / (4.0 * n);
    const fem::EigResult e = fem::mu1_fem(poly, h_eff);
    const double p2mu = perimeter * perimeter * e.mu1;
    const double limit = std::numbers::pi * std::numbers::pi / (a * a);
    std::printf("zigzag a = %g, n = %d: P = %.12f, mu1 = %.4f (dof %d)\n", a, n, perimeter, e.mu1,
                e.dof);
    std::printf("P^2 mu1 = %.4f  vs 16 pi^2 = %.4f  (limit pi^2/a^2 = %.4f)\n", p2mu,
                bnd::kTarget16PiSq, limit);
    emit({{"a", a},
          {"n", n},
          {"perimeter", perimeter},
          {"mu1", e.mu1},
          {"p2_mu1", p2mu},
          {"target", bnd::kTarget16PiSq},
          {"limit", limit}},
         out);
    return p2mu > bnd::kTarget16PiSq ? kExitOk : kExitVerdict;
}

// Oracle comparison of every closed form against adaptive quadrature.
int cmd_crossval(int samples, std::uint64_t seed, double rel_tol, const std::string& out) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double kSqrt3 = std::sqrt(3.0);

    const auto tn_tri = [&](double a, double c) {
        return quad::Triangle{{a * (1.0 - 2.0 * c) / (2.0 * (1.0 - 2.0 * a)), kSqrt3 * (1.0 - a) / 2.0},
                              {a / 2.0, kSqrt3 * (1.0 - a) / 2.0},
                              {c / 2.0, kSqrt3 * (1.0 - c) / 2.0}};
    };
    const auto td_tri = [&](double a, double c) {
        return quad::Triangle{{0.0, kSqrt3 * (1.0 - a) / 2.0},
                              {a / 2.0, kSqrt3 * (1.0 - a) / 2.0},
                              {c / 2.0, kSqrt3 * (1.0 - c) / 2.0}};
    };

    double worst = 0.0;
    std::string worst_what;
    const auto check = [&](const std::string& what, double closed, double oracle) {
        const double err = std::abs(closed - oracle) /
                           std::max({std::abs(closed), std::abs(oracle), 1e-2});
        if (err > worst) {
            worst = err;
            worst_what = what;
        }
    };

    for (int s = 0; s < samples; ++s) {
        const double k = unit(rng) / 6.0;
        const double a = 0.01 + 0.45 * unit(rng);
        const double c = a + (0.5 - a) * unit(rng);
        const auto qtol = 1e-11;

        const auto tn = cf::tn_integrals(a, c);
        const auto td = cf::td_integrals(a, c);
        const auto phi = [](geo::Point2 p) { return trig::phi_psi_eta(p).phi; };
        const auto psi = [](geo::Point2 p) { return trig::phi_psi_eta(p).psi; };
        const auto eta = [](geo::Point2 p) { return trig::phi_psi_eta(p).eta; };
        check("tn_phi", tn.phi, quad::integrate_triangle(phi, tn_tri(a, c), qtol).value);
        check("tn_psi", tn.psi, quad::integrate_triangle(psi, tn_tri(a, c), qtol).value);
        check("tn_eta", tn.eta, quad::integrate_triangle(eta, tn_tri(a, c), qtol).value);
        check("td_phi", td.phi, quad::integrate_triangle(phi, td_tri(a, c), qtol).value);
        check("td_psi", td.psi, quad::integrate_triangle(psi, td_tri(a, c), qtol).value);
        check("td_eta", td.eta, quad::integrate_triangle(eta, td_tri(a, c), qtol).value);
        check("I1", cf::I1(a, c), tn.phi);
        check("I2", cf::I2(a, c), td.phi);

        // layer integrals against U_i/V_i over the north triangle
        const quad::Triangle north{{-a / 2.0, kSqrt3 * (1.0 - a) / 2.0},
                                   {a / 2.0, kSqrt3 * (1.0 - a) / 2.0},
                                   {0.0, kSqrt3 / 2.0}};
        const auto lay = cf::layer_integrals(a);
        const auto layer_check = [&](const char* what, double val, auto&& field) {
            check(what,
                  val,
                  quad::integrate_triangle(
                      [&](geo::Point2 p) { return field(trig::sym_combos(p)); }, north, qtol)
                      .value);
        };
        layer_check("F1", lay.f1, [](const trig::SymCombos& sc) { return sc.u1_sq; });
        layer_check("F2", lay.f2, [](const trig::SymCombos& sc) { return sc.grad1_sq; });
        layer_check("F3", lay.f3, [](const trig::SymCombos& sc) { return sc.u1_hat_sq; });
        layer_check("F4", lay.f4, [](const trig::SymCombos& sc) { return sc.grad2_sq; });
        layer_check("F5", lay.f5, [](const trig::SymCombos& sc) { return sc.u1_cross; });
        layer_check("F6", lay.f6, [](const trig::SymCombos& sc) { return sc.grad_cross; });

        // N, D, F against the full quadrature assembly
        const cf::NDFValue v = cf::ndf({k, a, c});
        const trig::MixParam mix(k);
        const geo::ConvexPolygon ha = geo::hex_Ha(a);
        const auto gradsq = [&](geo::Point2 p) {
            const geo::Point2 g = trig::grad_v_k(mix, p);
            return g.x * g.x + g.y * g.y;
        };
        const auto vsq = [&](geo::Point2 p) {
            const double w = trig::v_k(mix, p);
            return w * w;
        };
        const geo::Point2 A{0.0, kSqrt3 * (1.0 - a) / 2.0};
        const geo::Point2 Q1{a * (1.0 - 2.0 * c) / (2.0 * (1.0 - 2.0 * a)), kSqrt3 * (1.0 - a) / 2.0};
        const geo::Point2 Q2{c / 2.0, kSqrt3 * (1.0 - c) / 2.0};
        const geo::Point2 C{0.25, kSqrt3 / 4.0};
        const auto Vfun = [&](geo::Point2 p) { return trig::V(mix, p); };
        const auto Ufun = [&](geo::Point2 p) { return trig::U(mix, p); };
        double n_quad = quad::integrate_polygon(gradsq, ha, qtol).value;
        double d_quad = quad::integrate_polygon(vsq, ha, qtol).value;
        if (c > a + 1e-9) {
            const geo::ConvexPolygon trap({C, Q2, Q1, A});
            n_quad += 2.0 * quad::integrate_polygon(Vfun, trap, qtol).value;
        } else {
            n_quad += 2.0 * quad::integrate_triangle(Vfun, {A, Q2, C}, qtol).value;
        }
        d_quad += 2.0 * quad::integrate_triangle(Ufun, {A, Q2, C}, qtol).value;
        check("N", v.n, n_quad);
        check("D", v.d, d_quad);
        const double p = cf::ptilde(a, c);
        check("F", v.f, p * p * n_quad - 16.0 * std::numbers::pi * std::numbers::pi * d_quad);
    }

    std::printf("crossval: %d samples, max relative error %.3e (worst: %s), tolerance %.1e -> %s\n",
                samples, worst, worst_what.c_str(), rel_tol, worst <= rel_tol ? "ok" : "FAILED");
    emit({{"samples", samples},
          {"seed", seed},
          {"max_rel_error", worst},
          {"worst", worst_what},
          {"tolerance", rel_tol}},
         out);
    return worst <= rel_tol ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified bounds for the perimeter-normalized first Neumann eigenvalue"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    std::string zone_sel, lip = "paper", out, dump, input, shape = "square";
    int workers = default_workers();
    int samples = 100, count = 100, n_teeth = 40;
    std::uint64_t seed = 7;
    double h = 0.0, a_param = 0.2, rel_tol = 1e-8;
    bool with_fem = false, richardson = false;

    auto* verify = app.add_subcommand("verify", "run the full certification (three zone sweeps plus certificates)");
    verify->add_option("--zone", zone_sel, "restrict to one zone: I, II or III");
    verify->add_option("--lip", lip, "Lipschitz constants: paper or computed")
        ->check(CLI::IsMember({"paper", "computed"}));
    verify->add_option("--workers", workers, "worker threads (default from NEUMANN_CERT_WORKERS)");
    verify->add_option("--dump-grid", dump, "write per-point CSV a,c,F");
    verify->add_option("--out", out, "write JSON report");

    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form eigenvalue bounds for a polygon file");
    bounds_cmd->add_option("input", input, "polygon JSON file or shape spec")->required();
    bounds_cmd->add_flag("--fem", with_fem, "also compute the FEM reference value");
    bounds_cmd->add_option("--h", h, "FEM mesh size");
    bounds_cmd->add_option("--out", out);

    auto* crossval = app.add_subcommand("crossval", "closed forms vs adaptive quadrature");
    crossval->add_option("--samples", samples);
    crossval->add_option("--seed", seed);
    crossval->add_option("--rel-tol", rel_tol);
    crossval->add_option("--out", out);

    auto* fem_cmd = app.add_subcommand("fem", "P1 Neumann eigensolver");
    fem_cmd->add_option("--shape", shape, "square, triangle, ngon:N or file:path");
    fem_cmd->add_option("--h", h, "target mesh size")->required();
    fem_cmd->add_flag("--richardson", richardson);
    fem_cmd->add_option("--dump-mesh", dump, "write the mesh as JSON");
    fem_cmd->add_option("--out", out);

    auto* sweep_cmd = app.add_subcommand("sweep", "conjecture sweep over random two-axis-symmetric shapes");
    sweep_cmd->add_option("--count", count);
    sweep_cmd->add_option("--seed", seed);
    sweep_cmd->add_option("--out", out);

    auto* demo = app.add_subcommand("demo-nonexistence", "sawtooth domains escape the convex bound");
    demo->add_option("--a", a_param, "square size (0, 1/4]");
    demo->add_option("--n", n_teeth, "teeth per side");
    demo->add_option("--h", h, "mesh size (clamped to a/(4n))");
    demo->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(zone_sel, lip, workers, dump, out);
        if (bounds_cmd->parsed()) return cmd_bounds(input, with_fem, h, out);
        if (crossval->parsed()) return cmd_crossval(samples, seed, rel_tol, out);
        if (fem_cmd->parsed()) return cmd_fem(shape, h, richardson, dump, out);
        if (sweep_cmd->parsed()) return cmd_scan(count, seed, out);
        if (demo->parsed()) return cmd_demo_nonexistence(a_param, n_teeth, h, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
