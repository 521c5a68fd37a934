#include "neucert/trig_eigen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace neucert::trig_eigen {

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
}  // namespace

MixParam::MixParam(double k_) : k(k_) {
    if (!(k_ >= 0.0 && k_ <= 1.0)) throw std::invalid_argument("MixParam: k must be in [0, 1]");
}

double u1(Point2 p) {
    return std::sin(4.0 * kPi * p.x / 3.0) +
           2.0 * std::cos(2.0 * kPi * p.y * kInvSqrt3) * std::sin(2.0 * kPi * p.x / 3.0);
}

double u1_hat(Point2 p) {
    return std::sin(8.0 * kPi * p.x / 3.0) -
           2.0 * std::cos(4.0 * kPi * p.y * kInvSqrt3) * std::sin(4.0 * kPi * p.x / 3.0);
}

Point2 grad_u1(Point2 p) {
    const double cy = std::cos(2.0 * kPi * p.y * kInvSqrt3);
    const double sy = std::sin(2.0 * kPi * p.y * kInvSqrt3);
    return {4.0 * kPi / 3.0 * (std::cos(4.0 * kPi * p.x / 3.0) + cy * std::cos(2.0 * kPi * p.x / 3.0)),
            -4.0 * kPi * kInvSqrt3 * sy * std::sin(2.0 * kPi * p.x / 3.0)};
}

Point2 grad_u1_hat(Point2 p) {
    const double cy = std::cos(4.0 * kPi * p.y * kInvSqrt3);
    const double sy = std::sin(4.0 * kPi * p.y * kInvSqrt3);
    return {8.0 * kPi / 3.0 * (std::cos(8.0 * kPi * p.x / 3.0) - cy * std::cos(4.0 * kPi * p.x / 3.0)),
            8.0 * kPi * kInvSqrt3 * sy * std::sin(4.0 * kPi * p.x / 3.0)};
}

double v_k(MixParam k, Point2 p) { return (1.0 - k.k) * u1(p) + k.k * u1_hat(p); }

Point2 grad_v_k(MixParam k, Point2 p) {
    const Point2 g1 = grad_u1(p);
    const Point2 g2 = grad_u1_hat(p);
    return {(1.0 - k.k) * g1.x + k.k * g2.x, (1.0 - k.k) * g1.y + k.k * g2.y};
}

Point2 reflect(int i, Point2 p) {
    if (i == 1) {
        return {0.5 * p.x + 0.5 * kSqrt3 * p.y - 0.25, 0.5 * kSqrt3 * p.x - 0.5 * p.y + 0.25 * kSqrt3};
    }
    if (i == 2) {
        return {0.5 * p.x - 0.5 * kSqrt3 * p.y + 0.25, -0.5 * kSqrt3 * p.x - 0.5 * p.y + 0.25 * kSqrt3};
    }
    throw std::invalid_argument("reflect: i must be 1 or 2");
}

PhiPsiEta phi_psi_eta(Point2 p) {
    const double c2y = std::cos(2.0 * kPi * p.y * kInvSqrt3);
    const double c4y = std::cos(4.0 * kPi * p.y * kInvSqrt3);
    const double c6y = std::cos(6.0 * kPi * p.y * kInvSqrt3);
    const double c8y = std::cos(8.0 * kPi * p.y * kInvSqrt3);
    const double c2x = std::cos(2.0 * kPi * p.x);
    const double c4x = std::cos(4.0 * kPi * p.x);
    return {c4y - 2.0 * c2y * c2x, c4x - 2.0 * c6y * c2x, c8y + 2.0 * c4y * c4x};
}

PhiPsiEta phi_psi_eta_dx(Point2 p) {
    const double c2y = std::cos(2.0 * kPi * p.y * kInvSqrt3);
    const double c4y = std::cos(4.0 * kPi * p.y * kInvSqrt3);
    const double c6y = std::cos(6.0 * kPi * p.y * kInvSqrt3);
    const double s2x = std::sin(2.0 * kPi * p.x);
    const double s4x = std::sin(4.0 * kPi * p.x);
    return {4.0 * kPi * c2y * s2x,
            -4.0 * kPi * s4x + 4.0 * kPi * c6y * s2x,
            -8.0 * kPi * c4y * s4x};
}

PhiPsiEta phi_psi_eta_dy(Point2 p) {
    const double s2y = std::sin(2.0 * kPi * p.y * kInvSqrt3);
    const double s4y = std::sin(4.0 * kPi * p.y * kInvSqrt3);
    const double s6y = std::sin(6.0 * kPi * p.y * kInvSqrt3);
    const double s8y = std::sin(8.0 * kPi * p.y * kInvSqrt3);
    const double c2x = std::cos(2.0 * kPi * p.x);
    const double c4x = std::cos(4.0 * kPi * p.x);
    const double w = kPi * kInvSqrt3;
    return {-4.0 * w * s4y + 4.0 * w * s2y * c2x,
            12.0 * w * s6y * c2x,
            -8.0 * w * s8y - 8.0 * w * s4y * c4x};
}

SymCombos sym_combos(Point2 p) {
    const auto [phi, psi, eta] = phi_psi_eta(p);
    SymCombos s;
    s.u1_sq = 3.0 * (1.5 + phi);
    s.u1_hat_sq = 3.0 * (1.5 + eta);
    s.u1_cross = -3.0 * (0.5 * psi + phi);
    s.grad1_sq = 8.0 * kPi * kPi / 3.0 * (3.0 - phi);
    s.grad2_sq = 32.0 * kPi * kPi / 3.0 * (3.0 - eta);
    s.grad_cross = 16.0 * kPi * kPi / 3.0 * (psi - phi);
    return s;
}

SymCombos sym_combos_direct(Point2 p) {
    SymCombos s{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const Point2 images[3] = {p, reflect(1, p), reflect(2, p)};
    for (const Point2& q : images) {
        const double a = u1(q);
        const double b = u1_hat(q);
        const Point2 ga = grad_u1(q);
        const Point2 gb = grad_u1_hat(q);
        s.u1_sq += a * a;
        s.u1_hat_sq += b * b;
        s.u1_cross += a * b;
        s.grad1_sq += dot(ga, ga);
        s.grad2_sq += dot(gb, gb);
        s.grad_cross += dot(ga, gb);
    }
    return s;
}

double U(MixParam k, Point2 p) {
    const auto [phi, psi, eta] = phi_psi_eta(p);
    const double q = 1.0 - k.k;
    return 1.5 * (q * q * (3.0 + 2.0 * phi) + k.k * k.k * (3.0 + 2.0 * eta) +
                  2.0 * k.k * q * (-psi - 2.0 * phi));
}

double V(MixParam k, Point2 p) {
    const auto [phi, psi, eta] = phi_psi_eta(p);
    const double q = 1.0 - k.k;
    return 8.0 * kPi * kPi / 3.0 *
           (q * q * (3.0 - phi) + 4.0 * k.k * k.k * (3.0 - eta) + 4.0 * k.k * q * (psi - phi));
}

double U_from_combos(MixParam k, Point2 p) {
    const SymCombos s = sym_combos(p);
    const double q = 1.0 - k.k;
    return q * q * s.u1_sq + k.k * k.k * s.u1_hat_sq + 2.0 * k.k * q * s.u1_cross;
}

double V_from_combos(MixParam k, Point2 p) {
    const SymCombos s = sym_combos(p);
    const double q = 1.0 - k.k;
    return q * q * s.grad1_sq + k.k * k.k * s.grad2_sq + 2.0 * k.k * q * s.grad_cross;
}

Point2 grad_U(MixParam k, Point2 p) {
    const auto dx = phi_psi_eta_dx(p);
    const auto dy = phi_psi_eta_dy(p);
    const double q = 1.0 - k.k;
    const auto assemble = [&](const PhiPsiEta& d) {
        return 1.5 * (q * q * 2.0 * d.phi + k.k * k.k * 2.0 * d.eta +
                      2.0 * k.k * q * (-d.psi - 2.0 * d.phi));
    };
    return {assemble(dx), assemble(dy)};
}

}  // namespace neucert::trig_eigen
