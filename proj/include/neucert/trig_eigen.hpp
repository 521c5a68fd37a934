#pragma once

#include "neucert/geometry.hpp"

namespace neucert::trig_eigen {

using geometry::Point2;

/// Convex-combination weight of the test function v_k = (1-k) u1 + k u1_hat.
/// Valid range [0, 1]; the certification sweep uses k in {0, 0.06, 0.12}.
struct MixParam {
    double k = 0.0;
    explicit MixParam(double k_);
};

// First eigenfunctions of the outer triangle T and the inscribed triangle,
// with hand-coded analytic gradients (hot loop of the certification sweep;
// pinned against finite differences in the tests).
double u1(Point2 p);
double u1_hat(Point2 p);
Point2 grad_u1(Point2 p);
Point2 grad_u1_hat(Point2 p);

double v_k(MixParam k, Point2 p);
Point2 grad_v_k(MixParam k, Point2 p);

/// Reflection across the symmetry line l1 (i = 1) or l2 (i = 2) of the
/// equilateral triangle T.
Point2 reflect(int i, Point2 p);

struct PhiPsiEta {
    double phi;
    double psi;
    double eta;
};
PhiPsiEta phi_psi_eta(Point2 p);
PhiPsiEta phi_psi_eta_dx(Point2 p);
PhiPsiEta phi_psi_eta_dy(Point2 p);

/// The six symmetric combinations: U_i are the three-fold reflection sums of
/// u1^2, u1_hat^2, u1*u1_hat and V_i of the corresponding gradient products.
struct SymCombos {
    double u1_sq, u1_hat_sq, u1_cross;    // U1, U2, U3
    double grad1_sq, grad2_sq, grad_cross;  // V1, V2, V3
};

/// Closed forms in terms of phi, psi, eta.
SymCombos sym_combos(Point2 p);
/// Direct reflection sums (oracle for the closed forms).
SymCombos sym_combos_direct(Point2 p);

// U = (1-k)^2 U1 + k^2 U2 + 2k(1-k) U3 and likewise V, in the expanded
// phi/psi/eta form used by the certification formulas.
double U(MixParam k, Point2 p);
double V(MixParam k, Point2 p);
// Same quantities assembled from the combination form (cross-check path).
double U_from_combos(MixParam k, Point2 p);
double V_from_combos(MixParam k, Point2 p);

/// Analytic gradient of U, used by the monotonicity checks.
Point2 grad_U(MixParam k, Point2 p);

}  // namespace neucert::trig_eigen
