#pragma once

namespace neucert::closed_form {

/// Parameter triple of the certification sweep: test-function mix k, family
/// parameter a, and tangent-line parameter c (c >= a within the sweep).
struct CaPoint {
    double k = 0.0;
    double a = 0.0;
    double c = 0.0;
};

/// The six boundary-layer integrals over T \ Omega_a:
/// u1^2, |grad u1|^2, u1_hat^2, |grad u1_hat|^2, u1*u1_hat, grad u1 . grad u1_hat.
struct LayerIntegrals {
    double f1, f2, f3, f4, f5, f6;
};
LayerIntegrals layer_integrals(double a);
LayerIntegrals layer_integrals_deriv(double a);  // d/da of the six, used by the Lipschitz assembly

// Integrals of phi over the triangles T_N = Q1(c) B Q2(c) and T_D = A B Q2(c).
double I1(double a, double c);
double I2(double a, double c);

struct TriIntegrals {
    double phi, psi, eta;
};
TriIntegrals tn_integrals(double a, double c);
TriIntegrals td_integrals(double a, double c);

double area_tn(double a, double c);
double area_td(double a, double c);

/// Perimeter of the outer approximant (hexagon + six trapezoid copies).
double ptilde(double a, double c);

struct NDFValue {
    double n, d, f;
};
/// The certificate quantities N, D and F = ptilde^2 N - 16 pi^2 D.
NDFValue ndf(const CaPoint& q);
/// k = 0 specialization along the separately printed route (cross-check).
NDFValue ndf_k0(double a, double c);

// Small-a certificate functions. smalla_f2 takes the regime anchor a0.
double smalla_f1(double c);
double smalla_f2(double a0, double c);
double smalla_G(double a, double c);

// Singularity policy: vanishing-denominator factors are evaluated through
// sin(w)/w, which switches to a Taylor expansion below |w| = 1e-6. Both
// branches are exposed so the switchover agreement can be tested.
double sinc(double w);
double sinc_direct(double w);
double sinc_series(double w);

// The eta integral over T_D has a removable singularity at 2c = a where the
// printed terms diverge individually; the two evaluation branches are
// exposed for the continuity test.
double td_eta_direct(double a, double c);
double td_eta_series(double a, double c);

}  // namespace neucert::closed_form
