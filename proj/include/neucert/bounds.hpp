#pragma once

#include "neucert/geometry.hpp"

namespace neucert::bounds {

// First zero of J1', squared, and first zero of J0; 12 significant digits
// (Abramowitz & Stegun 9.5/9.6 values). These are the only Bessel-derived
// constants the bounds need, so no Bessel evaluator is linked.
inline constexpr double kJ1PrimeSq = 3.38995771667;
inline constexpr double kJ01 = 2.40482555770;
inline constexpr double kTarget16PiSq = 157.91367041742973;  // 16 pi^2

/// Closed-form eigenvalue bounds evaluated from the metrics alone:
/// pw_lower    = pi^2 / D^2            (Payne-Weinberger, lower)
/// sw_upper    = pi (j'_{1,1})^2 / A   (Szego-Weinberger, upper)
/// cheng_upper = 4 j_{0,1}^2 / D^2     (Cheng, Banuelos-Burdzy, upper)
/// width_upper = pi^2 w^2 / A^2        (width bound, upper; equality exactly
///                                      for rectangles)
struct BoundSet {
    double pw_lower;
    double sw_upper;
    double cheng_upper;
    double width_upper;
    static constexpr double scale_invariant_target = kTarget16PiSq;
};

BoundSet bound_set(const geometry::ShapeMetrics& m);

/// Sector reverse-isoperimetric profile g(alpha) for axis angle theta.
/// Requires theta in (0, pi/2) and alpha in [pi/2 - theta, pi/2].
double sector_g(double alpha, double theta);
/// h(t) = 4 t tan(pi/t), decreasing on [2, inf).
double sector_h(double t);

/// Perimeter term p(t) of the triangle family A B(t) C and the ratio
/// p^2(t)/D(t) with D(t) = (2-3a) + 6(1-2a) t. Requires t in [0, a/2].
double reverse_iso_p(double t, double a);
double reverse_iso_ratio(double t, double a);

/// Equal-area perimeter terms p1(a y/2) and p2(y (1-2a)/2) of the two
/// competing triangle families, y in [0,1].
struct SwapPerimeters {
    double p1, p2;
};
SwapPerimeters triangle_swap_perimeters(double y, double a);

/// Szego-Weinberger certificate for the regime a in [1/4, 1/3]:
/// pi (j'_{1,1})^2 P^2(H_{1/4}) / |H_{1/4}| < 50 pi < 16 pi^2.
struct MidrangeCertificate {
    double ratio;    // P^2(H_{1/4}) / |H_{1/4}| = 42 sqrt(3) / 5
    double bound;    // pi (j'_{1,1})^2 * ratio
    bool verdict;    // bound < 50 pi and 50 pi < 16 pi^2
};
MidrangeCertificate midrange_certificate();

}  // namespace neucert::bounds
