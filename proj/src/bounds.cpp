#include "neucert/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace neucert::bounds {

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

BoundSet bound_set(const geometry::ShapeMetrics& m) {
    BoundSet b;
    b.pw_lower = kPi * kPi / (m.diameter * m.diameter);
    b.sw_upper = kPi * kJ1PrimeSq / m.area;
    b.cheng_upper = 4.0 * kJ01 * kJ01 / (m.diameter * m.diameter);
    b.width_upper = kPi * kPi * m.min_width * m.min_width / (m.area * m.area);
    if (b.pw_lower > std::min(b.sw_upper, b.cheng_upper) + 1e-9)
        throw std::logic_error("bound_set: lower bound exceeds an upper bound; input not convex?");
    return b;
}

double sector_g(double alpha, double theta) {
    if (!(theta > 0.0 && theta < kPi / 2.0))
        throw std::invalid_argument("sector_g: theta must be in (0, pi/2)");
    if (!(alpha >= kPi / 2.0 - theta - 1e-12 && alpha <= kPi / 2.0 + 1e-12))
        throw std::invalid_argument("sector_g: alpha must be in [pi/2 - theta, pi/2]");
    const double c = std::cos(2.0 * alpha + theta);
    return (1.0 - c) / (std::cos(theta) - c);
}

double sector_h(double t) {
    if (!(t >= 2.0)) throw std::invalid_argument("sector_h: t must be >= 2");
    return 4.0 * t * std::tan(kPi / t);
}

double reverse_iso_p(double t, double a) {
    if (!(a >= 0.0 && a <= 0.5)) throw std::invalid_argument("reverse_iso_p: a must be in [0, 1/2]");
    if (!(t >= 0.0 && t <= 0.5 * a + 1e-15))
        throw std::invalid_argument("reverse_iso_p: t must be in [0, a/2]");
    const double dx = 0.25 - t;
    const double dy2 = 0.75 * (0.5 - a) * (0.5 - a);
    return t + std::sqrt(dx * dx + dy2);
}

double reverse_iso_ratio(double t, double a) {
    const double p = reverse_iso_p(t, a);
    return p * p / ((2.0 - 3.0 * a) + 6.0 * (1.0 - 2.0 * a) * t);
}

SwapPerimeters triangle_swap_perimeters(double y, double a) {
    const double t = a * y / 2.0;
    const double s = y * (1.0 - 2.0 * a) / 2.0;
    SwapPerimeters r;
    r.p1 = t + std::sqrt((0.25 - t) * (0.25 - t) + 0.75 * (0.5 - a) * (0.5 - a));
    r.p2 = s + std::sqrt((0.25 - 0.5 * s) * (0.25 - 0.5 * s) + 0.75 * (s - 0.5 + a) * (s - 0.5 + a));
    return r;
}

MidrangeCertificate midrange_certificate() {
    // P(H_a) = 3 sqrt(1 - 3a + 3a^2), |H_a| = sqrt(3)(2 - 3a)/8 at a = 1/4
    const double a = 0.25;
    const double p = 3.0 * std::sqrt(1.0 - 3.0 * a + 3.0 * a * a);
    const double area = kSqrt3 * (2.0 - 3.0 * a) / 8.0;
    MidrangeCertificate cert;
    cert.ratio = p * p / area;
    cert.bound = kPi * kJ1PrimeSq * cert.ratio;
    cert.verdict = cert.bound < 50.0 * kPi && 50.0 * kPi < kTarget16PiSq;
    return cert;
}

}  // namespace neucert::bounds
