#include "neucert/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace neucert::closed_form {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
constexpr double kSincSwitch = 1e-6;
constexpr double kDenSwitch = 1e-6;

double sq(double x) { return x * x; }

// 1 - cos(u) without cancellation.
double one_minus_cos(double u) { return 2.0 * sq(std::sin(0.5 * u)); }

// ---------------------------------------------------------------------------
// Truncated Taylor series in one variable (6 coefficients), used to expand the
// eta integral over T_D around its removable singularity at 2c = a.
struct Jet {
    std::array<double, 6> c{};  // c[i] is the i-th Taylor coefficient

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(double v) {
        Jet j;
        j.c[0] = v;
        j.c[1] = 1.0;
        return j;
    }
};

Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; i + j < 6; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
Jet operator*(double s, const Jet& a) {
    Jet r;
    for (int i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
    return r;
}
Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int k = 0; k < 6; ++k) {
        double s = a.c[k];
        for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
        q.c[k] = s / b.c[0];
    }
    return q;
}
void sincos_jet(const Jet& u, Jet& s, Jet& c) {
    s.c[0] = std::sin(u.c[0]);
    c.c[0] = std::cos(u.c[0]);
    for (int k = 1; k < 6; ++k) {
        double sk = 0.0, ck = 0.0;
        for (int j = 1; j <= k; ++j) {
            sk += j * u.c[j] * c.c[k - j];
            ck -= j * u.c[j] * s.c[k - j];
        }
        s.c[k] = sk / k;
        c.c[k] = ck / k;
    }
}
Jet sin_jet(const Jet& u) {
    Jet s, c;
    sincos_jet(u, s, c);
    return s;
}

}  // namespace

double sinc_direct(double w) { return std::sin(w) / w; }

double sinc_series(double w) {
    const double w2 = w * w;
    return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
}

double sinc(double w) { return std::abs(w) < kSincSwitch ? sinc_series(w) : sinc_direct(w); }

LayerIntegrals layer_integrals(double a) {
    const double s2 = std::sin(2.0 * kPi * a);
    const double s4 = std::sin(4.0 * kPi * a);
    const double omc2 = one_minus_cos(2.0 * kPi * a);
    const double omc4 = one_minus_cos(4.0 * kPi * a);
    LayerIntegrals r;
    r.f1 = 9.0 * kSqrt3 * a * a / 8.0 + 3.0 * kSqrt3 / (8.0 * kPi * kPi) * (omc2 + 2.0 * kPi * a * s2);
    r.f2 = 2.0 * kSqrt3 * kPi * kPi * a * a - kSqrt3 / 3.0 * (omc2 + 2.0 * kPi * a * s2);
    r.f3 = 9.0 * kSqrt3 * a * a / 8.0 + 3.0 * kSqrt3 / (32.0 * kPi * kPi) * (omc4 + 4.0 * kPi * a * s4);
    r.f4 = 8.0 * kSqrt3 * kPi * kPi * a * a - kSqrt3 / 3.0 * (omc4 + 4.0 * kPi * a * s4);
    r.f5 = 3.0 * kSqrt3 / (16.0 * kPi * kPi) * (-omc2 - omc4 - 4.0 * kPi * a * s2);
    r.f6 = 2.0 * kSqrt3 / 3.0 * (2.0 * (1.0 - omc2) - 1.0 - (1.0 - omc4) - 2.0 * kPi * a * s2);
    return r;
}

LayerIntegrals layer_integrals_deriv(double a) {
    const double s2 = std::sin(2.0 * kPi * a);
    const double s4 = std::sin(4.0 * kPi * a);
    const double c2 = std::cos(2.0 * kPi * a);
    const double c4 = std::cos(4.0 * kPi * a);
    LayerIntegrals r;
    r.f1 = 3.0 * kSqrt3 / (8.0 * kPi) * (6.0 * kPi * a + 4.0 * s2 + 4.0 * kPi * a * c2);
    r.f2 = 4.0 * kPi * kSqrt3 / 3.0 * (kPi * a * (1.0 - c2) + (2.0 * kPi * a - s2));
    r.f3 = 3.0 * kSqrt3 / (8.0 * kPi) * (6.0 * kPi * a + 2.0 * s4 + 4.0 * kPi * a * c4);
    r.f4 = 4.0 * kPi * kSqrt3 / 3.0 * (4.0 * kPi * a * (1.0 - c4) + 2.0 * (4.0 * kPi * a - s4));
    r.f5 = 3.0 * kSqrt3 / (8.0 * kPi) * (-3.0 * s2 - 2.0 * s4 - 4.0 * kPi * a * c2);
    r.f6 = -4.0 * kPi * kSqrt3 / 3.0 * (3.0 * s2 * (1.0 - c2) + c2 * (2.0 * kPi * a - s2));
    return r;
}

double area_tn(double a, double c) { return kSqrt3 / 4.0 * a * sq(c - a) / (1.0 - 2.0 * a); }
double area_td(double a, double c) { return kSqrt3 / 8.0 * a * (c - a); }

double I1(double a, double c) {
    const double t1 = (c - a) / (2.0 * a - 1.0) * 2.0 * kPi * a * std::sin(2.0 * kPi * a);
    const double t2 = (1.0 - a) / (1.0 - 2.0 * a) * (std::cos(2.0 * kPi * a) - std::cos(2.0 * kPi * c));
    // (1-2a)/a * (1 - cos(2 pi a (c-a)/(1-2a))), continued through a = 0
    const double w = kPi * a * (c - a) / (1.0 - 2.0 * a);
    const double t3 = 2.0 * kPi * kPi * a * sq(c - a) / (1.0 - 2.0 * a) * sq(sinc(w));
    const double t4 = (1.0 - 2.0 * a) / (1.0 - a) *
                      (std::cos(2.0 * kPi * c) - std::cos(2.0 * kPi * a * (1.0 - a - c) / (1.0 - 2.0 * a)));
    return kSqrt3 / (8.0 * kPi * kPi) * (t1 + t2 + t3 + t4);
}

double I2(double a, double c) {
    const double t1 = -kPi * a * std::sin(2.0 * kPi * a);
    const double t2 = (2.0 * c - a) * kPi * std::sin(kPi * (a + c)) * sinc(kPi * (a - c));
    const double t3 = 2.0 * (c - a) *
                      (kPi * kPi * a / 2.0 * sq(sinc(kPi * a / 2.0)) -
                       kPi * std::sin(kPi * (2.0 * c + a) / 2.0) * sinc(kPi * (2.0 * c - a) / 2.0));
    return kSqrt3 / (8.0 * kPi * kPi) * (t1 + t2 + t3);
}

namespace {

double tn_phi(double a, double c) {
    const double t1 = -(c - a) / (1.0 - 2.0 * a) * 2.0 * kPi * a * std::sin(2.0 * kPi * a);
    const double t2 = (1.0 - 2.0 * a) / (1.0 - a) *
                      (std::cos(2.0 * kPi * c) - std::cos(2.0 * kPi * a * (1.0 - a - c) / (1.0 - 2.0 * a)));
    const double t3 = (1.0 - a) / (1.0 - 2.0 * a) * (std::cos(2.0 * kPi * a) - std::cos(2.0 * kPi * c));
    const double w = kPi * a * (c - a) / (1.0 - 2.0 * a);
    const double t4 = 2.0 * kPi * kPi * a * sq(c - a) / (1.0 - 2.0 * a) * sq(sinc(w));
    return kSqrt3 / (8.0 * kPi * kPi) * (t1 + t2 + t3 + t4);
}

double tn_psi(double a, double c) {
    // (1-2a)/(1-3a) [cos(2 pi a (1-3a+c)/(1-2a)) - cos(2 pi c)]; the factor
    // (1-3a) cancels against the cosine difference, removable at a = 1/3.
    const double mid1 = kPi * (a * (1.0 - 3.0 * a + c) / (1.0 - 2.0 * a) + c);
    const double w1 = kPi * (a - c) * (1.0 - 3.0 * a) / (1.0 - 2.0 * a);
    const double s1 = -2.0 * kPi * (a - c) * std::sin(mid1) * sinc(w1);
    // (1-2a)/(2-3a) [cos(4 pi c) - cos(2 pi a (2-3a-c)/(1-2a))]; same with (2-3a).
    const double mid2 = kPi * (2.0 * c + a * (2.0 - 3.0 * a - c) / (1.0 - 2.0 * a));
    const double w2 = kPi * (c - a) * (2.0 - 3.0 * a) / (1.0 - 2.0 * a);
    const double s2 = -2.0 * kPi * (c - a) * std::sin(mid2) * sinc(w2);
    const double s3 = -0.5 * (std::cos(2.0 * kPi * a) - std::cos(2.0 * kPi * c)) -
                      0.5 * (std::cos(4.0 * kPi * c) - std::cos(4.0 * kPi * a));
    const double s4 = 0.5 * (1.0 - 2.0 * a) *
                      (std::cos(2.0 * kPi * c) - std::cos(2.0 * kPi * a * (1.0 - 2.0 * c) / (1.0 - 2.0 * a)));
    return kSqrt3 / (8.0 * kPi * kPi) * (s1 + s2 + s3 + s4);
}

double tn_eta(double a, double c) {
    // (1-2a)/(a(1-a)) [1 - cos(4 pi a (c-a)/(1-2a))], continued through a = 0
    const double w = 2.0 * kPi * a * (c - a) / (1.0 - 2.0 * a);
    const double e1 = 8.0 * kPi * kPi * a * sq(c - a) / ((1.0 - a) * (1.0 - 2.0 * a)) * sq(sinc(w));
    const double e2 = (1.0 - 2.0 * a) / (1.0 - a) *
                      (-1.0 + std::cos(4.0 * kPi * c) + std::cos(2.0 * w) -
                       std::cos(4.0 * kPi * a * (1.0 - a - c) / (1.0 - 2.0 * a)));
    const double e3 = 1.0 / (1.0 - 2.0 * a) *
                      ((1.0 - a) * std::cos(4.0 * kPi * a) - (1.0 - a) * std::cos(4.0 * kPi * c) -
                       4.0 * kPi * a * (c - a) * std::sin(4.0 * kPi * a));
    return kSqrt3 / (32.0 * kPi * kPi) * (e1 + e2 + e3);
}

double td_phi(double a, double c) {
    const double d1 = -kPi * a * std::sin(2.0 * kPi * a);
    const double d2 = 2.0 * (c - a) *
                      (kPi * kPi * a / 2.0 * sq(sinc(kPi * a / 2.0)) -
                       kPi * std::sin(kPi * (2.0 * c + a) / 2.0) * sinc(kPi * (2.0 * c - a) / 2.0));
    const double d3 = (2.0 * c - a) * kPi * std::sin(kPi * (a + c)) * sinc(kPi * (a - c));
    return kSqrt3 / (8.0 * kPi * kPi) * (d1 + d2 + d3);
}

double td_psi(double a, double c) {
    const double q1 = 0.5 * (std::cos(2.0 * kPi * c) - std::cos(2.0 * kPi * a)) +
                      0.5 * (std::cos(4.0 * kPi * a) - std::cos(4.0 * kPi * c));
    const double q2 = -(c - a) * one_minus_cos(2.0 * kPi * c) / (2.0 * c);
    // q3 has removable singularities on 3a = 2c and 3a = 4c; two exact
    // rearrangements, each dividing by the larger of the two factors.
    const double d2c = 3.0 * a - 2.0 * c;
    const double d4c = 3.0 * a - 4.0 * c;
    const double dcos24 = std::cos(2.0 * kPi * c) - std::cos(4.0 * kPi * c);
    double q3;
    if (std::abs(d4c) >= std::abs(d2c)) {
        const double ratio =
            -kPi * std::sin(kPi * (3.0 * a + 2.0 * c) / 2.0) * sinc(kPi * d2c / 2.0);
        q3 = 2.0 * (c - a) / d4c * (2.0 * c * ratio + dcos24);
    } else {
        const double ratio =
            -kPi * std::sin(kPi * (3.0 * a + 4.0 * c) / 2.0) * sinc(kPi * d4c / 2.0);
        q3 = 2.0 * (c - a) / d2c * (2.0 * c * ratio + dcos24);
    }
    return kSqrt3 / (8.0 * kPi * kPi) * (q1 + q2 + q3);
}

// The sum of the 1/(2c-a) terms of the eta integral over T_D; vanishes at
// a = 2c, so W/(2c-a) is the removable-singularity part of that integral.
double td_eta_w(double a, double c) {
    const double s2a = std::sin(2.0 * kPi * a);
    // (cos 4 pi a - cos 4 pi c)/(c - a) in product form, removable at c = a
    const double ratio = 4.0 * kPi * std::sin(2.0 * kPi * (a + c)) * sinc(2.0 * kPi * (c - a));
    // sin^2(pi a)/a, continued through a = 0
    const double sin2_over_a = kPi * kPi * a * sq(sinc(kPi * a));
    return -8.0 * (c - a) * s2a * s2a + a * (4.0 * c - 3.0 * a) * ratio +
           16.0 * c * (c - a) * sin2_over_a;
}

Jet td_eta_w_jet(const Jet& a, double c) {
    const Jet cc = Jet::constant(c);
    const Jet s2a = sin_jet(2.0 * kPi * a);
    const Jet spa = sin_jet(kPi * a);
    Jet c4a_s, c4a;
    sincos_jet(4.0 * kPi * a, c4a_s, c4a);
    const Jet dcos = c4a - Jet::constant(std::cos(4.0 * kPi * c));
    return -8.0 * ((cc - a) * (s2a * s2a)) + (a * (4.0 * cc - 3.0 * a)) * dcos / (cc - a) +
           16.0 * c * ((cc - a) * (spa * spa)) / a;
}

}  // namespace

double td_eta_direct(double a, double c) {
    const double r1 = -4.0 * a * kPi * std::sin(4.0 * kPi * a);
    return kSqrt3 / (64.0 * kPi * kPi) * (r1 + td_eta_w(a, c) / (2.0 * c - a));
}

double td_eta_series(double a, double c) {
    const double m = 2.0 * c - a;
    // expand W(2c - m, c) around m = 0 (where W vanishes) to 4th order
    const Jet aj = Jet::constant(2.0 * c) - Jet::variable(0.0);
    const Jet w = td_eta_w_jet(aj, c);
    const double sum = w.c[1] + m * (w.c[2] + m * (w.c[3] + m * (w.c[4] + m * w.c[5])));
    const double r1 = -4.0 * a * kPi * std::sin(4.0 * kPi * a);
    return kSqrt3 / (64.0 * kPi * kPi) * (r1 + sum);
}

namespace {

double td_eta(double a, double c) {
    return std::abs(2.0 * c - a) < kDenSwitch ? td_eta_series(a, c) : td_eta_direct(a, c);
}

}  // namespace

TriIntegrals tn_integrals(double a, double c) { return {tn_phi(a, c), tn_psi(a, c), tn_eta(a, c)}; }
TriIntegrals td_integrals(double a, double c) { return {td_phi(a, c), td_psi(a, c), td_eta(a, c)}; }

double ptilde(double a, double c) {
    if (!(a >= 0.0 && a < 0.5)) throw std::invalid_argument("ptilde: a must be in [0, 1/2)");
    return 6.0 / (1.0 - 2.0 * a) *
           (0.5 * (1.0 - 2.0 * c) * (1.0 - a) + (c - a) * std::sqrt(1.0 - 3.0 * a + 3.0 * a * a));
}

NDFValue ndf(const CaPoint& q) {
    if (!(q.a >= 0.0 && q.a < 0.5)) throw std::invalid_argument("ndf: a must be in [0, 1/2)");
    if (!(q.c >= q.a && q.c <= 0.5)) throw std::invalid_argument("ndf: c must be in [a, 1/2]");
    if (!(q.k >= 0.0 && q.k <= 1.0)) throw std::invalid_argument("ndf: k must be in [0, 1]");
    const double k = q.k, e = 1.0 - q.k;
    const LayerIntegrals F = layer_integrals(q.a);

    const double n_hat = e * e * (2.0 * kPi * kPi / kSqrt3 - F.f2) +
                         k * k * (8.0 * kPi * kPi / kSqrt3 - F.f4) + 2.0 * k * e * (-F.f6);
    const double d_hat = e * e * (3.0 * kSqrt3 / 8.0 - F.f1) +
                         k * k * (3.0 * kSqrt3 / 8.0 - F.f3) + 2.0 * k * e * (-F.f5);

    const TriIntegrals tn = tn_integrals(q.a, q.c);
    const TriIntegrals td = td_integrals(q.a, q.c);
    const double at_n = area_tn(q.a, q.c);
    const double at_d = area_td(q.a, q.c);

    const double i_n = 8.0 * kPi * kPi / 3.0 *
                       (e * e * (3.0 * at_n - tn.phi) + 4.0 * k * k * (3.0 * at_n - tn.eta) +
                        4.0 * k * e * (tn.psi - tn.phi));
    const double i_d = 1.5 * (e * e * (3.0 * at_d + 2.0 * td.phi) + k * k * (3.0 * at_d + 2.0 * td.eta) +
                              2.0 * k * e * (-td.psi - 2.0 * td.phi));

    NDFValue out;
    out.n = n_hat - 2.0 * i_n;
    out.d = d_hat - 2.0 * i_d;
    const double p = ptilde(q.a, q.c);
    out.f = p * p * out.n - 16.0 * kPi * kPi * out.d;
    return out;
}

NDFValue ndf_k0(double a, double c) {
    const double omc2 = one_minus_cos(2.0 * kPi * a);
    const double s2 = std::sin(2.0 * kPi * a);
    NDFValue out;
    out.n = kSqrt3 / 3.0 *
                (2.0 * kPi * kPi * (1.0 - 3.0 * a * a) + omc2 + 2.0 * kPi * a * s2 -
                 12.0 * kPi * kPi * a * sq(c - a) / (1.0 - 2.0 * a)) +
            16.0 * kPi * kPi / 3.0 * I1(a, c);
    out.d = 3.0 * kSqrt3 / 8.0 *
                (1.0 - 3.0 * a * a - 3.0 * a * (c - a) -
                 (omc2 + 2.0 * kPi * a * s2) / (kPi * kPi)) -
            6.0 * I2(a, c);
    const double p = ptilde(a, c);
    out.f = p * p * out.n - 16.0 * kPi * kPi * out.d;
    return out;
}

double smalla_f1(double c) {
    if (c < 0.0) throw std::invalid_argument("smalla_f1: c must be >= 0");
    const double s = std::sin(kPi * c);
    // 2 (1 + 1/c)(1 - cos 2 pi c) with the 1/c part continued through c = 0
    const double head = 4.0 * s * s + 4.0 * kPi * kPi * c * sq(sinc(kPi * c));
    return head - kPi * kPi * (4.0 * c * c - 3.0 * c + 2.0);
}

double smalla_f2(double a0, double c) {
    const double m = std::max(sq(1.0 - c), sq(1.0 - a0 - c) / ((1.0 - a0) * (1.0 - 2.0 * a0)));
    return -2.0 * kPi * std::sin(2.0 * kPi * a0) / a0 +
           one_minus_cos(2.0 * kPi * c) *
               ((3.0 - 4.0 * a0) / ((1.0 - a0) * (1.0 - 2.0 * a0)) - 4.0 * (1.0 + c)) +
           kPi * kPi * (5.0 + 12.0 * c + 9.0 * c * c + 8.0 * c * c * c + 2.0 * m);
}

double smalla_G(double a, double c) {
    if (!(c > a)) throw std::invalid_argument("smalla_G: requires c > a");
    const double t1 = (2.0 * c - a) * kPi * std::sin(kPi * (a + c)) * sinc(kPi * (a - c));
    const double t2 = -2.0 * (c - a) / (2.0 * c - a) * (std::cos(kPi * a) - std::cos(2.0 * kPi * c));
    return t1 + t2;
}

}  // namespace neucert::closed_form
