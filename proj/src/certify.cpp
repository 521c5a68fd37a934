#include "neucert/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "neucert/closed_form.hpp"

namespace neucert::certify {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

}  // namespace

std::string to_string(ZoneName z) {
    switch (z) {
        case ZoneName::I: return "I";
        case ZoneName::II: return "II";
        case ZoneName::III: return "III";
    }
    return "?";
}

std::string to_string(LipSource s) { return s == LipSource::paper ? "paper" : "computed"; }

std::array<Zone, 3> zones() {
    return {{
        {ZoneName::I, 0.0, 1.0 / 60.0, 0.06, 0.16, 0.5, 155, 150, 819.6011, 84.4817, false},
        {ZoneName::II, 0.06, 0.06, 0.12, 0.16, 0.5, 160, 155, 1048.9639, 170.9884, false},
        {ZoneName::III, 0.12, 0.12, 0.25, 0.16, 0.5, 730, 735, 1353.8951, 352.1112, true},
    }};
}

const Zone& zone(ZoneName name) {
    static const std::array<Zone, 3> zs = zones();
    return zs[static_cast<int>(name)];
}

std::vector<std::pair<double, double>> build_grid(const Zone& z) {
    const double da = z.delta_a();
    const double dc = z.delta_c();
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(z.n_a + 1) * (z.n_c + 1));
    for (int i = 0; i <= z.n_a; ++i) {
        const double a = z.a_min + i * da;
        for (int j = 0; j <= z.n_c; ++j) {
            pts.emplace_back(a, z.c_min + j * dc);
        }
    }
    if (z.diagonal_cut) {
        // refine cells crossing c = a: four edge midpoints plus the center.
        // All coordinates are formed as min + index * step so that shared
        // points of adjacent cells coincide bitwise.
        const auto at_a = [&](double i) { return z.a_min + i * da; };
        const auto at_c = [&](double j) { return z.c_min + j * dc; };
        for (int i = 0; i < z.n_a; ++i) {
            for (int j = 0; j < z.n_c; ++j) {
                if (at_a(i + 1) > at_c(j) && at_a(i) < at_c(j + 1)) {
                    pts.emplace_back(at_a(i + 0.5), at_c(j));
                    pts.emplace_back(at_a(i + 0.5), at_c(j + 1));
                    pts.emplace_back(at_a(i), at_c(j + 0.5));
                    pts.emplace_back(at_a(i + 1), at_c(j + 0.5));
                    pts.emplace_back(at_a(i + 0.5), at_c(j + 0.5));
                }
            }
        }
        std::erase_if(pts, [](const std::pair<double, double>& p) {
            return p.second < std::max(p.first, 0.16);
        });
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------
// Lipschitz assembly (interval arithmetic over the printed term bounds)

namespace {

struct Interval {
    double lo, hi;
};

Interval operator+(Interval x, Interval y) { return {x.lo + y.lo, x.hi + y.hi}; }
Interval operator*(Interval x, Interval y) {
    const double p1 = x.lo * y.lo, p2 = x.lo * y.hi, p3 = x.hi * y.lo, p4 = x.hi * y.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}
Interval operator*(double s, Interval x) { return s >= 0 ? Interval{s * x.lo, s * x.hi} : Interval{s * x.hi, s * x.lo}; }
Interval square(Interval x) {
    if (x.lo >= 0.0) return {x.lo * x.lo, x.hi * x.hi};
    if (x.hi <= 0.0) return {x.hi * x.hi, x.lo * x.lo};
    return {0.0, std::max(x.lo * x.lo, x.hi * x.hi)};
}
double max_abs(Interval x) { return std::max(std::abs(x.lo), std::abs(x.hi)); }

double hex_r(double a) { return std::sqrt(1.0 - 3.0 * a + 3.0 * a * a); }

double dptilde_da(double a, double c) {
    const double r = hex_r(a);
    const double one = 1.0 - 2.0 * a;
    return -3.0 * (2.0 * r - 1.0) / (r * one * one) * (r * one + c - a);
}

double dptilde_dc(double a) {
    return -6.0 / (1.0 - 2.0 * a) * (1.0 - a - hex_r(a));
}

double nhat_prime(double k, double a) {
    const auto d = closed_form::layer_integrals_deriv(a);
    const double e = 1.0 - k;
    return -(e * e * d.f2 + k * k * d.f4 + 2.0 * k * e * d.f6);
}

double dhat_prime(double k, double a) {
    const auto d = closed_form::layer_integrals_deriv(a);
    const double e = 1.0 - k;
    return -(e * e * d.f1 + k * k * d.f3 + 2.0 * k * e * d.f5);
}

// U at the trapezoid corners A = (0, sqrt3(1-a)/2), B = (a/2, sqrt3(1-a)/2)
double u_at_A(double k, double a) {
    const double e = 1.0 - k;
    return 1.5 * (e * e * (3.0 + 2.0 * std::cos(2.0 * kPi * a) + 4.0 * std::cos(kPi * a)) +
                  k * k * (3.0 + 2.0 * std::cos(4.0 * kPi * a) + 4.0 * std::cos(2.0 * kPi * a)) +
                  2.0 * k * e *
                      (-1.0 - 2.0 * std::cos(3.0 * kPi * a) - 2.0 * std::cos(2.0 * kPi * a) -
                       4.0 * std::cos(kPi * a)));
}

double u_at_B(double k, double a) {
    const double e = 1.0 - k;
    return 1.5 * (e * e * (5.0 + 4.0 * std::cos(2.0 * kPi * a)) +
                  k * k * (5.0 + 4.0 * std::cos(4.0 * kPi * a)) +
                  2.0 * k * e * (-6.0 * std::cos(2.0 * kPi * a) - std::cos(4.0 * kPi * a) - 2.0));
}

}  // namespace

LipschitzBounds lipschitz_bounds(const Zone& z) {
    const double k = z.k;
    const double onek = 1.0 + k;
    const double amin = z.a_min, amax = z.a_max, cmin = z.c_min, cmax = z.c_max;

    const Interval ptil{3.0 * hex_r(amax), 3.0 * (1.0 - amin)};
    const Interval ptil2 = square(ptil);
    // dP/da is negative, decreasing in c, increasing in a; dP/dc is negative,
    // decreasing in a, independent of c.
    const Interval dpa{dptilde_da(amin, cmax), dptilde_da(amax, cmin)};
    const Interval dpc{dptilde_dc(amax), dptilde_dc(amin)};
    const Interval nhat{(k * k * (5.0 * kPi * kPi - 28.0) + k * (-2.0 * kPi * kPi + 24.0) +
                         kPi * kPi + 4.0) /
                            (2.0 * kSqrt3),
                        2.0 * kPi * kPi / kSqrt3 * (5.0 * k * k - 2.0 * k + 1.0)};
    const Interval nhatp{nhat_prime(k, amax), nhat_prime(k, amin)};
    const Interval dhatp{dhat_prime(k, amax), dhat_prime(k, amin)};
    const double vsup = kSqrt3 * kPi * kPi * onek * onek;  // sqrt3 pi^2 (1+k)^2, common to the H/I_N bounds
    const Interval i_n{0.0, vsup * amax * (1.0 - 2.0 * amax)};
    const Interval h1{-4.0 * vsup * amax, 0.0};
    const Interval h2{0.0, 4.0 * vsup * (cmax - amin) * (cmax - amin) /
                               ((1.0 - 2.0 * amin) * (1.0 - 2.0 * amin))};
    const Interval h3{0.0, 4.0 * vsup * amax};
    // a U(A) and a U(B) are increasing in a
    const Interval j1{-kSqrt3 / 4.0 * amax * u_at_A(k, amax), -kSqrt3 / 4.0 * amin * u_at_B(k, amin)};
    const Interval j2{0.0, 27.0 * kSqrt3 / 16.0 * cmax};
    const Interval j3{0.0, 27.0 * kSqrt3 / 16.0 * amax};

    const double c16 = 16.0 * kPi * kPi;
    const double c32 = 32.0 * kPi * kPi;

    const Interval dfa = (-4.0) * (i_n * ptil * dpa) + (-2.0) * (ptil2 * h1) + (-c16) * dhatp +
                         c32 * j2 + 2.0 * (nhat * ptil * dpa) + ptil2 * nhatp +
                         (-2.0) * (ptil2 * h2) + c32 * j1;
    const Interval dfc =
        (-4.0) * (i_n * ptil * dpc) + c32 * j3 + 2.0 * (nhat * ptil * dpc) + (-2.0) * (ptil2 * h3);

    return {max_abs(dfa), max_abs(dfc)};
}

// ---------------------------------------------------------------------------

namespace {

struct WorkerBest {
    double f = -std::numeric_limits<double>::infinity();
    double a = 0.0, c = 0.0;
    bool nonfinite = false;
    double bad_a = 0.0, bad_c = 0.0;
};

void scan_range(double k, const std::vector<std::pair<double, double>>& pts, std::size_t lo,
                std::size_t hi, WorkerBest& out) {
    for (std::size_t i = lo; i < hi; ++i) {
        const auto [a, c] = pts[i];
        const double f = closed_form::ndf({k, a, c}).f;
        if (!std::isfinite(f)) {
            if (!out.nonfinite) {
                out.nonfinite = true;
                out.bad_a = a;
                out.bad_c = c;
            }
            continue;
        }
        if (f > out.f || (f == out.f && std::pair(a, c) < std::pair(out.a, out.c))) {
            out.f = f;
            out.a = a;
            out.c = c;
        }
    }
}

}  // namespace

GridReport sweep(const Zone& z, LipSource lip_source, int workers, double fp_slack) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pts = build_grid(z);
    workers = std::max(1, workers);

    std::vector<WorkerBest> best(workers);
    if (workers == 1) {
        scan_range(z.k, pts, 0, pts.size(), best[0]);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (pts.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = std::min(pts.size(), w * chunk);
            const std::size_t hi = std::min(pts.size(), lo + chunk);
            pool.emplace_back(scan_range, z.k, std::cref(pts), lo, hi, std::ref(best[w]));
        }
        for (auto& t : pool) t.join();
    }

    WorkerBest total;
    for (const auto& b : best) {
        if (b.nonfinite && (!total.nonfinite || std::pair(b.bad_a, b.bad_c) <
                                                    std::pair(total.bad_a, total.bad_c))) {
            total.nonfinite = true;
            total.bad_a = b.bad_a;
            total.bad_c = b.bad_c;
        }
        if (b.f > total.f ||
            (b.f == total.f && std::pair(b.a, b.c) < std::pair(total.a, total.c))) {
            total.f = b.f;
            total.a = b.a;
            total.c = b.c;
        }
    }
    if (total.nonfinite) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "sweep: non-finite F at (a, c) = (%.17g, %.17g)",
                      total.bad_a, total.bad_c);
        throw std::runtime_error(buf);
    }

    GridReport r;
    r.zone = to_string(z.name);
    r.points_evaluated = static_cast<long>(pts.size());
    r.max_f = total.f;
    r.argmax_a = total.a;
    r.argmax_c = total.c;
    r.delta_a = z.delta_a();
    r.delta_c = z.delta_c();
    if (lip_source == LipSource::paper) {
        r.lip_a = z.lip_a;
        r.lip_c = z.lip_c;
    } else {
        const LipschitzBounds lb = lipschitz_bounds(z);
        r.lip_a = lb.l_a;
        r.lip_c = lb.l_c;
    }
    r.lip_source = to_string(lip_source);
    r.error_budget = r.lip_a * r.delta_a / 2.0 + r.lip_c * r.delta_c / 2.0;
    r.fp_slack = fp_slack;
    r.certified_upper = r.max_f + r.error_budget + r.fp_slack;
    r.verdict = r.certified_upper < 0.0;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void sweep_dump_csv(const Zone& z, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open dump file: " + path);
    std::fputs("a,c,F\n", f);
    for (const auto& [a, c] : build_grid(z)) {
        std::fprintf(f, "%.17g,%.17g,%.17g\n", a, c, closed_form::ndf({z.k, a, c}).f);
    }
    std::fclose(f);
}

SmallACertificate small_a_certificate() {
    constexpr int n = 100000;
    SmallACertificate cert;

    const auto scan = [](double lo, double hi, auto&& fn, double& vmax, double& margin) {
        double prev = fn(lo);
        vmax = prev;
        double max_step = 0.0;
        const double dx = (hi - lo) / (n - 1);
        for (int i = 1; i < n; ++i) {
            const double v = fn(lo + i * dx);
            vmax = std::max(vmax, v);
            max_step = std::max(max_step, std::abs(v - prev));
            prev = v;
        }
        // between-sample allowance from the observed modulus of continuity
        margin = -(vmax + 0.5 * max_step);
    };

    scan(1e-9, 0.5, [](double c) { return closed_form::smalla_f1(c); }, cert.f1_max, cert.f1_margin);
    scan(1e-9, 0.5,
         [](double c) { return closed_form::smalla_f1(c) + (1.0 / 60.0) * closed_form::smalla_f2(1.0 / 60.0, c); },
         cert.a60_max, cert.a60_margin);
    scan(1e-9, 0.16,
         [](double c) { return closed_form::smalla_f1(c) + 0.16 * closed_form::smalla_f2(0.16, c); },
         cert.a16_max, cert.a16_margin);
    cert.c0 = (118.0 - std::sqrt(3422.0)) / 178.0;
    cert.verdict = cert.f1_margin > 0.0 && cert.a60_margin > 0.0 && cert.a16_margin > 0.0;
    return cert;
}

FullVerdict full_verdict(LipSource lip_source, int workers, double fp_slack) {
    FullVerdict v;
    v.small_a = small_a_certificate();
    for (const Zone& z : zones()) v.zone_reports.push_back(sweep(z, lip_source, workers, fp_slack));
    v.midrange = bounds::midrange_certificate();
    v.verdict = v.small_a.verdict && v.midrange.verdict;
    for (const auto& r : v.zone_reports) v.verdict = v.verdict && r.verdict;
    return v;
}

nlohmann::json to_json(const GridReport& r) {
    return {{"zone", r.zone},
            {"points_evaluated", r.points_evaluated},
            {"max_F", r.max_f},
            {"argmax", {r.argmax_a, r.argmax_c}},
            {"delta_a", r.delta_a},
            {"delta_c", r.delta_c},
            {"lip_a", r.lip_a},
            {"lip_c", r.lip_c},
            {"lip_source", r.lip_source},
            {"error_budget", r.error_budget},
            {"fp_slack", r.fp_slack},
            {"certified_upper", r.certified_upper},
            {"verdict", r.verdict},
            {"wall_time_s", r.wall_time_s}};
}

nlohmann::json to_json(const SmallACertificate& r) {
    return {{"f1_max", r.f1_max},
            {"f1_margin", r.f1_margin},
            {"a60_max", r.a60_max},
            {"a60_margin", r.a60_margin},
            {"a16_max", r.a16_max},
            {"a16_margin", r.a16_margin},
            {"c0", r.c0},
            {"verdict", r.verdict}};
}

nlohmann::json to_json(const bounds::MidrangeCertificate& r) {
    return {{"ratio", r.ratio}, {"bound", r.bound}, {"verdict", r.verdict}};
}

nlohmann::json to_json(const FullVerdict& r) {
    nlohmann::json zs = nlohmann::json::array();
    for (const auto& z : r.zone_reports) zs.push_back(to_json(z));
    return {{"small_a", to_json(r.small_a)},
            {"zones", zs},
            {"midrange", to_json(r.midrange)},
            {"verdict", r.verdict}};
}

}  // namespace neucert::certify
