#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "neucert/bounds.hpp"

namespace neucert::certify {

enum class ZoneName { I, II, III };
enum class LipSource { paper, computed };

std::string to_string(ZoneName z);
std::string to_string(LipSource s);

/// One certification region: parameter rectangle, test-function mix k, grid
/// resolution and the published gradient-bound constants. Zone III is cut
/// by c >= max(a, 0.16) and the cells crossing c = a get refined.
struct Zone {
    ZoneName name;
    double k;
    double a_min, a_max;
    double c_min, c_max;
    int n_a, n_c;
    double lip_a, lip_c;  // published gradient-bound constants
    bool diagonal_cut;    // Zone III only

    double delta_a() const { return (a_max - a_min) / n_a; }
    double delta_c() const { return (c_max - c_min) / n_c; }
};

std::array<Zone, 3> zones();
const Zone& zone(ZoneName name);

/// Grid points of the zone, lexicographically sorted, duplicates removed.
/// Zone III: uniform grid of the bounding rectangle, with five extra points
/// (edge midpoints and center) in every cell crossing c = a, filtered by
/// c >= max(a, 0.16). Every point of the zone is then within delta_a/2 and
/// delta_c/2 of a kept grid point.
std::vector<std::pair<double, double>> build_grid(const Zone& z);

/// Gradient bounds assembled from the printed term bounds with interval
/// arithmetic: each bracket term becomes an interval, the intervals are
/// summed, and the bound is the maximum absolute endpoint of the sum.
struct LipschitzBounds {
    double l_a, l_c;
};
LipschitzBounds lipschitz_bounds(const Zone& z);

struct GridReport {
    std::string zone;
    long points_evaluated = 0;
    double max_f = 0.0;
    double argmax_a = 0.0, argmax_c = 0.0;
    double delta_a = 0.0, delta_c = 0.0;
    double lip_a = 0.0, lip_c = 0.0;
    std::string lip_source;
    double error_budget = 0.0;     // lip_a * delta_a/2 + lip_c * delta_c/2, exactly
    double fp_slack = 0.0;         // per-evaluation floating-point allowance
    double certified_upper = 0.0;  // max_f + error_budget + fp_slack
    bool verdict = false;          // certified_upper < 0
    double wall_time_s = 0.0;
};

/// Evaluates F on every grid point, reduces to the maximum (argmax ties
/// broken lexicographically), and forms the certified upper bound. The
/// result is identical for any worker count. Throws on a non-finite F,
/// naming the offending point.
GridReport sweep(const Zone& z, LipSource lip_source, int workers, double fp_slack = 1e-9);

/// Per-point dump used by --dump-grid; row order matches build_grid.
void sweep_dump_csv(const Zone& z, const std::string& path);

struct SmallACertificate {
    double f1_max, f1_margin;        // sup f1 on (0, 1/2] plus continuity allowance
    double a60_max, a60_margin;      // f1 + (1/60)  f2(1/60, .) on (0, 1/2]
    double a16_max, a16_margin;      // f1 + (4/25) f2(4/25, .) on (0, 0.16]
    double c0;                       // M-switchover (118 - sqrt(3422))/178
    bool verdict;
};
/// Dense-sampling check (1e5 points) of the small-a inequalities, with a
/// numerically estimated modulus of continuity folded into the margins.
SmallACertificate small_a_certificate();

struct FullVerdict {
    SmallACertificate small_a;
    std::vector<GridReport> zone_reports;
    bounds::MidrangeCertificate midrange;
    bool verdict;
};
FullVerdict full_verdict(LipSource lip_source, int workers, double fp_slack = 1e-9);

nlohmann::json to_json(const GridReport& r);
nlohmann::json to_json(const SmallACertificate& r);
nlohmann::json to_json(const bounds::MidrangeCertificate& r);
nlohmann::json to_json(const FullVerdict& r);

}  // namespace neucert::certify
