#ifndef LISL_LINK_ANALYSIS_HPP
#define LISL_LINK_ANALYSIS_HPP

// Pairwise link analysis: orbital-plane relationship classification, contact
// interval detection over a simulation window, permanent/temporary
// classification, and range-study aggregation.

#include <optional>
#include <vector>

#include "lisl/geometry.hpp"

namespace lisl {

enum class PlaneRelation { Same, Adjacent, Nearby, Crossing };
const char* to_string(PlaneRelation relation);

// Plane relationship by cyclic offset (other - reference) mod P, mapped into
// (-P/2, P/2]. The three offset sets plus {0} must partition all offsets.
struct PlaneRelationMap {
    std::vector<int> adjacent_offsets;
    std::vector<int> nearby_offsets;
    std::vector<int> crossing_offsets;

    // The P=24 designation used throughout this tool's default scenario:
    // adjacent {+1,-1}; nearby {+2..+6, -5..-2}; crossing {+7..+12, -6..-11}.
    // The nearby band is deliberately asymmetric (+6 is nearby, -6 crossing).
    static PlaneRelationMap starlink_default();

    // starlink_default() for P=24, an empty map for P=1 (no other planes),
    // nullopt otherwise: non-default plane counts need an explicit map.
    static std::optional<PlaneRelationMap> default_for(int num_planes);

    void validate(int num_planes) const;
};

// Throws ConfigError when the offset is missing from the map.
PlaneRelation classify_plane_relation(int ref_plane, int other_plane,
                                      const PlaneRelationMap& map, int num_planes);

struct TimeWindow {
    double start_s = 0.0;
    double stop_s = 86400.0;

    double length_s() const { return stop_s - start_s; }
};

struct ContactInterval {
    double start_s = 0.0;
    double stop_s = 0.0;
    double duration_s = 0.0;
};

enum class Permanence { None, Temporary, Permanent };
const char* to_string(Permanence permanence);

struct LinkRecord {
    SatelliteId id_a;
    SatelliteId id_b;
    PlaneRelation relation = PlaneRelation::Same;
    double range_km = 0.0;
    Permanence permanence = Permanence::None;
    std::vector<ContactInterval> intervals;  // disjoint, ascending, inside the window
};

struct AnalysisParams {
    double scan_step_s = 1.0;
    double refine_tol_s = 1e-3;
    PlaneRelationMap relation_map = PlaneRelationMap::starlink_default();
    int num_planes = 24;
    PhysicalConstants constants;
    int threads = 1;
};

struct CategoryCounts {
    int intra = 0;
    int adjacent = 0;
    int nearby = 0;
    int crossing = 0;

    int total() const { return intra + adjacent + nearby + crossing; }
};

struct RangeStudyRow {
    double range_km = 0.0;
    CategoryCounts permanent;   // crossing expected zero; kept as a diagnostic
    CategoryCounts temporary;   // intra expected zero; kept as a diagnostic
};

struct RangeStudyReport {
    SatelliteId reference;
    TimeWindow window;
    std::vector<RangeStudyRow> rows;  // sorted by range ascending
};

// True iff distance(t) <= range_km and the line of sight stays at or above the
// atmosphere shell. Inclusive comparisons, no epsilon.
bool in_range(const SatelliteRecord& a, const SatelliteRecord& b, double t_s,
              double range_km, const PhysicalConstants& constants);

// Uniform scan of the in_range predicate at scan_step_s, each detected
// transition refined by bisection to refine_tol_s. Returned intervals are
// disjoint, sorted, and clipped to the window. Contacts shorter than the scan
// step can be missed; the default 1 s step bounds missed contacts to < 1 s.
std::vector<ContactInterval> find_contact_intervals(
    const SatelliteRecord& a, const SatelliteRecord& b, double range_km,
    const TimeWindow& window, double scan_step_s, double refine_tol_s,
    const PhysicalConstants& constants);

// Permanent: one interval covering the whole window (boundaries within
// refine_tol_s). None: no intervals. Temporary otherwise.
Permanence classify_permanence(const std::vector<ContactInterval>& intervals,
                               const TimeWindow& window, double refine_tol_s);

// Full classification of one pair. Symmetric in its two arguments: the pair is
// analyzed in canonical id order, so (a,b) and (b,a) yield identical records,
// with the plane relation taken from the lower id as reference.
LinkRecord analyze_link(const SatelliteRecord& a, const SatelliteRecord& b,
                        double range_km, const TimeWindow& window,
                        const AnalysisParams& params);

// Reference satellite against every other satellite at each range, counted by
// (relation, permanence). Plane relations are classified with respect to the
// reference satellite. Pair evaluation may run on params.threads workers; the
// report is byte-identical regardless of thread count.
RangeStudyReport range_study(const std::vector<SatelliteRecord>& constellation,
                             const SatelliteId& reference,
                             const std::vector<double>& ranges_km,
                             const TimeWindow& window, const AnalysisParams& params);

// One pair's LinkRecord at a single range, for interval-table rendering.
LinkRecord contact_table(const std::vector<SatelliteRecord>& constellation,
                         const SatelliteId& reference, const SatelliteId& other,
                         double range_km, const TimeWindow& window,
                         const AnalysisParams& params);

// Closed-form separation envelope of two same-rate circular orbits: the
// squared distance is base_sq + amp_cos*cos(sigma) + amp_sin*sin(sigma) with
// sigma = sigma0 + rate*t, so the extremes over any window spanning at least
// half an orbital period are base_sq -/+ amplitude. Available only when both
// records share radius, inclination, and mean motion.
struct SeparationProfile {
    double base_sq_km2 = 0.0;
    double amp_cos_km2 = 0.0;
    double amp_sin_km2 = 0.0;
    double sigma0_rad = 0.0;
    double rate_rad_s = 0.0;  // twice the mean motion

    static std::optional<SeparationProfile> of(const SatelliteRecord& a,
                                               const SatelliteRecord& b);

    double amplitude_km2() const;
    double min_distance_km() const;
    double max_distance_km() const;
    double distance_at(double t_s) const;
    // A time of minimum (resp. maximum) separation at or after t_from.
    double time_of_min_after(double t_from) const;
    double time_of_max_after(double t_from) const;

    // Permanent when max <= effective range, None when min > it, else
    // Temporary. Valid for windows of at least half an orbital period.
    Permanence classify(double effective_range_km) const;
};

// min(range, max_lisl_range at the shared orbit radius): a pair of same-radius
// satellites is in range exactly when its separation is below this value.
double effective_range_km(double range_km, double orbit_radius_km,
                          const PhysicalConstants& constants);

// Same report shape as range_study, but pair permanence comes from
// SeparationProfile instead of scanning. Requires a same-radius constellation
// and a window of at least one orbital period.
RangeStudyReport analytic_range_study(const std::vector<SatelliteRecord>& constellation,
                                      const SatelliteId& reference,
                                      const std::vector<double>& ranges_km,
                                      const TimeWindow& window,
                                      const AnalysisParams& params);

// Sum over rows of |count - target| across the six study cells (permanent
// intra/adjacent/nearby, temporary adjacent/nearby/crossing) plus the two
// diagnostics. Rows are matched by range; throws on mismatched shapes.
int study_match_score(const RangeStudyReport& report,
                      const std::vector<RangeStudyRow>& targets);

struct PhasingSweepEntry {
    int phasing_factor = 0;
    int score = 0;
};

struct PhasingSweepResult {
    std::vector<PhasingSweepEntry> entries;  // one per F in [0, S-1]
    int best_phasing = 0;                    // lowest F among minimal scores
    int best_score = 0;
};

// Score every phasing factor F in [0, sats_per_plane-1] against target counts.
// Uses the analytic study (the closed-form envelope yields the same
// permanence classes the scan does, at negligible cost); falls back to the
// scan-based study when the window is shorter than one orbital period.
PhasingSweepResult phasing_sweep(const ConstellationConfig& base_config,
                                 const SatelliteId& reference,
                                 const std::vector<double>& ranges_km,
                                 const TimeWindow& window,
                                 const AnalysisParams& params,
                                 const std::vector<RangeStudyRow>& targets);

}  // namespace lisl

#endif  // LISL_LINK_ANALYSIS_HPP
