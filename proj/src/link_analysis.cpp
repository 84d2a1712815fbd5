#include "lisl/link_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace lisl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Margin for the analytic never-in-range skip: closed-form extrema and the
// scanned separation agree to well under a millimeter, so a pair whose minimum
// separation clears the effective range by this much can never produce a
// contact sample.
constexpr double kSkipMarginKm = 1e-3;

int cyclic_offset(int ref_plane, int other_plane, int num_planes) {
    int off = (other_plane - ref_plane) % num_planes;
    if (off < 0) off += num_planes;        // [0, P)
    if (2 * off > num_planes) off -= num_planes;  // (-P/2, P/2]
    return off;
}

bool contains(const std::vector<int>& offsets, int value) {
    return std::find(offsets.begin(), offsets.end(), value) != offsets.end();
}

// Both satellites of one pair, with precomputed orbit frames for the scan.
struct PairContext {
    OrbitFrame frame_a;
    OrbitFrame frame_b;
    PhysicalConstants constants;

    PairContext(const SatelliteRecord& a, const SatelliteRecord& b,
                const PhysicalConstants& c)
        : frame_a(a), frame_b(b), constants(c) {}

    bool in_range_at(double t_s, double range_km) const {
        const EciPosition pa = frame_a.position_at(t_s);
        const EciPosition pb = frame_b.position_at(t_s);
        if (distance(pa, pb) > range_km) return false;
        return grazing_altitude(pa, pb, constants.earth_radius_km) >=
               constants.atmosphere_height_km;
    }
};

// Separation and grazing altitude sampled on the scan grid. Shared by every
// range analyzed for the pair; the grid predicate derived from these samples
// is bit-identical to in_range_at on the same times.
struct PairSamples {
    std::vector<double> times;
    std::vector<double> dist_km;
    std::vector<double> graz_km;
};

PairSamples build_samples(const PairContext& ctx, const TimeWindow& window, double step_s) {
    PairSamples samples;
    const double span = window.stop_s - window.start_s;
    const std::size_t expected = static_cast<std::size_t>(span / step_s) + 2;
    samples.times.reserve(expected);
    for (std::size_t i = 0;; ++i) {
        const double t = window.start_s + static_cast<double>(i) * step_s;
        if (t >= window.stop_s) break;
        samples.times.push_back(t);
    }
    samples.times.push_back(window.stop_s);

    samples.dist_km.resize(samples.times.size());
    samples.graz_km.resize(samples.times.size());
    for (std::size_t i = 0; i < samples.times.size(); ++i) {
        const EciPosition pa = ctx.frame_a.position_at(samples.times[i]);
        const EciPosition pb = ctx.frame_b.position_at(samples.times[i]);
        samples.dist_km[i] = distance(pa, pb);
        samples.graz_km[i] = grazing_altitude(pa, pb, ctx.constants.earth_radius_km);
    }
    return samples;
}

// Bisect the in-range predicate inside (t_lo, t_hi), where the two endpoints
// disagree, down to the tolerance. Returns the boundary estimate on the
// in-range side of the transition.
double refine_transition(const PairContext& ctx, double range_km, double t_lo,
                         double t_hi, bool lo_in_range, double tol_s) {
    while (t_hi - t_lo > tol_s) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (mid <= t_lo || mid >= t_hi) break;
        if (ctx.in_range_at(mid, range_km) == lo_in_range) {
            t_lo = mid;
        } else {
            t_hi = mid;
        }
    }
    return lo_in_range ? t_lo : t_hi;
}

std::vector<ContactInterval> intervals_from_samples(const PairContext& ctx,
                                                    const PairSamples& samples,
                                                    double range_km,
                                                    const TimeWindow& window,
                                                    double refine_tol_s) {
    const auto sample_in_range = [&](std::size_t i) {
        return samples.dist_km[i] <= range_km &&
               samples.graz_km[i] >= ctx.constants.atmosphere_height_km;
    };

    std::vector<ContactInterval> out;
    const auto close = [&out](double start, double stop) {
        if (stop > start) {
            out.push_back(ContactInterval{start, stop, stop - start});
        }
    };

    bool prev = sample_in_range(0);
    double open_start = window.start_s;
    for (std::size_t i = 1; i < samples.times.size(); ++i) {
        const bool cur = sample_in_range(i);
        if (cur == prev) continue;
        const double boundary = refine_transition(ctx, range_km, samples.times[i - 1],
                                                  samples.times[i], prev, refine_tol_s);
        if (cur) {
            open_start = boundary;
        } else {
            close(open_start, boundary);
        }
        prev = cur;
    }
    if (prev) close(open_start, window.stop_s);
    return out;
}

void validate_scan_params(const TimeWindow& window, double scan_step_s, double refine_tol_s) {
    if (!(window.start_s < window.stop_s)) {
        throw std::invalid_argument("window start must precede window stop");
    }
    if (!(scan_step_s > 0.0)) {
        throw std::invalid_argument("scan step must be positive");
    }
    if (!(refine_tol_s > 0.0) || refine_tol_s > scan_step_s) {
        throw std::invalid_argument("refine tolerance must lie in (0, scan step]");
    }
}

const SatelliteRecord& find_record(const std::vector<SatelliteRecord>& constellation,
                                   const SatelliteId& id, const char* role) {
    for (const SatelliteRecord& rec : constellation) {
        if (rec.id == id) return rec;
    }
    throw std::invalid_argument(std::string("unknown ") + role + " satellite " + format_id(id));
}

std::vector<double> sorted_ranges(const std::vector<double>& ranges_km) {
    if (ranges_km.empty()) {
        throw std::invalid_argument("at least one range is required");
    }
    for (double r : ranges_km) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("ranges must be positive and finite");
        }
    }
    std::vector<double> sorted = ranges_km;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

void count_link(CategoryCounts& counts, PlaneRelation relation) {
    switch (relation) {
        case PlaneRelation::Same: counts.intra++; break;
        case PlaneRelation::Adjacent: counts.adjacent++; break;
        case PlaneRelation::Nearby: counts.nearby++; break;
        case PlaneRelation::Crossing: counts.crossing++; break;
    }
}

}  // namespace

const char* to_string(PlaneRelation relation) {
    switch (relation) {
        case PlaneRelation::Same: return "intra";
        case PlaneRelation::Adjacent: return "adjacent";
        case PlaneRelation::Nearby: return "nearby";
        case PlaneRelation::Crossing: return "crossing";
    }
    return "?";
}

const char* to_string(Permanence permanence) {
    switch (permanence) {
        case Permanence::None: return "none";
        case Permanence::Temporary: return "temporary";
        case Permanence::Permanent: return "permanent";
    }
    return "?";
}

PlaneRelationMap PlaneRelationMap::starlink_default() {
    PlaneRelationMap map;
    map.adjacent_offsets = {1, -1};
    map.nearby_offsets = {2, 3, 4, 5, 6, -2, -3, -4, -5};
    map.crossing_offsets = {7, 8, 9, 10, 11, 12, -6, -7, -8, -9, -10, -11};
    return map;
}

std::optional<PlaneRelationMap> PlaneRelationMap::default_for(int num_planes) {
    if (num_planes == 24) return starlink_default();
    if (num_planes == 1) return PlaneRelationMap{};
    return std::nullopt;
}

void PlaneRelationMap::validate(int num_planes) const {
    if (num_planes < 1) {
        throw ConfigError("num_planes", "must be at least 1");
    }
    std::vector<int> seen;
    const auto check_set = [&](const std::vector<int>& offsets, const char* name) {
        for (int off : offsets) {
            if (off == 0 || 2 * off > num_planes || 2 * off <= -num_planes) {
                throw ConfigError("plane_relation_map",
                                  std::string(name) + " offset " + std::to_string(off) +
                                      " outside (-P/2, P/2] or zero");
            }
            if (contains(seen, off)) {
                throw ConfigError("plane_relation_map",
                                  "offset " + std::to_string(off) + " assigned twice");
            }
            seen.push_back(off);
        }
    };
    check_set(adjacent_offsets, "adjacent");
    check_set(nearby_offsets, "nearby");
    check_set(crossing_offsets, "crossing");
    if (seen.size() != static_cast<std::size_t>(num_planes - 1)) {
        throw ConfigError("plane_relation_map",
                          "offsets must cover every non-zero value exactly once (got " +
                              std::to_string(seen.size()) + " of " +
                              std::to_string(num_planes - 1) + ")");
    }
}

PlaneRelation classify_plane_relation(int ref_plane, int other_plane,
                                      const PlaneRelationMap& map, int num_planes) {
    if (ref_plane < 1 || ref_plane > num_planes || other_plane < 1 ||
        other_plane > num_planes) {
        throw std::invalid_argument("plane index outside [1, num_planes]");
    }
    if (ref_plane == other_plane) return PlaneRelation::Same;
    const int off = cyclic_offset(ref_plane, other_plane, num_planes);
    if (contains(map.adjacent_offsets, off)) return PlaneRelation::Adjacent;
    if (contains(map.nearby_offsets, off)) return PlaneRelation::Nearby;
    if (contains(map.crossing_offsets, off)) return PlaneRelation::Crossing;
    throw ConfigError("plane_relation_map",
                      "offset " + std::to_string(off) + " is not mapped to a relation");
}

bool in_range(const SatelliteRecord& a, const SatelliteRecord& b, double t_s,
              double range_km, const PhysicalConstants& constants) {
    return PairContext(a, b, constants).in_range_at(t_s, range_km);
}

std::vector<ContactInterval> find_contact_intervals(
    const SatelliteRecord& a, const SatelliteRecord& b, double range_km,
    const TimeWindow& window, double scan_step_s, double refine_tol_s,
    const PhysicalConstants& constants) {
    validate_scan_params(window, scan_step_s, refine_tol_s);
    const PairContext ctx(a, b, constants);
    const PairSamples samples = build_samples(ctx, window, scan_step_s);
    return intervals_from_samples(ctx, samples, range_km, window, refine_tol_s);
}

Permanence classify_permanence(const std::vector<ContactInterval>& intervals,
                               const TimeWindow& window, double refine_tol_s) {
    if (intervals.empty()) return Permanence::None;
    if (intervals.size() == 1 &&
        std::abs(intervals.front().start_s - window.start_s) <= refine_tol_s &&
        std::abs(intervals.front().stop_s - window.stop_s) <= refine_tol_s) {
        return Permanence::Permanent;
    }
    return Permanence::Temporary;
}

LinkRecord analyze_link(const SatelliteRecord& a, const SatelliteRecord& b,
                        double range_km, const TimeWindow& window,
                        const AnalysisParams& params) {
    if (a.id == b.id) {
        throw std::invalid_argument("analyze_link: satellites must be distinct");
    }
    const SatelliteRecord& first = (a.id <= b.id) ? a : b;
    const SatelliteRecord& second = (a.id <= b.id) ? b : a;

    LinkRecord record;
    record.id_a = first.id;
    record.id_b = second.id;
    record.relation = classify_plane_relation(first.id.plane, second.id.plane,
                                              params.relation_map, params.num_planes);
    record.range_km = range_km;
    record.intervals = find_contact_intervals(first, second, range_km, window,
                                              params.scan_step_s, params.refine_tol_s,
                                              params.constants);
    record.permanence = classify_permanence(record.intervals, window, params.refine_tol_s);
    return record;
}

double effective_range_km(double range_km, double orbit_radius_km,
                          const PhysicalConstants& constants) {
    const double shell = constants.earth_radius_km + constants.atmosphere_height_km;
    const double visible_sq = orbit_radius_km * orbit_radius_km - shell * shell;
    if (visible_sq <= 0.0) return 0.0;
    return std::min(range_km, 2.0 * std::sqrt(visible_sq));
}

RangeStudyReport range_study(const std::vector<SatelliteRecord>& constellation,
                             const SatelliteId& reference,
                             const std::vector<double>& ranges_km,
                             const TimeWindow& window, const AnalysisParams& params) {
    validate_scan_params(window, params.scan_step_s, params.refine_tol_s);
    params.relation_map.validate(params.num_planes);
    const std::vector<double> ranges = sorted_ranges(ranges_km);
    const SatelliteRecord& ref = find_record(constellation, reference, "reference");

    std::vector<const SatelliteRecord*> others;
    others.reserve(constellation.size());
    for (const SatelliteRecord& rec : constellation) {
        if (!(rec.id == reference)) others.push_back(&rec);
    }

    struct PairOutcome {
        PlaneRelation relation = PlaneRelation::Same;
        std::vector<Permanence> per_range;
    };
    std::vector<PairOutcome> outcomes(others.size());

    const auto analyze_pair = [&](std::size_t index) {
        const SatelliteRecord& other = *others[index];
        PairOutcome& outcome = outcomes[index];
        outcome.relation = classify_plane_relation(ref.id.plane, other.id.plane,
                                                   params.relation_map, params.num_planes);
        outcome.per_range.assign(ranges.size(), Permanence::None);

        // Geometry in canonical id order so a study is bit-consistent with
        // standalone analyze_link calls on the same pair.
        const SatelliteRecord& first = (ref.id <= other.id) ? ref : other;
        const SatelliteRecord& second = (ref.id <= other.id) ? other : ref;
        const PairContext ctx(first, second, params.constants);
        const std::optional<SeparationProfile> profile = SeparationProfile::of(first, second);

        PairSamples samples;
        bool have_samples = false;
        for (std::size_t ri = 0; ri < ranges.size(); ++ri) {
            if (profile) {
                const double eff = effective_range_km(ranges[ri], first.orbit_radius_km,
                                                      params.constants);
                if (profile->min_distance_km() > eff + kSkipMarginKm) {
                    continue;  // provably never in range, Permanence::None
                }
            }
            if (!have_samples) {
                samples = build_samples(ctx, window, params.scan_step_s);
                have_samples = true;
            }
            const std::vector<ContactInterval> intervals = intervals_from_samples(
                ctx, samples, ranges[ri], window, params.refine_tol_s);
            outcome.per_range[ri] = classify_permanence(intervals, window, params.refine_tol_s);
        }
    };

    const int threads = std::max(1, params.threads);
    if (threads == 1 || others.size() < 2) {
        for (std::size_t i = 0; i < others.size(); ++i) analyze_pair(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            workers.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < others.size();
                     i = next.fetch_add(1)) {
                    analyze_pair(i);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    RangeStudyReport report;
    report.reference = reference;
    report.window = window;
    report.rows.reserve(ranges.size());
    for (std::size_t ri = 0; ri < ranges.size(); ++ri) {
        RangeStudyRow row;
        row.range_km = ranges[ri];
        for (const PairOutcome& outcome : outcomes) {
            switch (outcome.per_range[ri]) {
                case Permanence::Permanent: count_link(row.permanent, outcome.relation); break;
                case Permanence::Temporary: count_link(row.temporary, outcome.relation); break;
                case Permanence::None: break;
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

LinkRecord contact_table(const std::vector<SatelliteRecord>& constellation,
                         const SatelliteId& reference, const SatelliteId& other,
                         double range_km, const TimeWindow& window,
                         const AnalysisParams& params) {
    if (reference == other) {
        throw std::invalid_argument("contact_table: satellites must be distinct");
    }
    const SatelliteRecord& ref = find_record(constellation, reference, "reference");
    const SatelliteRecord& oth = find_record(constellation, other, "other");
    return analyze_link(ref, oth, range_km, window, params);
}

std::optional<SeparationProfile> SeparationProfile::of(const SatelliteRecord& a,
                                                       const SatelliteRecord& b) {
    const double ra = a.orbit_radius_km;
    const double rb = b.orbit_radius_km;
    if (!(ra > 0.0) || !(rb > 0.0)) return std::nullopt;
    if (std::abs(ra - rb) > 1e-9 * std::max(ra, rb)) return std::nullopt;
    if (std::abs(a.inclination_rad - b.inclination_rad) > 1e-12) return std::nullopt;
    const double n = a.mean_motion_rad_s;
    if (!(n > 0.0) || std::abs(n - b.mean_motion_rad_s) > 1e-15 * n) return std::nullopt;

    // Unit-vector dot product of the two satellites decomposes into a constant
    // plus a single harmonic at twice the mean motion:
    //   dot(t) = K + Pc*cos(sigma) + Ps*sin(sigma),  sigma = u0a + u0b + 2n t,
    // with coefficients from the RAAN offset and the shared inclination.
    const double d_raan = b.raan_rad - a.raan_rad;
    const double cd = std::cos(d_raan);
    const double sd = std::sin(d_raan);
    const double ci = std::cos(a.inclination_rad);
    const double si = std::sin(a.inclination_rad);
    const double m11 = cd;
    const double m12 = -sd * ci;
    const double m21 = sd * ci;
    const double m22 = cd * ci * ci + si * si;

    const double delta = a.initial_arg_latitude_rad - b.initial_arg_latitude_rad;
    const double k_const =
        0.5 * ((m11 + m22) * std::cos(delta) + (m21 - m12) * std::sin(delta));
    const double pc = 0.5 * (m11 - m22);
    const double ps = 0.5 * (m12 + m21);

    SeparationProfile profile;
    profile.base_sq_km2 = ra * ra + rb * rb - 2.0 * ra * rb * k_const;
    profile.amp_cos_km2 = -2.0 * ra * rb * pc;
    profile.amp_sin_km2 = -2.0 * ra * rb * ps;
    profile.sigma0_rad = a.initial_arg_latitude_rad + b.initial_arg_latitude_rad;
    profile.rate_rad_s = a.mean_motion_rad_s + b.mean_motion_rad_s;
    return profile;
}

double SeparationProfile::amplitude_km2() const {
    return std::hypot(amp_cos_km2, amp_sin_km2);
}

double SeparationProfile::min_distance_km() const {
    return std::sqrt(std::max(0.0, base_sq_km2 - amplitude_km2()));
}

double SeparationProfile::max_distance_km() const {
    return std::sqrt(std::max(0.0, base_sq_km2 + amplitude_km2()));
}

double SeparationProfile::distance_at(double t_s) const {
    const double sigma = sigma0_rad + rate_rad_s * t_s;
    const double sq = base_sq_km2 + amp_cos_km2 * std::cos(sigma) +
                      amp_sin_km2 * std::sin(sigma);
    return std::sqrt(std::max(0.0, sq));
}

double SeparationProfile::time_of_min_after(double t_from) const {
    // Squared separation is extremal where the harmonic term peaks: the
    // minimum sits at sigma = psi + pi (mod 2 pi), psi = atan2(amp_sin, amp_cos).
    const double psi = std::atan2(amp_sin_km2, amp_cos_km2);
    const double target = psi + std::numbers::pi;
    const double k = std::ceil((t_from * rate_rad_s - (target - sigma0_rad)) / kTwoPi);
    return (target - sigma0_rad + kTwoPi * k) / rate_rad_s;
}

double SeparationProfile::time_of_max_after(double t_from) const {
    const double psi = std::atan2(amp_sin_km2, amp_cos_km2);
    const double k = std::ceil((t_from * rate_rad_s - (psi - sigma0_rad)) / kTwoPi);
    return (psi - sigma0_rad + kTwoPi * k) / rate_rad_s;
}

Permanence SeparationProfile::classify(double effective_range) const {
    if (max_distance_km() <= effective_range) return Permanence::Permanent;
    if (min_distance_km() > effective_range) return Permanence::None;
    return Permanence::Temporary;
}

RangeStudyReport analytic_range_study(const std::vector<SatelliteRecord>& constellation,
                                      const SatelliteId& reference,
                                      const std::vector<double>& ranges_km,
                                      const TimeWindow& window,
                                      const AnalysisParams& params) {
    params.relation_map.validate(params.num_planes);
    const std::vector<double> ranges = sorted_ranges(ranges_km);
    const SatelliteRecord& ref = find_record(constellation, reference, "reference");

    const double period = kTwoPi / ref.mean_motion_rad_s;
    if (!(window.length_s() >= 0.5 * period)) {
        throw std::invalid_argument(
            "analytic study needs a window of at least half an orbital period");
    }

    RangeStudyReport report;
    report.reference = reference;
    report.window = window;
    report.rows.resize(ranges.size());
    for (std::size_t ri = 0; ri < ranges.size(); ++ri) {
        report.rows[ri].range_km = ranges[ri];
    }

    for (const SatelliteRecord& other : constellation) {
        if (other.id == reference) continue;
        const std::optional<SeparationProfile> profile = SeparationProfile::of(ref, other);
        if (!profile) {
            throw std::invalid_argument(
                "analytic study requires a uniform (equal radius/inclination) constellation");
        }
        const PlaneRelation relation = classify_plane_relation(
            ref.id.plane, other.id.plane, params.relation_map, params.num_planes);
        for (std::size_t ri = 0; ri < ranges.size(); ++ri) {
            const double eff = effective_range_km(ranges[ri], ref.orbit_radius_km,
                                                  params.constants);
            switch (profile->classify(eff)) {
                case Permanence::Permanent:
                    count_link(report.rows[ri].permanent, relation);
                    break;
                case Permanence::Temporary:
                    count_link(report.rows[ri].temporary, relation);
                    break;
                case Permanence::None:
                    break;
            }
        }
    }
    return report;
}

int study_match_score(const RangeStudyReport& report,
                      const std::vector<RangeStudyRow>& targets) {
    if (report.rows.size() != targets.size()) {
        throw std::invalid_argument("study_match_score: row count mismatch");
    }
    int score = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const RangeStudyRow& row = report.rows[i];
        const RangeStudyRow& target = targets[i];
        if (std::abs(row.range_km - target.range_km) > 1e-9) {
            throw std::invalid_argument("study_match_score: range mismatch");
        }
        score += std::abs(row.permanent.intra - target.permanent.intra);
        score += std::abs(row.permanent.adjacent - target.permanent.adjacent);
        score += std::abs(row.permanent.nearby - target.permanent.nearby);
        score += std::abs(row.permanent.crossing - target.permanent.crossing);
        score += std::abs(row.temporary.intra - target.temporary.intra);
        score += std::abs(row.temporary.adjacent - target.temporary.adjacent);
        score += std::abs(row.temporary.nearby - target.temporary.nearby);
        score += std::abs(row.temporary.crossing - target.temporary.crossing);
    }
    return score;
}

PhasingSweepResult phasing_sweep(const ConstellationConfig& base_config,
                                 const SatelliteId& reference,
                                 const std::vector<double>& ranges_km,
                                 const TimeWindow& window,
                                 const AnalysisParams& params,
                                 const std::vector<RangeStudyRow>& targets) {
    base_config.validate();
    const double period =
        orbital_period(base_config.orbit_radius_km(), base_config.constants);
    const bool analytic = window.length_s() >= period;

    PhasingSweepResult result;
    result.entries.reserve(static_cast<std::size_t>(base_config.sats_per_plane));
    for (int factor = 0; factor < base_config.sats_per_plane; ++factor) {
        ConstellationConfig config = base_config;
        config.phasing_factor = factor;
        const std::vector<SatelliteRecord> records = build_constellation(config);
        const RangeStudyReport report =
            analytic ? analytic_range_study(records, reference, ranges_km, window, params)
                     : range_study(records, reference, ranges_km, window, params);
        const int score = study_match_score(report, targets);
        result.entries.push_back(PhasingSweepEntry{factor, score});
        if (factor == 0 || score < result.best_score) {
            result.best_phasing = factor;
            result.best_score = score;
        }
    }
    return result;
}

}  // namespace lisl
