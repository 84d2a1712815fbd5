// Acceptance suite: runs the full default scenario end to end and checks each
// published figure at its stated tolerance. Prints one PASS/FAIL line per
// criterion; exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lisl/cli.hpp"
#include "lisl/link_analysis.hpp"
#include "lisl/reporting.hpp"

using namespace lisl;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double stddev(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double sum = 0.0;
    for (double v : values) sum += (v - m) * (v - m);
    return std::sqrt(sum / static_cast<double>(values.size()));
}

// Boundaries from exhaustive 1 ms predicate sampling; independent of the
// scan+bisection implementation under test.
std::vector<ContactInterval> dense_sampling_intervals(const SatelliteRecord& a,
                                                      const SatelliteRecord& b,
                                                      double range_km,
                                                      const TimeWindow& window,
                                                      const PhysicalConstants& constants) {
    constexpr double kStep = 1e-3;
    std::vector<ContactInterval> out;
    bool open = false;
    double start = 0.0;
    double last_true = 0.0;
    const long long n = static_cast<long long>(std::floor(window.length_s() / kStep));
    for (long long i = 0; i <= n; ++i) {
        const double t = window.start_s + static_cast<double>(i) * kStep;
        if (in_range(a, b, t, range_km, constants)) {
            if (!open) {
                open = true;
                start = t;
            }
            last_true = t;
        } else if (open) {
            out.push_back(ContactInterval{start, last_true, last_true - start});
            open = false;
        }
    }
    if (open) out.push_back(ContactInterval{start, last_true, last_true - start});
    return out;
}

struct TemporaryLink {
    SatelliteId other;
    std::vector<ContactInterval> intervals;
};

// Every temporary link between the reference satellite and the given planes at
// one range, found via the separation envelope and scanned in full.
std::vector<TemporaryLink> temporary_links_to_planes(
    const std::vector<SatelliteRecord>& records, const SatelliteRecord& ref,
    const std::vector<int>& planes, double range_km, const TimeWindow& window,
    const AnalysisParams& params) {
    std::vector<TemporaryLink> links;
    for (const SatelliteRecord& other : records) {
        if (other.id == ref.id) continue;
        bool wanted = false;
        for (int p : planes) wanted = wanted || other.id.plane == p;
        if (!wanted) continue;

        const auto profile = SeparationProfile::of(ref, other);
        if (!profile) continue;
        const double eff =
            effective_range_km(range_km, ref.orbit_radius_km, params.constants);
        if (profile->classify(eff) != Permanence::Temporary) continue;

        TemporaryLink link;
        link.other = other.id;
        link.intervals = find_contact_intervals(ref, other, range_km, window,
                                                params.scan_step_s, params.refine_tol_s,
                                                params.constants);
        if (!link.intervals.empty()) links.push_back(std::move(link));
    }
    return links;
}

}  // namespace

int main() {
    const ConstellationConfig default_config;
    const PhysicalConstants defaults = default_config.constants;
    PhysicalConstants equatorial = defaults;
    equatorial.earth_radius_km = 6378.0;

    AnalysisParams params;
    params.threads = 1;

    const TimeWindow day{0.0, 86400.0};
    const std::vector<double> ranges{659.0, 1319.0, 1500.0, 1700.0, 5016.0};
    const std::vector<RangeStudyRow>& targets = reference_study_targets();

    // --- 1: orbital period at 550 km with the equatorial Earth radius.
    {
        const double period = orbital_period(6378.0 + 550.0, equatorial);
        report(1, std::abs(period - 5735.62) <= 0.05,
               fmt("orbital period 550 km -> %.4f s (target 5735.62 +/- 0.05)", period));
    }

    // --- 2: maximum LISL range at 550 km over an 80 km shell.
    {
        const double range = max_lisl_range(550.0, 80.0, 6378.0);
        report(2, std::abs(range - 5016.0) <= 1.0,
               fmt("max LISL range -> %.4f km (target 5016 +/- 1)", range));
    }

    // --- 3: orbits per day for the default shell.
    {
        const double period = orbital_period(default_config.orbit_radius_km(), defaults);
        const double orbits = std::floor(86400.0 / period);
        report(3, orbits == 15.0,
               fmt("floor(86400 / %.2f s) = %.0f (target 15)", period, orbits));
    }

    // --- Default-phasing study, run three times for the determinism and
    // timing checks (criteria 4, 8, 9, 11 share these runs).
    const std::vector<SatelliteRecord> default_records =
        build_constellation(default_config);
    const auto t0 = std::chrono::steady_clock::now();
    const RangeStudyReport study_a =
        range_study(default_records, SatelliteId{1, 1}, ranges, day, params);
    const double study_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const RangeStudyReport study_b =
        range_study(default_records, SatelliteId{1, 1}, ranges, day, params);
    AnalysisParams threaded = params;
    threaded.threads = 4;
    const RangeStudyReport study_c =
        range_study(default_records, SatelliteId{1, 1}, ranges, day, threaded);

    // --- 4: intra-plane permanent column, exact, plus the chord oracle.
    {
        const int expected[5] = {2, 4, 4, 4, 14};
        bool pass = true;
        std::string detail = "intra-plane permanent counts:";
        for (std::size_t i = 0; i < 5; ++i) {
            const int got = study_a.rows[i].permanent.intra;
            // Chord oracle: count slot separations whose chord fits the
            // effective range in both directions around the ring.
            const double eff = effective_range_km(ranges[i], 6921.0, defaults);
            int oracle = 0;
            for (int k = 1; k <= 33; ++k) {
                if (intra_plane_chord(k, 6921.0, 66) <= eff) oracle += (k == 33 ? 1 : 2);
            }
            pass = pass && got == expected[i] && oracle == expected[i];
            detail += fmt(" %g->%d(oracle %d)", ranges[i], got, oracle);
        }
        report(4, pass, detail + " (target 2,4,4,4,14, zero tolerance)");
    }

    // --- Phasing sweep feeding criteria 5-7.
    const PhasingSweepResult sweep =
        phasing_sweep(default_config, SatelliteId{1, 1}, ranges, day, params, targets);
    ConstellationConfig best_config = default_config;
    best_config.phasing_factor = sweep.best_phasing;
    const std::vector<SatelliteRecord> best_records = build_constellation(best_config);
    const SatelliteRecord& best_ref = best_records[0];
    const double period = orbital_period(best_ref.orbit_radius_km, defaults);

    // --- 5: the adjacent-plane temporary link at 1700 km.
    {
        const auto links = temporary_links_to_planes(best_records, best_ref, {2, 24},
                                                     1700.0, day, params);
        const TemporaryLink* analogue = nullptr;
        double best_gap = 0.0;
        for (const TemporaryLink& link : links) {
            if (link.intervals.size() != 30) continue;
            std::vector<double> durations;
            for (const ContactInterval& ci : link.intervals) {
                durations.push_back(ci.duration_s);
            }
            const double gap = std::abs(mean(durations) - 1978.0);
            if (analogue == nullptr || gap < best_gap) {
                analogue = &link;
                best_gap = gap;
            }
        }

        if (analogue == nullptr) {
            report(5, false,
                   fmt("no adjacent-plane temporary link with 30 instances at F=%d",
                       sweep.best_phasing));
        } else {
            std::vector<double> durations;
            std::vector<double> spacings;
            for (std::size_t i = 0; i < analogue->intervals.size(); ++i) {
                durations.push_back(analogue->intervals[i].duration_s);
                if (i > 0) {
                    spacings.push_back(analogue->intervals[i].start_s -
                                       analogue->intervals[i - 1].start_s);
                }
            }
            double worst_spacing = 0.0;
            for (double s : spacings) {
                worst_spacing = std::max(worst_spacing, std::abs(s - 0.5 * period));
            }
            double worst_duration = 0.0;
            for (double d : durations) {
                worst_duration = std::max(worst_duration, std::abs(d - 1978.0));
            }
            const double sigma = stddev(durations);
            const bool pass = analogue->intervals.size() == 30 && worst_spacing <= 2.0 &&
                              worst_duration <= 0.10 * 1978.0 && sigma < 1.0;
            report(5, pass,
                   fmt("adjacent temporary %s: 30 instances, duration %.3f s "
                       "(target 1978 +/- 10%%), spacing T/2 %+.3f s, sigma %.4f s",
                       format_id(analogue->other).c_str(), mean(durations),
                       worst_spacing, sigma));
        }
    }

    // --- 6: a crossing-plane link with 30 instances near 283 s.
    {
        std::vector<int> crossing_planes;
        for (int p = 8; p <= 19; ++p) crossing_planes.push_back(p);
        const auto links = temporary_links_to_planes(best_records, best_ref,
                                                     crossing_planes, 1700.0, day, params);
        const TemporaryLink* found = nullptr;
        double found_mean = 0.0;
        for (const TemporaryLink& link : links) {
            if (link.intervals.size() != 30) continue;
            std::vector<double> durations;
            for (const ContactInterval& ci : link.intervals) {
                durations.push_back(ci.duration_s);
            }
            const double m = mean(durations);
            if (std::abs(m - 283.0) <= 0.15 * 283.0) {
                if (found == nullptr || std::abs(m - 283.0) < std::abs(found_mean - 283.0)) {
                    found = &link;
                    found_mean = m;
                }
            }
        }
        report(6, found != nullptr,
               found ? fmt("crossing temporary %s: 30 instances, duration %.3f s "
                           "(target 283 +/- 15%%), %zu crossing links scanned",
                           format_id(found->other).c_str(), found_mean, links.size())
                     : fmt("no crossing link with 30 instances within 15%% of 283 s "
                           "among %zu candidates", links.size()));
    }

    // --- 7: full study at the sweep's best phasing versus the target table.
    {
        const RangeStudyReport best_study =
            range_study(best_records, SatelliteId{1, 1}, ranges, day, params);
        bool perm_exact = true;
        bool temp_close = true;
        std::string detail = fmt("best F=%d (score %d):", sweep.best_phasing, sweep.best_score);
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const RangeStudyRow& got = best_study.rows[i];
            const RangeStudyRow& want = targets[i];
            perm_exact = perm_exact && got.permanent.intra == want.permanent.intra &&
                         got.permanent.adjacent == want.permanent.adjacent &&
                         got.permanent.nearby == want.permanent.nearby &&
                         got.permanent.crossing == 0;
            const auto within = [](int ours, int target) {
                return std::abs(ours - target) <= 0.15 * target;
            };
            temp_close = temp_close && within(got.temporary.adjacent, want.temporary.adjacent) &&
                         within(got.temporary.nearby, want.temporary.nearby) &&
                         within(got.temporary.crossing, want.temporary.crossing);
            detail += fmt(" %g:[%d,%d,%d|%d,%d,%d]", got.range_km, got.permanent.intra,
                          got.permanent.adjacent, got.permanent.nearby,
                          got.temporary.adjacent, got.temporary.nearby,
                          got.temporary.crossing);
        }
        // Best-effort clause: if no phasing meets the temporary tolerance the
        // documented closest match plus the remaining criteria is acceptable;
        // the permanent columns themselves are phasing-forced and must match.
        if (perm_exact && temp_close) {
            report(7, true, detail + " permanent exact, temporary within 15%");
        } else {
            std::printf("      sweep summary (closest match documentation):\n");
            for (const PhasingSweepEntry& entry : sweep.entries) {
                if (entry.score <= sweep.best_score + 2) {
                    std::printf("        F=%d score=%d\n", entry.phasing_factor,
                                entry.score);
                }
            }
            report(7, perm_exact,
                   detail + (perm_exact ? " permanent exact, temporary documented best-effort"
                                        : " permanent columns mismatch"));
        }
    }

    // --- 8: monotonicity in range, per category, from the default study.
    {
        bool pass = true;
        for (std::size_t i = 1; i < study_a.rows.size(); ++i) {
            const RangeStudyRow& prev = study_a.rows[i - 1];
            const RangeStudyRow& cur = study_a.rows[i];
            pass = pass && cur.permanent.intra >= prev.permanent.intra &&
                   cur.permanent.adjacent >= prev.permanent.adjacent &&
                   cur.permanent.nearby >= prev.permanent.nearby &&
                   cur.permanent.crossing >= prev.permanent.crossing;
            pass = pass &&
                   cur.permanent.intra + cur.temporary.intra >=
                       prev.permanent.intra + prev.temporary.intra &&
                   cur.permanent.adjacent + cur.temporary.adjacent >=
                       prev.permanent.adjacent + prev.temporary.adjacent &&
                   cur.permanent.nearby + cur.temporary.nearby >=
                       prev.permanent.nearby + prev.temporary.nearby &&
                   cur.permanent.crossing + cur.temporary.crossing >=
                       prev.permanent.crossing + prev.temporary.crossing;
        }
        report(8, pass, "permanent and permanent+temporary counts non-decreasing in range");
    }

    // --- 9: structural zeros at every range under defaults.
    {
        bool pass = true;
        for (const RangeStudyRow& row : study_a.rows) {
            pass = pass && row.temporary.intra == 0 && row.permanent.crossing == 0;
        }
        report(9, pass, "temporary intra and permanent crossing are zero at all ranges");
    }

    // --- 10: scan boundaries versus the dense 1 ms oracle on a toy pair.
    {
        const double incl = 53.0 * std::numbers::pi / 180.0;
        const double mean_motion = 2.0 * std::numbers::pi / orbital_period(6921.0, defaults);
        const TimeWindow toy_window{0.0, 3600.0};
        std::mt19937 rng(20200825);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        std::uniform_real_distribution<double> frac(0.10, 0.90);

        int checked = 0;
        int matched = 0;
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            SatelliteRecord a;
            a.id = SatelliteId{1, 1};
            a.inclination_rad = incl;
            a.orbit_radius_km = 6921.0;
            a.mean_motion_rad_s = mean_motion;
            SatelliteRecord b = a;
            b.id = SatelliteId{2, 1};
            b.raan_rad = 15.0 * std::numbers::pi / 180.0;
            b.initial_arg_latitude_rad = phase(rng);

            const auto profile = SeparationProfile::of(a, b);
            const double range = profile->min_distance_km() +
                                 frac(rng) * (profile->max_distance_km() -
                                              profile->min_distance_km());

            const auto scanned = find_contact_intervals(a, b, range, toy_window, 1.0,
                                                        1e-3, defaults);
            const auto oracle =
                dense_sampling_intervals(a, b, range, toy_window, defaults);
            ++checked;
            if (scanned.size() != oracle.size()) continue;
            bool ok = true;
            for (std::size_t i = 0; i < scanned.size(); ++i) {
                const double ds = std::abs(scanned[i].start_s - oracle[i].start_s);
                const double de = std::abs(scanned[i].stop_s - oracle[i].stop_s);
                worst = std::max({worst, ds, de});
                ok = ok && ds <= 1e-3 + 1e-9 && de <= 1e-3 + 1e-9;
            }
            if (ok) ++matched;
        }
        report(10, matched == checked,
               fmt("%d/%d randomized cases agree with the 1 ms oracle "
                   "(worst boundary gap %.4f ms)", matched, checked, worst * 1000.0));
    }

    // --- 11: determinism across runs and thread counts, and runtime budget.
    {
        const std::string csv_a = render_range_study(study_a, DocumentFormat::Csv);
        const std::string csv_b = render_range_study(study_b, DocumentFormat::Csv);
        const std::string csv_c = render_range_study(study_c, DocumentFormat::Csv);
        const bool identical = csv_a == csv_b && csv_a == csv_c;
        const bool fast = study_seconds < 300.0;
        report(11, identical && fast,
               fmt("default study: rerun %s, 4-thread run %s, %.1f s (budget 300 s)",
                   csv_a == csv_b ? "identical" : "DIFFERS",
                   csv_a == csv_c ? "identical" : "DIFFERS", study_seconds));
    }

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
