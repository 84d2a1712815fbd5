#ifndef LISL_REPORTING_HPP
#define LISL_REPORTING_HPP

// Document rendering: range studies, contact tables, constellation export,
// and counts-vs-range plot data, as CSV or JSON. All output is deterministic
// and locale-independent (fixed decimal point, fixed column order, LF line
// endings).

#include <string>
#include <string_view>
#include <vector>

#include "lisl/link_analysis.hpp"

namespace lisl {

enum class DocumentFormat { Csv, Json };

// "csv" or "json"; anything else throws std::invalid_argument.
DocumentFormat parse_format(std::string_view token);

// UTC epoch parsed from "YYYY-MM-DDTHH:MM:SS[.mmm][Z]". Simulation times are
// seconds relative to this instant.
struct Epoch {
    long long ms_since_unix_epoch = 0;

    static Epoch parse(std::string_view iso8601);
};

// Time-of-day stamp "HH:MM:SS.mmm", rolling past midnight modulo 24 h.
std::string format_wall_clock(const Epoch& epoch, double t_s);

// Seconds of day from an "HH:MM:SS.mmm" stamp.
double parse_wall_clock(std::string_view stamp);

// Full "YYYY-MM-DDTHH:MM:SS.mmmZ" timestamp (removes the day ambiguity of the
// wall-clock form).
std::string format_iso8601(const Epoch& epoch, double t_s);

// CSV columns: range_km,perm_intra,perm_adjacent,perm_nearby,perm_total,
// temp_adjacent,temp_nearby,temp_crossing,temp_total,temp_intra,perm_crossing.
// JSON mirrors the same fields. Rows sorted by range ascending.
std::string render_range_study(const RangeStudyReport& report, DocumentFormat format);

// CSV columns: instance,start,stop,duration_s,start_iso,stop_iso with
// wall-clock stamps and durations to 3 decimals, instances numbered from 1 in
// chronological order. JSON adds the pair, relation, and permanence.
std::string render_contact_table(const LinkRecord& record, const Epoch& epoch,
                                 DocumentFormat format);

// Long-format plot data: range_km,category,permanence,count.
std::string counts_vs_range_series(const std::vector<RangeStudyReport>& reports);

// CSV columns: id,plane,slot,raan_deg,inclination_deg,initial_arg_latitude_deg,
// orbit_radius_km, rows sorted by (plane, slot).
std::string render_constellation_csv(const std::vector<SatelliteRecord>& records);

// Match-score summary of a phasing sweep: phasing_factor,score rows plus the
// winning factor.
std::string render_phasing_sweep(const PhasingSweepResult& result, DocumentFormat format);

}  // namespace lisl

#endif  // LISL_REPORTING_HPP
