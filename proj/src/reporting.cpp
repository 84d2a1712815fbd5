#include "lisl/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace lisl {

namespace {

constexpr long long kMsPerDay = 86'400'000LL;

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar
// (Howard Hinnant's civil-days algorithm).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468LL;
    const long long era = (z >= 0 ? z : z - 146096LL) / 146097LL;
    const unsigned doe = static_cast<unsigned>(z - era * 146097LL);
    const unsigned yoe = (doe - doe / 1460u + doe / 36524u - doe / 146096u) / 365u;
    const long long yy = static_cast<long long>(yoe) + era * 400LL;
    const unsigned doy = doe - (365u * yoe + yoe / 4u - yoe / 100u);
    const unsigned mp = (5u * doy + 2u) / 153u;
    d = static_cast<int>(doy - (153u * mp + 2u) / 5u + 1u);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_fixed_digits(std::string_view text, std::size_t pos, std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = pos + i < text.size() ? text[pos + i] : '\0';
        if (c < '0' || c > '9') return -1;
        value = value * 10 + (c - '0');
    }
    return value;
}

long long stamp_ms(const Epoch& epoch, double t_s) {
    return epoch.ms_since_unix_epoch + std::llround(t_s * 1000.0);
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

}  // namespace

DocumentFormat parse_format(std::string_view token) {
    if (token == "csv") return DocumentFormat::Csv;
    if (token == "json") return DocumentFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(token) +
                                "' (expected csv or json)");
}

Epoch Epoch::parse(std::string_view text) {
    // YYYY-MM-DDTHH:MM:SS[.mmm][Z]
    const auto fail = [&](const char* why) -> ConfigError {
        return ConfigError("epoch", std::string(why) + ": '" + std::string(text) + "'");
    };
    if (text.size() < 19) throw fail("timestamp too short");
    const int year = parse_fixed_digits(text, 0, 4);
    const int month = parse_fixed_digits(text, 5, 2);
    const int day = parse_fixed_digits(text, 8, 2);
    const int hour = parse_fixed_digits(text, 11, 2);
    const int minute = parse_fixed_digits(text, 14, 2);
    const int second = parse_fixed_digits(text, 17, 2);
    if (year < 0 || month < 0 || day < 0 || hour < 0 || minute < 0 || second < 0 ||
        text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':') {
        throw fail("expected YYYY-MM-DDTHH:MM:SS[.mmm][Z]");
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second > 59) {
        throw fail("field out of range");
    }
    std::size_t pos = 19;
    int millis = 0;
    if (pos < text.size() && text[pos] == '.') {
        millis = parse_fixed_digits(text, pos + 1, 3);
        if (millis < 0) throw fail("expected three fractional digits");
        pos += 4;
    }
    if (pos < text.size() && text[pos] == 'Z') ++pos;
    if (pos != text.size()) throw fail("trailing characters");

    Epoch epoch;
    epoch.ms_since_unix_epoch = days_from_civil(year, month, day) * kMsPerDay +
                                hour * 3'600'000LL + minute * 60'000LL +
                                second * 1'000LL + millis;
    return epoch;
}

std::string format_wall_clock(const Epoch& epoch, double t_s) {
    const long long total = stamp_ms(epoch, t_s);
    const long long tod = total - floor_div(total, kMsPerDay) * kMsPerDay;
    const int ms = static_cast<int>(tod % 1000);
    const int s = static_cast<int>((tod / 1000) % 60);
    const int m = static_cast<int>((tod / 60'000) % 60);
    const int h = static_cast<int>(tod / 3'600'000);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d.%03d", h, m, s, ms);
    return buf;
}

double parse_wall_clock(std::string_view stamp) {
    const int h = parse_fixed_digits(stamp, 0, 2);
    const int m = parse_fixed_digits(stamp, 3, 2);
    const int s = parse_fixed_digits(stamp, 6, 2);
    if (stamp.size() != 12 || h < 0 || m < 0 || s < 0 || stamp[2] != ':' ||
        stamp[5] != ':' || stamp[8] != '.' || h > 23 || m > 59 || s > 59) {
        throw std::invalid_argument("expected HH:MM:SS.mmm: '" + std::string(stamp) + "'");
    }
    const int ms = parse_fixed_digits(stamp, 9, 3);
    if (ms < 0) {
        throw std::invalid_argument("expected HH:MM:SS.mmm: '" + std::string(stamp) + "'");
    }
    return h * 3600.0 + m * 60.0 + s + ms / 1000.0;
}

std::string format_iso8601(const Epoch& epoch, double t_s) {
    const long long total = stamp_ms(epoch, t_s);
    const long long days = floor_div(total, kMsPerDay);
    const long long tod = total - days * kMsPerDay;
    int y = 0, mo = 0, d = 0;
    civil_from_days(days, y, mo, d);
    const int ms = static_cast<int>(tod % 1000);
    const int s = static_cast<int>((tod / 1000) % 60);
    const int mi = static_cast<int>((tod / 60'000) % 60);
    const int h = static_cast<int>(tod / 3'600'000);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", y, mo, d, h,
                  mi, s, ms);
    return buf;
}

std::string render_range_study(const RangeStudyReport& report, DocumentFormat format) {
    std::vector<RangeStudyRow> rows = report.rows;
    std::sort(rows.begin(), rows.end(),
              [](const RangeStudyRow& a, const RangeStudyRow& b) {
                  return a.range_km < b.range_km;
              });

    if (format == DocumentFormat::Csv) {
        std::string out =
            "range_km,perm_intra,perm_adjacent,perm_nearby,perm_total,"
            "temp_adjacent,temp_nearby,temp_crossing,temp_total,temp_intra,perm_crossing\n";
        for (const RangeStudyRow& row : rows) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%d,%d,%d,%d,%d,%d,%d\n",
                          format_number(row.range_km).c_str(), row.permanent.intra,
                          row.permanent.adjacent, row.permanent.nearby,
                          row.permanent.total(), row.temporary.adjacent,
                          row.temporary.nearby, row.temporary.crossing,
                          row.temporary.total(), row.temporary.intra,
                          row.permanent.crossing);
            out += buf;
        }
        return out;
    }

    nlohmann::json doc;
    doc["reference"] = format_id(report.reference);
    doc["window"] = {{"start_s", report.window.start_s}, {"stop_s", report.window.stop_s}};
    doc["rows"] = nlohmann::json::array();
    for (const RangeStudyRow& row : rows) {
        doc["rows"].push_back({
            {"range_km", row.range_km},
            {"perm_intra", row.permanent.intra},
            {"perm_adjacent", row.permanent.adjacent},
            {"perm_nearby", row.permanent.nearby},
            {"perm_total", row.permanent.total()},
            {"temp_adjacent", row.temporary.adjacent},
            {"temp_nearby", row.temporary.nearby},
            {"temp_crossing", row.temporary.crossing},
            {"temp_total", row.temporary.total()},
            {"temp_intra", row.temporary.intra},
            {"perm_crossing", row.permanent.crossing},
        });
    }
    return doc.dump(2) + "\n";
}

std::string render_contact_table(const LinkRecord& record, const Epoch& epoch,
                                 DocumentFormat format) {
    if (format == DocumentFormat::Csv) {
        std::string out = "instance,start,stop,duration_s,start_iso,stop_iso\n";
        int instance = 1;
        for (const ContactInterval& interval : record.intervals) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%d,%s,%s,%.3f,%s,%s\n", instance,
                          format_wall_clock(epoch, interval.start_s).c_str(),
                          format_wall_clock(epoch, interval.stop_s).c_str(),
                          interval.duration_s,
                          format_iso8601(epoch, interval.start_s).c_str(),
                          format_iso8601(epoch, interval.stop_s).c_str());
            out += buf;
            ++instance;
        }
        return out;
    }

    nlohmann::json doc;
    doc["pair"] = {{"a", format_id(record.id_a)}, {"b", format_id(record.id_b)}};
    doc["relation"] = to_string(record.relation);
    doc["range_km"] = record.range_km;
    doc["permanence"] = to_string(record.permanence);
    doc["instances"] = nlohmann::json::array();
    int instance = 1;
    for (const ContactInterval& interval : record.intervals) {
        doc["instances"].push_back({
            {"instance", instance},
            {"start", format_wall_clock(epoch, interval.start_s)},
            {"stop", format_wall_clock(epoch, interval.stop_s)},
            {"duration_s", interval.duration_s},
            {"start_iso", format_iso8601(epoch, interval.start_s)},
            {"stop_iso", format_iso8601(epoch, interval.stop_s)},
            {"start_s", interval.start_s},
            {"stop_s", interval.stop_s},
        });
        ++instance;
    }
    return doc.dump(2) + "\n";
}

std::string counts_vs_range_series(const std::vector<RangeStudyReport>& reports) {
    if (reports.empty()) {
        throw std::invalid_argument("counts_vs_range_series: at least one report required");
    }
    std::string out = "range_km,category,permanence,count\n";
    const auto emit = [&out](double range, const char* category, const char* permanence,
                             int count) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%d\n", format_number(range).c_str(),
                      category, permanence, count);
        out += buf;
    };
    for (const RangeStudyReport& report : reports) {
        std::vector<RangeStudyRow> rows = report.rows;
        std::sort(rows.begin(), rows.end(),
                  [](const RangeStudyRow& a, const RangeStudyRow& b) {
                      return a.range_km < b.range_km;
                  });
        for (const RangeStudyRow& row : rows) {
            emit(row.range_km, "intra", "permanent", row.permanent.intra);
            emit(row.range_km, "intra", "temporary", row.temporary.intra);
            emit(row.range_km, "adjacent", "permanent", row.permanent.adjacent);
            emit(row.range_km, "adjacent", "temporary", row.temporary.adjacent);
            emit(row.range_km, "nearby", "permanent", row.permanent.nearby);
            emit(row.range_km, "nearby", "temporary", row.temporary.nearby);
            emit(row.range_km, "crossing", "permanent", row.permanent.crossing);
            emit(row.range_km, "crossing", "temporary", row.temporary.crossing);
        }
    }
    return out;
}

std::string render_constellation_csv(const std::vector<SatelliteRecord>& records) {
    std::vector<const SatelliteRecord*> sorted;
    sorted.reserve(records.size());
    for (const SatelliteRecord& rec : records) sorted.push_back(&rec);
    std::sort(sorted.begin(), sorted.end(),
              [](const SatelliteRecord* a, const SatelliteRecord* b) {
                  return a->id < b->id;
              });

    constexpr double kRadToDeg = 180.0 / 3.141592653589793238462643383279502884;
    std::string out =
        "id,plane,slot,raan_deg,inclination_deg,initial_arg_latitude_deg,orbit_radius_km\n";
    for (const SatelliteRecord* rec : sorted) {
        char buf[192];
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.6f,%.3f\n",
                      format_id(rec->id).c_str(), rec->id.plane, rec->id.slot,
                      rec->raan_rad * kRadToDeg, rec->inclination_rad * kRadToDeg,
                      rec->initial_arg_latitude_rad * kRadToDeg, rec->orbit_radius_km);
        out += buf;
    }
    return out;
}

std::string render_phasing_sweep(const PhasingSweepResult& result, DocumentFormat format) {
    if (format == DocumentFormat::Csv) {
        std::string out = "phasing_factor,score,best\n";
        for (const PhasingSweepEntry& entry : result.entries) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%d,%d,%d\n", entry.phasing_factor,
                          entry.score, entry.phasing_factor == result.best_phasing ? 1 : 0);
            out += buf;
        }
        return out;
    }
    nlohmann::json doc;
    doc["best_phasing"] = result.best_phasing;
    doc["best_score"] = result.best_score;
    doc["entries"] = nlohmann::json::array();
    for (const PhasingSweepEntry& entry : result.entries) {
        doc["entries"].push_back(
            {{"phasing_factor", entry.phasing_factor}, {"score", entry.score}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace lisl
