#include "lisl/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace lisl {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& scope) {
    for (const auto& item : object.items()) {
        bool found = false;
        for (const char* key : known) {
            if (item.key() == key) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError(scope.empty() ? item.key() : scope + "." + item.key(),
                              "unknown configuration field");
        }
    }
}

void load_constants(const json& node, PhysicalConstants& constants) {
    reject_unknown_keys(node,
                        {"gravitational_constant", "earth_mass_kg", "earth_radius_km",
                         "atmosphere_height_km"},
                        "constellation.constants");
    if (node.contains("gravitational_constant")) {
        constants.gravitational_constant = node["gravitational_constant"].get<double>();
    }
    if (node.contains("earth_mass_kg")) {
        constants.earth_mass_kg = node["earth_mass_kg"].get<double>();
    }
    if (node.contains("earth_radius_km")) {
        constants.earth_radius_km = node["earth_radius_km"].get<double>();
    }
    if (node.contains("atmosphere_height_km")) {
        constants.atmosphere_height_km = node["atmosphere_height_km"].get<double>();
    }
}

void load_constellation(const json& node, ConstellationConfig& config) {
    reject_unknown_keys(node,
                        {"inclination_deg", "altitude_km", "num_planes", "sats_per_plane",
                         "phasing_factor", "raan_spread_deg", "epoch", "constants"},
                        "constellation");
    if (node.contains("inclination_deg")) {
        config.inclination_deg = node["inclination_deg"].get<double>();
    }
    if (node.contains("altitude_km")) config.altitude_km = node["altitude_km"].get<double>();
    if (node.contains("num_planes")) config.num_planes = node["num_planes"].get<int>();
    if (node.contains("sats_per_plane")) {
        config.sats_per_plane = node["sats_per_plane"].get<int>();
    }
    if (node.contains("phasing_factor")) {
        config.phasing_factor = node["phasing_factor"].get<int>();
    }
    if (node.contains("raan_spread_deg")) {
        config.raan_spread_deg = node["raan_spread_deg"].get<double>();
    }
    if (node.contains("epoch")) config.epoch = node["epoch"].get<std::string>();
    if (node.contains("constants")) load_constants(node["constants"], config.constants);
}

void load_window(const json& node, TimeWindow& window) {
    reject_unknown_keys(node, {"start_s", "stop_s", "duration_s"}, "window");
    if (node.contains("stop_s") && node.contains("duration_s")) {
        throw ConfigError("window", "give stop_s or duration_s, not both");
    }
    if (node.contains("start_s")) window.start_s = node["start_s"].get<double>();
    if (node.contains("stop_s")) {
        window.stop_s = node["stop_s"].get<double>();
    } else if (node.contains("duration_s")) {
        window.stop_s = window.start_s + node["duration_s"].get<double>();
    }
}

std::vector<int> load_offsets(const json& node) {
    std::vector<int> out;
    for (const auto& value : node) out.push_back(value.get<int>());
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw IoError("write to '" + path + "' failed");
}

// Emit the document to the configured destination; file outputs get a sidecar
// with the effective configuration for reproducibility.
void deliver(const RunConfig& config, const std::string& document, std::ostream& out) {
    if (config.out_path.empty()) {
        out << document;
        return;
    }
    write_text_file(config.out_path, document);
    write_text_file(config.out_path + ".config.json", run_config_to_json(config));
}

std::string format_extension(const std::string& format) {
    return format == "json" ? "json" : "csv";
}

}  // namespace

void RunConfig::validate() const {
    constellation.validate();
    Epoch::parse(constellation.epoch);
    if (ranges_km.empty()) {
        throw ConfigError("ranges_km", "at least one range is required");
    }
    for (double r : ranges_km) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw ConfigError("ranges_km", "ranges must be positive and finite");
        }
    }
    if (!(window.start_s < window.stop_s)) {
        throw ConfigError("window", "start must precede stop");
    }
    if (!(scan_step_s > 0.0)) {
        throw ConfigError("scan_step_s", "must be positive");
    }
    if (!(refine_tol_s > 0.0) || refine_tol_s > scan_step_s) {
        throw ConfigError("refine_tol_s", "must lie in (0, scan_step_s]");
    }
    if (threads < 0) {
        throw ConfigError("threads", "must be non-negative (0 = auto)");
    }
    try {
        parse_id(reference_satellite, constellation.num_planes,
                 constellation.sats_per_plane);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("reference_satellite", e.what());
    }
    if (!other_satellite.empty()) {
        try {
            parse_id(other_satellite, constellation.num_planes,
                     constellation.sats_per_plane);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("other_satellite", e.what());
        }
    }
    parse_format(format);
    if (relation_map) relation_map->validate(constellation.num_planes);
}

SatelliteId RunConfig::reference_id() const {
    return parse_id(reference_satellite, constellation.num_planes,
                    constellation.sats_per_plane);
}

AnalysisParams RunConfig::analysis_params() const {
    AnalysisParams params;
    params.scan_step_s = scan_step_s;
    params.refine_tol_s = refine_tol_s;
    params.num_planes = constellation.num_planes;
    params.constants = constellation.constants;
    params.threads = threads > 0 ? threads
                                 : std::max(1u, std::thread::hardware_concurrency());
    if (relation_map) {
        params.relation_map = *relation_map;
    } else {
        const auto fallback = PlaneRelationMap::default_for(constellation.num_planes);
        if (!fallback) {
            throw ConfigError("plane_relation_map",
                              "no default relation map for num_planes=" +
                                  std::to_string(constellation.num_planes) +
                                  "; supply one in the config file");
        }
        params.relation_map = *fallback;
    }
    return params;
}

RunConfig load_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }

    RunConfig config;
    try {
        reject_unknown_keys(doc,
                            {"constellation", "ranges_km", "window", "scan_step_s",
                             "refine_tol_s", "reference_satellite", "other_satellite",
                             "format", "out", "threads", "phasing_sweep",
                             "plane_relation_map"},
                            "");
        if (doc.contains("constellation")) {
            load_constellation(doc["constellation"], config.constellation);
        }
        if (doc.contains("ranges_km")) {
            config.ranges_km = doc["ranges_km"].get<std::vector<double>>();
        }
        if (doc.contains("window")) load_window(doc["window"], config.window);
        if (doc.contains("scan_step_s")) config.scan_step_s = doc["scan_step_s"].get<double>();
        if (doc.contains("refine_tol_s")) {
            config.refine_tol_s = doc["refine_tol_s"].get<double>();
        }
        if (doc.contains("reference_satellite")) {
            config.reference_satellite = doc["reference_satellite"].get<std::string>();
        }
        if (doc.contains("other_satellite")) {
            config.other_satellite = doc["other_satellite"].get<std::string>();
        }
        if (doc.contains("format")) config.format = doc["format"].get<std::string>();
        if (doc.contains("out")) config.out_path = doc["out"].get<std::string>();
        if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
        if (doc.contains("phasing_sweep")) {
            config.phasing_sweep = doc["phasing_sweep"].get<bool>();
        }
        if (doc.contains("plane_relation_map")) {
            const json& node = doc["plane_relation_map"];
            reject_unknown_keys(node, {"adjacent", "nearby", "crossing"},
                                "plane_relation_map");
            PlaneRelationMap map;
            if (node.contains("adjacent")) map.adjacent_offsets = load_offsets(node["adjacent"]);
            if (node.contains("nearby")) map.nearby_offsets = load_offsets(node["nearby"]);
            if (node.contains("crossing")) map.crossing_offsets = load_offsets(node["crossing"]);
            config.relation_map = map;
        }
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("bad field type: ") + e.what());
    }
    return config;
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return load_run_config(text.str());
}

std::string run_config_to_json(const RunConfig& config) {
    json doc;
    doc["constellation"] = {
        {"inclination_deg", config.constellation.inclination_deg},
        {"altitude_km", config.constellation.altitude_km},
        {"num_planes", config.constellation.num_planes},
        {"sats_per_plane", config.constellation.sats_per_plane},
        {"phasing_factor", config.constellation.phasing_factor},
        {"raan_spread_deg", config.constellation.raan_spread_deg},
        {"epoch", config.constellation.epoch},
        {"constants",
         {{"gravitational_constant", config.constellation.constants.gravitational_constant},
          {"earth_mass_kg", config.constellation.constants.earth_mass_kg},
          {"earth_radius_km", config.constellation.constants.earth_radius_km},
          {"atmosphere_height_km", config.constellation.constants.atmosphere_height_km}}},
    };
    doc["ranges_km"] = config.ranges_km;
    doc["window"] = {{"start_s", config.window.start_s}, {"stop_s", config.window.stop_s}};
    doc["scan_step_s"] = config.scan_step_s;
    doc["refine_tol_s"] = config.refine_tol_s;
    doc["reference_satellite"] = config.reference_satellite;
    if (!config.other_satellite.empty()) doc["other_satellite"] = config.other_satellite;
    doc["format"] = config.format;
    if (!config.out_path.empty()) doc["out"] = config.out_path;
    doc["threads"] = config.threads;
    doc["phasing_sweep"] = config.phasing_sweep;
    if (config.relation_map) {
        doc["plane_relation_map"] = {{"adjacent", config.relation_map->adjacent_offsets},
                                     {"nearby", config.relation_map->nearby_offsets},
                                     {"crossing", config.relation_map->crossing_offsets}};
    }
    return doc.dump(2) + "\n";
}

const std::vector<RangeStudyRow>& reference_study_targets() {
    static const std::vector<RangeStudyRow> targets = [] {
        const auto row = [](double range, int pi, int pa, int pn, int ta, int tn, int tc) {
            RangeStudyRow r;
            r.range_km = range;
            r.permanent.intra = pi;
            r.permanent.adjacent = pa;
            r.permanent.nearby = pn;
            r.temporary.adjacent = ta;
            r.temporary.nearby = tn;
            r.temporary.crossing = tc;
            return r;
        };
        return std::vector<RangeStudyRow>{
            row(659.0, 2, 0, 0, 4, 21, 37),
            row(1319.0, 4, 0, 0, 8, 41, 67),
            row(1500.0, 4, 2, 0, 8, 43, 85),
            row(1700.0, 4, 6, 0, 4, 53, 87),
            row(5016.0, 14, 30, 44, 2, 113, 281),
        };
    }();
    return targets;
}

int cmd_constellation(const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    if (config.format != "csv") {
        throw ConfigError("format", "constellation export is CSV only");
    }
    const std::vector<SatelliteRecord> records = build_constellation(config.constellation);
    err << "constellation: " << records.size() << " satellites\n";
    deliver(config, render_constellation_csv(records), out);
    return 0;
}

int cmd_range_study(const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    const AnalysisParams params = config.analysis_params();
    const DocumentFormat format = parse_format(config.format);
    const SatelliteId reference = config.reference_id();

    if (config.phasing_sweep) {
        err << "phasing sweep: F in [0, " << config.constellation.sats_per_plane - 1
            << "]\n";
        const PhasingSweepResult sweep =
            phasing_sweep(config.constellation, reference, config.ranges_km,
                          config.window, params, reference_study_targets());
        err << "phasing sweep: best F=" << sweep.best_phasing
            << " score=" << sweep.best_score << "\n";
        deliver(config, render_phasing_sweep(sweep, format), out);

        if (!config.out_path.empty()) {
            ConstellationConfig best = config.constellation;
            best.phasing_factor = sweep.best_phasing;
            const std::vector<SatelliteRecord> records = build_constellation(best);
            const RangeStudyReport report = range_study(records, reference,
                                                        config.ranges_km, config.window,
                                                        params);
            const std::string best_path = config.out_path + ".best." +
                                          format_extension(config.format);
            write_text_file(best_path, render_range_study(report, format));
            err << "phasing sweep: best-F study written to " << best_path << "\n";
        }
        return 0;
    }

    const std::vector<SatelliteRecord> records = build_constellation(config.constellation);
    err << "range study: " << format_id(reference) << " vs " << records.size() - 1
        << " satellites at " << config.ranges_km.size() << " ranges\n";
    const RangeStudyReport report =
        range_study(records, reference, config.ranges_km, config.window, params);
    deliver(config, render_range_study(report, format), out);
    return 0;
}

int cmd_contacts(const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    if (config.other_satellite.empty()) {
        throw ConfigError("other_satellite", "contacts needs --other");
    }
    if (config.ranges_km.size() != 1) {
        throw ConfigError("ranges_km", "contacts needs exactly one range (pass --ranges R)");
    }
    const AnalysisParams params = config.analysis_params();
    const SatelliteId reference = config.reference_id();
    const SatelliteId other = parse_id(config.other_satellite,
                                       config.constellation.num_planes,
                                       config.constellation.sats_per_plane);
    const std::vector<SatelliteRecord> records = build_constellation(config.constellation);
    const LinkRecord link = contact_table(records, reference, other,
                                          config.ranges_km.front(), config.window, params);
    err << "contacts: " << format_id(link.id_a) << "-" << format_id(link.id_b) << " at "
        << config.ranges_km.front() << " km: " << link.intervals.size() << " instance(s), "
        << to_string(link.permanence) << "\n";
    const Epoch epoch = Epoch::parse(config.constellation.epoch);
    deliver(config, render_contact_table(link, epoch, parse_format(config.format)), out);
    return 0;
}

int cmd_scalar(const RunConfig& config, ScalarKind kind, std::ostream& out, std::ostream&) {
    config.validate();
    const ConstellationConfig& c = config.constellation;
    double value = 0.0;
    if (kind == ScalarKind::Period) {
        value = orbital_period(c.orbit_radius_km(), c.constants);
    } else {
        value = max_lisl_range(c.altitude_km, c.constants.atmosphere_height_km,
                               c.constants.earth_radius_km);
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f\n", value);
    out << buf;
    return 0;
}

}  // namespace lisl
