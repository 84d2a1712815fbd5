// lislsim: deterministic LEO constellation and laser inter-satellite link
// contact analyzer. Subcommands: constellation, range-study, contacts, period,
// max-range. Data goes to stdout or --out; progress goes to stderr.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lisl/cli.hpp"

namespace {

struct Flags {
    std::string config_path;
    std::vector<double> ranges;
    double window_hours = 0.0;
    double step_s = 0.0;
    double refine_tol_s = 0.0;
    std::string ref_id;
    std::string other_id;
    int phasing = -1;
    bool phasing_sweep = false;
    double earth_radius_km = 0.0;
    double altitude_km = 0.0;
    double inclination_deg = 0.0;
    int planes = 0;
    int sats = 0;
    int threads = -1;
    std::string format;
    std::string out_path;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--ranges", flags.ranges, "LISL ranges in km (comma separated)")
        ->delimiter(',');
    cmd->add_option("--window-hours", flags.window_hours, "simulation window length");
    cmd->add_option("--step", flags.step_s, "scan step in seconds");
    cmd->add_option("--refine-tol", flags.refine_tol_s, "bisection tolerance in seconds");
    cmd->add_option("--ref", flags.ref_id, "reference satellite id (x1PPSS)");
    cmd->add_option("--other", flags.other_id, "other satellite id (contacts)");
    cmd->add_option("--phasing", flags.phasing, "Walker phasing factor F");
    cmd->add_flag("--phasing-sweep", flags.phasing_sweep,
                  "score every F against the built-in study targets");
    cmd->add_option("--earth-radius", flags.earth_radius_km, "Earth radius in km");
    cmd->add_option("--altitude", flags.altitude_km, "orbit altitude in km");
    cmd->add_option("--inclination", flags.inclination_deg, "inclination in degrees");
    cmd->add_option("--planes", flags.planes, "number of orbital planes");
    cmd->add_option("--sats", flags.sats, "satellites per plane");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
    cmd->add_option("--format", flags.format, "output format: csv or json");
    cmd->add_option("--out", flags.out_path, "output path (default stdout)");
}

// Flags override config-file values, which override the built-in defaults.
lisl::RunConfig effective_config(const CLI::App* cmd, const Flags& flags) {
    lisl::RunConfig config;
    if (!flags.config_path.empty()) {
        config = lisl::load_run_config_file(flags.config_path);
    }
    if (cmd->count("--ranges") > 0) config.ranges_km = flags.ranges;
    if (cmd->count("--window-hours") > 0) {
        config.window.stop_s = config.window.start_s + flags.window_hours * 3600.0;
    }
    if (cmd->count("--step") > 0) config.scan_step_s = flags.step_s;
    if (cmd->count("--refine-tol") > 0) config.refine_tol_s = flags.refine_tol_s;
    if (cmd->count("--ref") > 0) config.reference_satellite = flags.ref_id;
    if (cmd->count("--other") > 0) config.other_satellite = flags.other_id;
    if (cmd->count("--phasing") > 0) config.constellation.phasing_factor = flags.phasing;
    if (cmd->count("--phasing-sweep") > 0) config.phasing_sweep = true;
    if (cmd->count("--earth-radius") > 0) {
        config.constellation.constants.earth_radius_km = flags.earth_radius_km;
    }
    if (cmd->count("--altitude") > 0) config.constellation.altitude_km = flags.altitude_km;
    if (cmd->count("--inclination") > 0) {
        config.constellation.inclination_deg = flags.inclination_deg;
    }
    if (cmd->count("--planes") > 0) config.constellation.num_planes = flags.planes;
    if (cmd->count("--sats") > 0) config.constellation.sats_per_plane = flags.sats;
    if (cmd->count("--threads") > 0) config.threads = flags.threads;
    if (cmd->count("--format") > 0) config.format = flags.format;
    if (cmd->count("--out") > 0) config.out_path = flags.out_path;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO constellation laser inter-satellite link contact analyzer"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* constellation = app.add_subcommand("constellation", "export the satellite list");
    CLI::App* range_study = app.add_subcommand("range-study", "count links per LISL range");
    CLI::App* contacts = app.add_subcommand("contacts", "contact intervals for one pair");
    CLI::App* period = app.add_subcommand("period", "print the orbital period in seconds");
    CLI::App* max_range = app.add_subcommand("max-range", "print the maximum LISL range in km");
    for (CLI::App* cmd : {constellation, range_study, contacts, period, max_range}) {
        add_common_flags(cmd, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const CLI::App* cmd = app.get_subcommands().front();
        const lisl::RunConfig config = effective_config(cmd, flags);
        if (cmd == constellation) {
            return lisl::cmd_constellation(config, std::cout, std::cerr);
        }
        if (cmd == range_study) {
            return lisl::cmd_range_study(config, std::cout, std::cerr);
        }
        if (cmd == contacts) {
            return lisl::cmd_contacts(config, std::cout, std::cerr);
        }
        if (cmd == period) {
            return lisl::cmd_scalar(config, lisl::ScalarKind::Period, std::cout, std::cerr);
        }
        return lisl::cmd_scalar(config, lisl::ScalarKind::MaxRange, std::cout, std::cerr);
    } catch (const lisl::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const lisl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
