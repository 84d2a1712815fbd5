#ifndef LISL_CLI_HPP
#define LISL_CLI_HPP

// Command implementations behind the lislsim executable: configuration
// loading/merging and the subcommand bodies. Kept as a library so commands are
// testable without spawning processes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lisl/reporting.hpp"

namespace lisl {

// File or directory I/O failure; maps to exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

struct RunConfig {
    ConstellationConfig constellation;
    std::vector<double> ranges_km = {659.0, 1319.0, 1500.0, 1700.0, 5016.0};
    TimeWindow window{0.0, 86400.0};
    double scan_step_s = 1.0;
    double refine_tol_s = 1e-3;
    std::string reference_satellite = "x10101";
    std::string other_satellite;  // contacts only
    std::string format = "csv";
    std::string out_path;  // empty: stdout, no sidecar
    int threads = 0;       // 0: pick hardware concurrency
    bool phasing_sweep = false;
    // Required for plane counts other than 24 (or 1); the built-in default map
    // only covers the standard 24-plane shell.
    std::optional<PlaneRelationMap> relation_map;

    void validate() const;
    SatelliteId reference_id() const;
    AnalysisParams analysis_params() const;
};

// Parse a JSON document mirroring RunConfig field names; absent fields keep
// their defaults, unknown fields raise ConfigError.
RunConfig load_run_config(const std::string& json_text);
RunConfig load_run_config_file(const std::string& path);

// Effective configuration echo, written as the sidecar next to file outputs.
std::string run_config_to_json(const RunConfig& config);

// Exit codes: 0 success. The callers map ConfigError/std::invalid_argument/
// std::domain_error to 2 and IoError to 3.
int cmd_constellation(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_range_study(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_contacts(const RunConfig& config, std::ostream& out, std::ostream& err);

enum class ScalarKind { Period, MaxRange };
int cmd_scalar(const RunConfig& config, ScalarKind kind, std::ostream& out, std::ostream& err);

// Published target counts for the default five-range study; the sweep scores
// candidate phasing factors against these.
const std::vector<RangeStudyRow>& reference_study_targets();

}  // namespace lisl

#endif  // LISL_CLI_HPP
