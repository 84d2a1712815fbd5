#ifndef LISL_ORBITAL_CORE_HPP
#define LISL_ORBITAL_CORE_HPP

// Walker-delta constellation construction and circular two-body propagation.
//
// Conventions:
// - Earth-centered inertial frame, kilometers, seconds since the scenario epoch.
// - Angles are radians internally; degrees appear only in configuration and reports.
// - Satellites move on circular orbits of equal radius; a satellite's in-plane
//   position is its argument of latitude u = u0 + n*t measured from the
//   ascending node.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lisl {

// Invalid configuration value; carries the offending field name so the CLI can
// report it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct PhysicalConstants {
    double gravitational_constant = 6.673e-11;  // m^3/(kg s^2)
    double earth_mass_kg = 5.98e24;
    double earth_radius_km = 6371.0;
    double atmosphere_height_km = 80.0;

    // All fields must be strictly positive.
    void validate() const;
};

struct ConstellationConfig {
    double inclination_deg = 53.0;
    double altitude_km = 550.0;
    int num_planes = 24;      // P
    int sats_per_plane = 66;  // S
    // Walker phasing factor F: satellites in consecutive planes are offset by
    // F * 360 / (P*S) degrees of argument of latitude.
    int phasing_factor = 0;
    double raan_spread_deg = 360.0;
    std::string epoch = "2020-08-25T16:00:00.000Z";  // metadata; t=0 of the simulation clock
    PhysicalConstants constants;

    void validate() const;
    double orbit_radius_km() const { return constants.earth_radius_km + altitude_km; }
};

struct SatelliteId {
    int plane = 1;  // 1..P
    int slot = 1;   // 1..S

    friend bool operator==(const SatelliteId&, const SatelliteId&) = default;
    friend auto operator<=>(const SatelliteId&, const SatelliteId&) = default;
};

// Canonical string form "x1PPSS" with two-digit plane and slot (P, S <= 99),
// e.g. (1,1) -> "x10101". The plane-only form is "x1PP".
std::string format_id(const SatelliteId& id);
std::string format_plane_id(int plane);

// Inverse of format_id. Throws std::invalid_argument on malformed input or
// when plane/slot fall outside [1, num_planes] x [1, sats_per_plane].
SatelliteId parse_id(std::string_view text, int num_planes = 99, int sats_per_plane = 99);

struct SatelliteRecord {
    SatelliteId id;
    double raan_rad = 0.0;
    double inclination_rad = 0.0;
    double initial_arg_latitude_rad = 0.0;
    double orbit_radius_km = 0.0;
    double mean_motion_rad_s = 0.0;
};

struct EciPosition {
    double x_km = 0.0;
    double y_km = 0.0;
    double z_km = 0.0;
    double t_s = 0.0;
};

// Circular orbital period 2*pi*sqrt(R^3 / (G*M_E)) in seconds, R in kilometers.
// Throws std::domain_error for a non-positive radius.
double orbital_period(double orbit_radius_km, const PhysicalConstants& constants);

// All P*S satellites of the configured Walker delta shell, ordered by
// (plane, slot). Plane p sits at RAAN (p-1)*raan_spread/P; slot s starts at
// argument of latitude (s-1)*360/S + (p-1)*F*360/(P*S).
std::vector<SatelliteRecord> build_constellation(const ConstellationConfig& config);

// Inertial basis of one orbit, scaled by the orbit radius:
// position(t) = node_axis*cos(u) + inplane_axis*sin(u), u = u0 + n*t.
// Precompute once per satellite when propagating many epochs.
struct OrbitFrame {
    double ax, ay, az;  // toward the ascending node, length = orbit radius
    double bx, by, bz;  // 90 degrees ahead in the plane, length = orbit radius
    double u0;
    double n;

    explicit OrbitFrame(const SatelliteRecord& rec);
    EciPosition position_at(double t_s) const;
};

EciPosition propagate(const SatelliteRecord& rec, double t_s);

}  // namespace lisl

#endif  // LISL_ORBITAL_CORE_HPP
