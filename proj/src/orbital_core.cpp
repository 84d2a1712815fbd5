#include "lisl/orbital_core.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace lisl {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool two_digits(std::string_view s, std::size_t pos, int& value) {
    if (pos + 2 > s.size()) return false;
    const char a = s[pos], b = s[pos + 1];
    if (!std::isdigit(static_cast<unsigned char>(a)) ||
        !std::isdigit(static_cast<unsigned char>(b))) {
        return false;
    }
    value = (a - '0') * 10 + (b - '0');
    return true;
}

}  // namespace

void PhysicalConstants::validate() const {
    if (!(gravitational_constant > 0.0)) {
        throw ConfigError("gravitational_constant", "must be strictly positive");
    }
    if (!(earth_mass_kg > 0.0)) {
        throw ConfigError("earth_mass_kg", "must be strictly positive");
    }
    if (!(earth_radius_km > 0.0)) {
        throw ConfigError("earth_radius_km", "must be strictly positive");
    }
    if (!(atmosphere_height_km > 0.0)) {
        throw ConfigError("atmosphere_height_km", "must be strictly positive");
    }
}

void ConstellationConfig::validate() const {
    constants.validate();
    if (!(altitude_km > 0.0)) {
        throw ConfigError("altitude_km", "must be strictly positive");
    }
    if (!std::isfinite(inclination_deg)) {
        throw ConfigError("inclination_deg", "must be finite");
    }
    if (num_planes < 1) {
        throw ConfigError("num_planes", "must be at least 1");
    }
    if (sats_per_plane < 1) {
        throw ConfigError("sats_per_plane", "must be at least 1");
    }
    if (phasing_factor < 0 || phasing_factor >= sats_per_plane) {
        throw ConfigError("phasing_factor", "must lie in [0, sats_per_plane-1]");
    }
    if (!(raan_spread_deg > 0.0) || raan_spread_deg > 360.0) {
        throw ConfigError("raan_spread_deg", "must lie in (0, 360]");
    }
}

std::string format_id(const SatelliteId& id) {
    if (id.plane < 1 || id.plane > 99 || id.slot < 1 || id.slot > 99) {
        throw std::invalid_argument("satellite id scheme covers planes/slots 1..99");
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "x1%02d%02d", id.plane, id.slot);
    return buf;
}

std::string format_plane_id(int plane) {
    if (plane < 1 || plane > 99) {
        throw std::invalid_argument("plane id scheme covers planes 1..99");
    }
    char buf[6];
    std::snprintf(buf, sizeof(buf), "x1%02d", plane);
    return buf;
}

SatelliteId parse_id(std::string_view text, int num_planes, int sats_per_plane) {
    int plane = 0;
    int slot = 0;
    if (text.size() != 6 || text[0] != 'x' || text[1] != '1' ||
        !two_digits(text, 2, plane) || !two_digits(text, 4, slot)) {
        throw std::invalid_argument("satellite id must have the form x1PPSS: '" +
                                    std::string(text) + "'");
    }
    if (plane < 1 || plane > num_planes) {
        throw std::invalid_argument("satellite id plane out of range: '" +
                                    std::string(text) + "'");
    }
    if (slot < 1 || slot > sats_per_plane) {
        throw std::invalid_argument("satellite id slot out of range: '" +
                                    std::string(text) + "'");
    }
    return SatelliteId{plane, slot};
}

double orbital_period(double orbit_radius_km, const PhysicalConstants& constants) {
    if (!(orbit_radius_km > 0.0)) {
        throw std::domain_error("orbital_period: orbit radius must be positive");
    }
    const double radius_m = orbit_radius_km * 1000.0;
    const double mu = constants.gravitational_constant * constants.earth_mass_kg;
    return 2.0 * std::numbers::pi * std::sqrt(radius_m * radius_m * radius_m / mu);
}

std::vector<SatelliteRecord> build_constellation(const ConstellationConfig& config) {
    config.validate();

    const int planes = config.num_planes;
    const int slots = config.sats_per_plane;
    const double radius_km = config.orbit_radius_km();
    const double inclination = config.inclination_deg * kDegToRad;
    const double plane_spacing = config.raan_spread_deg * kDegToRad / planes;
    const double slot_spacing = 2.0 * std::numbers::pi / slots;
    const double phase_unit = 2.0 * std::numbers::pi / (static_cast<double>(planes) * slots);
    const double mean_motion = 2.0 * std::numbers::pi / orbital_period(radius_km, config.constants);

    std::vector<SatelliteRecord> records;
    records.reserve(static_cast<std::size_t>(planes) * slots);
    for (int p = 1; p <= planes; ++p) {
        const double raan = (p - 1) * plane_spacing;
        const double plane_phase = (p - 1) * config.phasing_factor * phase_unit;
        for (int s = 1; s <= slots; ++s) {
            SatelliteRecord rec;
            rec.id = SatelliteId{p, s};
            rec.raan_rad = raan;
            rec.inclination_rad = inclination;
            rec.initial_arg_latitude_rad = (s - 1) * slot_spacing + plane_phase;
            rec.orbit_radius_km = radius_km;
            rec.mean_motion_rad_s = mean_motion;
            records.push_back(rec);
        }
    }
    return records;
}

OrbitFrame::OrbitFrame(const SatelliteRecord& rec) {
    const double r = rec.orbit_radius_km;
    const double cos_raan = std::cos(rec.raan_rad);
    const double sin_raan = std::sin(rec.raan_rad);
    const double cos_incl = std::cos(rec.inclination_rad);
    const double sin_incl = std::sin(rec.inclination_rad);
    ax = r * cos_raan;
    ay = r * sin_raan;
    az = 0.0;
    bx = -r * sin_raan * cos_incl;
    by = r * cos_raan * cos_incl;
    bz = r * sin_incl;
    u0 = rec.initial_arg_latitude_rad;
    n = rec.mean_motion_rad_s;
}

EciPosition OrbitFrame::position_at(double t_s) const {
    const double u = u0 + n * t_s;
    const double cu = std::cos(u);
    const double su = std::sin(u);
    return EciPosition{ax * cu + bx * su, ay * cu + by * su, az * cu + bz * su, t_s};
}

EciPosition propagate(const SatelliteRecord& rec, double t_s) {
    return OrbitFrame(rec).position_at(t_s);
}

}  // namespace lisl
