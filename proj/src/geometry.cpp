#include "lisl/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace lisl {

double distance(const EciPosition& a, const EciPosition& b) {
    if (a.t_s != b.t_s) {
        throw std::invalid_argument("distance: positions carry different timestamps");
    }
    const double dx = b.x_km - a.x_km;
    const double dy = b.y_km - a.y_km;
    const double dz = b.z_km - a.z_km;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double grazing_altitude(const EciPosition& a_in, const EciPosition& b_in,
                        double earth_radius_km) {
    // Evaluate in a canonical endpoint order so swapped arguments return
    // bit-identical results.
    const bool swap = std::tie(b_in.x_km, b_in.y_km, b_in.z_km) <
                      std::tie(a_in.x_km, a_in.y_km, a_in.z_km);
    const EciPosition& a = swap ? b_in : a_in;
    const EciPosition& b = swap ? a_in : b_in;

    const double dx = b.x_km - a.x_km;
    const double dy = b.y_km - a.y_km;
    const double dz = b.z_km - a.z_km;
    const double seg_sq = dx * dx + dy * dy + dz * dz;

    double s = 0.0;
    if (seg_sq > 0.0) {
        // Closest approach of the infinite line to the origin, clamped to the
        // segment so endpoint minima are honored.
        s = -(a.x_km * dx + a.y_km * dy + a.z_km * dz) / seg_sq;
        if (s < 0.0) s = 0.0;
        if (s > 1.0) s = 1.0;
    }
    const double px = a.x_km + s * dx;
    const double py = a.y_km + s * dy;
    const double pz = a.z_km + s * dz;
    return std::sqrt(px * px + py * py + pz * pz) - earth_radius_km;
}

LinkGeometry link_geometry(const EciPosition& a, const EciPosition& b, double earth_radius_km) {
    return LinkGeometry{distance(a, b), grazing_altitude(a, b, earth_radius_km)};
}

double max_lisl_range(double altitude_km, double atmosphere_height_km, double earth_radius_km) {
    if (!(atmosphere_height_km >= 0.0) || !(altitude_km >= atmosphere_height_km)) {
        throw std::domain_error(
            "max_lisl_range: requires altitude >= atmosphere height >= 0");
    }
    const double outer = earth_radius_km + altitude_km;
    const double inner = earth_radius_km + atmosphere_height_km;
    return 2.0 * std::sqrt(outer * outer - inner * inner);
}

double intra_plane_chord(int slot_separation, double orbit_radius_km, int sats_per_plane) {
    if (slot_separation < 1 || 2 * slot_separation > sats_per_plane) {
        throw std::domain_error("intra_plane_chord: slot separation must lie in [1, S/2]");
    }
    return 2.0 * orbit_radius_km *
           std::sin(slot_separation * std::numbers::pi / sats_per_plane);
}

}  // namespace lisl
