#ifndef LISL_GEOMETRY_HPP
#define LISL_GEOMETRY_HPP

// Pure geometric kernels: inter-satellite distance, line-of-sight grazing
// altitude over a spherical Earth, and the closed-form maximum link range.
// All functions are stateless; tolerances live in callers, not here.

#include "lisl/orbital_core.hpp"

namespace lisl {

struct LinkGeometry {
    double distance_km = 0.0;
    // Minimum altitude of the straight segment between the endpoints above the
    // spherical Earth surface; negative when the segment dips below it.
    double grazing_altitude_km = 0.0;
};

// Euclidean separation. Both positions must carry the same timestamp.
double distance(const EciPosition& a, const EciPosition& b);

// Minimum over the segment [a, b] of (distance to Earth's center) minus
// earth_radius_km. The closest-approach parameter is clamped to the segment,
// so short links get their endpoint minimum.
double grazing_altitude(const EciPosition& a, const EciPosition& b, double earth_radius_km);

LinkGeometry link_geometry(const EciPosition& a, const EciPosition& b, double earth_radius_km);

// 2*sqrt((r+h)^2 - (r+a)^2): the longest line of sight between two satellites
// at altitude h that stays above the atmosphere shell at altitude a.
// Throws std::domain_error unless altitude >= atmosphere_height >= 0.
double max_lisl_range(double altitude_km, double atmosphere_height_km, double earth_radius_km);

// Chord between same-plane satellites k slots apart: 2*R*sin(k*pi/S).
// Valid for 1 <= k <= S/2.
double intra_plane_chord(int slot_separation, double orbit_radius_km, int sats_per_plane);

}  // namespace lisl

#endif  // LISL_GEOMETRY_HPP
