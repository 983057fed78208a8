// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "orisvlc/errors.hpp"

namespace orisvlc {

using Vec3 = Eigen::Vector3d;

/// Axis-aligned room: x in [0, width], y in [0, length], z in [0, height].
/// All geometry is in SI meters.
struct RoomBox {
    double width_m = 4.0;
    double length_m = 4.0;
    double height_m = 3.0;

    bool contains(const Vec3& p, double tol = 1e-9) const;
    void validate() const; // throws ConfigError unless all extents are > 0
};

/// Ceiling LED. The orientation normal points into the room (typically down).
struct Luminaire {
    Vec3 position{0.0, 0.0, 0.0};
    Vec3 orientation_normal{0.0, 0.0, -1.0};
};

/// One mirror element of the reflecting panel.
struct OrisElement {
    Vec3 position{0.0, 0.0, 0.0};
    Vec3 orientation_normal{0.0, 1.0, 0.0};
};

/// Single-photodiode user terminal; default orientation is straight up.
struct Receiver {
    Vec3 position{0.0, 0.0, 0.0};
    Vec3 orientation_normal{0.0, 0.0, 1.0};
};

/// Wall carrying the reflector panel.
enum class WallId { YMin, YMax, XMin, XMax };

struct Scene {
    RoomBox room;
    std::vector<Luminaire> leds;      // length N_t
    std::vector<OrisElement> oris;    // length M (empty = no-reflector ablation)
    std::vector<Receiver> users;      // length K

    int num_leds() const { return static_cast<int>(leds.size()); }
    int num_oris() const { return static_cast<int>(oris.size()); }
    int num_users() const { return static_cast<int>(users.size()); }

    /// Checks N_t >= 1, K >= 1, unit normals (1e-12) and that every position
    /// lies inside the room box. Throws ConfigError / GeometryError.
    void validate() const;
};

/// Distance plus the two link angles: emission at the source (between the
/// source normal and the source->destination ray) and incidence at the
/// destination (between the destination normal and the destination->source
/// ray). Both angles lie in [0, pi].
struct LinkGeometry {
    double distance_m = 0.0;
    double emit_angle_rad = 0.0;
    double incidence_angle_rad = 0.0;
};

LinkGeometry link_geometry(const Vec3& src_pos, const Vec3& src_normal,
                           const Vec3& dst_pos, const Vec3& dst_normal);

/// rows x cols grid centered on the ceiling, normals straight down,
/// row-major order (row index varies slowest; rows run along y, cols along x).
/// Throws ConfigError if the footprint exceeds the ceiling.
std::vector<Luminaire> build_led_grid(const RoomBox& room, int rows, int cols,
                                      double spacing_m);

/// rows x cols panel centered horizontally on the chosen wall at
/// center_height_m, normals perpendicular to the wall pointing into the room,
/// row-major order (rows run along z). rows*cols == 0 yields an empty panel.
/// Throws ConfigError if the panel exceeds the wall extent.
std::vector<OrisElement> build_oris_grid(const RoomBox& room, WallId wall,
                                         int rows, int cols, double spacing_m,
                                         double center_height_m);

/// K receivers with x ~ U(0, width), y ~ U(0, length), z = workplane height,
/// normals straight up. Bitwise reproducible for equal seeds.
std::vector<Receiver> sample_users(const RoomBox& room, int count,
                                   double workplane_height_m,
                                   std::uint64_t seed);

/// (rows, cols) for an element count: rows is the largest integer <= sqrt(M)
/// dividing M, cols = M/rows, so panels are at least as wide as tall
/// (24 -> 4x6, 40 -> 5x8, 64 -> 8x8).
std::pair<int, int> oris_grid_shape(int element_count);

} // namespace orisvlc
