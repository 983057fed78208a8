// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orisvlc/rng.hpp"

namespace orisvlc {

namespace {

constexpr double kUnitNormalTol = 1e-12;

void check_unit_normal(const Vec3& n, const char* what) {
    if (std::abs(n.norm() - 1.0) > kUnitNormalTol) {
        throw GeometryError(std::string(what) + " orientation normal is not unit length");
    }
}

} // namespace

bool RoomBox::contains(const Vec3& p, double tol) const {
    return p.x() >= -tol && p.x() <= width_m + tol &&
           p.y() >= -tol && p.y() <= length_m + tol &&
           p.z() >= -tol && p.z() <= height_m + tol;
}

void RoomBox::validate() const {
    if (!(width_m > 0.0) || !(length_m > 0.0) || !(height_m > 0.0)) {
        throw ConfigError("room dimensions must all be strictly positive");
    }
}

void Scene::validate() const {
    room.validate();
    if (leds.empty()) throw ConfigError("scene needs at least one LED");
    if (users.empty()) throw ConfigError("scene needs at least one user");
    for (const auto& led : leds) {
        check_unit_normal(led.orientation_normal, "LED");
        if (!room.contains(led.position)) throw ConfigError("LED position outside the room box");
    }
    for (const auto& elem : oris) {
        check_unit_normal(elem.orientation_normal, "ORIS element");
        if (!room.contains(elem.position)) throw ConfigError("ORIS element outside the room box");
    }
    for (const auto& user : users) {
        check_unit_normal(user.orientation_normal, "receiver");
        if (!room.contains(user.position)) throw ConfigError("receiver outside the room box");
    }
}

LinkGeometry link_geometry(const Vec3& src_pos, const Vec3& src_normal,
                           const Vec3& dst_pos, const Vec3& dst_normal) {
    const Vec3 delta = dst_pos - src_pos;
    const double dist = delta.norm();
    if (!(dist > 0.0)) {
        throw GeometryError("link endpoints coincide");
    }
    const auto angle_between = [](const Vec3& unit_normal, const Vec3& dir, double len) {
        const double c = std::clamp(unit_normal.dot(dir) / len, -1.0, 1.0);
        return std::acos(c);
    };
    LinkGeometry out;
    out.distance_m = dist;
    out.emit_angle_rad = angle_between(src_normal, delta, dist);
    out.incidence_angle_rad = angle_between(dst_normal, -delta, dist);
    return out;
}

std::vector<Luminaire> build_led_grid(const RoomBox& room, int rows, int cols,
                                      double spacing_m) {
    room.validate();
    if (rows < 1 || cols < 1) throw ConfigError("LED grid needs rows >= 1 and cols >= 1");
    if (spacing_m < 0.0) throw ConfigError("led_spacing_m must be nonnegative");
    const double span_x = (cols - 1) * spacing_m;
    const double span_y = (rows - 1) * spacing_m;
    if (span_x > room.width_m || span_y > room.length_m) {
        throw ConfigError("LED grid footprint exceeds the ceiling extent");
    }
    std::vector<Luminaire> leds;
    leds.reserve(static_cast<std::size_t>(rows) * cols);
    const double cx = room.width_m / 2.0;
    const double cy = room.length_m / 2.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            Luminaire led;
            led.position = Vec3(cx + (j - (cols - 1) / 2.0) * spacing_m,
                                cy + (i - (rows - 1) / 2.0) * spacing_m,
                                room.height_m);
            led.orientation_normal = Vec3(0.0, 0.0, -1.0);
            leds.push_back(led);
        }
    }
    return leds;
}

std::vector<OrisElement> build_oris_grid(const RoomBox& room, WallId wall,
                                         int rows, int cols, double spacing_m,
                                         double center_height_m) {
    room.validate();
    if (rows < 0 || cols < 0) throw ConfigError("ORIS grid needs rows >= 0 and cols >= 0");
    if (rows == 0 || cols == 0) return {};
    if (spacing_m < 0.0) throw ConfigError("oris_pitch_m must be nonnegative");

    const bool on_y_wall = (wall == WallId::YMin || wall == WallId::YMax);
    const double wall_width = on_y_wall ? room.width_m : room.length_m;
    const double span_h = (cols - 1) * spacing_m;
    const double span_v = (rows - 1) * spacing_m;
    const double z_lo = center_height_m - span_v / 2.0;
    const double z_hi = center_height_m + span_v / 2.0;
    if (span_h > wall_width || z_lo < 0.0 || z_hi > room.height_m) {
        throw ConfigError("ORIS panel exceeds the wall extent");
    }

    std::vector<OrisElement> panel;
    panel.reserve(static_cast<std::size_t>(rows) * cols);
    const double ch = wall_width / 2.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double h = ch + (j - (cols - 1) / 2.0) * spacing_m;
            const double z = center_height_m + (i - (rows - 1) / 2.0) * spacing_m;
            OrisElement elem;
            switch (wall) {
                case WallId::YMin:
                    elem.position = Vec3(h, 0.0, z);
                    elem.orientation_normal = Vec3(0.0, 1.0, 0.0);
                    break;
                case WallId::YMax:
                    elem.position = Vec3(h, room.length_m, z);
                    elem.orientation_normal = Vec3(0.0, -1.0, 0.0);
                    break;
                case WallId::XMin:
                    elem.position = Vec3(0.0, h, z);
                    elem.orientation_normal = Vec3(1.0, 0.0, 0.0);
                    break;
                case WallId::XMax:
                    elem.position = Vec3(room.width_m, h, z);
                    elem.orientation_normal = Vec3(-1.0, 0.0, 0.0);
                    break;
            }
            panel.push_back(elem);
        }
    }
    return panel;
}

std::vector<Receiver> sample_users(const RoomBox& room, int count,
                                   double workplane_height_m,
                                   std::uint64_t seed) {
    room.validate();
    if (count < 1) throw ConfigError("user count must be >= 1");
    if (!(workplane_height_m > 0.0) || !(workplane_height_m < room.height_m)) {
        throw ConfigError("workplane_height_m must lie strictly inside (0, room height)");
    }
    Rng rng(seed);
    std::vector<Receiver> users;
    users.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Receiver user;
        const double x = rng.uniform(0.0, room.width_m);
        const double y = rng.uniform(0.0, room.length_m);
        user.position = Vec3(x, y, workplane_height_m);
        user.orientation_normal = Vec3(0.0, 0.0, 1.0);
        users.push_back(user);
    }
    return users;
}

std::pair<int, int> oris_grid_shape(int element_count) {
    if (element_count < 0) throw ConfigError("oris_elements must be >= 0");
    if (element_count == 0) return {0, 0};
    int rows = static_cast<int>(std::sqrt(static_cast<double>(element_count)));
    while (rows > 1 && element_count % rows != 0) --rows;
    return {rows, element_count / rows};
}

} // namespace orisvlc
