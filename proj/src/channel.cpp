// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/channel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "orisvlc/alignment.hpp"

namespace orisvlc {

void OpticalParams::validate() const {
    if (!(pd_area_m2 > 0.0)) throw ConfigError("pd_area_m2 must be > 0");
    if (lambert_order < 0.0) throw ConfigError("lambert_order must be >= 0");
    if (!(fov_semi_angle_rad > 0.0) || fov_semi_angle_rad > std::numbers::pi / 2.0) {
        throw ConfigError("fov_semi_angle_rad must lie in (0, pi/2]");
    }
    if (!(filter_gain > 0.0)) throw ConfigError("filter_gain must be > 0");
    if (!(concentrator_gain > 0.0)) throw ConfigError("concentrator_gain must be > 0");
    if (!(oris_reflectivity > 0.0) || oris_reflectivity > 1.0) {
        throw ConfigError("oris_reflectivity must lie in (0,1]");
    }
    if (!(noise_variance > 0.0)) throw ConfigError("noise_variance must be > 0");
}

double noise_variance_for_snr_db(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}

ChannelSet ChannelSet::scaled(double factor) const {
    if (!(factor > 0.0)) throw ConfigError("channel scale factor must be > 0");
    ChannelSet out;
    out.los.reserve(los.size());
    out.nlos.reserve(nlos.size());
    for (const auto& h : los) out.los.push_back(h * factor);
    for (const auto& m : nlos) out.nlos.push_back(m * factor);
    return out;
}

namespace {

// Shared Lambertian kernel; emit/incidence angles precomputed by the caller.
double lambertian(double emit_angle, double incidence_angle, double total_path,
                  const OpticalParams& p, bool fov_cutoff) {
    const double cos_emit = std::cos(emit_angle);
    const double cos_inc = std::cos(incidence_angle);
    if (cos_emit < 0.0 || cos_inc < 0.0) return 0.0;
    if (fov_cutoff && incidence_angle >= p.fov_semi_angle_rad) return 0.0;
    const double geom = p.pd_area_m2 * (p.lambert_order + 1.0) /
                        (2.0 * std::numbers::pi * total_path * total_path);
    return geom * std::pow(cos_emit, p.lambert_order) * cos_inc *
           p.filter_gain * p.concentrator_gain;
}

} // namespace

double los_gain(const Luminaire& led, const Receiver& user, const OpticalParams& params) {
    const LinkGeometry link = link_geometry(led.position, led.orientation_normal,
                                            user.position, user.orientation_normal);
    return lambertian(link.emit_angle_rad, link.incidence_angle_rad, link.distance_m,
                      params, /*fov_cutoff=*/true);
}

double nlos_gain(const Luminaire& led, const OrisElement& elem, const Receiver& user,
                 const OpticalParams& params) {
    const LinkGeometry hop1 = link_geometry(led.position, led.orientation_normal,
                                            elem.position, elem.orientation_normal);
    const LinkGeometry hop2 = link_geometry(elem.position, elem.orientation_normal,
                                            user.position, user.orientation_normal);
    // Mirror-array abstraction: only the LED emission angle and the user
    // incidence angle enter; nothing is evaluated at the element surface.
    return params.oris_reflectivity *
           lambertian(hop1.emit_angle_rad, hop2.incidence_angle_rad,
                      hop1.distance_m + hop2.distance_m, params,
                      params.nlos_fov_cutoff);
}

ChannelSet build_channels(const Scene& scene, const OpticalParams& params) {
    scene.validate();
    params.validate();
    const int n_led = scene.num_leds();
    const int n_oris = scene.num_oris();
    const int n_user = scene.num_users();

    ChannelSet channels;
    channels.los.resize(n_user);
    channels.nlos.resize(n_user);
    for (int k = 0; k < n_user; ++k) {
        Eigen::VectorXd h(n_led);
        Eigen::MatrixXd H(n_led, n_oris);
        for (int i = 0; i < n_led; ++i) {
            h(i) = los_gain(scene.leds[i], scene.users[k], params);
            for (int r = 0; r < n_oris; ++r) {
                H(i, r) = nlos_gain(scene.leds[i], scene.oris[r], scene.users[k], params);
            }
        }
        channels.los[k] = std::move(h);
        channels.nlos[k] = std::move(H);
    }
    return channels;
}

Eigen::VectorXd effective_channel(const ChannelSet& channels,
                                  const AlignmentMatrix& alignment, int user) {
    if (user < 0 || user >= channels.num_users()) throw DimensionError("user index out of range");
    if (alignment.num_elements() != channels.num_oris() ||
        alignment.num_users() != channels.num_users()) {
        throw DimensionError("alignment dimensions do not match the channel set");
    }
    Eigen::VectorXd h = channels.los[user];
    const Eigen::MatrixXd& H = channels.nlos[user];
    for (int r = 0; r < alignment.num_elements(); ++r) {
        if (alignment.owner(r) == user) h += H.col(r);
    }
    return h;
}

Eigen::MatrixXd effective_channel_matrix(const ChannelSet& channels,
                                         const AlignmentMatrix& alignment) {
    Eigen::MatrixXd out(channels.num_leds(), channels.num_users());
    for (int k = 0; k < channels.num_users(); ++k) {
        out.col(k) = effective_channel(channels, alignment, k);
    }
    return out;
}

void write_channel_csv(const ChannelSet& channels, std::ostream& out) {
    out << "user,led,element,gain\n";
    char buf[64];
    for (int k = 0; k < channels.num_users(); ++k) {
        for (int i = 0; i < channels.num_leds(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", channels.los[k](i));
            out << k << ',' << i << ",LOS," << buf << '\n';
            for (int r = 0; r < channels.num_oris(); ++r) {
                std::snprintf(buf, sizeof(buf), "%.17g", channels.nlos[k](i, r));
                out << k << ',' << i << ',' << r << ',' << buf << '\n';
            }
        }
    }
}

} // namespace orisvlc
