// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "orisvlc/geometry.hpp"

namespace orisvlc {

class AlignmentMatrix;

/// Photodetector / emitter / reflector constants of the Lambertian link model.
struct OpticalParams {
    double pd_area_m2 = 1e-4;                            // A_p, 1 cm^2
    double lambert_order = 1.0;                          // m
    double fov_semi_angle_rad = std::numbers::pi / 3.0;  // theta_R
    double filter_gain = 1.0;                            // T
    double concentrator_gain = 5.0;                      // G
    double oris_reflectivity = 0.9;                      // alpha in (0, 1]
    double noise_variance = 1.0;                         // sigma_n^2 (overridden per SNR point)
    bool nlos_fov_cutoff = true;                         // apply the FOV cutoff on the reflector->user hop

    void validate() const; // throws ConfigError naming the offending field
};

/// sigma_n^2 = 10^(-SNR_dB/10), transmit-referenced under unit-mean-power symbols.
double noise_variance_for_snr_db(double snr_db);

/// Per-user channel gains: los[k] has length N_t; nlos[k] is N_t x M with
/// row i holding the gains from LED i via each reflector element.
struct ChannelSet {
    std::vector<Eigen::VectorXd> los;
    std::vector<Eigen::MatrixXd> nlos;

    int num_users() const { return static_cast<int>(los.size()); }
    int num_leds() const { return los.empty() ? 0 : static_cast<int>(los[0].size()); }
    int num_oris() const { return nlos.empty() ? 0 : static_cast<int>(nlos[0].cols()); }

    /// Every gain multiplied by factor (> 0); used to express channels in
    /// units of a reference gain before optimization.
    ChannelSet scaled(double factor) const;
};

/// Lambertian LOS gain A_p(m+1)/(2 pi d^2) cos^m(emit) cos(inc) T G.
/// Exactly zero outside the photodiode field of view (incidence >= theta_R),
/// behind the source (cos emit < 0) or behind the detector (cos inc < 0).
double los_gain(const Luminaire& led, const Receiver& user, const OpticalParams& params);

/// Reflected-path gain: alpha * A_p(m+1)/(2 pi (d1+d2)^2) cos^m(emit at LED
/// toward the element) cos(incidence at the user from the element) T G.
/// No cosine factor at the mirror element itself. Cutoffs: LED-side
/// cos < 0 -> 0; user-side FOV cutoff applied when params.nlos_fov_cutoff.
double nlos_gain(const Luminaire& led, const OrisElement& elem, const Receiver& user,
                 const OpticalParams& params);

ChannelSet build_channels(const Scene& scene, const OpticalParams& params);

/// Composite channel of user k under an alignment: los[k] + nlos[k] * f_k.
Eigen::VectorXd effective_channel(const ChannelSet& channels,
                                  const AlignmentMatrix& alignment, int user);

/// N_t x K matrix whose column k is effective_channel(channels, alignment, k).
Eigen::MatrixXd effective_channel_matrix(const ChannelSet& channels,
                                         const AlignmentMatrix& alignment);

/// Debug dump, one row per (user, led, element|LOS) gain, 17 significant digits.
void write_channel_csv(const ChannelSet& channels, std::ostream& out);

} // namespace orisvlc
