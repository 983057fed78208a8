// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>

#include "orisvlc/alignment.hpp"
#include "orisvlc/channel.hpp"

namespace orisvlc {

double to_db(double linear);
double from_db(double db);

/// Per-user SINRs kept in the linear domain; dB only at reporting boundaries.
struct SinrVector {
    Eigen::VectorXd linear;

    Eigen::VectorXd db() const;
    double mean_linear() const;
    double mean_db() const { return to_db(mean_linear()); }
};

// --- effective-channel-matrix forms (H is N_t x K, column k = h_k) ---------

/// |h_k' p_k|^2 / (sum_{j!=k} |h_k' p_j|^2 + sigma^2).
double sinr_user(const Eigen::MatrixXd& effective_channels, const Eigen::MatrixXd& precoder,
                 int user, double noise_variance);

Eigen::VectorXd per_user_sinr_linear(const Eigen::MatrixXd& effective_channels,
                                     const Eigen::MatrixXd& precoder, double noise_variance);

/// Linear-domain average of the per-user SINRs.
double mean_sinr(const Eigen::MatrixXd& effective_channels, const Eigen::MatrixXd& precoder,
                 double noise_variance);

// --- channel-set + alignment forms ------------------------------------------

double sinr_user(const ChannelSet& channels, const AlignmentMatrix& alignment,
                 const Eigen::MatrixXd& precoder, int user, double noise_variance);

SinrVector per_user_sinr(const ChannelSet& channels, const AlignmentMatrix& alignment,
                         const Eigen::MatrixXd& precoder, double noise_variance);

double mean_sinr(const ChannelSet& channels, const AlignmentMatrix& alignment,
                 const Eigen::MatrixXd& precoder, double noise_variance);

/// Single-element candidate score for the greedy assignment: the quadratic
/// expansion of the user SINR with f_k = e_r, evaluated in its printed
/// three-term form (LOS quadratic, cross term, element quadratic).
double sinr_element(const ChannelSet& channels, const Eigen::MatrixXd& precoder,
                    int user, int element, double noise_variance);

/// Three-term score from precomputed products a_j = h_k^(los)' p_j and
/// b_j = [H_k^(nlos)' p_j]_r. Shared by sinr_element and the greedy scan so
/// both evaluate bit-identical arithmetic.
double element_sinr_from_products(const Eigen::VectorXd& los_products,
                                  const Eigen::VectorXd& element_products,
                                  int user, double noise_variance);

} // namespace orisvlc
