// Shared builders for randomized test instances.
#pragma once

#include <Eigen/Core>
#include <cmath>

#include "orisvlc/channel.hpp"
#include "orisvlc/rng.hpp"

namespace test_helpers {

// Nonnegative random gains, nLOS a factor weaker, shaped like real channel sets.
inline orisvlc::ChannelSet random_channel_set(int n_leds, int n_oris, int n_users,
                                              orisvlc::Rng& rng, double nlos_level = 0.3) {
    orisvlc::ChannelSet ch;
    ch.los.resize(static_cast<std::size_t>(n_users));
    ch.nlos.resize(static_cast<std::size_t>(n_users));
    for (int k = 0; k < n_users; ++k) {
        Eigen::VectorXd h(n_leds);
        Eigen::MatrixXd H(n_leds, n_oris);
        for (int i = 0; i < n_leds; ++i) {
            h(i) = std::abs(rng.gaussian());
            for (int r = 0; r < n_oris; ++r) {
                H(i, r) = nlos_level * std::abs(rng.gaussian());
            }
        }
        ch.los[static_cast<std::size_t>(k)] = std::move(h);
        ch.nlos[static_cast<std::size_t>(k)] = std::move(H);
    }
    return ch;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, orisvlc::Rng& rng) {
    Eigen::MatrixXd out(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) out(i, j) = rng.gaussian();
    }
    return out;
}

} // namespace test_helpers
