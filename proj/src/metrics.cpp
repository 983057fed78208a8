// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/metrics.hpp"

#include <cmath>

namespace orisvlc {

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

Eigen::VectorXd SinrVector::db() const {
    Eigen::VectorXd out(linear.size());
    for (Eigen::Index k = 0; k < linear.size(); ++k) out(k) = to_db(linear(k));
    return out;
}

double SinrVector::mean_linear() const {
    return linear.size() == 0 ? 0.0 : linear.mean();
}

namespace {

void check_dims(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P) {
    if (H.rows() != P.rows() || H.cols() != P.cols()) {
        throw DimensionError("effective channel matrix and precoder dimensions differ");
    }
}

} // namespace

double sinr_user(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                 int user, double noise_variance) {
    check_dims(H, P);
    const int K = static_cast<int>(P.cols());
    if (user < 0 || user >= K) throw DimensionError("user index out of range");
    const Eigen::VectorXd h = H.col(user);
    const double wanted = h.dot(P.col(user));
    double denom = noise_variance;
    for (int j = 0; j < K; ++j) {
        if (j == user) continue;
        const double leak = h.dot(P.col(j));
        denom += leak * leak;
    }
    return wanted * wanted / denom;
}

Eigen::VectorXd per_user_sinr_linear(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P,
                                     double noise_variance) {
    Eigen::VectorXd out(P.cols());
    for (int k = 0; k < P.cols(); ++k) out(k) = sinr_user(H, P, k, noise_variance);
    return out;
}

double mean_sinr(const Eigen::MatrixXd& H, const Eigen::MatrixXd& P, double noise_variance) {
    return per_user_sinr_linear(H, P, noise_variance).mean();
}

double sinr_user(const ChannelSet& channels, const AlignmentMatrix& alignment,
                 const Eigen::MatrixXd& precoder, int user, double noise_variance) {
    return sinr_user(effective_channel_matrix(channels, alignment), precoder, user,
                     noise_variance);
}

SinrVector per_user_sinr(const ChannelSet& channels, const AlignmentMatrix& alignment,
                         const Eigen::MatrixXd& precoder, double noise_variance) {
    return SinrVector{per_user_sinr_linear(effective_channel_matrix(channels, alignment),
                                           precoder, noise_variance)};
}

double mean_sinr(const ChannelSet& channels, const AlignmentMatrix& alignment,
                 const Eigen::MatrixXd& precoder, double noise_variance) {
    return per_user_sinr(channels, alignment, precoder, noise_variance).mean_linear();
}

double element_sinr_from_products(const Eigen::VectorXd& los_products,
                                  const Eigen::VectorXd& element_products,
                                  int user, double noise_variance) {
    const int K = static_cast<int>(los_products.size());
    const auto term = [&](int j) {
        const double a = los_products(j);
        const double b = element_products(j);
        return a * a + 2.0 * b * a + b * b;
    };
    double denom = noise_variance;
    for (int j = 0; j < K; ++j) {
        if (j != user) denom += term(j);
    }
    return term(user) / denom;
}

double sinr_element(const ChannelSet& channels, const Eigen::MatrixXd& precoder,
                    int user, int element, double noise_variance) {
    const int K = channels.num_users();
    if (precoder.cols() != K || precoder.rows() != channels.num_leds()) {
        throw DimensionError("precoder dimensions do not match the channel set");
    }
    if (user < 0 || user >= K) throw DimensionError("user index out of range");
    if (element < 0 || element >= channels.num_oris()) {
        throw DimensionError("ORIS element index out of range");
    }
    Eigen::VectorXd a(K), b(K);
    for (int j = 0; j < K; ++j) {
        a(j) = channels.los[user].dot(precoder.col(j));
        b(j) = channels.nlos[user].col(element).dot(precoder.col(j));
    }
    return element_sinr_from_products(a, b, user, noise_variance);
}

} // namespace orisvlc
