// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/optimizer.hpp"

#include <limits>
#include <optional>

namespace orisvlc {

std::string method_name(MethodId method) {
    switch (method) {
        case MethodId::Proposed: return "proposed";
        case MethodId::ProposedNoOris: return "proposed-no-oris";
        case MethodId::ZF: return "zf";
        case MethodId::MMSE: return "mmse";
    }
    throw ConfigError("unknown method id");
}

MethodId method_from_name(const std::string& name) {
    for (MethodId m : all_methods()) {
        if (method_name(m) == name) return m;
    }
    throw ConfigError("unknown method '" + name +
                      "' (expected proposed, proposed-no-oris, zf or mmse)");
}

const std::vector<MethodId>& all_methods() {
    static const std::vector<MethodId> methods = {
        MethodId::Proposed, MethodId::ProposedNoOris, MethodId::ZF, MethodId::MMSE};
    return methods;
}

void OptimizerConfig::validate() const {
    ascent.validate();
    if (max_outer_iterations < 1) throw ConfigError("max_outer_iterations must be >= 1");
    if (!(outer_tolerance_db > 0.0)) throw ConfigError("outer_tolerance_db must be > 0");
}

namespace {

// No-reflector path shared by the M == 0 scene and the ablation method:
// a single precoder design on the LOS channels.
AlternateResult optimize_without_alignment(const ChannelSet& channels, double noise_variance,
                                           const OptimizerConfig& cfg,
                                           const Eigen::MatrixXd& init) {
    AlternateResult result;
    result.alignment = AlignmentMatrix::zero(channels.num_oris(), channels.num_users());
    const Eigen::MatrixXd los = effective_channel_matrix(channels, result.alignment);
    AscentResult ascent = optimize_precoder(los, noise_variance, cfg.ascent, init);
    result.precoder = ascent.precoder;
    result.trace.push_back({to_db(mean_sinr(los, result.precoder, noise_variance)), 0,
                            ascent.trace.back().objective});
    return result;
}

} // namespace

AlternateResult alternate(const ChannelSet& channels, double noise_variance,
                          const OptimizerConfig& cfg, Rng& rng) {
    cfg.validate();
    const int K = channels.num_users();
    const int M = channels.num_oris();
    if (K < 1 || channels.num_leds() < 1) throw DimensionError("channel set is empty");

    Eigen::MatrixXd P = random_feasible_precoder(channels.num_leds(), K, rng,
                                                 cfg.ascent.projection_alternations,
                                                 cfg.ascent.projection_tolerance);
    if (M == 0) return optimize_without_alignment(channels, noise_variance, cfg, P);

    AlternateResult result;
    std::optional<AlignmentMatrix> previous_alignment;
    double previous_sinr = -std::numeric_limits<double>::infinity();

    for (int outer = 0; outer < cfg.max_outer_iterations; ++outer) {
        AlignmentMatrix F = greedy_alignment(channels, P, noise_variance, cfg.greedy).alignment;
        if (previous_alignment && F == *previous_alignment) break; // fixed point

        const Eigen::MatrixXd H = effective_channel_matrix(channels, F);
        AscentResult ascent = optimize_precoder(H, noise_variance, cfg.ascent, P);
        const double sinr = mean_sinr(H, ascent.precoder, noise_variance);

        // Greedy realignment is a heuristic; reject a pass that went backwards
        // and keep the previous iterate.
        if (previous_alignment && sinr < previous_sinr) break;

        const int changes =
            previous_alignment ? count_changed_rows(F, *previous_alignment) : M;
        result.trace.push_back({to_db(sinr), changes, ascent.trace.back().objective});
        result.precoder = ascent.precoder;
        result.alignment = F;
        P = ascent.precoder;

        const bool plateau =
            previous_alignment &&
            to_db(sinr) - to_db(previous_sinr) < cfg.outer_tolerance_db;
        previous_alignment = std::move(F);
        previous_sinr = sinr;
        if (plateau) break;
    }
    return result;
}

MethodResult run_method(MethodId method, const ChannelSet& channels, double noise_variance,
                        const OptimizerConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int K = channels.num_users();
    const int M = channels.num_oris();
    Rng rng(seed);

    switch (method) {
        case MethodId::Proposed: {
            AlternateResult alt = alternate(channels, noise_variance, cfg, rng);
            SinrVector sinr = per_user_sinr(channels, alt.alignment, alt.precoder, noise_variance);
            return {std::move(alt.precoder), std::move(alt.alignment), std::move(sinr)};
        }
        case MethodId::ProposedNoOris: {
            Eigen::MatrixXd init = random_feasible_precoder(
                channels.num_leds(), K, rng, cfg.ascent.projection_alternations,
                cfg.ascent.projection_tolerance);
            AlternateResult alt =
                optimize_without_alignment(channels, noise_variance, cfg, init);
            SinrVector sinr = per_user_sinr(channels, alt.alignment, alt.precoder, noise_variance);
            return {std::move(alt.precoder), std::move(alt.alignment), std::move(sinr)};
        }
        case MethodId::ZF:
        case MethodId::MMSE: {
            const Eigen::MatrixXd los =
                effective_channel_matrix(channels, AlignmentMatrix::zero(M, K));
            Eigen::MatrixXd P;
            if (method == MethodId::ZF) {
                P = zf_precoder(los, cfg.ascent.projection_alternations,
                                cfg.ascent.projection_tolerance).precoder;
            } else {
                P = mmse_precoder(los, noise_variance, cfg.ascent.projection_alternations,
                                  cfg.ascent.projection_tolerance);
            }
            AlignmentMatrix F = (cfg.baseline_uses_oris && M > 0)
                                    ? greedy_alignment(channels, P, noise_variance,
                                                       cfg.greedy).alignment
                                    : AlignmentMatrix::zero(M, K);
            SinrVector sinr = per_user_sinr(channels, F, P, noise_variance);
            return {std::move(P), std::move(F), std::move(sinr)};
        }
    }
    throw ConfigError("unknown method id");
}

} // namespace orisvlc
