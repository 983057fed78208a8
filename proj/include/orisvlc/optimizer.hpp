// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "orisvlc/alignment.hpp"
#include "orisvlc/metrics.hpp"
#include "orisvlc/precoding.hpp"

namespace orisvlc {

enum class MethodId { Proposed, ProposedNoOris, ZF, MMSE };

std::string method_name(MethodId method);
MethodId method_from_name(const std::string& name); // throws ConfigError on unknown names
const std::vector<MethodId>& all_methods();

struct OptimizerConfig {
    AscentConfig ascent;
    GreedyOptions greedy;
    int max_outer_iterations = 50;
    double outer_tolerance_db = 1e-4; // stop when an outer pass improves less than this
    bool baseline_uses_oris = true;   // ZF/MMSE get a greedy alignment for their own precoder

    void validate() const;
};

/// One outer pass of the alternation: the mean SINR reached, how many
/// alignment rows changed versus the previous pass, and the final surrogate
/// objective of the precoder step.
struct OuterIteration {
    double mean_sinr_db = 0.0;
    int alignment_changes = 0;
    double objective = 0.0;
};

struct AlternateResult {
    Eigen::MatrixXd precoder;
    AlignmentMatrix alignment;
    std::vector<OuterIteration> trace;
};

/// Alternating design loop: from a random feasible precoder, repeat
/// { greedy alignment; projected gradient ascent } until the alignment is a
/// fixed point, the mean SINR plateaus, or the iteration cap is reached. An
/// outer pass that would lower the mean SINR is rejected and the previous
/// iterate kept, so the outer trace never decreases.
AlternateResult alternate(const ChannelSet& channels, double noise_variance,
                          const OptimizerConfig& config, Rng& rng);

struct MethodResult {
    Eigen::MatrixXd precoder;
    AlignmentMatrix alignment;
    SinrVector sinr;
};

/// Runs one method end to end. Proposed = full alternation; ProposedNoOris =
/// ascent on LOS channels with the all-zero alignment; ZF/MMSE = projected
/// baseline precoder plus a single greedy alignment pass (or the all-zero
/// alignment when baseline_uses_oris is off). Deterministic given the seed.
MethodResult run_method(MethodId method, const ChannelSet& channels, double noise_variance,
                        const OptimizerConfig& config, std::uint64_t seed);

} // namespace orisvlc
