// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orisvlc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Self-contained numerical property suite: finite-difference gradient checks,
/// projection feasibility and idempotence, the per-element SINR expansion
/// identity, the closed-form gamma identity, the greedy evaluation count and
/// the greedy-versus-exhaustive gap on small instances. Deterministic for a
/// fixed seed; touches no files.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 20240915);

} // namespace orisvlc
