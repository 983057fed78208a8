// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orisvlc/experiment.hpp"

namespace orisvlc {

/// Command-line overrides; any value set here wins over the config file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> users;
    std::optional<int> oris_elements;
    std::optional<std::vector<double>> snr_db;
    std::optional<int> trials;
    std::optional<std::vector<std::string>> methods;
    std::optional<std::string> out;
};

/// Flat `key = value` file, `#` comments, lists comma-separated. An empty path
/// yields the defaults. Unknown keys and out-of-range values raise ConfigError
/// naming the key; the result is fully validated.
ExperimentConfig parse_config(const std::string& path, const CliOverrides& overrides = {});

/// Same parser over an already-open stream (for tests and here-docs).
ExperimentConfig parse_config_stream(std::istream& in, const CliOverrides& overrides = {});

const std::string& config_schema_help();

} // namespace orisvlc
