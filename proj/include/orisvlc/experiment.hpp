// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orisvlc/channel.hpp"
#include "orisvlc/geometry.hpp"
#include "orisvlc/optimizer.hpp"

namespace orisvlc {

/// Full description of a Monte-Carlo run: scene layout, optics, optimization
/// knobs, SNR grid, trial count and seeding.
struct ExperimentConfig {
    // scene
    double room_width_m = 4.0;
    double room_length_m = 4.0;
    double room_height_m = 3.0;
    int led_rows = 5;
    int led_cols = 5;
    double led_spacing_m = 0.1; // compact centered fixture; keeps user channels correlated
    int oris_elements = 64; // 0 = no-reflector ablation scene
    double oris_pitch_m = 0.1;
    WallId oris_wall = WallId::YMin;
    double oris_center_height_m = 1.5;
    int users = 4;
    double workplane_height_m = 0.85;
    OpticalParams optical;

    // optimization
    OptimizerConfig opt;

    // Monte-Carlo protocol
    std::vector<double> snr_db = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    int trials = 200;
    std::vector<MethodId> methods = all_methods();
    std::uint64_t master_seed = 1;
    std::string output_path = "sinr_report.csv";

    /// Multiplier applied to all channel gains before optimization; nullopt
    /// selects the reference-gain normalization (1 / nadir LOS gain), which
    /// keeps the fixed Table-style step size meaningful.
    std::optional<double> channel_scale;

    bool average_in_db = false; // report dB-domain trial averages instead of linear
    std::vector<int> sweep_users = {4, 6};
    std::vector<int> sweep_oris_sizes = {24, 40, 64};
    int threads = 0; // 0 = hardware concurrency

    /// When set, every (trial, SNR, method) run appends one JSON line with the
    /// trial seed, user positions and per-user SINRs in dB.
    std::string trial_log_path;

    void validate() const; // throws ConfigError naming the offending key
};

struct ReportRow {
    std::string method;
    int users = 0;
    int oris_elements = 0;
    double snr_db = 0.0;
    double mean_sinr_db = 0.0;
    double std_sinr_db = 0.0;
    int trials = 0;
};

struct SinrReport {
    std::vector<ReportRow> rows;
};

struct TrialResult {
    Eigen::VectorXd sinr_linear;
    Eigen::MatrixXd precoder;
    AlignmentMatrix alignment;
    std::uint64_t trial_seed = 0;
};

/// Nadir LOS gain A_p(m+1)TG / (2 pi (height - workplane)^2); the `auto`
/// channel normalization is its reciprocal.
double reference_channel_gain(const ExperimentConfig& config);
double resolved_channel_scale(const ExperimentConfig& config);

std::uint64_t trial_seed(const ExperimentConfig& config, int trial_index);

/// Scene for one trial: fixed room/LED/panel geometry, users drawn from the
/// trial seed. Methods and SNR points at equal trial index share it exactly.
Scene trial_scene(const ExperimentConfig& config, int trial_index);

/// build_channels on the trial scene with the resolved scale applied.
ChannelSet trial_channels(const ExperimentConfig& config, const Scene& scene);

/// One (trial, SNR, method) run; bit-reproducible from the config.
TrialResult run_trial(const ExperimentConfig& config, double snr_db, MethodId method,
                      int trial_index);

/// methods x SNR grid at the configured (K, M): per-cell linear-domain trial
/// average in dB plus the dB-domain sample standard deviation.
SinrReport monte_carlo(const ExperimentConfig& config);

/// monte_carlo over K in sweep_users (the user-count comparison).
SinrReport sweep_snr(const ExperimentConfig& config);

/// monte_carlo over M in sweep_oris_sizes (the panel-size comparison).
SinrReport sweep_oris(const ExperimentConfig& config);

/// Header "method,users,oris_elements,snr_db,mean_sinr_db,std_sinr_db,trials";
/// floats with 6 decimals; rows sorted by (method, K, M, snr).
void write_report(const SinrReport& report, std::ostream& out);
void emit_report(const SinrReport& report, const std::string& path); // IoError on failure

} // namespace orisvlc
