// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "orisvlc/config.hpp"
#include "orisvlc/experiment.hpp"
#include "orisvlc/validation.hpp"

namespace orisvlc {

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNumericError = 3, kIoError = 4 };

struct CommonArgs {
    std::string config_path;
    CliOverrides overrides;
};

// Raw option slots; only values the user actually passed become overrides.
struct RawOverrides {
    std::uint64_t seed = 0;
    int users = 0;
    int oris_elements = 0;
    std::vector<double> snr_db;
    int trials = 0;
    std::vector<std::string> methods;
    std::string out;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, RawOverrides& raw) {
    cmd->add_option("--config", args.config_path, "flat key=value config file");
    auto* seed = cmd->add_option("--seed", raw.seed, "master seed");
    auto* users = cmd->add_option("--users", raw.users, "user count K");
    auto* oris = cmd->add_option("--oris-elements", raw.oris_elements, "ORIS element count M");
    auto* snr = cmd->add_option("--snr-db", raw.snr_db, "SNR grid in dB")->delimiter(',');
    auto* trials = cmd->add_option("--trials", raw.trials, "Monte-Carlo trials");
    auto* methods = cmd->add_option("--method", raw.methods,
                                    "methods to run (proposed, proposed-no-oris, zf, mmse)")
                        ->delimiter(',');
    auto* out = cmd->add_option("--out", raw.out, "output CSV path");

    cmd->callback([&args, &raw, seed, users, oris, snr, trials, methods, out]() {
        if (seed->count()) args.overrides.seed = raw.seed;
        if (users->count()) args.overrides.users = raw.users;
        if (oris->count()) args.overrides.oris_elements = raw.oris_elements;
        if (snr->count()) args.overrides.snr_db = raw.snr_db;
        if (trials->count()) args.overrides.trials = raw.trials;
        if (methods->count()) args.overrides.methods = raw.methods;
        if (out->count()) args.overrides.out = raw.out;
    });
}

void print_report_summary(const SinrReport& report, const std::string& path) {
    std::printf("wrote %zu rows to %s\n", report.rows.size(), path.c_str());
    for (const auto& row : report.rows) {
        std::printf("  %-18s K=%d M=%-3d SNR %6.1f dB -> mean SINR %10.3f dB (std %.3f, %d trials)\n",
                    row.method.c_str(), row.users, row.oris_elements, row.snr_db,
                    row.mean_sinr_db, row.std_sinr_db, row.trials);
    }
}

int run_simulation(const CommonArgs& args, SinrReport (*runner)(const ExperimentConfig&)) {
    const ExperimentConfig cfg = parse_config(args.config_path, args.overrides);
    const SinrReport report = runner(cfg);
    emit_report(report, cfg.output_path);
    print_report_summary(report, cfg.output_path);
    return kOk;
}

int run_validate() {
    const std::vector<CheckResult> results = run_validation_suite();
    bool all_passed = true;
    std::printf("%-55s %-6s %s\n", "check", "result", "detail");
    for (const auto& r : results) {
        std::printf("%-55s %-6s %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                    r.detail.c_str());
        all_passed = all_passed && r.passed;
    }
    return all_passed ? kOk : kNumericError;
}

int run_dump_channels(const CommonArgs& args, int trial_index) {
    const ExperimentConfig cfg = parse_config(args.config_path, args.overrides);
    const Scene scene = trial_scene(cfg, trial_index);
    const ChannelSet channels = build_channels(scene, cfg.optical); // raw SI gains
    std::ofstream out(cfg.output_path);
    if (!out) throw IoError("cannot open '" + cfg.output_path + "' for writing");
    write_channel_csv(channels, out);
    out.flush();
    if (!out) throw IoError("failed while writing '" + cfg.output_path + "'");
    std::printf("wrote channel dump for trial %d (seed %llu) to %s\n", trial_index,
                static_cast<unsigned long long>(trial_seed(cfg, trial_index)),
                cfg.output_path.c_str());
    return kOk;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"joint LED precoding and ORIS alignment simulator for multi-user VLC downlinks"};
    app.require_subcommand(1);
    app.footer(config_schema_help());

    CommonArgs sim_args, snr_args, oris_args, dump_args;
    RawOverrides sim_raw, snr_raw, oris_raw, dump_raw;
    int dump_trial = 0;

    auto* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo SINR at the configured (K, M) over the SNR grid");
    add_common_options(simulate, sim_args, sim_raw);

    auto* sweep_snr_cmd = app.add_subcommand(
        "sweep-snr", "SNR sweep for each user count in sweep_users");
    add_common_options(sweep_snr_cmd, snr_args, snr_raw);

    auto* sweep_oris_cmd = app.add_subcommand(
        "sweep-oris", "SNR sweep for each panel size in sweep_oris");
    add_common_options(sweep_oris_cmd, oris_args, oris_raw);

    auto* validate_cmd = app.add_subcommand(
        "validate", "run the numerical property suite and print a pass/fail table");
    (void)validate_cmd;

    auto* dump_cmd = app.add_subcommand(
        "dump-channels", "write the raw channel gains of one seeded scene as CSV");
    add_common_options(dump_cmd, dump_args, dump_raw);
    dump_cmd->add_option("--trial", dump_trial, "trial index to dump")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (simulate->parsed()) return run_simulation(sim_args, &monte_carlo);
        if (sweep_snr_cmd->parsed()) return run_simulation(snr_args, &sweep_snr);
        if (sweep_oris_cmd->parsed()) return run_simulation(oris_args, &sweep_oris);
        if (validate_cmd->parsed()) return run_validate();
        if (dump_cmd->parsed()) return run_dump_channels(dump_args, dump_trial);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const AscentFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const SingularProjectionError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const GeometryError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const DimensionError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const LimitError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

} // namespace orisvlc
