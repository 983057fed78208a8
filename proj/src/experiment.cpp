// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

namespace orisvlc {

void ExperimentConfig::validate() const {
    RoomBox room{room_width_m, room_length_m, room_height_m};
    room.validate();
    optical.validate();
    opt.validate();
    if (users < 1) throw ConfigError("users must be >= 1");
    if (oris_elements < 0) throw ConfigError("oris_elements must be >= 0");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (snr_db.empty()) throw ConfigError("snr_db list must not be empty");
    if (methods.empty()) throw ConfigError("methods list must not be empty");
    if (threads < 0) throw ConfigError("threads must be >= 0");
    if (channel_scale && !(*channel_scale > 0.0)) {
        throw ConfigError("channel_scale must be > 0");
    }
    if (!(workplane_height_m > 0.0) || !(workplane_height_m < room_height_m)) {
        throw ConfigError("workplane_height_m must lie strictly inside (0, room_height_m)");
    }
    for (int k : sweep_users) {
        if (k < 1) throw ConfigError("sweep_users entries must be >= 1");
    }
    for (int m : sweep_oris_sizes) {
        if (m < 0) throw ConfigError("sweep_oris entries must be >= 0");
    }
    // Fail fast on geometry that cannot fit.
    build_led_grid(room, led_rows, led_cols, led_spacing_m);
    const auto [rows, cols] = oris_grid_shape(oris_elements);
    build_oris_grid(room, oris_wall, rows, cols, oris_pitch_m, oris_center_height_m);
}

double reference_channel_gain(const ExperimentConfig& cfg) {
    const double drop = cfg.room_height_m - cfg.workplane_height_m;
    return cfg.optical.pd_area_m2 * (cfg.optical.lambert_order + 1.0) /
           (2.0 * std::numbers::pi * drop * drop) *
           cfg.optical.filter_gain * cfg.optical.concentrator_gain;
}

double resolved_channel_scale(const ExperimentConfig& cfg) {
    return cfg.channel_scale ? *cfg.channel_scale : 1.0 / reference_channel_gain(cfg);
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial_index) {
    return derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial_index));
}

Scene trial_scene(const ExperimentConfig& cfg, int trial_index) {
    Scene scene;
    scene.room = RoomBox{cfg.room_width_m, cfg.room_length_m, cfg.room_height_m};
    scene.leds = build_led_grid(scene.room, cfg.led_rows, cfg.led_cols, cfg.led_spacing_m);
    const auto [rows, cols] = oris_grid_shape(cfg.oris_elements);
    scene.oris = build_oris_grid(scene.room, cfg.oris_wall, rows, cols, cfg.oris_pitch_m,
                                 cfg.oris_center_height_m);
    const std::uint64_t user_seed = derive_seed(trial_seed(cfg, trial_index), 0);
    scene.users = sample_users(scene.room, cfg.users, cfg.workplane_height_m, user_seed);
    return scene;
}

ChannelSet trial_channels(const ExperimentConfig& cfg, const Scene& scene) {
    return build_channels(scene, cfg.optical).scaled(resolved_channel_scale(cfg));
}

TrialResult run_trial(const ExperimentConfig& cfg, double snr_db, MethodId method,
                      int trial_index) {
    cfg.validate();
    const Scene scene = trial_scene(cfg, trial_index);
    const ChannelSet channels = trial_channels(cfg, scene);
    const double noise_var = noise_variance_for_snr_db(snr_db);
    const std::uint64_t seed = trial_seed(cfg, trial_index);
    MethodResult res =
        run_method(method, channels, noise_var, cfg.opt, derive_seed(seed, 1));
    return TrialResult{std::move(res.sinr.linear), std::move(res.precoder),
                       std::move(res.alignment), seed};
}

namespace {

double sample_std(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

// All (method, snr) cells for one (K, M) point. Trials run in parallel;
// results land in trial-indexed slots so aggregation order is fixed.
void monte_carlo_cells(const ExperimentConfig& cfg, SinrReport& report,
                       std::ostream* trial_log) {
    cfg.validate();
    const int n_methods = static_cast<int>(cfg.methods.size());
    const int n_snrs = static_cast<int>(cfg.snr_db.size());
    const int trials = cfg.trials;

    // cell-major storage: [method][snr][trial] -> per-user linear SINRs
    std::vector<Eigen::VectorXd> stats(static_cast<std::size_t>(n_methods) * n_snrs * trials);
    const auto slot = [&](int mi, int si, int t) -> Eigen::VectorXd& {
        return stats[(static_cast<std::size_t>(mi) * n_snrs + si) * trials + t];
    };
    std::vector<std::vector<Vec3>> user_positions(static_cast<std::size_t>(trials));

    std::atomic<int> next_trial{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;

    const auto worker = [&]() {
        for (;;) {
            const int t = next_trial.fetch_add(1);
            if (t >= trials || failed.load()) break;
            try {
                const Scene scene = trial_scene(cfg, t);
                const ChannelSet channels = trial_channels(cfg, scene);
                const std::uint64_t opt_seed = derive_seed(trial_seed(cfg, t), 1);
                auto& positions = user_positions[static_cast<std::size_t>(t)];
                positions.reserve(scene.users.size());
                for (const auto& user : scene.users) positions.push_back(user.position);
                for (int si = 0; si < n_snrs; ++si) {
                    const double noise_var = noise_variance_for_snr_db(cfg.snr_db[si]);
                    for (int mi = 0; mi < n_methods; ++mi) {
                        MethodResult res = run_method(cfg.methods[mi], channels, noise_var,
                                                      cfg.opt, opt_seed);
                        slot(mi, si, t) = std::move(res.sinr.linear);
                    }
                }
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "trial " + std::to_string(t) + " (seed " +
                                    std::to_string(trial_seed(cfg, t)) +
                                    ") failed: " + e.what();
                }
            }
        }
    };

    int n_threads = cfg.threads > 0
                        ? cfg.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, trials);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(error_message);

    if (trial_log) {
        for (int t = 0; t < trials; ++t) {
            nlohmann::ordered_json users_json = nlohmann::ordered_json::array();
            for (const auto& p : user_positions[static_cast<std::size_t>(t)]) {
                users_json.push_back({p.x(), p.y(), p.z()});
            }
            for (int si = 0; si < n_snrs; ++si) {
                for (int mi = 0; mi < n_methods; ++mi) {
                    nlohmann::ordered_json line;
                    line["trial"] = t;
                    line["seed"] = trial_seed(cfg, t);
                    line["method"] = method_name(cfg.methods[mi]);
                    line["users"] = cfg.users;
                    line["oris_elements"] = cfg.oris_elements;
                    line["snr_db"] = cfg.snr_db[si];
                    line["positions"] = users_json;
                    nlohmann::ordered_json sinr_json = nlohmann::ordered_json::array();
                    const Eigen::VectorXd& linear = slot(mi, si, t);
                    for (Eigen::Index k = 0; k < linear.size(); ++k) {
                        sinr_json.push_back(
                            to_db(std::max(linear(k), std::numeric_limits<double>::min())));
                    }
                    line["sinr_db"] = sinr_json;
                    (*trial_log) << line.dump() << '\n';
                }
            }
        }
    }

    for (int mi = 0; mi < n_methods; ++mi) {
        for (int si = 0; si < n_snrs; ++si) {
            double linear_sum = 0.0;
            std::vector<double> db_values;
            db_values.reserve(static_cast<std::size_t>(trials));
            for (int t = 0; t < trials; ++t) {
                const double s = slot(mi, si, t).mean();
                linear_sum += s;
                db_values.push_back(to_db(std::max(s, std::numeric_limits<double>::min())));
            }
            double db_mean = 0.0;
            for (double v : db_values) db_mean += v;
            db_mean /= static_cast<double>(trials);

            ReportRow row;
            row.method = method_name(cfg.methods[mi]);
            row.users = cfg.users;
            row.oris_elements = cfg.oris_elements;
            row.snr_db = cfg.snr_db[si];
            row.mean_sinr_db = cfg.average_in_db
                                   ? db_mean
                                   : to_db(linear_sum / static_cast<double>(trials));
            row.std_sinr_db = sample_std(db_values);
            row.trials = trials;
            report.rows.push_back(std::move(row));
        }
    }
}

void sort_rows(SinrReport& report) {
    std::sort(report.rows.begin(), report.rows.end(),
              [](const ReportRow& a, const ReportRow& b) {
                  return std::tie(a.method, a.users, a.oris_elements, a.snr_db) <
                         std::tie(b.method, b.users, b.oris_elements, b.snr_db);
              });
}

// RAII wrapper: opens the trial log when configured, else a null stream.
class TrialLogFile {
  public:
    explicit TrialLogFile(const ExperimentConfig& cfg) {
        if (!cfg.trial_log_path.empty()) {
            stream_.open(cfg.trial_log_path);
            if (!stream_) {
                throw IoError("cannot open trial log '" + cfg.trial_log_path +
                              "' for writing");
            }
        }
    }
    std::ostream* get() { return stream_.is_open() ? &stream_ : nullptr; }

  private:
    std::ofstream stream_;
};

} // namespace

SinrReport monte_carlo(const ExperimentConfig& cfg) {
    SinrReport report;
    TrialLogFile log(cfg);
    monte_carlo_cells(cfg, report, log.get());
    sort_rows(report);
    return report;
}

SinrReport sweep_snr(const ExperimentConfig& cfg) {
    if (cfg.sweep_users.empty()) throw ConfigError("sweep_users list must not be empty");
    SinrReport report;
    TrialLogFile log(cfg);
    for (int k : cfg.sweep_users) {
        ExperimentConfig point = cfg;
        point.users = k;
        monte_carlo_cells(point, report, log.get());
    }
    sort_rows(report);
    return report;
}

SinrReport sweep_oris(const ExperimentConfig& cfg) {
    if (cfg.sweep_oris_sizes.empty()) throw ConfigError("sweep_oris list must not be empty");
    SinrReport report;
    TrialLogFile log(cfg);
    for (int m : cfg.sweep_oris_sizes) {
        ExperimentConfig point = cfg;
        point.oris_elements = m;
        monte_carlo_cells(point, report, log.get());
    }
    sort_rows(report);
    return report;
}

void write_report(const SinrReport& report, std::ostream& out) {
    out << "method,users,oris_elements,snr_db,mean_sinr_db,std_sinr_db,trials\n";
    char buf[160];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.6f,%d",
                      row.method.c_str(), row.users, row.oris_elements, row.snr_db,
                      row.mean_sinr_db, row.std_sinr_db, row.trials);
        out << buf << '\n';
    }
}

void emit_report(const SinrReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_report(report, out);
    out.flush();
    if (!out) throw IoError("failed while writing '" + path + "'");
}

} // namespace orisvlc
