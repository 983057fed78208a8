#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "orisvlc/experiment.hpp"

using namespace orisvlc;

namespace {

// Small, fast configuration: 3x3 LED grid, 12-element panel, 2 users.
ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.led_rows = 3;
    cfg.led_cols = 3;
    cfg.oris_elements = 12;
    cfg.users = 2;
    cfg.trials = 3;
    cfg.snr_db = {5.0};
    cfg.opt.ascent.max_iterations = 150;
    cfg.master_seed = 9;
    return cfg;
}

} // namespace

TEST_CASE("reference channel gain is the nadir LOS gain") {
    const ExperimentConfig cfg;
    const double expected = 1e-4 * 2.0 / (2.0 * std::numbers::pi * 2.15 * 2.15) * 5.0;
    CHECK(reference_channel_gain(cfg) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(resolved_channel_scale(cfg) == doctest::Approx(1.0 / expected).epsilon(1e-12));

    ExperimentConfig raw = cfg;
    raw.channel_scale = 1.0;
    CHECK(resolved_channel_scale(raw) == 1.0);
}

TEST_CASE("trial scenes are reproducible and share users across methods") {
    const ExperimentConfig cfg = small_config();
    const Scene a = trial_scene(cfg, 2);
    const Scene b = trial_scene(cfg, 2);
    REQUIRE(a.users.size() == b.users.size());
    for (std::size_t i = 0; i < a.users.size(); ++i) {
        CHECK(a.users[i].position == b.users[i].position);
    }
    const Scene c = trial_scene(cfg, 3);
    CHECK(a.users[0].position != c.users[0].position);

    // user draws are prefix-stable in K: the K=4 users start with the K=2 ones
    ExperimentConfig wide = cfg;
    wide.users = 4;
    const Scene d = trial_scene(wide, 2);
    CHECK(d.users[0].position == a.users[0].position);
    CHECK(d.users[1].position == a.users[1].position);
}

TEST_CASE("trial seeds depend only on the master seed and index") {
    ExperimentConfig cfg = small_config();
    ExperimentConfig more = cfg;
    more.trials = 6;
    for (int t = 0; t < 3; ++t) {
        CHECK(trial_seed(cfg, t) == trial_seed(more, t));
    }
    CHECK(trial_seed(cfg, 0) != trial_seed(cfg, 1));
}

TEST_CASE("run_trial is deterministic and paired across methods") {
    const ExperimentConfig cfg = small_config();
    const TrialResult a = run_trial(cfg, 5.0, MethodId::MMSE, 1);
    const TrialResult b = run_trial(cfg, 5.0, MethodId::MMSE, 1);
    CHECK(a.sinr_linear == b.sinr_linear);
    CHECK(a.precoder == b.precoder);
    CHECK(a.trial_seed == run_trial(cfg, 5.0, MethodId::ZF, 1).trial_seed);
}

TEST_CASE("single-user trials reduce to signal power over noise") {
    ExperimentConfig cfg = small_config();
    cfg.users = 1;
    const TrialResult res = run_trial(cfg, 5.0, MethodId::MMSE, 0);
    REQUIRE(res.sinr_linear.size() == 1);

    const Scene scene = trial_scene(cfg, 0);
    const ChannelSet ch = trial_channels(cfg, scene);
    const Eigen::VectorXd h = effective_channel(ch, res.alignment, 0);
    const double wanted = h.dot(res.precoder.col(0));
    const double noise = noise_variance_for_snr_db(5.0);
    CHECK(res.sinr_linear(0) == doctest::Approx(wanted * wanted / noise).epsilon(1e-12));
}

TEST_CASE("monte carlo: single-trial report equals that trial") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 1;
    cfg.methods = {MethodId::MMSE};
    const SinrReport report = monte_carlo(cfg);
    REQUIRE(report.rows.size() == 1);
    const TrialResult trial = run_trial(cfg, 5.0, MethodId::MMSE, 0);
    CHECK(report.rows[0].mean_sinr_db ==
          doctest::Approx(to_db(trial.sinr_linear.mean())).epsilon(1e-12));
    CHECK(report.rows[0].std_sinr_db == 0.0);
    CHECK(report.rows[0].trials == 1);
}

TEST_CASE("monte carlo: one row per (method, snr), sorted") {
    ExperimentConfig cfg = small_config();
    cfg.methods = {MethodId::ZF, MethodId::MMSE};
    cfg.snr_db = {10.0, 0.0, 5.0};
    cfg.trials = 2;
    const SinrReport report = monte_carlo(cfg);
    REQUIRE(report.rows.size() == 6);
    CHECK(report.rows[0].method == "mmse");
    CHECK(report.rows[0].snr_db == 0.0);
    CHECK(report.rows[2].snr_db == 10.0);
    CHECK(report.rows[3].method == "zf");
}

TEST_CASE("monte carlo: thread count does not change the numbers") {
    ExperimentConfig serial = small_config();
    serial.methods = {MethodId::ZF, MethodId::MMSE};
    serial.threads = 1;
    ExperimentConfig parallel = serial;
    parallel.threads = 4;
    const SinrReport a = monte_carlo(serial);
    const SinrReport b = monte_carlo(parallel);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_sinr_db == b.rows[i].mean_sinr_db); // bitwise
        CHECK(a.rows[i].std_sinr_db == b.rows[i].std_sinr_db);
    }
}

TEST_CASE("sweeps produce the full cartesian row grid") {
    ExperimentConfig cfg = small_config();
    cfg.methods = {MethodId::MMSE};
    cfg.trials = 1;
    cfg.sweep_users = {1, 2};
    cfg.sweep_oris_sizes = {0, 6, 12};

    const SinrReport by_users = sweep_snr(cfg);
    CHECK(by_users.rows.size() == 2); // methods x snrs x users = 1*1*2
    CHECK(by_users.rows[0].users == 1);
    CHECK(by_users.rows[1].users == 2);

    const SinrReport by_panel = sweep_oris(cfg);
    CHECK(by_panel.rows.size() == 3);
    CHECK(by_panel.rows[0].oris_elements == 0);
    CHECK(by_panel.rows[2].oris_elements == 12);
}

TEST_CASE("ablation equivalence: no-panel scene matches the ablation method") {
    ExperimentConfig cfg = small_config();
    ExperimentConfig bare = cfg;
    bare.oris_elements = 0;
    const TrialResult ablation = run_trial(cfg, 5.0, MethodId::ProposedNoOris, 1);
    const TrialResult no_panel = run_trial(bare, 5.0, MethodId::Proposed, 1);
    CHECK(ablation.sinr_linear == no_panel.sinr_linear); // bit-identical
}

TEST_CASE("proposed clears the ablation on a small paired run") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 10;
    cfg.methods = {MethodId::Proposed, MethodId::ProposedNoOris};
    cfg.oris_elements = 24;
    const SinrReport report = monte_carlo(cfg);
    REQUIRE(report.rows.size() == 2);
    const auto& proposed = report.rows[0].method == "proposed" ? report.rows[0] : report.rows[1];
    const auto& ablation = report.rows[0].method == "proposed" ? report.rows[1] : report.rows[0];
    CHECK(proposed.mean_sinr_db > ablation.mean_sinr_db);
}

TEST_CASE("report writer: header-only when empty, 6-decimal round trip") {
    std::ostringstream empty;
    write_report(SinrReport{}, empty);
    CHECK(empty.str() == "method,users,oris_elements,snr_db,mean_sinr_db,std_sinr_db,trials\n");

    SinrReport report;
    report.rows.push_back({"proposed", 4, 64, 5.0, -12.345678901, 3.21098765, 200});
    report.rows.push_back({"zf", 4, 64, 5.0, -33.000001, 0.5, 200});
    std::ostringstream out;
    write_report(report, out);

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line); // header
    int read_rows = 0;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string method, field;
        std::getline(row, method, ',');
        std::vector<double> nums;
        while (std::getline(row, field, ',')) nums.push_back(std::stod(field));
        REQUIRE(nums.size() == 6);
        const auto& src = report.rows[read_rows];
        CHECK(method == src.method);
        CHECK(nums[2] == doctest::Approx(src.snr_db).epsilon(1e-9));
        CHECK(std::abs(nums[3] - src.mean_sinr_db) <= 1e-6);
        CHECK(std::abs(nums[4] - src.std_sinr_db) <= 1e-6);
        ++read_rows;
    }
    CHECK(read_rows == 2);
}

TEST_CASE("dB-domain averaging toggle changes the trial aggregation") {
    ExperimentConfig cfg = small_config();
    cfg.methods = {MethodId::MMSE};
    cfg.trials = 3;
    const SinrReport linear_avg = monte_carlo(cfg);
    cfg.average_in_db = true;
    const SinrReport db_avg = monte_carlo(cfg);

    double expected_db = 0.0, expected_linear = 0.0;
    for (int t = 0; t < 3; ++t) {
        const double s = run_trial(cfg, 5.0, MethodId::MMSE, t).sinr_linear.mean();
        expected_linear += s / 3.0;
        expected_db += to_db(s) / 3.0;
    }
    CHECK(linear_avg.rows[0].mean_sinr_db == doctest::Approx(to_db(expected_linear)).epsilon(1e-12));
    CHECK(db_avg.rows[0].mean_sinr_db == doctest::Approx(expected_db).epsilon(1e-12));
    // Jensen: the dB-domain mean never exceeds the linear-domain mean in dB
    CHECK(db_avg.rows[0].mean_sinr_db <= linear_avg.rows[0].mean_sinr_db + 1e-12);
}

TEST_CASE("trial log records one JSON line per (trial, snr, method)") {
    ExperimentConfig cfg = small_config();
    cfg.methods = {MethodId::ZF, MethodId::MMSE};
    cfg.snr_db = {0.0, 5.0};
    cfg.trials = 2;
    cfg.trial_log_path = "/tmp/orisvlc_test_trials.jsonl";
    monte_carlo(cfg);

    std::ifstream in(cfg.trial_log_path);
    REQUIRE(in.good());
    std::string line;
    int lines = 0;
    bool saw_seed = false, saw_positions = false;
    while (std::getline(in, line)) {
        ++lines;
        if (line.find("\"seed\":") != std::string::npos) saw_seed = true;
        if (line.find("\"positions\":[[") != std::string::npos) saw_positions = true;
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
    }
    CHECK(lines == 2 * 2 * 2); // trials x snrs x methods
    CHECK(saw_seed);
    CHECK(saw_positions);
    std::remove(cfg.trial_log_path.c_str());
}

TEST_CASE("config validation catches the documented errors") {
    ExperimentConfig cfg = small_config();
    cfg.snr_db.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.led_spacing_m = 3.0; // 3x3 grid, 6 m footprint in a 4 m room
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.workplane_height_m = 3.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
