#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orisvlc/cli.hpp"
#include "orisvlc/config.hpp"

using namespace orisvlc;

namespace {

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"orisvlc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/orisvlc_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("empty config yields the documented defaults") {
    const ExperimentConfig cfg = parse_config("");
    CHECK(cfg.users == 4);
    CHECK(cfg.oris_elements == 64);
    CHECK(cfg.led_rows * cfg.led_cols == 25);
    CHECK(cfg.led_spacing_m == 0.1);
    CHECK(cfg.trials == 200);
    CHECK(cfg.snr_db == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
    CHECK(cfg.optical.pd_area_m2 == 1e-4);
    CHECK(cfg.optical.lambert_order == 1.0);
    CHECK(cfg.optical.concentrator_gain == 5.0);
    CHECK(cfg.optical.oris_reflectivity == 0.9);
    CHECK(cfg.opt.ascent.step_size == 5e-4);
    CHECK(cfg.workplane_height_m == 0.85);
    CHECK(cfg.methods.size() == 4);
}

TEST_CASE("config file: keys, comments and lists are parsed") {
    const std::string path = write_temp("parse.cfg",
                                        "# comment line\n"
                                        "users = 6\n"
                                        "snr_db = 0, 5, 10   # trailing comment\n"
                                        "methods = proposed, zf\n"
                                        "oris_wall = xmax\n"
                                        "channel_scale = none\n"
                                        "trials = 17\n");
    const ExperimentConfig cfg = parse_config(path);
    CHECK(cfg.users == 6);
    CHECK(cfg.snr_db == std::vector<double>{0, 5, 10});
    CHECK(cfg.methods == std::vector<MethodId>{MethodId::Proposed, MethodId::ZF});
    CHECK(cfg.oris_wall == WallId::XMax);
    CHECK(cfg.channel_scale == 1.0);
    CHECK(cfg.trials == 17);
    std::remove(path.c_str());
}

TEST_CASE("overrides win over file values") {
    const std::string path = write_temp("override.cfg", "users = 6\ntrials = 9\n");
    CliOverrides ov;
    ov.users = 2;
    ov.seed = 123;
    const ExperimentConfig cfg = parse_config(path, ov);
    CHECK(cfg.users == 2);
    CHECK(cfg.trials == 9);
    CHECK(cfg.master_seed == 123);
    std::remove(path.c_str());
}

TEST_CASE("config errors name the offending key") {
    const std::string bad_alpha = write_temp("alpha.cfg", "oris_reflectivity = 1.5\n");
    CHECK_THROWS_WITH_AS(parse_config(bad_alpha), "oris_reflectivity must lie in (0,1]",
                         ConfigError);
    std::remove(bad_alpha.c_str());

    const std::string unknown = write_temp("unknown.cfg", "led_power = 3\n");
    CHECK_THROWS_WITH_AS(parse_config(unknown), "unknown configuration key 'led_power'",
                         ConfigError);
    std::remove(unknown.c_str());

    const std::string malformed = write_temp("malformed.cfg", "users 4\n");
    CHECK_THROWS_AS(parse_config(malformed), ConfigError);
    std::remove(malformed.c_str());

    CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), ConfigError);

    const std::string bad_number = write_temp("number.cfg", "trials = many\n");
    CHECK_THROWS_AS(parse_config(bad_number), ConfigError);
    std::remove(bad_number.c_str());
}

TEST_CASE("cli: identical invocations produce byte-identical reports") {
    const std::string cfg = write_temp("sim.cfg",
                                       "led_rows = 3\nled_cols = 3\noris_elements = 12\n"
                                       "users = 2\ntrials = 3\nsnr_db = 5\n"
                                       "methods = proposed, mmse\nmax_ascent_iterations = 150\n");
    const std::string out1 = "/tmp/orisvlc_test_sim1.csv";
    const std::string out2 = "/tmp/orisvlc_test_sim2.csv";
    CHECK(run({"simulate", "--config", cfg, "--seed", "7", "--out", out1}) == 0);
    CHECK(run({"simulate", "--config", cfg, "--seed", "7", "--out", out2}) == 0);
    const std::string a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
    std::remove(cfg.c_str());
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("cli: sweep-oris emits one row per panel size") {
    const std::string cfg = write_temp("sweep.cfg",
                                       "led_rows = 3\nled_cols = 3\nusers = 2\ntrials = 1\n"
                                       "snr_db = 5\nmethods = mmse\nsweep_oris = 0, 6, 12\n");
    const std::string out = "/tmp/orisvlc_test_sweep.csv";
    CHECK(run({"sweep-oris", "--config", cfg, "--out", out}) == 0);
    const std::string text = slurp(out);
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 4); // header + 3 rows
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: dump-channels writes the raw gain table") {
    const std::string cfg = write_temp("dump.cfg",
                                       "led_rows = 2\nled_cols = 2\noris_elements = 6\n"
                                       "users = 2\n");
    const std::string out = "/tmp/orisvlc_test_dump.csv";
    CHECK(run({"dump-channels", "--config", cfg, "--out", out, "--trial", "1"}) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("user,led,element,gain", 0) == 0);
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 1 + 2 * 4 * 7); // header + users*leds*(LOS + 6 elements)
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: bad input maps to the config exit code") {
    CHECK(run({"simulate", "--no-such-flag"}) == 2);
    CHECK(run({"simulate", "--config", "/nonexistent/path.cfg"}) == 2);
    const std::string bad = write_temp("badval.cfg", "oris_reflectivity = 2\n");
    CHECK(run({"simulate", "--config", bad}) == 2);
    std::remove(bad.c_str());
    CHECK(run({}) == 2); // missing subcommand
}

TEST_CASE("cli: validate runs the property suite and exits cleanly") {
    CHECK(run({"validate"}) == 0);
}
