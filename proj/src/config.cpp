// SPDX-License-Identifier: Apache-2.0
//
// orisvlc — joint LED precoding and reflector alignment for multi-user VLC downlinks

#include "orisvlc/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace orisvlc {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("value for '" + key + "' is not a number: '" + value + "'");
    }
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError("value for '" + key + "' is not an integer: '" + value + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError("value for '" + key + "' is not a boolean: '" + value + "'");
}

WallId parse_wall(const std::string& key, const std::string& value) {
    if (value == "y0") return WallId::YMin;
    if (value == "ymax") return WallId::YMax;
    if (value == "x0") return WallId::XMin;
    if (value == "xmax") return WallId::XMax;
    throw ConfigError("value for '" + key + "' must be one of y0, ymax, x0, xmax");
}

std::vector<MethodId> parse_methods(const std::vector<std::string>& names) {
    std::vector<MethodId> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(method_from_name(n));
    if (out.empty()) throw ConfigError("methods list must not be empty");
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "room_width_m") cfg.room_width_m = parse_double(key, value);
    else if (key == "room_length_m") cfg.room_length_m = parse_double(key, value);
    else if (key == "room_height_m") cfg.room_height_m = parse_double(key, value);
    else if (key == "led_rows") cfg.led_rows = static_cast<int>(parse_int(key, value));
    else if (key == "led_cols") cfg.led_cols = static_cast<int>(parse_int(key, value));
    else if (key == "led_spacing_m") cfg.led_spacing_m = parse_double(key, value);
    else if (key == "oris_elements") cfg.oris_elements = static_cast<int>(parse_int(key, value));
    else if (key == "oris_pitch_m") cfg.oris_pitch_m = parse_double(key, value);
    else if (key == "oris_wall") cfg.oris_wall = parse_wall(key, value);
    else if (key == "oris_center_height_m") cfg.oris_center_height_m = parse_double(key, value);
    else if (key == "users") cfg.users = static_cast<int>(parse_int(key, value));
    else if (key == "workplane_height_m") cfg.workplane_height_m = parse_double(key, value);
    else if (key == "pd_area_m2") cfg.optical.pd_area_m2 = parse_double(key, value);
    else if (key == "lambert_order") cfg.optical.lambert_order = parse_double(key, value);
    else if (key == "fov_semi_angle_rad") cfg.optical.fov_semi_angle_rad = parse_double(key, value);
    else if (key == "filter_gain") cfg.optical.filter_gain = parse_double(key, value);
    else if (key == "concentrator_gain") cfg.optical.concentrator_gain = parse_double(key, value);
    else if (key == "oris_reflectivity") cfg.optical.oris_reflectivity = parse_double(key, value);
    else if (key == "nlos_fov_cutoff") cfg.optical.nlos_fov_cutoff = parse_bool(key, value);
    else if (key == "channel_scale") {
        if (value == "auto") cfg.channel_scale.reset();
        else if (value == "none") cfg.channel_scale = 1.0;
        else cfg.channel_scale = parse_double(key, value);
    }
    else if (key == "step_size") cfg.opt.ascent.step_size = parse_double(key, value);
    else if (key == "max_ascent_iterations") cfg.opt.ascent.max_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "objective_tolerance") cfg.opt.ascent.objective_tolerance = parse_double(key, value);
    else if (key == "projection_alternations") cfg.opt.ascent.projection_alternations = static_cast<int>(parse_int(key, value));
    else if (key == "projection_tolerance") cfg.opt.ascent.projection_tolerance = parse_double(key, value);
    else if (key == "max_restarts") cfg.opt.ascent.max_restarts = static_cast<int>(parse_int(key, value));
    else if (key == "max_outer_iterations") cfg.opt.max_outer_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "outer_tolerance_db") cfg.opt.outer_tolerance_db = parse_double(key, value);
    else if (key == "baseline_uses_oris") cfg.opt.baseline_uses_oris = parse_bool(key, value);
    else if (key == "incremental_greedy") cfg.opt.greedy.incremental = parse_bool(key, value);
    else if (key == "snr_db") {
        std::vector<double> snrs;
        for (const auto& item : split_list(value)) snrs.push_back(parse_double(key, item));
        cfg.snr_db = std::move(snrs);
    }
    else if (key == "trials") cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "methods") cfg.methods = parse_methods(split_list(value));
    else if (key == "seed") cfg.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "out") cfg.output_path = value;
    else if (key == "trial_log") cfg.trial_log_path = value;
    else if (key == "average_in_db") cfg.average_in_db = parse_bool(key, value);
    else if (key == "sweep_users") {
        std::vector<int> ks;
        for (const auto& item : split_list(value)) ks.push_back(static_cast<int>(parse_int(key, item)));
        cfg.sweep_users = std::move(ks);
    }
    else if (key == "sweep_oris") {
        std::vector<int> ms;
        for (const auto& item : split_list(value)) ms.push_back(static_cast<int>(parse_int(key, item)));
        cfg.sweep_oris_sizes = std::move(ms);
    }
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(key, value));
    else throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_overrides(ExperimentConfig& cfg, const CliOverrides& ov) {
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.users) cfg.users = *ov.users;
    if (ov.oris_elements) cfg.oris_elements = *ov.oris_elements;
    if (ov.snr_db) cfg.snr_db = *ov.snr_db;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.methods) cfg.methods = parse_methods(*ov.methods);
    if (ov.out) cfg.output_path = *ov.out;
}

} // namespace

ExperimentConfig parse_config_stream(std::istream& in, const CliOverrides& overrides) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              " is not of the form key = value: '" + line + "'");
        }
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    apply_overrides(cfg, overrides);
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::string& path, const CliOverrides& overrides) {
    if (path.empty()) {
        ExperimentConfig cfg;
        apply_overrides(cfg, overrides);
        cfg.validate();
        return cfg;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_stream(in, overrides);
}

const std::string& config_schema_help() {
    static const std::string help = R"(Configuration keys (flat `key = value`, `#` comments, lists comma-separated):

  room_width_m / room_length_m / room_height_m   room box in meters (4, 4, 3)
  led_rows / led_cols / led_spacing_m            ceiling LED grid (5, 5, 0.1)
  oris_elements                                  reflector element count M, 0 disables (64)
  oris_pitch_m / oris_wall / oris_center_height_m  panel pitch, wall (y0|ymax|x0|xmax), height (0.1, y0, 1.5)
  users / workplane_height_m                     user count K and work plane (4, 0.85)
  pd_area_m2 / lambert_order / fov_semi_angle_rad  photodiode area, Lambert order, FOV (1e-4, 1, pi/3)
  filter_gain / concentrator_gain                optical filter T and concentrator G (1, 5)
  oris_reflectivity                              mirror reflectivity alpha in (0,1] (0.9)
  nlos_fov_cutoff                                apply FOV cutoff on the reflected hop (true)
  channel_scale                                  auto | none | factor (auto = 1/nadir LOS gain)
  step_size / max_ascent_iterations              gradient ascent mu and cap (5e-4, 500)
  objective_tolerance                            relative |delta g| stop (1e-6)
  projection_alternations / projection_tolerance manifold projection budget (500, 1e-10)
  max_restarts                                   step halvings on a rejected run (6)
  max_outer_iterations / outer_tolerance_db      alternation cap and plateau (50, 1e-4)
  baseline_uses_oris                             ZF/MMSE get a greedy alignment (true)
  incremental_greedy                             accumulate assigned elements in scoring (false)
  snr_db                                         SNR grid in dB (0,5,10,15,20,25,30)
  trials                                         Monte-Carlo trials per cell (200)
  methods                                        proposed, proposed-no-oris, zf, mmse
  seed                                           master seed (1)
  out                                            report path (sinr_report.csv)
  trial_log                                      per-trial JSON-lines log path (disabled)
  average_in_db                                  average trial SINRs in dB instead of linear (false)
  sweep_users / sweep_oris                       sweep grids (4,6 / 24,40,64)
  threads                                        worker threads, 0 = all cores (0)
)";
    return help;
}

} // namespace orisvlc
