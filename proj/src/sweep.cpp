// Copyright 2026 The qotto authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qotto/sweep.hpp"

#include <CLI11.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include "qotto/thermal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace qotto {

namespace {

std::string fmt(double v, int precision) {
  char buf[48];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::string fmt17(double v) { return fmt(v, 17); }

void require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("config field '" + where + "' must be a number");
}

double as_number(const json& v, const std::string& where) {
  require_number(v, where);
  return v.get<double>();
}

GridSpec parse_grid(const json& v, const std::string& where) {
  if (!v.is_object())
    throw ConfigError("config field '" + where + "' must be an object with lo/hi/step");
  GridSpec g;
  bool has_lo = false, has_hi = false, has_step = false;
  for (const auto& [key, sub] : v.items()) {
    if (key == "lo") {
      g.lo = as_number(sub, where + ".lo");
      has_lo = true;
    } else if (key == "hi") {
      g.hi = as_number(sub, where + ".hi");
      has_hi = true;
    } else if (key == "step") {
      g.step = as_number(sub, where + ".step");
      has_step = true;
    } else {
      throw ConfigError("config field '" + where + "' has unknown key '" + key + "'");
    }
  }
  if (!has_lo || !has_hi || !has_step)
    throw ConfigError("config field '" + where + "' needs lo, hi and step");
  return g;
}

WorkSign parse_work_sign(const std::string& s) {
  if (s == "extracted") return WorkSign::kExtracted;
  if (s == "performed") return WorkSign::kPerformed;
  throw ConfigError("config field 'work_sign' must be \"extracted\" or \"performed\"");
}

void check_positive(double v, const char* field) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw ConfigError(std::string("config field '") + field + "' must be a positive number");
}

void check_grid(const GridSpec& g, const char* field) {
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !std::isfinite(g.step) ||
      !(g.step > 0.0) || !(g.lo < g.hi))
    throw ConfigError(std::string("config field '") + field +
                      "' needs finite lo < hi and step > 0");
}

std::string csv_of_peaks(const PeakSet& peaks) {
  std::string out = "w_khz,q_khz,prob\n";
  for (const Peak& p : peaks.peaks)
    out += fmt17(p.w_khz) + "," + fmt17(p.q_khz) + "," + fmt17(p.prob) + "\n";
  return out;
}

std::string csv_of_grid(const BroadenedGrid& grid) {
  std::string out = "w_khz,q_khz,density\n";
  out.reserve(48 * grid.density.size());
  const std::size_t nq = grid.q_axis_khz.size();
  for (std::size_t i = 0; i < grid.w_axis_khz.size(); ++i)
    for (std::size_t j = 0; j < nq; ++j)
      out += fmt17(grid.w_axis_khz[i]) + "," + fmt17(grid.q_axis_khz[j]) + "," +
             fmt17(grid.density[i * nq + j]) + "\n";
  return out;
}

std::string csv_of_eta(const EfficiencyDensity& ed) {
  std::string out = "eta,density\n";
  out.reserve(48 * ed.density.size());
  for (std::size_t i = 0; i < ed.eta_axis.size(); ++i)
    out += fmt17(ed.eta_axis[i]) + "," + fmt17(ed.density[i]) + "\n";
  return out;
}

std::string csv_of_ft(const FTReport& ft) {
  std::string out = "w_khz,q_khz,ln_ratio,sigma,residual\n";
  for (const FTEntry& e : ft.entries)
    out += fmt17(e.w_khz) + "," + fmt17(e.q_khz) + "," + fmt17(e.ln_ratio) + "," +
           fmt17(e.sigma) + "," + fmt17(e.residual) + "\n";
  return out;
}

std::string csv_of_summaries(const std::vector<CycleSummary>& rows) {
  std::string out =
      "tau_us,xi_exp,xi_com,pearson,eta_th,mean_eta,std_eta,mean_W_khz,mean_Q_khz,"
      "mean_sigma,ift\n";
  for (const CycleSummary& s : rows)
    out += fmt17(s.tau_us) + "," + fmt17(s.xi_exp) + "," + fmt17(s.xi_com) + "," +
           fmt17(s.pearson) + "," + fmt17(s.eta_th) + "," + fmt17(s.mean_eta) + "," +
           fmt17(s.std_eta) + "," + fmt17(s.mean_w_khz) + "," + fmt17(s.mean_q_khz) + "," +
           fmt17(s.mean_sigma) + "," + fmt17(s.ift) + "\n";
  return out;
}

json json_of_peaks(const PeakSet& peaks) {
  json arr = json::array();
  for (const Peak& p : peaks.peaks)
    arr.push_back({{"w_khz", p.w_khz}, {"q_khz", p.q_khz}, {"prob", p.prob}});
  return arr;
}

json json_of_grid(const BroadenedGrid& grid) {
  return json{{"w_axis_khz", grid.w_axis_khz},
              {"q_axis_khz", grid.q_axis_khz},
              {"gamma_khz", grid.gamma_khz},
              {"density", grid.density}};
}

json json_of_eta(const EfficiencyDensity& ed) {
  return json{{"eta", ed.eta_axis}, {"density", ed.density}};
}

json json_of_ft(const FTReport& ft) {
  json arr = json::array();
  for (const FTEntry& e : ft.entries)
    arr.push_back({{"w_khz", e.w_khz},
                   {"q_khz", e.q_khz},
                   {"ln_ratio", e.ln_ratio},
                   {"sigma", e.sigma},
                   {"residual", e.residual}});
  return arr;
}

json json_of_summaries(const std::vector<CycleSummary>& rows) {
  json arr = json::array();
  for (const CycleSummary& s : rows)
    arr.push_back({{"tau_us", s.tau_us},
                   {"xi_exp", s.xi_exp},
                   {"xi_com", s.xi_com},
                   {"pearson", s.pearson},
                   {"eta_th", s.eta_th},
                   {"mean_eta", s.mean_eta},
                   {"std_eta", s.std_eta},
                   {"mean_W_khz", s.mean_w_khz},
                   {"mean_Q_khz", s.mean_q_khz},
                   {"mean_sigma", s.mean_sigma},
                   {"ift", s.ift}});
  return arr;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  for (int k = 0; k < 50; ++k) cfg.tau_list_us.push_back(100.0 + 600.0 * k / 49.0);
  return cfg;
}

void validate_config(const RunConfig& config) {
  check_positive(config.nu1_khz, "nu1_khz");
  check_positive(config.nu2_khz, "nu2_khz");
  check_positive(config.kT1_khz, "kT1_khz");
  check_positive(config.kT2_khz, "kT2_khz");
  check_positive(config.gamma_khz, "gamma_khz");
  if (config.tau_list_us.empty())
    throw ConfigError("config field 'tau_list_us' must not be empty");
  for (double tau : config.tau_list_us)
    if (!std::isfinite(tau) || !(tau > 0.0))
      throw ConfigError("config field 'tau_list_us' entries must be positive numbers");
  if (config.steps == 0) throw ConfigError("config field 'steps' must be at least 1");
  check_grid(config.w_grid, "w_grid");
  check_grid(config.q_grid, "q_grid");
  check_grid(config.eta_grid, "eta_grid");
  if (!std::isfinite(config.eta_window_lo) || !std::isfinite(config.eta_window_hi) ||
      !(config.eta_window_lo < config.eta_window_hi))
    throw ConfigError("config field 'eta_window' needs finite lo < hi");
  if (config.format != "csv" && config.format != "json")
    throw ConfigError("config field 'format' must be \"csv\" or \"json\"");
  if (config.out_dir.empty()) throw ConfigError("config field 'out_dir' must not be empty");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");

  RunConfig cfg = default_config();
  for (const auto& [key, value] : j.items()) {
    if (key == "nu1_khz") {
      cfg.nu1_khz = as_number(value, key);
    } else if (key == "nu2_khz") {
      cfg.nu2_khz = as_number(value, key);
    } else if (key == "kT1_khz") {
      cfg.kT1_khz = as_number(value, key);
    } else if (key == "kT2_khz") {
      cfg.kT2_khz = as_number(value, key);
    } else if (key == "gamma_khz") {
      cfg.gamma_khz = as_number(value, key);
    } else if (key == "tau_list_us") {
      if (!value.is_array())
        throw ConfigError("config field 'tau_list_us' must be an array of numbers");
      cfg.tau_list_us.clear();
      for (const json& t : value) cfg.tau_list_us.push_back(as_number(t, "tau_list_us[]"));
    } else if (key == "steps") {
      if (!value.is_number_integer() || value.get<long long>() < 0)
        throw ConfigError("config field 'steps' must be a non-negative integer");
      cfg.steps = value.get<std::size_t>();
    } else if (key == "work_sign") {
      if (!value.is_string())
        throw ConfigError("config field 'work_sign' must be a string");
      cfg.work_sign = parse_work_sign(value.get<std::string>());
    } else if (key == "eta_window") {
      if (!value.is_array() || value.size() != 2)
        throw ConfigError("config field 'eta_window' must be an array [lo, hi]");
      cfg.eta_window_lo = as_number(value[0], "eta_window[0]");
      cfg.eta_window_hi = as_number(value[1], "eta_window[1]");
    } else if (key == "w_grid") {
      cfg.w_grid = parse_grid(value, key);
    } else if (key == "q_grid") {
      cfg.q_grid = parse_grid(value, key);
    } else if (key == "eta_grid") {
      cfg.eta_grid = parse_grid(value, key);
    } else if (key == "out_dir") {
      if (!value.is_string()) throw ConfigError("config field 'out_dir' must be a string");
      cfg.out_dir = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) throw ConfigError("config field 'format' must be a string");
      cfg.format = value.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

std::vector<double> grid_axis(const GridSpec& grid) {
  check_grid(grid, "grid");
  const long long k_min = std::llround(std::ceil(grid.lo / grid.step - 1e-9));
  const long long k_max = std::llround(std::floor(grid.hi / grid.step + 1e-9));
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (long long k = k_min; k <= k_max; ++k) axis.push_back(static_cast<double>(k) * grid.step);
  return axis;
}

std::vector<double> eta_axis(const GridSpec& grid) {
  check_grid(grid, "eta_grid");
  // Centers (k + 1/2) * step whose cells [k*step, (k+1)*step] touch [lo, hi].
  const long long k_min = std::llround(std::ceil(grid.lo / grid.step - 1.0 - 1e-9));
  const long long k_max = std::llround(std::floor(grid.hi / grid.step + 1e-9));
  std::vector<double> axis;
  axis.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (long long k = k_min; k <= k_max; ++k)
    axis.push_back((static_cast<double>(k) + 0.5) * grid.step);
  return axis;
}

TauArtifacts compute_tau(const RunConfig& config, double tau_us) {
  validate_config(config);
  const ThermalConfig thermal{config.kT1_khz, config.kT2_khz};
  const CycleResult cycle =
      run_cycle(config.nu1_khz, config.nu2_khz, tau_us, thermal, config.steps);

  TauArtifacts art;
  art.peaks = apply_work_sign(cycle.peaks, config.work_sign);
  art.ft = detailed_ft_check(
      cycle.peaks,
      reverse_peaks(cycle.xi, cycle.cold, cycle.hot, config.nu1_khz, config.nu2_khz),
      thermal);
  art.joint =
      broaden_joint(art.peaks, config.gamma_khz, grid_axis(config.w_grid),
                    grid_axis(config.q_grid));
  art.eta = efficiency_distribution(art.peaks, config.gamma_khz, eta_axis(config.eta_grid));
  const auto [mean_eta, std_eta] =
      eta_moments(art.eta, config.eta_window_lo, config.eta_window_hi);
  const Macroscopic mac = macroscopic(art.peaks);

  art.summary.tau_us = tau_us;
  art.summary.xi_exp = cycle.xi.xi_exp;
  art.summary.xi_com = cycle.xi.xi_com;
  art.summary.pearson = pearson(cycle.peaks, config.work_sign);
  art.summary.eta_th = mac.eta_th;
  art.summary.mean_eta = mean_eta;
  art.summary.std_eta = std_eta;
  art.summary.mean_w_khz = mac.mean_w_khz;
  art.summary.mean_q_khz = mac.mean_q_khz;
  art.summary.mean_sigma = art.ft.mean_sigma;
  art.summary.ift = art.ft.ift_value;
  return art;
}

void run_sweep(const RunConfig& config) {
  validate_config(config);
  std::vector<double> taus = config.tau_list_us;
  std::sort(taus.begin(), taus.end());

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir))
    throw IoError("cannot create output directory " + config.out_dir);
  const fs::path dir(config.out_dir);
  const bool as_json = (config.format == "json");
  const char* ext = as_json ? ".json" : ".csv";

  std::vector<CycleSummary> rows;
  for (double tau : taus) {
    TauArtifacts art;
    try {
      art = compute_tau(config, tau);
    } catch (const std::exception& e) {
      throw std::runtime_error("driving time " + fmt(tau, 10) + " us: " + e.what());
    }
    const std::string tag = fmt(tau, 10);
    if (as_json) {
      write_file(dir / ("peaks_tau" + tag + ext), json_of_peaks(art.peaks).dump(2) + "\n");
      write_file(dir / ("joint_tau" + tag + ext), json_of_grid(art.joint).dump(2) + "\n");
      write_file(dir / ("eta_tau" + tag + ext), json_of_eta(art.eta).dump(2) + "\n");
      write_file(dir / ("ft_tau" + tag + ext), json_of_ft(art.ft).dump(2) + "\n");
    } else {
      write_file(dir / ("peaks_tau" + tag + ext), csv_of_peaks(art.peaks));
      write_file(dir / ("joint_tau" + tag + ext), csv_of_grid(art.joint));
      write_file(dir / ("eta_tau" + tag + ext), csv_of_eta(art.eta));
      write_file(dir / ("ft_tau" + tag + ext), csv_of_ft(art.ft));
    }
    rows.push_back(art.summary);
  }
  if (as_json)
    write_file(dir / "summary.json", json_of_summaries(rows).dump(2) + "\n");
  else
    write_file(dir / "summary.csv", csv_of_summaries(rows));
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Spin-1/2 quantum Otto engine: finite-time work and heat statistics"};
  std::string config_path, out_dir, format, work_sign;
  std::vector<double> taus;
  long long steps = -1;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out-dir", out_dir, "output directory (overrides config)");
  app.add_option("--tau", taus, "driving time in us, repeatable (overrides config)");
  app.add_option("--format", format, "output format: csv or json (overrides config)");
  app.add_option("--work-sign", work_sign,
                 "work sign convention: extracted or performed (overrides config)");
  app.add_option("--steps", steps, "propagator steps per stroke (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!taus.empty()) cfg.tau_list_us = taus;
    if (!format.empty()) cfg.format = format;
    if (!work_sign.empty()) cfg.work_sign = parse_work_sign(work_sign);
    if (steps >= 0) cfg.steps = static_cast<std::size_t>(steps);
    validate_config(cfg);
    run_sweep(cfg);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qotto
