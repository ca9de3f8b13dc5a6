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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qotto/cycle.hpp"
#include "qotto/distrib.hpp"
#include "qotto/fluct.hpp"
#include "qotto/qdyn.hpp"

// Driving-time sweep: run the cycle for a list of driving times, derive the
// per-time distributions and fluctuation checks, and write them out.  All
// files are written with LF line endings and locale-independent number
// formatting, so reruns are byte-identical.

namespace qotto {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
};

struct RunConfig {
  double nu1_khz = 2.0;
  double nu2_khz = 3.6;
  double kT1_khz = 1.60;
  double kT2_khz = 12.21;
  double gamma_khz = 0.15;
  std::vector<double> tau_list_us;  // default_config() fills the 50-point list
  std::size_t steps = kDefaultSteps;
  WorkSign work_sign = WorkSign::kExtracted;
  GridSpec w_grid{-8.0, 8.0, 0.02};
  GridSpec q_grid{-6.0, 6.0, 0.02};
  GridSpec eta_grid{-5.0, 5.0, 0.001};
  double eta_window_lo = -5.0;
  double eta_window_hi = 5.0;
  std::string out_dir = ".";
  std::string format = "csv";
};

// Defaults plus the standard driving-time list: 50 points evenly spaced from
// 100 us to exactly 700 us.
RunConfig default_config();

// Throws ConfigError naming the offending field.
void validate_config(const RunConfig& config);

// Reads a JSON config file and overlays it on the defaults.  Unknown keys
// are rejected by name.  Unreadable files raise IoError; malformed or
// invalid content raises ConfigError.
RunConfig load_config(const std::string& path);

// Plain nodes k*step covering [lo, hi].
std::vector<double> grid_axis(const GridSpec& grid);

// Cell-center nodes (k + 1/2)*step covering [lo, hi]; never contains 0, so
// the ratio density is evaluated away from its logarithmic point.
std::vector<double> eta_axis(const GridSpec& grid);

struct TauArtifacts {
  CycleSummary summary;
  PeakSet peaks;  // work-sign convention applied
  FTReport ft;    // always in extracted-work coordinates
  BroadenedGrid joint;
  EfficiencyDensity eta;
};

TauArtifacts compute_tau(const RunConfig& config, double tau_us);

// Full sweep: ascending driving times, four files per time plus summary.csv
// (or .json).  Computation failures are wrapped with the driving time named;
// write failures raise IoError.
void run_sweep(const RunConfig& config);

// Command-line front end.  Returns the process exit code: 0 success,
// 1 configuration/usage error, 2 computation error, 3 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace qotto
