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

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qotto/qdyn.hpp"
#include "qotto/thermal.hpp"

// One finite-time Otto cycle: cold preparation at gap nu1, unitary expansion
// nu1 -> nu2, hot thermalization at nu2, unitary compression nu2 -> nu1, with
// projective energy measurements bracketing each driving stroke.  The four
// outcomes define a history; the 16 histories carry the joint statistics of
// extracted work and absorbed heat.

namespace qotto {

// Outcomes of the four measurements in protocol order
// (gap nu1, nu2, nu2, nu1); false = lower level, true = upper level.
struct HistoryLabels {
  std::array<bool, 4> excited{};
};

struct HistoryRecord {
  HistoryLabels labels;
  double w_khz{0.0};
  double q_khz{0.0};
  double prob{0.0};
};

struct Peak {
  double w_khz{0.0};
  double q_khz{0.0};
  double prob{0.0};
};

// Discrete joint distribution: peaks sorted ascending by (w, q).
struct PeakSet {
  std::vector<Peak> peaks;
};

enum class WorkSign { kExtracted, kPerformed };

// Integer expansion (c1, c2) of a history's energy bookkeeping:
//   w = c1*nu1 + c2*nu2,  q = c2*nu2,  c1, c2 in {-1, 0, 1}.
// Derived from level energies +-nu/2 with the extracted-work sign convention
//   w = e1 - e2 + e3 - e4,  q = e3 - e2
// (e_i = energy at measurement i).  Exact integer keys make peak aggregation
// lossless for any nu1, nu2.
std::pair<int, int> history_coefficients(const HistoryLabels& labels);

// (w, q) in kHz for one outcome assignment.
std::pair<double, double> stroke_energies(double nu1_khz, double nu2_khz,
                                          const HistoryLabels& labels);

// All 16 histories in binary-counting order (first measurement = most
// significant bit, lower level = 0).  prob = p_start * flip-or-stay(exp)
// * p_hot * flip-or-stay(com); heating outcome is measurement-independent.
std::vector<HistoryRecord> enumerate_histories(const TransitionProbabilities& xi,
                                               const Populations& cold,
                                               const Populations& hot, double nu1_khz,
                                               double nu2_khz);

// Aggregate histories sharing identical (w, q) into peaks.
PeakSet discrete_joint(const std::vector<HistoryRecord>& histories);

struct CycleResult {
  TransitionProbabilities xi;
  Populations cold;
  Populations hot;
  std::vector<HistoryRecord> histories;
  PeakSet peaks;
};

// Full cycle at given protocols: propagate both strokes, compute bath
// populations, enumerate and aggregate.
CycleResult run_cycle(const DriveProtocol& expansion, const DriveProtocol& compression,
                      const ThermalConfig& thermal, std::size_t steps = kDefaultSteps);
CycleResult run_cycle(double nu1_khz, double nu2_khz, double tau_us,
                      const ThermalConfig& thermal, std::size_t steps = kDefaultSteps);

// Presentation-layer convention: kPerformed negates every w.  The physical
// bookkeeping (and all fluctuation-relation checks) stays in the extracted
// convention.
PeakSet apply_work_sign(PeakSet peaks, WorkSign sign);

}  // namespace qotto
