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

#include "qotto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qotto {

namespace {

void check_nus(double nu1, double nu2) {
  if (!(nu1 > 0.0) || !(nu2 > 0.0))
    throw std::domain_error("cycle: gap endpoints must be positive");
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0, 1]");
}

void check_inputs(const TransitionProbabilities& xi, const Populations& cold,
                  const Populations& hot) {
  check_probability(xi.xi_exp, "xi_exp");
  check_probability(xi.xi_com, "xi_com");
  for (const Populations* p : {&cold, &hot}) {
    check_probability(p->p_ground, "p_ground");
    check_probability(p->p_excited, "p_excited");
    if (std::abs(p->p_ground + p->p_excited - 1.0) > 1.0e-12)
      throw std::invalid_argument("populations not normalized");
  }
}

}  // namespace

std::pair<int, int> history_coefficients(const HistoryLabels& labels) {
  auto sign = [](bool excited) { return excited ? 1 : -1; };
  const int c1 = (sign(labels.excited[0]) - sign(labels.excited[3])) / 2;
  const int c2 = (sign(labels.excited[2]) - sign(labels.excited[1])) / 2;
  return {c1, c2};
}

std::pair<double, double> stroke_energies(double nu1_khz, double nu2_khz,
                                          const HistoryLabels& labels) {
  check_nus(nu1_khz, nu2_khz);
  const auto [c1, c2] = history_coefficients(labels);
  return {static_cast<double>(c1) * nu1_khz + static_cast<double>(c2) * nu2_khz,
          static_cast<double>(c2) * nu2_khz};
}

std::vector<HistoryRecord> enumerate_histories(const TransitionProbabilities& xi,
                                               const Populations& cold,
                                               const Populations& hot, double nu1_khz,
                                               double nu2_khz) {
  check_nus(nu1_khz, nu2_khz);
  check_inputs(xi, cold, hot);
  std::vector<HistoryRecord> out;
  out.reserve(16);
  for (int idx = 0; idx < 16; ++idx) {
    HistoryRecord rec;
    for (int m = 0; m < 4; ++m) rec.labels.excited[static_cast<std::size_t>(m)] = ((idx >> (3 - m)) & 1) != 0;
    const auto [w, q] = stroke_energies(nu1_khz, nu2_khz, rec.labels);
    rec.w_khz = w;
    rec.q_khz = q;
    const auto& l = rec.labels.excited;
    const double p_start = l[0] ? cold.p_excited : cold.p_ground;
    const double f_exp = (l[0] != l[1]) ? xi.xi_exp : 1.0 - xi.xi_exp;
    const double p_hot = l[2] ? hot.p_excited : hot.p_ground;
    const double f_com = (l[2] != l[3]) ? xi.xi_com : 1.0 - xi.xi_com;
    rec.prob = p_start * f_exp * p_hot * f_com;
    out.push_back(rec);
  }
  return out;
}

PeakSet discrete_joint(const std::vector<HistoryRecord>& histories) {
  // Key on the integer coefficient pair: exact aggregation, no floating-point
  // peak merging.  Coordinates are taken from the records (identical doubles
  // for identical keys by construction).
  std::map<std::pair<int, int>, Peak> acc;
  for (const HistoryRecord& h : histories) {
    if (!(h.prob >= 0.0)) throw std::invalid_argument("discrete_joint: negative probability");
    const auto key = history_coefficients(h.labels);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, Peak{h.w_khz, h.q_khz, h.prob});
    } else {
      it->second.prob += h.prob;
    }
  }
  PeakSet ps;
  ps.peaks.reserve(acc.size());
  for (const auto& [key, peak] : acc) ps.peaks.push_back(peak);
  std::sort(ps.peaks.begin(), ps.peaks.end(), [](const Peak& a, const Peak& b) {
    return a.w_khz != b.w_khz ? a.w_khz < b.w_khz : a.q_khz < b.q_khz;
  });
  return ps;
}

CycleResult run_cycle(const DriveProtocol& expansion, const DriveProtocol& compression,
                      const ThermalConfig& thermal, std::size_t steps) {
  if (expansion.direction != StrokeDirection::kExpansion ||
      compression.direction != StrokeDirection::kCompression)
    throw std::invalid_argument("run_cycle: protocol directions do not match roles");
  if (expansion.nu1_khz != compression.nu1_khz || expansion.nu2_khz != compression.nu2_khz ||
      expansion.tau_us != compression.tau_us)
    throw std::invalid_argument("run_cycle: stroke protocols disagree on parameters");
  validate_thermal(thermal);

  CycleResult res;
  const ComplexMat2 ue = propagate(expansion, steps);
  const ComplexMat2 uc = propagate(compression, steps);
  res.xi.xi_exp = transition_probability(
      ue, eigensystem(hamiltonian_expansion(0.0, expansion)),
      eigensystem(hamiltonian_expansion(expansion.tau_us, expansion)));
  res.xi.xi_com = transition_probability(
      uc, eigensystem(hamiltonian_compression(0.0, compression)),
      eigensystem(hamiltonian_compression(compression.tau_us, compression)));
  res.cold = gibbs_populations(expansion.nu1_khz, thermal.kT1_khz);
  res.hot = gibbs_populations(expansion.nu2_khz, thermal.kT2_khz);
  res.histories =
      enumerate_histories(res.xi, res.cold, res.hot, expansion.nu1_khz, expansion.nu2_khz);
  res.peaks = discrete_joint(res.histories);
  return res;
}

CycleResult run_cycle(double nu1_khz, double nu2_khz, double tau_us,
                      const ThermalConfig& thermal, std::size_t steps) {
  return run_cycle(expansion_protocol(nu1_khz, nu2_khz, tau_us),
                   compression_protocol(nu1_khz, nu2_khz, tau_us), thermal, steps);
}

PeakSet apply_work_sign(PeakSet peaks, WorkSign sign) {
  if (sign == WorkSign::kExtracted) return peaks;
  for (Peak& p : peaks.peaks) p.w_khz = -p.w_khz;
  std::sort(peaks.peaks.begin(), peaks.peaks.end(), [](const Peak& a, const Peak& b) {
    return a.w_khz != b.w_khz ? a.w_khz < b.w_khz : a.q_khz < b.q_khz;
  });
  return peaks;
}

}  // namespace qotto
