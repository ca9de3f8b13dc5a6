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

#include "qotto/fluct.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>

namespace qotto {

double entropy_production(double w_khz, double q_khz, const ThermalConfig& thermal) {
  validate_thermal(thermal);
  return (1.0 / thermal.kT1_khz - 1.0 / thermal.kT2_khz) * q_khz - w_khz / thermal.kT1_khz;
}

SigmaStats integral_ft(const PeakSet& peaks, const ThermalConfig& thermal) {
  validate_thermal(thermal);
  double mass = 0.0, ift = 0.0, mean = 0.0;
  for (const Peak& p : peaks.peaks) {
    if (!(p.prob >= 0.0))
      throw std::invalid_argument("integral_ft: peak probabilities must be non-negative");
    const double sigma = entropy_production(p.w_khz, p.q_khz, thermal);
    mass += p.prob;
    ift += p.prob * std::exp(-sigma);
    mean += p.prob * sigma;
  }
  if (!(mass > 0.0)) throw std::domain_error("integral_ft: peak set carries no probability");
  return SigmaStats{ift / mass, mean / mass};
}

PeakSet reverse_peaks(const TransitionProbabilities& xi, const Populations& cold,
                      const Populations& hot, double nu1_khz, double nu2_khz) {
  // Reuse the forward enumeration for labels, coordinates and input checks;
  // only the probability assignment differs.  The reversed strokes have the
  // same flip probability as their forward counterparts (the flip matrix is
  // symmetric), the cold preparation applies to the last label and the hot
  // reset to the second.
  std::vector<HistoryRecord> records =
      enumerate_histories(xi, cold, hot, nu1_khz, nu2_khz);
  for (HistoryRecord& r : records) {
    const bool j = r.labels.excited[0];
    const bool k = r.labels.excited[1];
    const bool l = r.labels.excited[2];
    const bool m = r.labels.excited[3];
    const double start = m ? cold.p_excited : cold.p_ground;
    const double com_fac = (l == m) ? 1.0 - xi.xi_com : xi.xi_com;
    const double reset = k ? hot.p_excited : hot.p_ground;
    const double exp_fac = (j == k) ? 1.0 - xi.xi_exp : xi.xi_exp;
    r.prob = start * com_fac * reset * exp_fac;
  }
  return discrete_joint(records);
}

FTReport detailed_ft_check(const PeakSet& forward, const PeakSet& reverse,
                           const ThermalConfig& thermal) {
  validate_thermal(thermal);
  std::map<std::pair<double, double>, double> rev;
  for (const Peak& p : reverse.peaks) rev[{p.w_khz, p.q_khz}] = p.prob;

  FTReport report;
  std::map<std::pair<double, double>, bool> matched;
  double mass = 0.0;
  for (const Peak& p : forward.peaks) {
    const double sigma = entropy_production(p.w_khz, p.q_khz, thermal);
    mass += p.prob;
    report.ift_value += p.prob * std::exp(-sigma);
    report.mean_sigma += p.prob * sigma;
    if (!(p.prob > 0.0)) continue;
    const auto it = rev.find({p.w_khz, p.q_khz});
    if (it == rev.end() || !(it->second > 0.0)) {
      report.forward_only.push_back(p);
      continue;
    }
    matched[it->first] = true;
    FTEntry e;
    e.w_khz = p.w_khz;
    e.q_khz = p.q_khz;
    e.forward_prob = p.prob;
    e.reverse_prob = it->second;
    e.ln_ratio = std::log(p.prob / it->second);
    e.sigma = sigma;
    e.residual = e.ln_ratio - sigma;
    report.entries.push_back(e);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(e.residual));
  }
  for (const Peak& p : reverse.peaks)
    if (p.prob > 0.0 && !matched.count({p.w_khz, p.q_khz})) report.reverse_only.push_back(p);

  if (report.entries.empty())
    throw std::invalid_argument("detailed_ft_check: forward and reverse supports are disjoint");
  if (mass > 0.0) {
    report.ift_value /= mass;
    report.mean_sigma /= mass;
  }
  return report;
}

double broadened_ft_deviation(const BroadenedGrid& grid, const ThermalConfig& thermal) {
  validate_thermal(thermal);
  const std::vector<double>& wa = grid.w_axis_khz;
  const std::vector<double>& qa = grid.q_axis_khz;
  const std::size_t nw = wa.size(), nq = qa.size();
  for (std::size_t i = 0; i < nw; ++i)
    if (std::abs(wa[i] + wa[nw - 1 - i]) > 1e-12 * (1.0 + std::abs(wa[i])))
      throw std::invalid_argument("broadened_ft_deviation: w axis is not negation-symmetric");
  for (std::size_t j = 0; j < nq; ++j)
    if (std::abs(qa[j] + qa[nq - 1 - j]) > 1e-12 * (1.0 + std::abs(qa[j])))
      throw std::invalid_argument("broadened_ft_deviation: q axis is not negation-symmetric");

  auto cell = [](const std::vector<double>& ax, std::size_t i) {
    double h = 0.0;
    if (i > 0) h += 0.5 * (ax[i] - ax[i - 1]);
    if (i + 1 < ax.size()) h += 0.5 * (ax[i + 1] - ax[i]);
    return h;
  };

  double dev = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < nw; ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      const double rho = grid.density[i * nq + j];
      const double mirror = grid.density[(nw - 1 - i) * nq + (nq - 1 - j)];
      if (!(rho > 1e-300) || !(mirror > 1e-300)) continue;
      const double sigma = entropy_production(wa[i], qa[j], thermal);
      const double wgt = rho * cell(wa, i) * cell(qa, j);
      dev += wgt * std::abs(std::log(rho / mirror) - sigma);
      norm += wgt;
    }
  }
  if (!(norm > 0.0))
    throw std::domain_error("broadened_ft_deviation: no usable probability mass on the grid");
  return dev / norm;
}

}  // namespace qotto
