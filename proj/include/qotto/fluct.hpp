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

#include <vector>

#include "qotto/cycle.hpp"
#include "qotto/distrib.hpp"
#include "qotto/thermal.hpp"

// Fluctuation-relation checks for the two-bath engine cycle.  Entropy
// production is accounted per (work, heat) outcome; the reverse process is
// built from the time-reversed strokes, whose flip probabilities coincide
// with the forward ones, and is bookkept at the forward coordinates so that
// detailed comparisons are lookups on identical keys.

namespace qotto {

// (1/kT1 - 1/kT2) * q - w / kT1, dimensionless.  Work counted as extracted.
double entropy_production(double w_khz, double q_khz, const ThermalConfig& thermal);

struct SigmaStats {
  double ift;         // <exp(-sigma)>, equals 1 for any valid cycle
  double mean_sigma;  // <sigma>, non-negative
};

// Integral statistics over a discrete outcome set.
SigmaStats integral_ft(const PeakSet& peaks, const ThermalConfig& thermal);

// Outcome probabilities of the time-reversed cycle, recorded at the
// coordinates of the corresponding forward outcome, so keys in the returned
// set are bitwise identical to the forward ones.
PeakSet reverse_peaks(const TransitionProbabilities& xi, const Populations& cold,
                      const Populations& hot, double nu1_khz, double nu2_khz);

struct FTEntry {
  double w_khz = 0.0;
  double q_khz = 0.0;
  double forward_prob = 0.0;
  double reverse_prob = 0.0;
  double ln_ratio = 0.0;  // log(forward / reverse)
  double sigma = 0.0;     // entropy production at (w, q)
  double residual = 0.0;  // ln_ratio - sigma, zero up to roundoff
};

struct FTReport {
  std::vector<FTEntry> entries;      // outcomes supported by both processes
  std::vector<Peak> forward_only;    // positive forward, zero/absent reverse
  std::vector<Peak> reverse_only;
  double max_abs_residual = 0.0;
  double ift_value = 0.0;
  double mean_sigma = 0.0;
};

// Pointwise comparison of forward and reverse outcome probabilities against
// the entropy production.  Throws std::invalid_argument when the supports do
// not overlap at all.
FTReport detailed_ft_check(const PeakSet& forward, const PeakSet& reverse,
                           const ThermalConfig& thermal);

// Probability-weighted mean of |log(rho(w,q)/rho(-w,-q)) - sigma(w,q)| over a
// broadened grid with negation-symmetric axes.  Finite measurement width
// violates the discrete relation; this quantifies by how much.
double broadened_ft_deviation(const BroadenedGrid& grid, const ThermalConfig& thermal);

}  // namespace qotto
