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

#include <utility>
#include <vector>

#include "qotto/cycle.hpp"

// Lorentzian broadening of the discrete joint distribution, the stochastic
// efficiency density with its quadrature oracle, and summary statistics.
//
// Moment conventions: Pearson rho and the (W, Q) means are computed on the
// DISCRETE peak set — the Lorentzian-broadened density has no finite
// variance.  Efficiency moments instead follow the windowed broadened
// density (default window [-5, 5]).

namespace qotto {

// Unit-area Lorentzian of HWHM gamma centered at x0.
double lorentzian(double x, double x0, double gamma);

struct BroadenedGrid {
  std::vector<double> w_axis_khz;
  std::vector<double> q_axis_khz;
  std::vector<double> density;  // row-major, density[iw * q_axis.size() + iq], per kHz^2
  double gamma_khz{0.0};
};

BroadenedGrid broaden_joint(const PeakSet& peaks, double gamma_khz,
                            std::vector<double> w_axis_khz, std::vector<double> q_axis_khz);

// Closed-form density of the efficiency contribution of one (w, q) peak with
// both variables broadened by HWHM gamma:
//
//   L(w, q, g, eta) = g / (pi^2 D1 D2) * {
//       g*(-g^2 + eta^2*(g^2 + q^2) - w^2) * (log(eta^2) + log(g^2+q^2) - log(g^2+w^2))
//     + 2*atan(q/g) * (eta^2*q*(g^2+q^2) - 2*eta*w*(g^2+q^2) + q*(g^2+w^2))
//     + 2*atan(w/g) * (eta^2*w*(g^2+q^2) - 2*eta*q*(g^2+w^2) + w*(g^2+w^2)) }
//   D1 = g^2 (eta-1)^2 + (eta q - w)^2,   D2 = g^2 (eta+1)^2 + (eta q - w)^2.
//
// The density has a non-removable logarithmic singularity at eta = 0 and a
// removable 0/0 point at eta = +-1 when w = +-q; both are guarded (thrown as
// domain errors naming eta) rather than evaluated.
double efficiency_peak_density(double w_khz, double q_khz, double gamma_khz, double eta);

// Independent ground truth: adaptive quadrature of the 1D reduction
//   integral of |t| * Lor(eta t; w, gamma) * Lor(t; q, gamma) dt
// over the real line, to the given absolute tolerance.
double efficiency_peak_quadrature(double w_khz, double q_khz, double gamma_khz, double eta,
                                  double abs_tol = 1.0e-10);

struct EfficiencyDensity {
  std::vector<double> eta_axis;
  std::vector<double> density;
};

// Probability-weighted sum of per-peak L evaluations on the given axis.
EfficiencyDensity efficiency_distribution(const PeakSet& peaks, double gamma_khz,
                                          const std::vector<double>& eta_axis);

// Default eta axis: step 0.001 covering [-5, 5].  Nodes sit at half-step
// offsets (k + 1/2)*step so the grid never contains the log-singular point
// eta = 0 nor the removable points eta = +-1.
std::vector<double> default_eta_axis();

// Windowed trapezoidal mean and standard deviation of the efficiency
// density, renormalized over the window; interpolates at the window edges.
std::pair<double, double> eta_moments(const EfficiencyDensity& ed, double window_lo = -5.0,
                                      double window_hi = 5.0);

// Pearson correlation of (W, Q) over the discrete peaks; sign flipped under
// the performed-work convention.
double pearson(const PeakSet& peaks, WorkSign sign = WorkSign::kExtracted);

struct Macroscopic {
  double mean_w_khz{0.0};
  double mean_q_khz{0.0};
  double eta_th{0.0};
};

// Discrete means and eta_th = <W>/<Q>.
Macroscopic macroscopic(const PeakSet& peaks);

// Per-tau scalar outputs of a sweep (column order of the summary table).
struct CycleSummary {
  double tau_us{0.0};
  double xi_exp{0.0};
  double xi_com{0.0};
  double pearson{0.0};
  double eta_th{0.0};
  double mean_eta{0.0};
  double std_eta{0.0};
  double mean_w_khz{0.0};
  double mean_q_khz{0.0};
  double mean_sigma{0.0};
  double ift{0.0};
};

}  // namespace qotto
