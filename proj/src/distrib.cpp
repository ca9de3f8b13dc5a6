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

#include "qotto/distrib.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qotto/quadrature.hpp"

namespace qotto {

namespace {

constexpr double kPi = std::numbers::pi;

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 2)
    throw std::invalid_argument(std::string(name) + ": axis needs at least two nodes");
  for (std::size_t i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      throw std::invalid_argument(std::string(name) + ": axis must be strictly increasing");
}

void check_peaks(const PeakSet& peaks, const char* name) {
  for (const Peak& p : peaks.peaks)
    if (!(p.prob >= 0.0))
      throw std::invalid_argument(std::string(name) + ": negative peak probability");
}

}  // namespace

double lorentzian(double x, double x0, double gamma) {
  const double d = x - x0;
  return gamma / (kPi * (d * d + gamma * gamma));
}

BroadenedGrid broaden_joint(const PeakSet& peaks, double gamma_khz,
                            std::vector<double> w_axis_khz, std::vector<double> q_axis_khz) {
  if (!(gamma_khz > 0.0)) throw std::domain_error("broaden_joint: gamma must be positive");
  check_axis(w_axis_khz, "broaden_joint w");
  check_axis(q_axis_khz, "broaden_joint q");
  check_peaks(peaks, "broaden_joint");

  BroadenedGrid grid{std::move(w_axis_khz), std::move(q_axis_khz), {}, gamma_khz};
  const std::size_t nw = grid.w_axis_khz.size();
  const std::size_t nq = grid.q_axis_khz.size();
  grid.density.assign(nw * nq, 0.0);

  std::vector<double> lw(nw), lq(nq);
  for (const Peak& p : peaks.peaks) {
    if (p.prob == 0.0) continue;
    for (std::size_t i = 0; i < nw; ++i) lw[i] = lorentzian(grid.w_axis_khz[i], p.w_khz, gamma_khz);
    for (std::size_t j = 0; j < nq; ++j) lq[j] = lorentzian(grid.q_axis_khz[j], p.q_khz, gamma_khz);
    for (std::size_t i = 0; i < nw; ++i) {
      const double pw = p.prob * lw[i];
      double* row = grid.density.data() + i * nq;
      for (std::size_t j = 0; j < nq; ++j) row[j] += pw * lq[j];
    }
  }
  return grid;
}

double efficiency_peak_density(double w_khz, double q_khz, double gamma_khz, double eta) {
  if (!(gamma_khz > 0.0))
    throw std::domain_error("efficiency_peak_density: gamma must be positive");
  const double g = gamma_khz, w = w_khz, q = q_khz;
  const double e2 = eta * eta;
  const double gq = g * g + q * q;
  const double gw = g * g + w * w;
  const double d = eta * q - w;
  const double d1 = g * g * (eta - 1.0) * (eta - 1.0) + d * d;
  const double d2 = g * g * (eta + 1.0) * (eta + 1.0) + d * d;
  if (e2 < 1.0e-300 || d1 * d2 < 1.0e-300)
    throw std::domain_error("efficiency_peak_density: singular at eta=" + std::to_string(eta));

  const double t1 =
      g * (-g * g + e2 * gq - w * w) * (std::log(e2) + std::log(gq) - std::log(gw));
  const double t2 = 2.0 * std::atan(q / g) * (e2 * q * gq - 2.0 * eta * w * gq + q * gw);
  const double t3 = 2.0 * std::atan(w / g) * (e2 * w * gq - 2.0 * eta * q * gw + w * gw);
  return g * (t1 + t2 + t3) / (kPi * kPi * d1 * d2);
}

double efficiency_peak_quadrature(double w_khz, double q_khz, double gamma_khz, double eta,
                                  double abs_tol) {
  if (!(gamma_khz > 0.0))
    throw std::domain_error("efficiency_peak_quadrature: gamma must be positive");
  if (!(abs_tol > 0.0))
    throw std::domain_error("efficiency_peak_quadrature: tolerance must be positive");

  const double g = gamma_khz, w = w_khz, q = q_khz;
  auto f = [w, q, g, eta](double t) {
    return std::abs(t) * lorentzian(eta * t, w, g) * lorentzian(t, q, g);
  };

  // Breakpoints at the |t| kink and at both Lorentzian features so each
  // adaptive panel is smooth and well scaled.
  std::vector<double> pts{0.0};
  auto add_feature = [&pts](double x0, double width) {
    pts.push_back(x0);
    for (double s : {1.0, 4.0, 16.0, 64.0}) {
      pts.push_back(x0 - s * width);
      pts.push_back(x0 + s * width);
    }
  };
  add_feature(q, g);
  if (eta != 0.0) add_feature(w / eta, g / std::abs(eta));

  double t_max = 1000.0 * g;
  for (double p : pts) t_max = std::max(t_max, std::abs(p));
  pts.push_back(-t_max);
  pts.push_back(t_max);
  std::sort(pts.begin(), pts.end());
  std::vector<double> uniq;
  for (double p : pts)
    if (uniq.empty() || p - uniq.back() > 1.0e-12 * (1.0 + std::abs(p))) uniq.push_back(p);

  const double panel_tol = abs_tol / static_cast<double>(uniq.size() + 2);
  double total = 0.0;
  for (std::size_t i = 1; i < uniq.size(); ++i)
    total += integrate_adaptive(f, uniq[i - 1], uniq[i], panel_tol);

  // Tails via t = +-t_max/u: integral over u in (0, 1]; the substituted
  // integrand vanishes smoothly at u -> 0 whenever the original integral
  // converges (it does not for eta = 0, which surfaces as a quadrature
  // failure with diagnostics).
  total += integrate_adaptive(
      [&f, t_max](double u) { return f(t_max / u) * t_max / (u * u); }, 0.0, 1.0, panel_tol);
  total += integrate_adaptive(
      [&f, t_max](double u) { return f(-t_max / u) * t_max / (u * u); }, 0.0, 1.0, panel_tol);
  return total;
}

EfficiencyDensity efficiency_distribution(const PeakSet& peaks, double gamma_khz,
                                          const std::vector<double>& eta_axis) {
  if (!(gamma_khz > 0.0))
    throw std::domain_error("efficiency_distribution: gamma must be positive");
  check_axis(eta_axis, "efficiency_distribution");
  check_peaks(peaks, "efficiency_distribution");

  EfficiencyDensity ed{eta_axis, std::vector<double>(eta_axis.size(), 0.0)};
  for (const Peak& p : peaks.peaks) {
    if (p.prob == 0.0) continue;
    for (std::size_t i = 0; i < eta_axis.size(); ++i)
      ed.density[i] += p.prob * efficiency_peak_density(p.w_khz, p.q_khz, gamma_khz, eta_axis[i]);
  }
  return ed;
}

std::vector<double> default_eta_axis() {
  std::vector<double> axis;
  axis.reserve(10002);
  for (int k = -5001; k <= 5000; ++k)
    axis.push_back((static_cast<double>(k) + 0.5) * 0.001);
  return axis;
}

std::pair<double, double> eta_moments(const EfficiencyDensity& ed, double window_lo,
                                      double window_hi) {
  const auto& x = ed.eta_axis;
  const auto& p = ed.density;
  if (x.size() != p.size())
    throw std::invalid_argument("eta_moments: axis/density size mismatch");
  if (x.size() < 2) throw std::invalid_argument("eta_moments: need at least two nodes");
  if (!(window_lo < window_hi)) throw std::domain_error("eta_moments: empty window");
  if (x.front() > window_lo || x.back() < window_hi)
    throw std::domain_error("eta_moments: axis does not cover the window");

  double z = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i], b = x[i + 1];
    if (b <= window_lo || a >= window_hi) continue;
    const double ca = std::max(a, window_lo);
    const double cb = std::min(b, window_hi);
    const double fa = p[i] + (p[i + 1] - p[i]) * (ca - a) / (b - a);
    const double fb = p[i] + (p[i + 1] - p[i]) * (cb - a) / (b - a);
    const double h = cb - ca;
    z += 0.5 * h * (fa + fb);
    m1 += 0.5 * h * (ca * fa + cb * fb);
    m2 += 0.5 * h * (ca * ca * fa + cb * cb * fb);
  }
  if (!(z > 1.0e-300)) throw std::domain_error("eta_moments: zero mass inside the window");
  const double mean = m1 / z;
  const double var = std::max(0.0, m2 / z - mean * mean);
  return {mean, std::sqrt(var)};
}

double pearson(const PeakSet& peaks, WorkSign sign) {
  check_peaks(peaks, "pearson");
  if (peaks.peaks.empty()) throw std::invalid_argument("pearson: empty peak set");
  double mass = 0.0, mw = 0.0, mq = 0.0;
  for (const Peak& p : peaks.peaks) {
    mass += p.prob;
    mw += p.prob * p.w_khz;
    mq += p.prob * p.q_khz;
  }
  if (!(mass > 0.0)) throw std::invalid_argument("pearson: zero total mass");
  mw /= mass;
  mq /= mass;
  double cov = 0.0, vw = 0.0, vq = 0.0, sw2 = 0.0, sq2 = 0.0;
  for (const Peak& p : peaks.peaks) {
    const double dw = p.w_khz - mw;
    const double dq = p.q_khz - mq;
    cov += p.prob * dw * dq;
    vw += p.prob * dw * dw;
    vq += p.prob * dq * dq;
    sw2 += p.prob * p.w_khz * p.w_khz;
    sq2 += p.prob * p.q_khz * p.q_khz;
  }
  cov /= mass;
  vw /= mass;
  vq /= mass;
  // Degenerate marginals: variance at roundoff level relative to the raw
  // second moment means the support is a single point.
  if (vw <= 1.0e-24 * std::max(1.0, sw2 / mass) || vq <= 1.0e-24 * std::max(1.0, sq2 / mass))
    throw std::domain_error("pearson: zero marginal variance, correlation undefined");
  double rho = cov / std::sqrt(vw * vq);
  rho = std::clamp(rho, -1.0, 1.0);  // |rho| <= 1 up to roundoff
  return sign == WorkSign::kPerformed ? -rho : rho;
}

Macroscopic macroscopic(const PeakSet& peaks) {
  check_peaks(peaks, "macroscopic");
  if (peaks.peaks.empty()) throw std::invalid_argument("macroscopic: empty peak set");
  double mass = 0.0, mw = 0.0, mq = 0.0, aq = 0.0;
  for (const Peak& p : peaks.peaks) {
    mass += p.prob;
    mw += p.prob * p.w_khz;
    mq += p.prob * p.q_khz;
    aq += p.prob * std::abs(p.q_khz);
  }
  if (!(mass > 0.0)) throw std::invalid_argument("macroscopic: zero total mass");
  Macroscopic m;
  m.mean_w_khz = mw / mass;
  m.mean_q_khz = mq / mass;
  if (std::abs(m.mean_q_khz) <= 1.0e-14 * std::max(1.0, aq / mass))
    throw std::domain_error("macroscopic: <Q> = 0, efficiency undefined");
  m.eta_th = m.mean_w_khz / m.mean_q_khz;
  return m;
}

}  // namespace qotto
