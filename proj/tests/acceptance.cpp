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

// End-to-end verification of the engine model: one pass/fail line per
// criterion, every tolerance pinned in this file, exit code 1 if any line
// fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qotto/sweep.hpp"
#include "qotto/thermal.hpp"

using namespace qotto;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct TauRecord {
  double tau = 0.0;
  double xi_exp = 0.0;
  double xi_com = 0.0;
  double mean_sigma = 0.0;
  double ift = 0.0;
  double max_residual = 0.0;
  bool two_sided = false;
};

std::vector<std::vector<double>> read_csv_rows(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

}  // namespace

int main() {
  const double nu1 = 2.0, nu2 = 3.6;
  const ThermalConfig thermal{1.60, 12.21};
  const Populations cold = gibbs_populations(nu1, thermal.kT1_khz);
  const Populations hot = gibbs_populations(nu2, thermal.kT2_khz);

  // Shared sweep pass: full dynamics at each of the 50 standard driving
  // times, with the fluctuation bookkeeping attached.
  const std::vector<double> taus = default_config().tau_list_us;
  std::vector<TauRecord> sweep;
  for (double tau : taus) {
    const CycleResult cyc = run_cycle(nu1, nu2, tau, thermal);
    const SigmaStats stats = integral_ft(cyc.peaks, thermal);
    const FTReport ft = detailed_ft_check(
        cyc.peaks, reverse_peaks(cyc.xi, cyc.cold, cyc.hot, nu1, nu2), thermal);
    TauRecord rec;
    rec.tau = tau;
    rec.xi_exp = cyc.xi.xi_exp;
    rec.xi_com = cyc.xi.xi_com;
    rec.mean_sigma = stats.mean_sigma;
    rec.ift = stats.ift;
    rec.max_residual = ft.max_abs_residual;
    rec.two_sided = ft.forward_only.empty() && ft.reverse_only.empty() &&
                    ft.entries.size() == cyc.peaks.peaks.size();
    sweep.push_back(rec);
  }

  // 1. Per-history energy bookkeeping: all 16 (w, q) pairs, binary-counting
  //    order, tolerance 1e-12.
  {
    constexpr double kTol = 1e-12;
    const double expected[16][2] = {
        {0.0, 0.0},    {-2.0, 0.0},  {3.6, 3.6},   {1.6, 3.6},
        {-3.6, -3.6},  {-5.6, -3.6}, {0.0, 0.0},   {-2.0, 0.0},
        {2.0, 0.0},    {0.0, 0.0},   {5.6, 3.6},   {3.6, 3.6},
        {-1.6, -3.6},  {-3.6, -3.6}, {2.0, 0.0},   {0.0, 0.0}};
    const std::vector<HistoryRecord> hist =
        enumerate_histories({0.3, 0.2}, cold, hot, nu1, nu2);
    bool ok = hist.size() == 16;
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < 16; ++i) {
      worst = std::max({worst, std::abs(hist[i].w_khz - expected[i][0]),
                        std::abs(hist[i].q_khz - expected[i][1])});
    }
    ok = ok && worst <= kTol;
    report(1, "work/heat bookkeeping of all 16 measurement histories", ok,
           "max deviation " + num(worst));
  }

  // 2. Peak census: exactly 9 peaks at the expected coordinates for sampled
  //    driving times with 0 < xi < 1, unit total mass.
  {
    constexpr double kTol = 1e-12;
    const double coords[9][2] = {{-5.6, -3.6}, {-3.6, -3.6}, {-2.0, 0.0},
                                 {-1.6, -3.6}, {0.0, 0.0},   {1.6, 3.6},
                                 {2.0, 0.0},   {3.6, 3.6},   {5.6, 3.6}};
    bool ok = true;
    std::string detail;
    for (double tau : {100.0, 200.0, 260.0, 320.0, 475.0, 700.0}) {
      const CycleResult cyc = run_cycle(nu1, nu2, tau, thermal);
      bool here = cyc.xi.xi_exp > 0.0 && cyc.xi.xi_exp < 1.0 &&
                  cyc.peaks.peaks.size() == 9;
      double mass = 0.0;
      for (std::size_t i = 0; here && i < 9; ++i) {
        here = std::abs(cyc.peaks.peaks[i].w_khz - coords[i][0]) <= kTol &&
               std::abs(cyc.peaks.peaks[i].q_khz - coords[i][1]) <= kTol;
        mass += cyc.peaks.peaks[i].prob;
      }
      here = here && std::abs(mass - 1.0) <= 1e-12;
      if (!here && detail.empty()) detail = "failed at tau " + num(tau);
      ok = ok && here;
    }
    report(2, "discrete joint distribution: 9 peaks at the engine coordinates", ok, detail);
  }

  // 3. Adiabatic Otto efficiency 1 - nu1/nu2 to 1e-12; over the last three
  //    sweep times eta_th rises while the windowed mean efficiency falls.
  {
    const PeakSet adia = discrete_joint(enumerate_histories({0.0, 0.0}, cold, hot, nu1, nu2));
    const double eta0 = macroscopic(adia).eta_th;
    bool ok = std::abs(eta0 - (1.0 - nu1 / nu2)) <= 1e-12;

    RunConfig cfg = default_config();
    cfg.w_grid = {-8.0, 8.0, 0.1};
    cfg.q_grid = {-6.0, 6.0, 0.1};
    std::vector<double> eta_th, mean_eta;
    for (std::size_t i = taus.size() - 3; i < taus.size(); ++i) {
      const TauArtifacts art = compute_tau(cfg, taus[i]);
      eta_th.push_back(art.summary.eta_th);
      mean_eta.push_back(art.summary.mean_eta);
    }
    ok = ok && eta_th[0] < eta_th[1] && eta_th[1] < eta_th[2] && eta_th[2] < eta0;
    ok = ok && mean_eta[0] > mean_eta[1] && mean_eta[1] > mean_eta[2];
    report(3, "macroscopic efficiency: adiabatic value and late-sweep trends", ok,
           "eta_th(xi=0) = " + num(eta0) + ", tail eta_th " + num(eta_th[0]) + " -> " +
               num(eta_th[2]) + ", tail <eta> " + num(mean_eta[0]) + " -> " +
               num(mean_eta[2]));
  }

  // 4. Stochastic efficiency density in the quasi-adiabatic regime: local
  //    maxima within 0.03 of {0, 4/9, 1, 2 - 4/9}.
  {
    constexpr double kWindow = 0.03;
    const CycleResult cyc = run_cycle(nu1, nu2, 200.0, thermal);
    const EfficiencyDensity ed =
        efficiency_distribution(cyc.peaks, 0.15, default_eta_axis());
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < ed.eta_axis.size(); ++i)
      if (ed.density[i] > ed.density[i - 1] && ed.density[i] > ed.density[i + 1])
        maxima.push_back(ed.eta_axis[i]);
    bool ok = true;
    std::string detail = "maxima at";
    for (double target : {0.0, 4.0 / 9.0, 1.0, 2.0 - 4.0 / 9.0}) {
      double best = 1e9;
      for (double m : maxima) best = std::min(best, std::abs(m - target));
      ok = ok && best <= kWindow;
      for (double m : maxima)
        if (std::abs(m - target) <= kWindow) {
          detail += " " + num(m);
          break;
        }
    }
    report(4, "stochastic efficiency density: four characteristic maxima", ok, detail);
  }

  // 5. Closed-form efficiency peak density against the quadrature oracle:
  //    100 random tuples, 1e-6 relative.
  {
    constexpr double kRelTol = 1e-6;
    std::mt19937 rng(2026u);
    std::uniform_real_distribution<double> uw(-6.0, 6.0), ug(0.05, 0.5), ue(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double w = uw(rng), q = uw(rng), g = ug(rng);
      double eta = 0.0;
      do {
        eta = ue(rng);
      } while (std::abs(eta) < 1e-6);
      const double closed = efficiency_peak_density(w, q, g, eta);
      const double oracle = efficiency_peak_quadrature(w, q, g, eta);
      worst = std::max(worst, std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-9));
    }
    report(5, "closed-form efficiency peak density vs quadrature oracle", worst <= kRelTol,
           "worst relative deviation " + num(worst));
  }

  // 6. Integral fluctuation theorem: <exp(-sigma)> = 1 within 1e-12 at every
  //    sweep time and across 1000 randomized cycles.
  {
    constexpr double kTol = 1e-12;
    double worst = 0.0;
    for (const TauRecord& r : sweep) worst = std::max(worst, std::abs(r.ift - 1.0));
    std::mt19937 rng(4242u);
    std::uniform_real_distribution<double> uxi(0.0, 1.0), ukt(0.3, 20.0);
    for (int i = 0; i < 1000; ++i) {
      const ThermalConfig th{ukt(rng), ukt(rng)};
      const PeakSet ps = discrete_joint(
          enumerate_histories({uxi(rng), uxi(rng)}, gibbs_populations(nu1, th.kT1_khz),
                              gibbs_populations(nu2, th.kT2_khz), nu1, nu2));
      worst = std::max(worst, std::abs(integral_ft(ps, th).ift - 1.0));
    }
    report(6, "integral fluctuation theorem at all sweep times and 1000 random cycles",
           worst <= kTol, "worst |<exp(-sigma)> - 1| = " + num(worst));
  }

  // 7. Detailed fluctuation relation: per-peak residual below 1e-10 with
  //    fully two-sided support at every sweep time.
  {
    constexpr double kTol = 1e-10;
    double worst = 0.0;
    bool two_sided = true;
    for (const TauRecord& r : sweep) {
      worst = std::max(worst, r.max_residual);
      two_sided = two_sided && r.two_sided;
    }
    report(7, "detailed fluctuation relation on the discrete support",
           worst <= kTol && two_sided, "worst residual " + num(worst));
  }

  // 8. Mean entropy production: non-negative everywhere, smaller at the most
  //    adiabatic sampled time than at the least adiabatic one, and equal to
  //    0.195 +/- 0.002 in the frictionless limit.
  {
    bool ok = true;
    std::size_t i_min = 0, i_max = 0;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      ok = ok && sweep[i].mean_sigma >= 0.0;
      if (sweep[i].xi_exp < sweep[i_min].xi_exp) i_min = i;
      if (sweep[i].xi_exp > sweep[i_max].xi_exp) i_max = i;
    }
    ok = ok && sweep[i_min].mean_sigma < sweep[i_max].mean_sigma;
    const double sigma0 =
        integral_ft(discrete_joint(enumerate_histories({0.0, 0.0}, cold, hot, nu1, nu2)),
                    thermal)
            .mean_sigma;
    ok = ok && std::abs(sigma0 - 0.195) <= 0.002;
    report(8, "mean entropy production: sign, friction ordering, frictionless value", ok,
           "<sigma>(xi=0) = " + num(sigma0) + ", sweep range [" +
               num(sweep[i_min].mean_sigma) + ", " + num(sweep[i_max].mean_sigma) + "]");
  }

  // 9. Tight coupling at xi = 0: correlation +1 (extracted) and -1
  //    (performed) to 1e-12; xi(tau) is non-monotonic across the sweep.
  {
    constexpr double kTol = 1e-12;
    const PeakSet adia = discrete_joint(enumerate_histories({0.0, 0.0}, cold, hot, nu1, nu2));
    const double rho_ext = pearson(adia, WorkSign::kExtracted);
    const double rho_perf = pearson(adia, WorkSign::kPerformed);
    bool rises = false, falls = false;
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
      rises = rises || sweep[i + 1].xi_exp > sweep[i].xi_exp;
      falls = falls || sweep[i + 1].xi_exp < sweep[i].xi_exp;
    }
    const bool ok =
        std::abs(rho_ext - 1.0) <= kTol && std::abs(rho_perf + 1.0) <= kTol && rises && falls;
    report(9, "tight work-heat coupling at xi=0 and oscillating xi(tau)", ok,
           "rho = " + num(rho_ext) + " / " + num(rho_perf));
  }

  // 10. Determinism and integrator robustness: reruns byte-identical; doubling
  //     the integrator steps moves every summary column by less than 1e-7.
  {
    constexpr double kColTol = 1e-7;
    RunConfig cfg = default_config();
    cfg.w_grid = {-8.0, 8.0, 0.1};
    cfg.q_grid = {-6.0, 6.0, 0.1};
    const fs::path base = fs::temp_directory_path() / "qotto_acceptance";
    fs::remove_all(base);
    const fs::path dir_a = base / "a", dir_b = base / "b", dir_c = base / "c";

    cfg.out_dir = dir_a.string();
    run_sweep(cfg);
    cfg.out_dir = dir_b.string();
    run_sweep(cfg);
    cfg.out_dir = dir_c.string();
    cfg.steps = 2 * cfg.steps;
    run_sweep(cfg);

    const bool identical = dir_contents(dir_a) == dir_contents(dir_b);

    const auto rows_a = read_csv_rows(dir_a / "summary.csv");
    const auto rows_c = read_csv_rows(dir_c / "summary.csv");
    static const char* kCols[11] = {"tau_us",   "xi_exp",     "xi_com",     "pearson",
                                    "eta_th",   "mean_eta",   "std_eta",    "mean_W_khz",
                                    "mean_Q_khz", "mean_sigma", "ift"};
    double worst = 0.0;
    std::size_t worst_row = 0, worst_col = 0;
    bool shape = rows_a.size() == 50 && rows_a.size() == rows_c.size();
    for (std::size_t i = 0; shape && i < rows_a.size(); ++i) {
      shape = rows_a[i].size() == 11 && rows_c[i].size() == 11;
      for (std::size_t j = 0; shape && j < rows_a[i].size(); ++j) {
        const double d = std::abs(rows_a[i][j] - rows_c[i][j]);
        if (d > worst) { worst = d; worst_row = i; worst_col = j; }
      }
    }
    const bool ok = identical && shape && worst < kColTol;
    std::string detail = std::string(identical ? "reruns identical" : "reruns differ") +
                         ", max column shift " + num(worst);
    if (shape && worst > 0.0)
      detail += " (" + std::string(kCols[worst_col]) + " at tau=" + num(rows_a[worst_row][0]) +
                " us, mean_Q there " + num(rows_a[worst_row][8]) + " kHz)";
    report(10, "byte-identical reruns and step-doubling stability", ok, detail);
  }

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
