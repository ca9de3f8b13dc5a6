#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qotto/thermal.hpp"

using namespace qotto;

namespace {

ComplexMat2 diag_density(double a, double b) {
  return {cplx{a, 0.0}, {}, {}, cplx{b, 0.0}};
}

ComplexMat2 pure_state(const cplx& a, const cplx& b) {
  return {a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)};
}

}  // namespace

TEST_CASE("gibbs populations: cold and hot reference values") {
  const Populations cold = gibbs_populations(2.0, 1.60);
  CHECK(std::abs(cold.p_ground - 0.777299861174691147) < 1e-12);
  CHECK(std::abs(cold.p_excited - 0.222700138825308853) < 1e-12);
  CHECK(std::abs(cold.p_ground - 0.78) < 0.01);  // tabulated value with its error bar

  const Populations hot = gibbs_populations(3.6, 12.21);
  CHECK(std::abs(hot.p_ground - 0.573180702134056382) < 1e-12);
  CHECK(std::abs(hot.p_excited - 0.426819297865943618) < 1e-12);
  CHECK(std::abs(hot.p_ground - 0.5732) < 1e-4);

  // Independent path: p_ground = (1 + tanh(gap / 2kT)) / 2.
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> ugap(0.1, 6.0), ukt(0.2, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double gap = ugap(rng), kt = ukt(rng);
    const Populations p = gibbs_populations(gap, kt);
    CHECK(std::abs(p.p_ground - 0.5 * (1.0 + std::tanh(0.5 * gap / kt))) < 1e-14);
    CHECK(p.p_ground + p.p_excited == 1.0);
    CHECK(p.p_ground >= 0.0);
    CHECK(p.p_excited >= 0.0);
  }
}

TEST_CASE("gibbs populations: tiny excited population keeps relative accuracy") {
  // gap/kT ~ 12: p_excited ~ 6.5e-6 must be accurate in relative terms,
  // not merely as a complement of p_ground.
  const Populations p = gibbs_populations(3.6, 0.3016);
  const double ref = 6.548031612876836e-06;
  CHECK(std::abs(p.p_excited - ref) < 5e-14 * ref);
  CHECK(p.p_ground + p.p_excited == 1.0);

  // Deep in the frozen regime the exponential overflows cleanly to zero.
  const Populations frozen = gibbs_populations(3.6, 1e-6);
  CHECK(frozen.p_ground == 1.0);
  CHECK(frozen.p_excited == 0.0);
}

TEST_CASE("gibbs populations: limits and domain errors") {
  const Populations p = gibbs_populations(2.0, 1e12);
  CHECK(std::abs(p.p_ground - 0.5) < 1e-9);
  CHECK(std::abs(p.p_excited - 0.5) < 1e-9);

  CHECK_THROWS_AS((void)gibbs_populations(0.0, 1.6), std::domain_error);
  CHECK_THROWS_AS((void)gibbs_populations(-2.0, 1.6), std::domain_error);
  CHECK_THROWS_AS((void)gibbs_populations(2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)gibbs_populations(2.0, -1.0), std::domain_error);
}

TEST_CASE("kraus set: trace preservation identity for all p") {
  std::mt19937 rng(29u);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double p = (i == 0) ? 0.0 : (i == 1 ? 1.0 : up(rng));
    const KrausSet ks = kraus_thermalization(p);
    const ComplexMat2 sum = adjoint(ks.k1) * ks.k1 + adjoint(ks.k2) * ks.k2 +
                            adjoint(ks.k3) * ks.k3 + adjoint(ks.k4) * ks.k4;
    CHECK(frobenius_norm(sum - kId2) < 1e-14);
  }
  CHECK_THROWS_AS((void)kraus_thermalization(-0.01), std::domain_error);
  CHECK_THROWS_AS((void)kraus_thermalization(1.01), std::domain_error);
}

TEST_CASE("channel maps every state to the target diagonal") {
  const double p = gibbs_populations(3.6, 12.21).p_excited;  // 0.4268...
  const KrausSet ks = kraus_thermalization(p);
  const ComplexMat2 inputs[] = {
      diag_density(1.0, 0.0),
      diag_density(0.5, 0.5),
      pure_state(cplx{0.6, 0.0}, cplx{0.0, 0.8}),
      pure_state(cplx{1.0 / std::sqrt(2.0), 0.0}, cplx{0.5, 0.5}),
  };
  for (const ComplexMat2& rho : inputs) {
    const ComplexMat2 out = apply_channel(rho, ks);
    CHECK(std::abs(out.m00.real() - (1.0 - p)) < 1e-14);
    CHECK(std::abs(out.m11.real() - p) < 1e-14);
    CHECK(std::abs(out.m01) < 1e-14);
    CHECK(std::abs(out.m10) < 1e-14);
    CHECK(std::abs(trace(out) - cplx{1.0, 0.0}) < 1e-12);
    // One application reaches the fixed point.
    CHECK(frobenius_norm(apply_channel(out, ks) - out) < 1e-12);
  }

  // Zero-temperature damping: everything lands on the ground projector.
  const KrausSet cold = kraus_thermalization(0.0);
  const ComplexMat2 g = apply_channel(pure_state(cplx{0.0, 0.0}, cplx{1.0, 0.0}), cold);
  CHECK(frobenius_norm(g - diag_density(1.0, 0.0)) < 1e-14);

  // Infinite-temperature fixed point.
  const ComplexMat2 mm = apply_channel(diag_density(0.5, 0.5), kraus_thermalization(0.5));
  CHECK(frobenius_norm(mm - diag_density(0.5, 0.5)) < 1e-14);
}

TEST_CASE("channel is completely positive: Choi quadratic forms") {
  std::mt19937 rng(31u);
  std::normal_distribution<double> n(0.0, 1.0);
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const KrausSet ks = kraus_thermalization(p);
    const ComplexMat2* ops[] = {&ks.k1, &ks.k2, &ks.k3, &ks.k4};
    for (int trial = 0; trial < 50; ++trial) {
      cplx z[4];
      for (auto& zi : z) zi = cplx{n(rng), n(rng)};
      // z^dag C z with C = sum_l vec(K_l) vec(K_l)^dag  (column-major vec).
      double quad = 0.0;
      for (const ComplexMat2* k : ops) {
        const cplx s = std::conj(z[0]) * k->m00 + std::conj(z[1]) * k->m10 +
                       std::conj(z[2]) * k->m01 + std::conj(z[3]) * k->m11;
        quad += std::norm(s);
      }
      CHECK(quad >= -1e-12);
    }
  }
}

TEST_CASE("channel rejects invalid densities") {
  const KrausSet ks = kraus_thermalization(0.3);
  const ComplexMat2 non_herm{cplx{0.5, 0.0}, cplx{0.1, 0.0}, cplx{0.3, 0.0}, cplx{0.5, 0.0}};
  CHECK_THROWS_AS((void)apply_channel(non_herm, ks), std::invalid_argument);
  CHECK_THROWS_AS((void)apply_channel(diag_density(0.7, 0.7), ks), std::invalid_argument);
  CHECK_THROWS_AS((void)apply_channel(diag_density(1.5, -0.5), ks), std::invalid_argument);
}

TEST_CASE("thermal config validation and regime") {
  CHECK(engine_regime(ThermalConfig{1.60, 12.21}));
  CHECK_FALSE(engine_regime(ThermalConfig{12.21, 1.60}));
  CHECK_THROWS_AS(validate_thermal(ThermalConfig{0.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(validate_thermal(ThermalConfig{1.0, -1.0}), std::domain_error);
}
