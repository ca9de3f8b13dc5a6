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

#include "qotto/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

void validate_thermal(const ThermalConfig& th) {
  if (!(th.kT1_khz > 0.0) || !(th.kT2_khz > 0.0))
    throw std::domain_error("ThermalConfig: temperatures must be positive");
}

bool engine_regime(const ThermalConfig& th) {
  validate_thermal(th);
  return th.kT2_khz > th.kT1_khz;
}

Populations gibbs_populations(double gap_khz, double kT_khz) {
  if (!(gap_khz > 0.0)) throw std::domain_error("gibbs_populations: gap must be positive");
  if (!(kT_khz > 0.0)) throw std::domain_error("gibbs_populations: kT must be positive");
  // Compute the smaller population directly so it keeps full relative
  // accuracy even when gap >> kT; the larger one tolerates the subtraction.
  const double pe = 1.0 / (1.0 + std::exp(gap_khz / kT_khz));
  return {1.0 - pe, pe};
}

KrausSet kraus_thermalization(double p_excited_target) {
  const double p = p_excited_target;
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("kraus_thermalization: target population outside [0, 1]");
  const double sq = std::sqrt(1.0 - p);
  const double sp = std::sqrt(p);
  KrausSet ks;
  ks.k1 = {cplx{sq, 0.0}, {}, {}, {}};
  ks.k2 = {{}, {}, {}, cplx{sp, 0.0}};
  ks.k3 = {{}, cplx{sq, 0.0}, {}, {}};
  ks.k4 = {{}, {}, cplx{-sp, 0.0}, {}};
  return ks;
}

ComplexMat2 apply_channel(const ComplexMat2& rho, const KrausSet& ks) {
  const double herm_defect = std::abs(rho.m01 - std::conj(rho.m10)) +
                             std::abs(rho.m00.imag()) + std::abs(rho.m11.imag());
  if (herm_defect > 1.0e-12)
    throw std::invalid_argument("apply_channel: rho is not Hermitian");
  if (std::abs(trace(rho) - cplx{1.0, 0.0}) > 1.0e-10)
    throw std::invalid_argument("apply_channel: rho does not have unit trace");
  if (rho.m00.real() < -1.0e-12 || rho.m11.real() < -1.0e-12 ||
      det(rho).real() < -1.0e-12)
    throw std::invalid_argument("apply_channel: rho is not positive semidefinite");

  auto term = [&rho](const ComplexMat2& k) { return k * rho * adjoint(k); };
  return term(ks.k1) + term(ks.k2) + term(ks.k3) + term(ks.k4);
}

}  // namespace qotto
