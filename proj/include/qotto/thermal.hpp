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

#include "qotto/mat2.hpp"

// Gibbs-state preparation at given spin temperatures and the completed
// hot-thermalization channel (generalized amplitude damping at full
// damping, expressed in the instantaneous energy eigenbasis).

namespace qotto {

// Bath temperatures as k_B T / h in kHz.  kT2 > kT1 is the engine regime;
// the reverse ordering is legal (refrigerator-style parameters) and merely
// reported by engine_regime().
struct ThermalConfig {
  double kT1_khz{0.0};
  double kT2_khz{0.0};
};

void validate_thermal(const ThermalConfig& th);  // positivity; throws std::domain_error
bool engine_regime(const ThermalConfig& th);     // kT2 > kT1

struct Populations {
  double p_ground{0.0};
  double p_excited{0.0};
};

// Two-level Gibbs populations for level energies +-gap/2:
// p_ground = 1 / (1 + exp(-gap/kT)).
Populations gibbs_populations(double gap_khz, double kT_khz);

// Kraus operators of the full-damping thermal channel with target excited
// population p:
//   K1 = sqrt(1-p) diag(1,0),  K2 = sqrt(p) diag(0,1),
//   K3 = sqrt(1-p) (upper off-diagonal 1),  K4 = sqrt(p) (lower off-diagonal -1).
// The map sends every density operator to diag(1-p, p).
struct KrausSet {
  ComplexMat2 k1, k2, k3, k4;
};

KrausSet kraus_thermalization(double p_excited_target);

// rho -> sum_l K_l rho K_l^dagger.  Validates that rho is a density operator
// (Hermitian, unit trace, PSD to 1e-12) and preserves the trace.
ComplexMat2 apply_channel(const ComplexMat2& rho, const KrausSet& ks);

}  // namespace qotto
