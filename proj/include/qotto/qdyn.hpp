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

#include <cstddef>

#include "qotto/mat2.hpp"

// Time-dependent two-level Hamiltonians for the Otto strokes, unitary
// propagation, and nonadiabatic transition probabilities.
//
// Unit conventions used throughout the library:
//   * energies are stored as frequencies E/h in kHz,
//   * times are microseconds at the interface,
//   * the propagator phase per step is 2*pi * (E/h)[kHz] * dt[ms].

namespace qotto {

inline constexpr std::size_t kDefaultSteps = 10000;

enum class StrokeDirection { kExpansion, kCompression };

// Linear gap ramp between nu1 and nu2 over duration tau.  The expansion
// stroke runs nu1 -> nu2 while the drive axis rotates from x to y in the
// equatorial plane; the compression stroke is the negated, time-mirrored
// expansion drive (gap runs nu2 -> nu1).
struct DriveProtocol {
  double nu1_khz{0.0};
  double nu2_khz{0.0};
  double tau_us{0.0};
  StrokeDirection direction{StrokeDirection::kExpansion};
};

DriveProtocol expansion_protocol(double nu1_khz, double nu2_khz, double tau_us);
DriveProtocol compression_protocol(double nu1_khz, double nu2_khz, double tau_us);

// Instantaneous level splitting of the stroke Hamiltonian at time t, kHz.
double instantaneous_gap(const DriveProtocol& proto, double t_us);

// H(t)/h in kHz.  Expansion: -(nu(t)/2)[cos(pi t / 2 tau) sx + sin(...) sy]
// with nu(t) = nu1 (1 - t/tau) + nu2 t/tau.  Compression(t) = -Expansion(tau - t).
ComplexMat2 hamiltonian_expansion(double t_us, const DriveProtocol& proto);
ComplexMat2 hamiltonian_compression(double t_us, const DriveProtocol& proto);
// Dispatch on proto.direction.
ComplexMat2 stroke_hamiltonian(double t_us, const DriveProtocol& proto);

// Instantaneous eigenpairs, sorted by energy.  Global phase fixed by making
// the first component of modulus > 1e-12 real positive, so downstream matrix
// elements are reproducible bit-for-bit.
struct EigenBasis2 {
  Vec2 ground;
  Vec2 excited;
  double e_ground{0.0};
  double e_excited{0.0};
};

EigenBasis2 eigensystem(const ComplexMat2& h);

// Time-ordered propagator over [0, tau] by midpoint-exponential stepping:
// each step is the exact exponential of the midpoint Hamiltonian, hence
// exactly unitary up to roundoff.  Global error in transition probabilities
// decreases as steps^-2.
ComplexMat2 propagate(const DriveProtocol& proto, std::size_t steps = kDefaultSteps);

// xi = |<excited_out| U |ground_in>|^2.
double transition_probability(const ComplexMat2& u, const EigenBasis2& basis_in,
                              const EigenBasis2& basis_out);

// Flip probabilities of the two driving strokes.  The 2x2 transition matrix
// [[1-xi, xi], [xi, 1-xi]] is symmetric doubly stochastic.
struct TransitionProbabilities {
  double xi_exp{0.0};
  double xi_com{0.0};
};

TransitionProbabilities stroke_transition_probabilities(double nu1_khz, double nu2_khz,
                                                        double tau_us,
                                                        std::size_t steps = kDefaultSteps);

}  // namespace qotto
