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

#include "qotto/qdyn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qotto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_protocol(const DriveProtocol& p) {
  if (!(p.nu1_khz > 0.0) || !(p.nu2_khz > 0.0))
    throw std::domain_error("DriveProtocol: gap endpoints must be positive");
  if (!(p.tau_us > 0.0)) throw std::domain_error("DriveProtocol: tau must be positive");
}

void check_time(double t_us, const DriveProtocol& p) {
  if (t_us < 0.0 || t_us > p.tau_us)
    throw std::domain_error("stroke time t=" + std::to_string(t_us) +
                            " us outside [0, " + std::to_string(p.tau_us) + "]");
}

// Exact exponential exp(-i 2 pi (H/h) dt) for Hermitian H/h = c*I + a.sigma,
// written in axis-angle form so every step is unitary to roundoff.
ComplexMat2 step_unitary(const ComplexMat2& h, double dt_ms) {
  const double ax = h.m01.real();
  const double ay = -h.m01.imag();
  const double az = 0.5 * (h.m00.real() - h.m11.real());
  const double c = 0.5 * (h.m00.real() + h.m11.real());
  const cplx global = std::polar(1.0, -kTwoPi * c * dt_ms);

  const double amp = std::sqrt(ax * ax + ay * ay + az * az);
  if (amp == 0.0) return global * kId2;

  const double theta = kTwoPi * amp * dt_ms;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta) / amp;  // sin(theta) * (unit axis) premultiplier
  const ComplexMat2 u{cplx{cs, -sn * az}, cplx{-sn * ay, -sn * ax},
                      cplx{sn * ay, -sn * ax}, cplx{cs, sn * az}};
  return global * u;
}

}  // namespace

DriveProtocol expansion_protocol(double nu1_khz, double nu2_khz, double tau_us) {
  DriveProtocol p{nu1_khz, nu2_khz, tau_us, StrokeDirection::kExpansion};
  check_protocol(p);
  return p;
}

DriveProtocol compression_protocol(double nu1_khz, double nu2_khz, double tau_us) {
  DriveProtocol p{nu1_khz, nu2_khz, tau_us, StrokeDirection::kCompression};
  check_protocol(p);
  return p;
}

double instantaneous_gap(const DriveProtocol& proto, double t_us) {
  check_protocol(proto);
  check_time(t_us, proto);
  const double s = t_us / proto.tau_us;
  if (proto.direction == StrokeDirection::kExpansion)
    return proto.nu1_khz * (1.0 - s) + proto.nu2_khz * s;
  return proto.nu2_khz * (1.0 - s) + proto.nu1_khz * s;
}

ComplexMat2 hamiltonian_expansion(double t_us, const DriveProtocol& proto) {
  check_protocol(proto);
  check_time(t_us, proto);
  const double s = t_us / proto.tau_us;
  const double nu = proto.nu1_khz * (1.0 - s) + proto.nu2_khz * s;
  const double angle = 0.5 * std::numbers::pi * s;
  const double hx = -0.5 * nu * std::cos(angle);
  const double hy = -0.5 * nu * std::sin(angle);
  // hx*sx + hy*sy
  return {cplx{0.0, 0.0}, cplx{hx, -hy}, cplx{hx, hy}, cplx{0.0, 0.0}};
}

ComplexMat2 hamiltonian_compression(double t_us, const DriveProtocol& proto) {
  check_protocol(proto);
  check_time(t_us, proto);
  const ComplexMat2 h =
      hamiltonian_expansion(proto.tau_us - t_us,
                            DriveProtocol{proto.nu1_khz, proto.nu2_khz, proto.tau_us,
                                          StrokeDirection::kExpansion});
  return -1.0 * h;
}

ComplexMat2 stroke_hamiltonian(double t_us, const DriveProtocol& proto) {
  return proto.direction == StrokeDirection::kExpansion
             ? hamiltonian_expansion(t_us, proto)
             : hamiltonian_compression(t_us, proto);
}

EigenBasis2 eigensystem(const ComplexMat2& h) {
  const double scale = std::max(1.0, frobenius_norm(h));
  const double herm_defect =
      std::abs(h.m01 - std::conj(h.m10)) +
      std::abs(h.m00.imag()) + std::abs(h.m11.imag());
  if (herm_defect > 1.0e-12 * scale)
    throw std::invalid_argument("eigensystem: matrix is not Hermitian");

  const double a = h.m00.real();
  const double d = h.m11.real();
  const cplx b = 0.5 * (h.m01 + std::conj(h.m10));
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));
  if (r <= 1.0e-12 * scale)
    throw std::domain_error("eigensystem: degenerate spectrum (zero gap)");

  auto eigvec = [&](double lam) {
    // (H - lam) v = 0; two analytic candidates, pick the better conditioned.
    Vec2 v1{b, cplx{lam - a, 0.0}};
    Vec2 v2{cplx{lam - d, 0.0}, std::conj(b)};
    Vec2 v = (norm(v1) >= norm(v2)) ? v1 : v2;
    const double n = norm(v);
    v = cplx{1.0 / n, 0.0} * v;
    // Phase convention: first component of modulus > 1e-12 made real positive.
    const cplx lead = (std::abs(v.a) > 1.0e-12) ? v.a : v.b;
    v = (std::conj(lead) / std::abs(lead)) * v;
    return v;
  };

  EigenBasis2 basis;
  basis.e_ground = mean - r;
  basis.e_excited = mean + r;
  basis.ground = eigvec(basis.e_ground);
  basis.excited = eigvec(basis.e_excited);
  return basis;
}

ComplexMat2 propagate(const DriveProtocol& proto, std::size_t steps) {
  check_protocol(proto);
  if (steps == 0) throw std::domain_error("propagate: steps must be >= 1");
  const double dt_us = proto.tau_us / static_cast<double>(steps);
  const double dt_ms = 1.0e-3 * dt_us;
  ComplexMat2 u = kId2;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * dt_us;
    u = step_unitary(stroke_hamiltonian(t_mid, proto), dt_ms) * u;
  }
  return u;
}

double transition_probability(const ComplexMat2& u, const EigenBasis2& basis_in,
                              const EigenBasis2& basis_out) {
  if (frobenius_norm(adjoint(u) * u - kId2) > 1.0e-8)
    throw std::invalid_argument("transition_probability: U is not unitary");
  auto check_basis = [](const EigenBasis2& b) {
    if (std::abs(norm(b.ground) - 1.0) > 1.0e-10 ||
        std::abs(norm(b.excited) - 1.0) > 1.0e-10 ||
        std::abs(inner(b.ground, b.excited)) > 1.0e-10)
      throw std::invalid_argument("transition_probability: basis not orthonormal");
  };
  check_basis(basis_in);
  check_basis(basis_out);
  return std::norm(inner(basis_out.excited, u * basis_in.ground));
}

TransitionProbabilities stroke_transition_probabilities(double nu1_khz, double nu2_khz,
                                                        double tau_us, std::size_t steps) {
  const DriveProtocol pe = expansion_protocol(nu1_khz, nu2_khz, tau_us);
  const DriveProtocol pc = compression_protocol(nu1_khz, nu2_khz, tau_us);
  const ComplexMat2 ue = propagate(pe, steps);
  const ComplexMat2 uc = propagate(pc, steps);
  const EigenBasis2 e_in = eigensystem(hamiltonian_expansion(0.0, pe));
  const EigenBasis2 e_out = eigensystem(hamiltonian_expansion(tau_us, pe));
  const EigenBasis2 c_in = eigensystem(hamiltonian_compression(0.0, pc));
  const EigenBasis2 c_out = eigensystem(hamiltonian_compression(tau_us, pc));
  return {transition_probability(ue, e_in, e_out),
          transition_probability(uc, c_in, c_out)};
}

}  // namespace qotto
