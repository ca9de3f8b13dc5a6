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

#include <cmath>
#include <complex>

namespace qotto {

using cplx = std::complex<double>;

// Two-component complex vector (qubit state / eigenvector carrier).
struct Vec2 {
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
};

// Dense 2x2 complex matrix, row-major:
//   | m00 m01 |
//   | m10 m11 |
// Used for Hamiltonians (units of h*kHz), unitaries and density operators.
struct ComplexMat2 {
  cplx m00{0.0, 0.0};
  cplx m01{0.0, 0.0};
  cplx m10{0.0, 0.0};
  cplx m11{0.0, 0.0};
};

inline constexpr ComplexMat2 kId2{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
inline constexpr ComplexMat2 kSigmaX{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
inline constexpr ComplexMat2 kSigmaY{{0.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}};
inline constexpr ComplexMat2 kSigmaZ{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}};

inline ComplexMat2 operator+(const ComplexMat2& x, const ComplexMat2& y) {
  return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}

inline ComplexMat2 operator-(const ComplexMat2& x, const ComplexMat2& y) {
  return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
}

inline ComplexMat2 operator*(const cplx& s, const ComplexMat2& x) {
  return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
}

inline ComplexMat2 operator*(double s, const ComplexMat2& x) {
  return cplx{s, 0.0} * x;
}

inline ComplexMat2 operator*(const ComplexMat2& x, const ComplexMat2& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
          x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

inline Vec2 operator*(const ComplexMat2& x, const Vec2& v) {
  return {x.m00 * v.a + x.m01 * v.b, x.m10 * v.a + x.m11 * v.b};
}

inline Vec2 operator*(const cplx& s, const Vec2& v) { return {s * v.a, s * v.b}; }

inline ComplexMat2 adjoint(const ComplexMat2& x) {
  return {std::conj(x.m00), std::conj(x.m10), std::conj(x.m01), std::conj(x.m11)};
}

inline cplx trace(const ComplexMat2& x) { return x.m00 + x.m11; }

inline cplx det(const ComplexMat2& x) { return x.m00 * x.m11 - x.m01 * x.m10; }

inline double frobenius_norm(const ComplexMat2& x) {
  return std::sqrt(std::norm(x.m00) + std::norm(x.m01) + std::norm(x.m10) + std::norm(x.m11));
}

// <x|y> with the physics convention: antilinear in the first argument.
inline cplx inner(const Vec2& x, const Vec2& y) {
  return std::conj(x.a) * y.a + std::conj(x.b) * y.b;
}

inline double norm(const Vec2& v) { return std::sqrt(std::norm(v.a) + std::norm(v.b)); }

}  // namespace qotto
