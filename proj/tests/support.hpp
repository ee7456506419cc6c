// Copyright 2026 The sepnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Seeded random instances shared by the test binaries.

#include <cmath>
#include <random>
#include <vector>

#include "sepnoise/sepnoise.hpp"

namespace sepnoise::testing {

inline CMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const CMatrix a = random_complex(rng, dim, dim);
  return 0.5 * (a + a.adjoint());
}

/// Positive semi-definite rate matrix with trace `strength`.
inline CMatrix random_rates(std::mt19937_64& rng, Eigen::Index n, double strength) {
  const CMatrix a = random_complex(rng, n, n);
  CMatrix g = a * a.adjoint();
  return g * (strength / g.trace().real());
}

inline CVector random_coeffs(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline DensityMatrix random_density(std::mt19937_64& rng, int dim) {
  const CMatrix a = random_complex(rng, dim, dim);
  CMatrix rho = a * a.adjoint();
  return DensityMatrix{rho / rho.trace()};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Time-independent generator with random H and random physical noise.
inline LindbladGenerator random_generator(std::mt19937_64& rng, int qubits, double t_op, double strength = 0.1) {
  const OperatorBasis basis = pauli_basis(qubits);
  const auto n = static_cast<Eigen::Index>(basis.size());
  return LindbladGenerator{basis, HamiltonianSchedule::constant(random_coeffs(rng, n), t_op),
                           NoiseSchedule::constant(random_rates(rng, n, strength))};
}

inline CMatrix pauli(char s) {
  CMatrix m(2, 2);
  switch (s) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

}  // namespace sepnoise::testing
