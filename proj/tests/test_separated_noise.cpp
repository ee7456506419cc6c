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


#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

namespace sepnoise {
namespace {

const std::vector<double> kThetas = {0.1, 1.0, kPi, 5.0};

const std::vector<SeparatedRoute> kRoutes = {SeparatedRoute::integral, SeparatedRoute::ode, SeparatedRoute::spectral,
                                             SeparatedRoute::series};

CMatrix omega_of_generator(const LindbladGenerator& gen) {
  return omega_of(gen.schedule, 0.0, structure_tensor(gen.basis));
}

std::vector<double> nonzero_sorted(const RVector& v, double floor) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > floor) out.push_back(v(i));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(SeparatedNoise, DephasingMatchesClosedFormOnAllRoutes) {
  const double gamma = 0.2, j = 1.0;
  const OperatorBasis b = pauli_basis(1);
  for (double theta : kThetas) {
    const auto gen = x_drive_generator(j, theta, dephasing_rates(b, "Z", gamma));
    const double t_op = theta / (2.0 * j);
    // Hand-derived entries: Y-Y block (gamma/4theta)(theta -+ sin 2theta / 2), off-diagonal (gamma/4theta) sin^2.
    const double c = gamma / (4.0 * theta);
    const double yy = c * (theta - 0.5 * std::sin(2.0 * theta));
    const double zz = c * (theta + 0.5 * std::sin(2.0 * theta));
    const double yz = c * std::sin(theta) * std::sin(theta);
    for (SeparatedRoute route : kRoutes) {
      const auto r = separate(gen, t_op, route);
      const CMatrix& g = r.gamma_s.gamma;
      EXPECT_NEAR(g(1, 1).real(), yy, 1e-10) << to_string(route) << " theta=" << theta;
      EXPECT_NEAR(g(2, 2).real(), zz, 1e-10) << to_string(route);
      EXPECT_NEAR(g(1, 2).real(), yz, 1e-10) << to_string(route);
      EXPECT_LE(std::abs(g(0, 0)) + std::abs(g(0, 1)) + std::abs(g(0, 2)), 1e-10) << to_string(route);
      EXPECT_LE(max_abs(g - dephasing_closed_form(gamma, theta)), 1e-10);
      const auto ev = nonzero_sorted(r.gamma_s.spectrum(), 1e-12);
      const auto ref = dephasing_closed_form_rates(gamma, theta);
      ASSERT_EQ(ev.size(), 2u);
      EXPECT_NEAR(ev[0], std::min(ref[0], ref[1]), 1e-10);
      EXPECT_NEAR(ev[1], std::max(ref[0], ref[1]), 1e-10);
    }
  }
}

TEST(SeparatedNoise, DephasingAtPiHasEqualRates) {
  const auto gen = x_drive_generator(1.0, kPi, dephasing_rates(pauli_basis(1), "Z", 0.2));
  const auto ev = separated_spectral(gen, kPi / 2.0).gamma_s.spectrum();
  EXPECT_NEAR(ev(1), 0.05, 1e-12);
  EXPECT_NEAR(ev(2), 0.05, 1e-12);
}

TEST(SeparatedNoise, DampingSpectrumMatchesClosedForm) {
  const double gamma = 0.3;
  for (double theta : kThetas) {
    const auto gen = x_drive_generator(0.7, theta, damping_rates(pauli_basis(1), 0, gamma));
    const auto r = separated_spectral(gen, theta / 1.4);
    const RVector ev = r.gamma_s.spectrum();
    const auto ref = damping_closed_form_rates(gamma, theta);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev(k), ref[static_cast<std::size_t>(k)], 1e-10) << "theta=" << theta;
  }
}

TEST(SeparatedNoise, DepolarizingIsInvariant) {
  std::mt19937_64 rng(41);
  const OperatorBasis b = pauli_basis(1);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix gamma = depolarizing_rates(b, 0.05);
    const LindbladGenerator gen{b, HamiltonianSchedule::constant(testing::random_coeffs(rng, 3), 1.2),
                                NoiseSchedule::constant(gamma)};
    for (SeparatedRoute route : kRoutes) EXPECT_LE(max_abs(separate(gen, 1.2, route).gamma_s.gamma - gamma), 1e-10);
  }
}

TEST(SeparatedNoise, GlobalDepolarizingParameter) {
  const double alpha = 0.03, t = 2.0;
  const OperatorBasis b = pauli_basis(1);
  const LindbladGenerator gen{b, HamiltonianSchedule::constant(CVector::Zero(3), t),
                              NoiseSchedule::constant(depolarizing_rates(b, alpha))};
  const DensityMatrix rho = evolve(gen, DensityMatrix::basis_state(2, 0), t, 2000);
  // The Bloch vector shrinks by 1 - lambda.
  EXPECT_NEAR(expectation(b.ops[2], rho), 1.0 - global_depolarizing_lambda(alpha, 2, t), 1e-12);
  EXPECT_THROW(global_depolarizing_lambda(-1.0, 2, t), InvalidArgument);
}

TEST(SeparatedNoise, ForwardAndSeparatedAreRelatedByM) {
  std::mt19937_64 rng(42);
  const auto gen = testing::random_generator(rng, 2, 0.8);
  const Propagator m = propagate_M(gen.schedule, 0.8, structure_tensor(gen.basis));
  for (SeparatedRoute route : kRoutes) {
    const auto r = separate(gen, 0.8, route);
    EXPECT_LE(max_abs(commute_left(r.gamma_f.gamma, m.m) - r.gamma_s.gamma), 1e-12) << to_string(route);
  }
}

TEST(SeparatedNoise, RoutesAgreeOnRandomGenerators) {
  std::mt19937_64 rng(43);
  for (int qubits = 1; qubits <= 2; ++qubits)
    for (int trial = 0; trial < 3; ++trial) {
      const double t_op = testing::uniform(rng, 0.2, 2.0);
      const auto gen = testing::random_generator(rng, qubits, t_op);
      const CMatrix ref = separated_spectral(gen, t_op).gamma_s.gamma;
      EXPECT_LE(max_abs(separated_integral(gen, t_op).gamma_s.gamma - ref), 1e-10);
      EXPECT_LE(max_abs(separated_ode(gen, t_op).gamma_s.gamma - ref), 1e-10);
      EXPECT_LE(max_abs(separated_series(gen, t_op).gamma_s.gamma - ref), 1e-10);
    }
}

TEST(SeparatedNoise, TimeDependentNoiseKeepsTheAverageStrength) {
  // Tr Gamma^D(t) = gamma (1 + t), averaging to gamma (1 + t_op / 2).
  const double gamma = 0.1, t_op = 1.5;
  const OperatorBasis b = pauli_basis(1);
  const LindbladGenerator gen{b, HamiltonianSchedule::constant(CVector::Ones(3), t_op),
                              NoiseSchedule::time_dependent([&](double t) -> CMatrix {
                                return damping_rates(b, 0, gamma * (1.0 + t)) * 2.0;
                              })};
  const auto integral = separated_integral(gen, t_op);
  const auto ode = separated_ode(gen, t_op);
  EXPECT_NEAR(integral.strength, gamma * (1.0 + t_op / 2.0), 1e-10);
  EXPECT_NEAR(ode.strength, gamma * (1.0 + t_op / 2.0), 1e-10);
  EXPECT_LE(max_abs(integral.gamma_s.gamma - ode.gamma_s.gamma), 1e-10);
  EXPECT_THROW(separated_spectral(gen, t_op), UnsupportedOperation);
  EXPECT_THROW(separated_series(gen, t_op), UnsupportedOperation);
}

TEST(SeparatedNoise, RejectsBadDurations) {
  std::mt19937_64 rng(44);
  const auto gen = testing::random_generator(rng, 1, 1.0);
  EXPECT_THROW(separated_integral(gen, 0.0), InvalidArgument);
  EXPECT_THROW(separated_integral(gen, 2.0), DomainError);
  EXPECT_THROW(separated_spectral(gen.rates(0.0), omega_of_generator(gen), -1.0), InvalidArgument);
  EXPECT_THROW(parse_route("midpoint"), InvalidArgument);
}

TEST(SeparatedNoise, RelativeExpm1) {
  EXPECT_EQ(relative_expm1(0.0), cplx(1.0, 0.0));
  const cplx x(0.0, 1e-6);
  EXPECT_LE(std::abs(relative_expm1(x) - (1.0 + x / 2.0 - 1e-12 / 6.0)), 1e-17);
  const cplx y(0.3, 2.0);
  EXPECT_LE(std::abs(relative_expm1(y) - (std::exp(y) - 1.0) / y), 1e-15);
  // Purely imaginary argument 2 pi i lands on a zero.
  EXPECT_LE(std::abs(relative_expm1(cplx(0.0, 2.0 * kPi))), 1e-16);
}

TEST(XiSpectrum, DirectAndHamiltonianRoutesAgree) {
  std::mt19937_64 rng(45);
  for (int qubits = 1; qubits <= 2; ++qubits) {
    const int d = 1 << qubits;
    const CMatrix h = testing::random_hermitian(rng, d);
    const OperatorBasis b = pauli_basis(qubits);
    const CMatrix omega = omega_from_coeffs(b.coefficients(h), structure_tensor(b));
    const RVector direct = xi_eigenvalues_direct(omega);
    const HamiltonianXiSpectrum fromh = xi_eigenvalues_from_hamiltonian(h);
    EXPECT_LE(max_sorted_difference(direct, fromh.w), 1e-9);
    EXPECT_LE(fromh.off_diagonal_residual, 1e-12);
    // Omega is diagonal in the B basis with entries E_i - E_j.
    const RVector e = hermitian_eigenvalues(h);
    EXPECT_NEAR(fromh.omega_diagonal(0), e(0) - e(1), 1e-12);
  }
}

TEST(XiSpectrum, EtaOfTheDephasingExample) {
  // Omega for H = -J X has eigenvalues {-2J, 0, 2J}; eta runs over {0, +-1, +-2}.
  const double j = 0.5;
  const auto gen = x_drive_generator(j, 1.0, CMatrix::Zero(3, 3));
  const XiSpectrum xs = xi_spectrum(omega_of_generator(gen));
  std::vector<double> etas;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 3; ++k) etas.push_back(xs.eta(i, k, j));
  std::sort(etas.begin(), etas.end());
  const std::vector<double> expected = {-2, -1, -1, 0, 0, 0, 1, 1, 2};
  for (std::size_t k = 0; k < etas.size(); ++k) EXPECT_NEAR(etas[k], expected[k], 1e-12);
}

TEST(XiSpectrum, ExplicitModesAreEigenvectors) {
  const double j = 1.0;
  const auto gen = x_drive_generator(j, 1.0, CMatrix::Zero(3, 3));
  const CMatrix omega = omega_of_generator(gen);
  const auto modes = dephasing_xi_modes();
  std::vector<double> etas;
  for (const CMatrix& mode : modes) {
    const CMatrix image = xi_apply(omega, mode);
    const cplx lambda = mode_coupling(mode, image) / mode_coupling(mode, mode);
    EXPECT_LE(max_abs(image - lambda * mode), 1e-13);
    EXPECT_LE(std::abs(lambda.real()), 1e-13);
    etas.push_back(lambda.imag() / (2.0 * j));
  }
  std::sort(etas.begin(), etas.end());
  EXPECT_NEAR(etas[0], -2.0, 1e-13);
  EXPECT_NEAR(etas[1], 2.0, 1e-13);
}

TEST(SteadyState, DephasingExample) {
  const double gamma = 0.3;
  const auto gen = x_drive_generator(1.0, 1.0, dephasing_rates(pauli_basis(1), "Z", gamma));
  const RateMatrix ss = steady_state(gen.rates(0.0), omega_of_generator(gen));
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(1, 1) = expected(2, 2) = gamma / 4.0;
  EXPECT_LE(max_abs(ss.gamma - expected), 1e-12);
}

TEST(SteadyState, IsTheLongTimeLimit) {
  std::mt19937_64 rng(46);
  const auto gen = testing::random_generator(rng, 1, 1.0);
  const CMatrix omega = omega_of_generator(gen);
  const CMatrix ss = steady_state(gen.rates(0.0), omega).gamma;
  // |Gamma^S - steady| decays like 1 / t_op.
  const double t = 4000.0;
  const CMatrix far = separated_spectral(gen.rates(0.0), omega, t).gamma_s.gamma;
  EXPECT_LE(max_abs(far - ss), 10.0 / t);
  EXPECT_LE(max_abs(xi_apply(omega, ss)), 1e-12);
}

TEST(SteadyState, DampingExample) {
  const double gamma = 0.4;
  const auto gen = x_drive_generator(1.0, 1.0, damping_rates(pauli_basis(1), 0, gamma));
  const RVector ev = steady_state(gen.rates(0.0), omega_of_generator(gen)).spectrum();
  EXPECT_NEAR(ev(0), gamma / 8.0, 1e-12);
  EXPECT_NEAR(ev(1), gamma / 8.0, 1e-12);
  EXPECT_NEAR(ev(2), gamma / 4.0, 1e-12);
  // The theta -> infinity limit of the closed-form rates agrees.
  const auto far = damping_closed_form_rates(gamma, 1e9);
  EXPECT_NEAR(far[0], gamma / 8.0, 1e-9);
  EXPECT_NEAR(far[1], gamma / 8.0, 1e-9);
  EXPECT_NEAR(far[2], gamma / 4.0, 1e-9);
}

TEST(ResidualComponents, VanishAtMultiplesOfPiForDephasing) {
  const double gamma = 0.3, j = 1.0;
  const auto gen = x_drive_generator(j, 1.0, dephasing_rates(pauli_basis(1), "Z", gamma));
  const CMatrix omega = omega_of_generator(gen);
  for (double theta : {kPi, 2.0 * kPi}) {
    double total = 0.0;
    for (const auto& c : residual_components(gen.rates(0.0), omega, j, theta)) total += c.amplitude;
    EXPECT_LE(total, 1e-9) << "theta=" << theta;
  }
  double total = 0.0;
  for (const auto& c : residual_components(gen.rates(0.0), omega, j, 1.0)) total += c.amplitude;
  EXPECT_GT(total, 1e-3);
}

TEST(ResidualComponents, RebuildSeparatedNoise) {
  std::mt19937_64 rng(47);
  const double j = 0.6, theta = 1.7;
  const auto gen = testing::random_generator(rng, 2, theta / (2.0 * j));
  const CMatrix omega = omega_of_generator(gen);
  CMatrix sum = steady_state(gen.rates(0.0), omega).gamma;
  for (const auto& c : residual_components(gen.rates(0.0), omega, j, theta)) sum += c.at_theta;
  EXPECT_LE(max_abs(sum - separated_spectral(gen.rates(0.0), omega, theta / (2.0 * j)).gamma_s.gamma), 1e-12);
}

TEST(ResidualComponents, CouplingsOfTheDephasingModes) {
  // Gamma^D - steady = (gamma/4) diag(0, -1, 1) lies in the span of the eta = +-2 modes.
  const double gamma = 0.3, j = 1.0;
  const auto gen = x_drive_generator(j, 1.0, dephasing_rates(pauli_basis(1), "Z", gamma));
  const auto comps = residual_components(gen.rates(0.0), omega_of_generator(gen), j, 1.0);
  double c1 = 0.0, c2 = 0.0;
  for (const auto& c : comps) (std::abs(std::abs(c.eta) - 2.0) < 1e-9 ? c2 : c1) += c.coupling * c.coupling;
  EXPECT_LE(c1, 1e-24);
  EXPECT_NEAR(std::sqrt(c2), gamma / 4.0 * std::sqrt(2.0), 1e-12);
}

TEST(Choi, SingleQubitMatchesClosedForm) {
  for (double theta : {0.5, 1.0, 2.0, kPi}) {
    const auto gen = x_drive_generator(1.0, theta, CMatrix::Zero(3, 3));
    const ChoiResult c = choi_of_K(omega_of_generator(gen), theta / 2.0);
    const auto ev = nonzero_sorted(c.eigenvalues, 1e-9);
    const auto ref = choi_closed_form(theta);
    ASSERT_EQ(ev.size(), 3u) << "theta=" << theta;
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev[static_cast<std::size_t>(k)], ref[static_cast<std::size_t>(k)], 1e-10);
    EXPECT_LE(hermitian_residual(c.choi), 1e-13);
  }
}

TEST(Choi, TraceIsTheRateDimension) {
  // K preserves the trace of every e^{ii}, so Tr C_K = n.
  std::mt19937_64 rng(48);
  const OperatorBasis b = pauli_basis(2);
  const CMatrix omega = omega_from_coeffs(testing::random_coeffs(rng, 15), structure_tensor(b));
  EXPECT_NEAR(choi_of_K(omega, 0.9).choi.trace().real(), 15.0, 1e-10);
}

}  // namespace
}  // namespace sepnoise
