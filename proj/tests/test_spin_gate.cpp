// Copyright 2026 The weakcz Authors
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

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "weakcz/spin_gate.hpp"

namespace {

using namespace weakcz;
using namespace weakcz::spin;
constexpr double kPi = std::numbers::pi;

PureState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(4);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return PureState(v).normalized();
}

TEST(ControlledPhase, Values) {
  EXPECT_LE(max_abs_diff(controlled_phase(kPi), gates::cz()), 1e-15);
  EXPECT_EQ(controlled_phase(0.0), ComplexMatrix::identity(4));
  EXPECT_LE(max_abs_diff(controlled_phase(kPi / 2), ComplexMatrix::diagonal({1.0, 1.0, 1.0, Complex(0, 1)})), 1e-15);
  for (double phi : {-1.0, 0.3, 2.0, 7.0}) EXPECT_TRUE(is_unitary(controlled_phase(phi)));
}

TEST(RunProtocol, BasisZeroZeroGetsEta) {
  const auto p = SpinProtocolParams::from_transmissions(1.1, 0.7, 0.4);
  const auto out = run_protocol(PureState::basis(4, 0), p);
  const Complex eta = eta_a(p);
  EXPECT_LE(std::abs(out[0] - eta), 1e-14);
  EXPECT_NEAR(out.norm_squared(), std::norm(eta), 1e-14);
}

TEST(RunProtocol, FullStrengthIsCz) {
  std::mt19937_64 rng(3);
  const auto p = SpinProtocolParams::from_transmissions(kPi, 1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const auto psi = random_state(rng);
    const auto out = run_protocol(psi, p);
    const auto expect = gates::cz() * psi;
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(std::abs(out[k] - expect[k]), 1e-14);
  }
}

TEST(RunProtocol, RejectsUnnormalizedInput) {
  EXPECT_THROW(run_protocol(PureState({1.0, 1.0, 0.0, 0.0}), SpinProtocolParams{}), DomainError);
  EXPECT_THROW(run_protocol(PureState({1.0, 0.0}), SpinProtocolParams{}), DimensionError);
}

TEST(RunProtocol, CzConditionEntanglesPlusPlus) {
  const double phi = kPi / 3;
  const auto opt = optimal_couplings(phi);
  const auto psi = PureState::product(states::plus(), states::plus());
  const auto out = run_protocol(psi, opt.params(phi)).normalized();
  const auto ideal = controlled_phase(kPi) * psi;
  EXPECT_NEAR(std::norm(inner(ideal.amplitudes(), out.amplitudes())), 1.0, 1e-12);
}

TEST(EffectiveGate, BypassOffIsControlledPhase) {
  const auto g = effective_gate(SpinProtocolParams::from_transmissions(0.8, 1.0, 1.0));
  EXPECT_LE(max_abs_diff(g.matrix, controlled_phase(0.8)), 1e-15);
}

TEST(EffectiveGate, MatchesProtocolOnRandomStates) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = SpinProtocolParams::from_transmissions(kPi * u(rng), std::polar(u(rng), 2 * kPi * u(rng)),
                                                          std::polar(u(rng), 2 * kPi * u(rng)), u(rng));
    const auto g = effective_gate(p);
    const auto psi = random_state(rng);
    const auto a = run_protocol(psi, p);
    const auto b = g.matrix * psi;
    for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-12);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LE(std::abs(g.matrix(k, k) - g.eta_a), 1e-15);
  }
}

TEST(SolveCzCondition, GateIsProportionalToCz) {
  for (double phi : {kPi / 5, kPi / 2, 2.5, kPi}) {
    for (double t : {0.3, 0.6, 0.9}) {
      const auto sol = solve_cz_condition(phi, t);
      const auto g = effective_gate(SpinProtocolParams::from_transmissions(phi, t, sol.t_tilde, sol.qubit_a_phase));
      ASSERT_GT(std::abs(g.eta_a), 1e-6);
      EXPECT_LE(max_abs_diff(g.matrix * (1.0 / g.eta_a), gates::cz()), 1e-12) << phi << " " << t;
    }
  }
}

TEST(SolveCzCondition, FullStrengthAndErrors) {
  EXPECT_DOUBLE_EQ(solve_cz_condition(kPi, 0.4).t_tilde, 1.0);
  EXPECT_DOUBLE_EQ(solve_cz_condition(kPi, 1.0).t_tilde, 1.0);
  EXPECT_THROW(solve_cz_condition(kPi / 2, 1.0), InfeasibleError);
  EXPECT_THROW(solve_cz_condition(kPi / 2, 0.0), InfeasibleError);
  EXPECT_THROW(solve_cz_condition(0.0, 0.5), DomainError);
}

TEST(SolveCzCondition, SymmetricAtOptimum) {
  const double t = std::sqrt(1.0 / (1.0 + std::cos(kPi / 4)));
  EXPECT_NEAR(solve_cz_condition(kPi / 2, t).t_tilde, t, 1e-12);
}

TEST(OptimalCouplings, FullStrength) {
  const auto o = optimal_couplings(kPi);
  EXPECT_DOUBLE_EQ(o.t, 1.0);
  EXPECT_DOUBLE_EQ(o.p_success, 1.0);
}

TEST(OptimalCouplings, QuarterTurn) {
  const auto o = optimal_couplings(kPi / 2);
  // (sin 45 / (1 + cos 45))^2 = (sqrt2 - 1)^2 = 3 - 2 sqrt2.
  EXPECT_NEAR(o.p_success, 3.0 - 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(o.t * o.t, 1.0 / (1.0 + std::cos(kPi / 4)), 1e-15);
  EXPECT_NEAR(std::norm(effective_gate(o.params(kPi / 2)).eta_a), o.p_success, 1e-14);
}

TEST(OptimalCouplings, MatchesGridSearch) {
  for (double phi : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
    EXPECT_NEAR(optimal_couplings(phi).p_success, oracles::spin_success_grid_search(phi), 1e-6) << phi;
  }
}

TEST(OptimalCouplings, MonotoneAndRejectsZero) {
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double ps = optimal_couplings(kPi * i / 100).p_success;
    EXPECT_GT(ps, prev);
    prev = ps;
  }
  EXPECT_THROW(optimal_couplings(0.0), DomainError);
}

}  // namespace
