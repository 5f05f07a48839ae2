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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "weakcz/weakcz.hpp"

namespace {

using namespace weakcz;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome perfect_limit() {
  model::SetupParams p{1.0 / 3.0, 0.0, 1.0, 0, 0, 0};
  const auto rows = model::sweep_phi_x(p, model::linear_grid(0, 45, 17));
  double worst = 0.0;
  int feasible = 0;
  for (const auto& r : rows) {
    if (!r.feasible()) continue;
    ++feasible;
    worst = std::max({worst, std::abs(r.point->f_h - 1.0), std::abs(r.point->f_chi - 1.0)});
  }
  return {feasible > 0 && worst <= 1e-9,
          std::to_string(feasible) + " feasible points, max |F-1| = " + fmt("%.3g", worst)};
}

Outcome operating_point() {
  const std::vector<double> g{20.0};
  const auto nominal = model::sweep_phi_x(model::SetupParams::fixture(), g, model::AngleRule::kNominalR).front();
  const auto measured = model::sweep_phi_x(model::SetupParams::fixture(), g, model::AngleRule::kMeasuredR).front();
  const double f = nominal.point->f_chi;
  const bool ok = std::abs(f - 0.889) <= 0.005;
  return {ok, "F_chi = " + fmt("%.6f", f) + " (default nominal-R rule); measured-R rule gives " +
                  fmt("%.6f", measured.point->f_chi)};
}

Outcome spin_success() {
  bool ok = spin::optimal_couplings(kPi).p_success == 1.0;
  double worst = 0.0;
  for (double phi : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
    worst = std::max(worst, std::abs(spin::optimal_couplings(phi).p_success - oracles::spin_success_grid_search(phi)));
  }
  ok = ok && worst <= 1e-6;
  return {ok, "P_S(pi) = 1, max |closed form - grid search| = " + fmt("%.3g", worst)};
}

Outcome standard_cz() {
  const auto a = optical::coincidence_amplitudes_no_bypass(2.0 / 3.0).filtered;
  double ps = 0.0;
  for (double w : a) ps += w * w / 4.0;
  const double third = 1.0 / 3.0;
  const double dev = std::max({std::abs(a[0] - third), std::abs(a[1] - third), std::abs(a[2] - third),
                               std::abs(a[3] + third), std::abs(ps - 1.0 / 9.0)});
  return {dev <= 1e-15, "amplitudes (1/3, 1/3, 1/3, -1/3), P_S = 1/9, max deviation " + fmt("%.3g", dev)};
}

Outcome oracle_equivalence() {
  const auto report = oracle::run(10, 20260101);
  double worst = 0.0;
  for (const auto& d : report.draws)
    for (const auto& c : d.checks) worst = std::max(worst, c.max_abs_diff);
  return {report.passed(), "10 random setups, max entrywise difference " + fmt("%.3g", worst)};
}

Outcome metric_identities() {
  std::mt19937_64 rng(77);
  bool ok = true;
  double worst_ps = 0.0;
  double min_gap = 1e9;
  for (int i = 0; i < 50; ++i) {
    const ProcessMatrix chi(oracles::random_psd(16, rng) * Complex(0.03));
    const double fchi = metrics::process_fidelity(chi);
    const double fh = metrics::hofmann_bound(chi).f_h;
    min_gap = std::min(min_gap, fchi - fh);
    ok = ok && fh <= fchi;
    const double ps = metrics::average_success_probability(chi);
    std::vector<metrics::ProbeBasis> bases{metrics::z_x_basis(), metrics::x_z_basis()};
    for (int b = 0; b < 5; ++b) bases.push_back(metrics::random_product_basis(rng));
    for (const auto& b : bases) worst_ps = std::max(worst_ps, std::abs(metrics::average_success_probability(chi, b) - ps));
  }
  ok = ok && worst_ps <= 1e-10;
  return {ok, "50 random chi: min(F_chi - F_H) = " + fmt("%.4f", min_gap) + ", max P_S deviation " + fmt("%.3g", worst_ps)};
}

Outcome tomography_closure() {
  auto p = model::SetupParams::fixture();
  p.phi_x_deg = 20.0;
  const auto chi = model::process_matrix(model::cz_parameter_solution(p));
  const auto rates = tomography::expected_rates(chi);
  tomography::TomographySettings s;
  s.counts_scale = 1e5;

  const auto clean = tomography::mle_reconstruct_observed(tomography::noiseless_counts(rates, s.counts_scale), s);
  const double f_clean = metrics::choi_state_fidelity(clean.raw, chi);

  const auto noisy = tomography::mle_reconstruct(tomography::simulate_counts(rates, s.counts_scale, 2026), s);
  const double f_noisy = metrics::process_fidelity(noisy.raw);
  const double f_model = metrics::process_fidelity(chi);
  const bool ok = f_clean > 0.9999 && std::abs(f_noisy - f_model) <= 0.01;

  std::ostringstream d;
  d << "noiseless closure " << fmt("%.6f", f_clean) << "; Poisson 1e5: F_chi(est) = " << fmt("%.4f", f_noisy)
    << " vs model " << fmt("%.4f", f_model) << ", P_S(est) = " << fmt("%.4f", metrics::average_success_probability(noisy.raw))
    << " [reference only, not asserted: measured F = " << fmt("%.3f", oracles::kMeasuredProcessFidelity)
    << ", measured P_S = " << fmt("%.4f", oracles::kMeasuredSuccessProbability) << "]";
  return {ok, d.str()};
}

Outcome argmax_coincidence() {
  const auto rows = model::sweep_phi_x(model::SetupParams::fixture(), model::linear_grid(0, 45, 17));
  std::size_t ih = rows.size(), ip = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].feasible()) continue;
    if (ih == rows.size() || rows[i].point->f_h > rows[ih].point->f_h) ih = i;
    if (ip == rows.size() || rows[i].point->p_s > rows[ip].point->p_s) ip = i;
  }
  const bool ok = ih < rows.size() && ih == ip && std::abs(rows[ih].phi_x_deg - 20.0) <= 45.0 / 16.0;
  return {ok, "argmax F_H at " + fmt("%.4f", rows[ih].phi_x_deg) + " deg, argmax P_S at " +
                  fmt("%.4f", rows[ip].phi_x_deg) + " deg"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "perfect-limit theorem", 1.0, perfect_limit},
      {2, "model fidelity at operating point", 1.0, operating_point},
      {3, "spin-protocol success probability", 10.0, spin_success},
      {4, "standard CZ recovery", 1.0, standard_cz},
      {5, "oracle equivalence", 30.0, oracle_equivalence},
      {6, "metric identities", 30.0, metric_identities},
      {7, "tomography closure", 300.0, tomography_closure},
      {8, "argmax coincidence", 10.0, argmax_coincidence},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.ok && secs < c.budget_s;
    failures += ok ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
  }
  return failures == 0 ? 0 : 1;
}
