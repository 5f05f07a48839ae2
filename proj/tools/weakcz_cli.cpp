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

// weakcz: command-line front end.
//
// Exit status: 0 success, 1 usage error, 2 numerical infeasibility,
// 3 oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weakcz/weakcz.hpp"

namespace {

using namespace weakcz;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitOracle = 3;

/// Bad command-line input detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double start = 0.0;
  double stop = 45.0;
  std::size_t points = 17;

  std::string to_string() const {
    return io::format_number(start) + ":" + io::format_number(stop) + ":" + std::to_string(points);
  }
};

GridSpec parse_grid(const std::string& spec) {
  const auto f = io::split(spec, ':');
  if (f.size() != 3) throw UsageError("--grid expects start:stop:points, got '" + spec + "'");
  GridSpec g;
  try {
    g.start = io::parse_number(f[0]);
    g.stop = io::parse_number(f[1]);
    const double n = io::parse_number(f[2]);
    if (n < 1.0 || n != std::floor(n)) throw UsageError("--grid needs an integer point count >= 1");
    g.points = static_cast<std::size_t>(n);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  return g;
}

struct SetupOptions {
  std::string preset = "fixture";
  std::optional<double> R;
  std::optional<double> RH;
  std::optional<double> visibility;
  std::string angle_rule = "nominal-R";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Base parameter set")->check(CLI::IsMember({"fixture", "ideal"}));
    cmd->add_option("--R", R, "Central reflectance for vertical polarisation");
    cmd->add_option("--RH", RH, "Parasitic reflectance for horizontal polarisation");
    cmd->add_option("--visibility", visibility, "Two-photon interference visibility");
    cmd->add_option("--angle-rule", angle_rule, "Reflectance the plate angles are solved for")
        ->check(CLI::IsMember({"nominal-R", "measured-R"}));
  }

  model::SetupParams params() const {
    model::SetupParams p = preset == "ideal" ? model::SetupParams::ideal() : model::SetupParams::fixture();
    if (R) p.R = *R;
    if (RH) p.R_H = *RH;
    if (visibility) p.visibility = *visibility;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  model::AngleRule rule() const { return model::angle_rule_from_string(angle_rule); }
};

struct Output {
  std::string format;
  std::string path;

  void add_to(CLI::App* cmd, std::vector<std::string> formats) {
    format = formats.front();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
    cmd->add_option("--out", path, "Write to this file instead of stdout");
  }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

double mean_square(const optical::Amplitudes& w) {
  double s = 0.0;
  for (double x : w) s += x * x;
  return s / 4.0;
}

// ---- spin -----------------------------------------------------------------

struct SpinCmd {
  double phi_deg = 180.0;
  std::string grid = "20:180:9";
  Output out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("spin", "Bypass protocol for weakly coupled spins");
    cmd->add_option("--phi-deg", phi_deg, "Interaction phase in degrees, (0, 180]");
    cmd->add_option("--grid", grid, "Phase samples for P_S, start:stop:points in degrees");
    out.add_to(cmd, {"json", "csv"});
  }

  int run() const {
    if (!(phi_deg > 0.0 && phi_deg <= 180.0)) {
      throw UsageError("--phi-deg must lie in (0, 180]; no gate exists without interaction");
    }
    const GridSpec g = parse_grid(grid);
    const auto samples = model::linear_grid(g.start, g.stop, g.points);
    for (double s : samples) {
      if (!(s > 0.0 && s <= 180.0)) throw UsageError("--grid phases must lie in (0, 180]");
    }

    if (out.format == "csv") {
      std::ostringstream os;
      os << "phi_deg,t,t_tilde,P_S\n";
      for (double s : samples) {
        const auto o = spin::optimal_couplings(model::deg_to_rad(s));
        os << io::format_number(s) << ',' << io::format_number(o.t) << ',' << io::format_number(o.t_tilde) << ','
           << io::format_number(o.p_success) << '\n';
      }
      out.write(os.str());
      return kExitOk;
    }

    const double phi = model::deg_to_rad(phi_deg);
    const auto opt = spin::optimal_couplings(phi);
    const auto gate = spin::effective_gate(opt.params(phi));
    json ps = json::array();
    for (double s : samples) {
      ps.push_back({{"phi_deg", s}, {"P_S", spin::optimal_couplings(model::deg_to_rad(s)).p_success}});
    }
    const json config{{"command", "spin"}, {"phi_deg", phi_deg}, {"grid", g.to_string()}};
    const json results{
        {"optimal", {{"t", opt.t}, {"t_tilde", opt.t_tilde}, {"P_S", opt.p_success}, {"qubit_a_phase_rad", opt.qubit_a_phase}}},
        {"eta_A", complex_json(gate.eta_a)},
        {"V", io::matrix_to_json(gate.matrix)},
        {"P_S_samples", ps}};
    out.write(dump(io::document(config, results)));
    return kExitOk;
  }
};

// ---- optical --------------------------------------------------------------

struct OpticalCmd {
  double R = model::kNominalReflectance;
  std::optional<double> phi_x_deg;
  bool bypass_off = false;
  Output out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("optical", "Ideal interferometric scheme with bypass");
    cmd->add_option("--R", R, "Central reflectance");
    cmd->add_option("--phi-x-deg", phi_x_deg, "First bypass plate angle in degrees (default: optimum)");
    cmd->add_flag("--bypass-off", bypass_off, "Central coupling and filters only");
    out.add_to(cmd, {"json", "csv"});
  }

  int run() const {
    if (!(R > 0.0 && R < 1.0)) throw UsageError("--R must lie in (0, 1)");
    json config{{"command", "optical"}, {"R", R}, {"bypass_off", bypass_off}};
    json results;
    optical::Amplitudes w{};

    if (bypass_off) {
      const auto nb = optical::coincidence_amplitudes_no_bypass(R);
      w = nb.filtered;
      results = {{"bare", nb.bare}, {"filtered", nb.filtered}, {"P_S", mean_square(w)}};
    } else {
      double t_x = 0.0;
      if (phi_x_deg) {
        config["phi_X_deg"] = *phi_x_deg;
        t_x = optical::wave_plate_coupling(model::deg_to_rad(*phi_x_deg)).t;
        if (optical::wave_plate_coupling(model::deg_to_rad(*phi_x_deg)).r < 0.0) {
          throw InfeasibleError("phi_X = " + io::format_number(*phi_x_deg) +
                                " deg is infeasible; feasible range is (0, 45) deg");
        }
      } else {
        t_x = optical::optimal_bypass(R).t_x;
      }
      const auto s = optical::cz_scheme(R, t_x);
      w = optical::bypass_amplitudes(s);
      results = {{"amplitudes", w},
                 {"t_X", s.t_x},
                 {"t_Y", s.t_y},
                 {"r_Y", s.r_y},
                 {"t_A", s.t_a},
                 {"t_B", s.t_b},
                 {"phi_X_deg", model::rad_to_deg(optical::wave_plate_angle(s.t_x, s.r_x))},
                 {"phi_Y_deg", model::rad_to_deg(optical::wave_plate_angle(s.t_y, s.r_y))},
                 {"P_S", mean_square(w)},
                 {"optimum", {{"t_X", optical::optimal_bypass(R).t_x}, {"P_S", optical::optimal_bypass(R).p_success}}}};
    }

    if (out.format == "csv") {
      std::ostringstream os;
      os << "w_00,w_01,w_10,w_11,P_S\n";
      for (double x : w) os << io::format_number(x) << ',';
      os << io::format_number(mean_square(w)) << '\n';
      out.write(os.str());
    } else {
      out.write(dump(io::document(config, results)));
    }
    return kExitOk;
  }
};

// ---- sweep ----------------------------------------------------------------

struct SweepCmd {
  SetupOptions setup;
  std::string grid = "0:45:17";
  Output out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "F_H, F_chi and P_S over a grid of phi_X");
    setup.add_to(cmd);
    cmd->add_option("--grid", grid, "phi_X grid, start:stop:points in degrees");
    out.add_to(cmd, {"csv", "json"});
  }

  int run() const {
    const GridSpec g = parse_grid(grid);
    const auto p = setup.params();
    const auto rows = model::sweep_phi_x(p, model::linear_grid(g.start, g.stop, g.points), setup.rule());
    if (out.format == "csv") {
      std::ostringstream os;
      io::write_sweep_csv(os, rows);
      out.write(os.str());
    } else {
      json config{{"command", "sweep"}, {"setup", io::setup_to_json(p)}, {"grid", g.to_string()},
                  {"angle_rule", setup.angle_rule}};
      out.write(dump(io::document(config, io::sweep_to_json(rows))));
    }
    return kExitOk;
  }
};

// ---- tomography -----------------------------------------------------------

struct TomographyCmd {
  SetupOptions setup;
  double phi_x_deg = 20.0;
  bool bypass_off = false;
  double counts_scale = 1e5;
  std::optional<std::uint64_t> seed;
  bool noiseless = false;
  std::string counts_in;
  std::string counts_out;
  Output out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("tomography", "Simulated process tomography with ML reconstruction");
    setup.add_to(cmd);
    cmd->add_option("--phi-x-deg", phi_x_deg, "First bypass plate angle in degrees");
    cmd->add_flag("--bypass-off", bypass_off, "All plates at 0 deg");
    cmd->add_option("--counts-scale", counts_scale, "Expected counts per setting for unit success probability");
    cmd->add_option("--seed", seed, "Seed for Poisson count simulation");
    cmd->add_flag("--noiseless", noiseless, "Use expected counts, no sampling");
    cmd->add_option("--counts-in", counts_in, "Reconstruct from this counts CSV instead of simulating");
    cmd->add_option("--counts-out", counts_out, "Also write the simulated counts as CSV");
    out.add_to(cmd, {"json"});
  }

  int run() const {
    if (!(counts_scale > 0.0)) throw UsageError("--counts-scale must be positive");
    if (counts_in.empty() && !noiseless && !seed) throw UsageError("--seed is required when counts are simulated");
    if (noiseless && !counts_out.empty()) throw UsageError("--counts-out needs sampled counts; drop --noiseless");

    model::SetupParams p = setup.params();
    p.phi_x_deg = bypass_off ? 0.0 : phi_x_deg;
    if (!bypass_off) p = model::cz_parameter_solution(p, setup.rule());
    const ProcessMatrix chi_model = model::process_matrix(p);
    const auto rates = tomography::expected_rates(chi_model);

    tomography::TomographySettings s;
    s.counts_scale = counts_scale;
    if (seed) s.seed = *seed;

    tomography::Reconstruction rec = [&] {
      if (!counts_in.empty()) {
        std::ifstream f(counts_in);
        if (!f) throw UsageError("cannot read '" + counts_in + "'");
        return tomography::mle_reconstruct(io::read_counts_csv(f), s);
      }
      if (noiseless) return tomography::mle_reconstruct_observed(tomography::noiseless_counts(rates, counts_scale), s);
      const auto counts = tomography::simulate_counts(rates, counts_scale, s.seed);
      if (!counts_out.empty()) {
        std::ofstream f(counts_out, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + counts_out + "' for writing");
        io::write_counts_csv(f, counts);
      }
      return tomography::mle_reconstruct(counts, s);
    }();

    // Identity-like if the dominant Choi eigenvector sits closer to |chi_identity> than to |chi_CZ>.
    const auto eig = eigendecompose_hermitian(rec.raw.matrix(), 1e-6);
    std::vector<Complex> top(16);
    for (std::size_t i = 0; i < 16; ++i) top[i] = eig.vectors(i, 15);
    const auto v_id = ProcessMatrix::choi_vector(ComplexMatrix::identity(4));
    const auto v_cz = ProcessMatrix::choi_vector(gates::cz());
    const double ov_id = std::norm(inner(v_id, top)) / 4.0;
    const double ov_cz = std::norm(inner(v_cz, top)) / 4.0;

    json config{{"command", "tomography"},
                {"setup", io::setup_to_json(p)},
                {"bypass_off", bypass_off},
                {"angle_rule", setup.angle_rule},
                {"counts_scale", counts_scale},
                {"noiseless", noiseless}};
    if (seed) config["seed"] = *seed;
    if (!counts_in.empty()) config["counts_in"] = counts_in;

    const json results{{"F_chi_estimate", metrics::process_fidelity(rec.raw)},
                       {"F_chi_model", metrics::process_fidelity(chi_model)},
                       {"choi_fidelity_estimate_vs_model", metrics::choi_state_fidelity(rec.raw, chi_model)},
                       {"P_S_estimate", metrics::average_success_probability(rec.raw)},
                       {"P_S_model", metrics::average_success_probability(chi_model)},
                       {"iterations", rec.iterations},
                       {"converged", rec.converged},
                       {"dominant_overlap_identity", ov_id},
                       {"dominant_overlap_cz", ov_cz},
                       {"identity_like", ov_id > ov_cz},
                       {"chi_raw", io::matrix_to_json(rec.raw.matrix())},
                       {"chi_normalized", io::matrix_to_json(rec.normalized.matrix())}};
    out.write(dump(io::document(config, results)));
    return kExitOk;
  }
};

// ---- oracle-check ---------------------------------------------------------

struct OracleCmd {
  long long draws = 10;
  std::uint64_t seed = 1;
  double tolerance = kTolerance;
  bool inject_fault = false;
  Output out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("oracle-check", "Mode-network simulation against the closed-form models");
    cmd->add_option("--draws", draws, "Number of random parameter draws");
    cmd->add_option("--seed", seed, "Seed for the parameter draws");
    cmd->add_option("--tolerance", tolerance, "Entrywise tolerance");
    cmd->add_flag("--inject-fault", inject_fault, "Negative control: corrupt one closed-form coefficient");
    out.add_to(cmd, {"text", "json"});
  }

  int run() const {
    if (draws < 1) throw UsageError("--draws must be at least 1");
    if (!(tolerance > 0.0)) throw UsageError("--tolerance must be positive");
    const auto report = oracle::run(static_cast<std::size_t>(draws), seed, tolerance,
                                    inject_fault ? oracle::Fault::kFlipGamma11 : oracle::Fault::kNone);

    std::ostringstream os;
    if (out.format == "json") {
      json d = json::array();
      for (const auto& dr : report.draws) {
        json checks = json::array();
        for (const auto& c : dr.checks) checks.push_back({{"name", c.name}, {"max_abs_diff", c.max_abs_diff}, {"passed", c.passed}});
        d.push_back({{"draw", dr.draw}, {"setup", io::setup_to_json(dr.params)}, {"checks", checks}, {"passed", dr.passed()}});
      }
      json config{{"command", "oracle-check"}, {"draws", draws}, {"seed", seed}, {"tolerance", tolerance},
                  {"inject_fault", inject_fault}};
      os << dump(io::document(config, {{"passed", report.passed()}, {"draws", d}}));
    } else {
      for (const auto& dr : report.draws) {
        double worst = 0.0;
        for (const auto& c : dr.checks) worst = std::max(worst, c.max_abs_diff);
        os << "draw " << dr.draw << ": " << (dr.passed() ? "ok" : "MISMATCH") << " (max diff "
           << io::format_number(worst) << ")\n";
        if (!dr.passed()) {
          const auto& p = dr.params;
          os << "  R=" << io::format_number(p.R) << " R_H=" << io::format_number(p.R_H)
             << " V=" << io::format_number(p.visibility) << " phi_X=" << io::format_number(p.phi_x_deg)
             << " phi_Y=" << io::format_number(p.phi_y_deg) << " phi_A=" << io::format_number(p.phi_a_deg) << "\n";
          for (const auto& c : dr.checks) {
            if (!c.passed) os << "  failed: " << c.name << " (" << io::format_number(c.max_abs_diff) << ")\n";
          }
        }
      }
      os << (report.passed() ? "PASS" : "FAIL") << ": " << report.draws.size() << " draws, tolerance "
         << io::format_number(tolerance) << "\n";
    }
    out.write(os.str());
    return report.passed() ? kExitOk : kExitOracle;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional CZ synthesis between weakly coupled qubits"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);

  SpinCmd spin_cmd;
  OpticalCmd optical_cmd;
  SweepCmd sweep_cmd;
  TomographyCmd tomo_cmd;
  OracleCmd oracle_cmd;
  spin_cmd.add(app);
  optical_cmd.add(app);
  sweep_cmd.add(app);
  tomo_cmd.add(app);
  oracle_cmd.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "spin") return spin_cmd.run();
    if (name == "optical") return optical_cmd.run();
    if (name == "sweep") return sweep_cmd.run();
    if (name == "tomography") return tomo_cmd.run();
    return oracle_cmd.run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
