// cdelab: command line front end for the cylinder Dirac-Einstein toolkit.
//
// Exit status: 0 success, 1 solver failure, 2 invalid input or usage.

#include <CLI11.hpp>
#include <cdelab/cdelab.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "verify.hpp"

namespace {

using namespace cdelab;
using io::json;

struct Globals {
  std::string out;
  std::string format;
  std::uint64_t seed = 20240601;
  double tol = 0.0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidInput("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string format_or(const Globals& g, const std::string& fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "csv" && f != "json") throw InvalidInput("--format must be csv or json");
  return f;
}

State4 parse_state(const std::string& s) {
  const auto v = io::parse_list(s);
  if (v.size() != 4) throw InvalidInput("--state expects four comma separated numbers u,v,a,b");
  return {v[0], v[1], v[2], v[3]};
}

// ---------------------------------------------------------------------------

int cmd_equilibria(const Globals& g) {
  const auto eq = equilibria();
  Output out(g.out);
  auto& os = out.stream();
  const std::vector<std::pair<std::string, State4>> rows{
      {"P0", eq.p0}, {"P+", eq.p_plus}, {"P-", eq.p_minus}};
  if (format_or(g, "json") == "csv") {
    os << "name,u,v,a,b,H\n";
    for (const auto& [n, s] : rows) {
      os << n << ',';
      io::write_row(os, {s.u, s.v, s.a, s.b, hamiltonian(s)});
    }
  } else {
    json j = json::array();
    for (const auto& [n, s] : rows) {
      j.push_back({{"name", n}, {"state", io::state_json(s)}, {"H", hamiltonian(s)}});
    }
    os << json{{"schema", io::kSchema}, {"equilibria", j}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_integrate(const Globals& g, const std::string& state, double t_final, double dt,
                  const std::string& method, bool rotated) {
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.method = method_from_string(method);
  const State4 s0 = parse_state(state);
  const Trajectory tr = rotated ? [&] {
    const auto rt = integrate(to_rotated(s0), t_final, cfg);
    Trajectory back;
    for (std::size_t i = 0; i < rt.size(); ++i) back.push(rt.times[i], from_rotated(rt.states[i]));
    return back;
  }()
                                : integrate(s0, t_final, cfg);
  Output out(g.out);
  if (format_or(g, "csv") == "csv") {
    io::write_trajectory_csv(out.stream(), tr);
  } else {
    PeriodicOrbit rec;
    rec.T = 0.5 * std::abs(t_final);
    rec.initial_state = s0;
    rec.trajectory = tr;
    rec.H = hamiltonian(s0);
    rec.residual = distance_inf(tr.states.back(), s0);
    rec.provenance = "integrate/" + to_string(cfg.method);
    json j = io::orbit_to_json(rec, tr.size());
    j["energy_drift"] = energy_drift(tr);
    out.stream() << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_lyapunov(const Globals& g, const std::string& amplitudes, double dt) {
  ShootingOptions opt;
  opt.stepper.dt = dt;
  if (g.tol > 0.0) opt.tol = g.tol;
  const auto amps = io::parse_list(amplitudes);
  const auto fam = lyapunov_family(amps, opt);
  Output out(g.out);
  auto& os = out.stream();
  if (format_or(g, "json") == "csv") {
    os << "amplitude,period,T,H,residual,energy_drift,sup_dist_P_plus\n";
    for (std::size_t i = 0; i < fam.size(); ++i) {
      io::write_row(os, {amps[i], fam[i].period(), fam[i].T, fam[i].H, fam[i].residual,
                         fam[i].energy_drift, sup_distance_to(fam[i].trajectory, kPPlus)});
    }
  } else {
    json arr = json::array();
    for (std::size_t i = 0; i < fam.size(); ++i) {
      json j = io::orbit_to_json(fam[i]);
      j["amplitude"] = amps[i];
      j["period"] = fam[i].period();
      arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
  }
  return 0;
}

int cmd_ground_state(const Globals& g, double eps, int modes) {
  GroundStateOptions opt;
  opt.K = modes;
  if (g.tol > 0.0) opt.gradient_tol = g.tol;
  const auto gs = ground_state(eps, opt);
  Output out(g.out);
  if (format_or(g, "json") == "csv") {
    io::write_field_csv(out.stream(), gs.field);
    return 0;
  }
  const PeriodicOrbit orb = orbit_from_field(gs.field);
  const auto dist = distance_to_homoclinic(orb);
  json j = io::orbit_to_json(orb);
  j["delta_eps"] = gs.delta;
  j["field"] = io::field_to_json(gs.field);
  j["diagnostics"] = {{"gradient_norm", gs.diagnostics.gradient_norm},
                      {"identity_defect", gs.diagnostics.identity_defect},
                      {"descent_iterations", gs.diagnostics.descent_iterations},
                      {"newton_iterations", gs.diagnostics.newton_iterations},
                      {"initializer", gs.diagnostics.initializer},
                      {"homoclinic_shift", dist.shift},
                      {"homoclinic_sup_dist", dist.sup_dist}};
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_continuation(const Globals& g, const std::string& grid) {
  GroundStateOptions opt;
  if (g.tol > 0.0) opt.gradient_tol = g.tol;
  const auto rows = period_energy_diagram(io::parse_list(grid), opt);
  Output out(g.out);
  if (format_or(g, "csv") == "csv") {
    io::write_diagram_csv(out.stream(), rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"epsilon", r.epsilon}, {"T", r.T}, {"delta_eps", r.delta_eps}, {"gap", r.gap},
                     {"converged", r.converged}, {"message", r.message}});
    }
    out.stream() << json{{"schema", io::kSchema}, {"delta0", kDelta0}, {"rows", arr}}.dump(2) << '\n';
  }
  bool all = true;
  for (const auto& r : rows) all = all && r.converged;
  return all ? 0 : 1;
}

int cmd_homoclinic(const Globals& g, bool use_printed) {
  const auto d = derive_homoclinic_constants();
  const HomoclinicProfile p = use_printed ? printed_homoclinic() : d.profile();
  Output out(g.out);
  if (format_or(g, "json") == "csv") {
    Trajectory tr;
    for (int i = -1000; i <= 1000; ++i) tr.push(0.01 * i, p(0.01 * i));
    io::write_trajectory_csv(out.stream(), tr);
    return 0;
  }
  json j{{"schema", io::kSchema},
         {"alpha_sq", d.alpha_sq},
         {"beta_sq", d.beta_sq},
         {"alpha", d.alpha},
         {"beta", d.beta},
         {"max_ode_residual", d.max_residual_derived},
         {"max_abs_H", d.max_energy_derived},
         {"H_at_zero", d.energy_at_zero},
         {"delta0", kDelta0},
         {"delta0_quadrature", delta0_quadrature(d.profile())},
         {"printed_constants",
          {{"alpha", d.printed_alpha},
           {"beta", d.printed_beta},
           {"max_ode_residual", d.max_residual_printed},
           {"max_ode_residual_swapped_placement", d.max_residual_printed_swapped}}}};
  if (use_printed) {
    j["selected"] = "printed";
    j["selected_profile_residual"] = d.max_residual_printed;
  } else {
    j["selected"] = "derived";
    j["selected_profile_residual"] = d.max_residual_derived;
  }
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_transform(const Globals& g, const std::string& from, const std::string& to,
                  const std::string& input) {
  std::ifstream in(input);
  if (!in) throw InvalidInput("cannot open input file '" + input + "'");
  const RadialChart src = radial_chart_from_string(from);
  const RadialChart dst = radial_chart_from_string(to);
  if (src == RadialChart::sphere) throw InvalidInput("transforms start from cylinder or euclidean");
  if (dst == RadialChart::cylinder && src != RadialChart::euclidean) {
    throw InvalidInput("cylinder output needs euclidean input");
  }
  RadialProfile p = io::read_radial_csv(in, src);
  if (src == RadialChart::cylinder) {
    std::vector<double> r;
    for (auto it = p.grid.rbegin(); it != p.grid.rend(); ++it) r.push_back(std::exp(-*it));
    p = cylinder_to_euclidean(p, r);
  }
  if (dst == RadialChart::sphere) p = euclidean_to_sphere(p);
  if (dst == RadialChart::cylinder) p = euclidean_to_cylinder(p);
  Output out(g.out);
  if (format_or(g, "csv") == "csv") {
    io::write_radial_csv(out.stream(), p);
  } else {
    out.stream() << io::profile_to_json(p).dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(const Globals& g, const std::string& suite) {
  const auto& all = tools::suites();
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& [n, _] : all) names.push_back(n);
  } else if (all.count(suite) == 0) {
    std::string known;
    for (const auto& [n, _] : all) known += " " + n;
    throw InvalidInput("unknown suite '" + suite + "'; known:" + known + " all");
  } else {
    names.push_back(suite);
  }
  Output out(g.out);
  auto& os = out.stream();
  bool ok = true;
  json report = json::array();
  const bool as_json = format_or(g, "csv") == "json";
  for (const auto& n : names) {
    for (const auto& c : all.at(n)(g.seed, g.tol)) {
      ok = ok && c.passed;
      if (as_json) {
        report.push_back({{"suite", n}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      } else {
        os << (c.passed ? "PASS " : "FAIL ") << n << ": " << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << '\n';
      }
    }
  }
  if (as_json) os << report.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylinder Dirac-Einstein toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Write output to FILE instead of stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--tol", g.tol, "Override the solver tolerance")->check(CLI::PositiveNumber);

  auto* eq = app.add_subcommand("equilibria", "List the equilibria and their energies");

  auto* integ = app.add_subcommand("integrate", "Integrate the system from a state");
  std::string state;
  double t_final = 0.0, dt = 1e-3;
  std::string method = "implicit_midpoint";
  bool rotated = false;
  integ->add_option("--state", state, "u,v,a,b")->required();
  integ->add_option("--t-final", t_final, "Final time (negative integrates backwards)")->required();
  integ->add_option("--dt", dt, "Step size")->check(CLI::PositiveNumber);
  integ->add_option("--method", method, "implicit_midpoint or rk4");
  integ->add_flag("--rotated", rotated, "Integrate in the rotated spinor chart");

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov orbits around P+");
  std::string amplitudes;
  double lyap_dt = 1e-3;
  lyap->add_option("--amplitudes", amplitudes, "a1,a2,...")->required();
  lyap->add_option("--dt", lyap_dt, "Step size of the discrete flow")->check(CLI::PositiveNumber);

  auto* gs = app.add_subcommand("ground-state", "Periodic ground state at a given epsilon");
  double eps = 0.1;
  int modes = 0;
  gs->add_option("--epsilon", eps, "epsilon = 1/T")->required()->check(CLI::PositiveNumber);
  gs->add_option("--modes", modes, "Fourier truncation K (default from epsilon)");

  auto* cont = app.add_subcommand("continuation", "Ground-state energy over an epsilon grid");
  std::string grid;
  cont->add_option("--eps-grid", grid, "e1,e2,...")->required();

  auto* hom = app.add_subcommand("homoclinic", "Derived homoclinic orbit report");
  bool printed = false;
  hom->add_flag("--paper-constants", printed, "Select the printed amplitudes instead of the derived ones");

  auto* tr = app.add_subcommand("transform", "Move a radial profile between charts");
  std::string from, to, input;
  tr->add_option("--from", from, "cylinder or euclidean")->required();
  tr->add_option("--to", to, "euclidean, sphere or cylinder")->required();
  tr->add_option("--input", input, "CSV file")->required();

  auto* ver = app.add_subcommand("verify", "Run a self-check suite");
  std::string suite;
  ver->add_option("suite", suite, "linear, equilibria, homoclinic, spectral, lyapunov, ground-state, geometry, energy, all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eq) return cmd_equilibria(g);
    if (*integ) return cmd_integrate(g, state, t_final, dt, method, rotated);
    if (*lyap) return cmd_lyapunov(g, amplitudes, lyap_dt);
    if (*gs) return cmd_ground_state(g, eps, modes);
    if (*cont) return cmd_continuation(g, grid);
    if (*hom) return cmd_homoclinic(g, printed);
    if (*tr) return cmd_transform(g, from, to, input);
    if (*ver) return cmd_verify(g, suite);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
