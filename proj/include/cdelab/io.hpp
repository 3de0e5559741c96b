#pragma once

#include <charconv>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "cdelab/errors.hpp"
#include "cdelab/functional.hpp"
#include "cdelab/geometry.hpp"
#include "cdelab/integrate.hpp"
#include "cdelab/orbits.hpp"
#include "cdelab/spectral.hpp"

namespace cdelab::io {

using nlohmann::json;

inline constexpr const char* kSchema = "cde-lab/1";

/// Shortest round-trip decimal form, independent of the global locale.
inline std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, r.ptr};
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw InvalidInput("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string_view rest = s;
  while (!rest.empty()) {
    const auto pos = rest.find(',');
    out.push_back(parse_double(rest.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

inline void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << fmt(v);
    first = false;
  }
  os << '\n';
}

// ---------------------------------------------------------------------------
// CSV

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,u,v,a,b,H\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto& s = tr.states[i];
    write_row(os, {tr.times[i], s.u, s.v, s.a, s.b, tr.energy_series[i]});
  }
}

/// Collocation samples in the cylinder chart t = s / eps.
inline void write_field_csv(std::ostream& os, const PeriodicField& f) {
  const GridValues g = grid_values(f);
  const VectorXd& s = f.space->grid();
  os << "t,u,a,b\n";
  for (int j = 0; j < s.size(); ++j) write_row(os, {s[j] / f.eps(), g.u[j], g.a[j], g.b[j]});
}

inline void write_diagram_csv(std::ostream& os, const std::vector<DiagramRow>& rows) {
  os << "epsilon,T,delta_eps,gap,converged\n";
  for (const auto& r : rows) {
    os << fmt(r.epsilon) << ',' << fmt(r.T) << ',' << fmt(r.delta_eps) << ',' << fmt(r.gap) << ','
       << (r.converged ? "true" : "false") << '\n';
  }
}

inline std::string radial_header(RadialChart c) {
  switch (c) {
    case RadialChart::cylinder: return "t,u,a,b";
    case RadialChart::euclidean: return "r,u,f1,f2";
    case RadialChart::sphere: return "chi,u,f1,f2";
  }
  return "";
}

inline void write_radial_csv(std::ostream& os, const RadialProfile& p) {
  if (!p.convention.empty()) os << "# " << p.convention << '\n';
  os << radial_header(p.chart) << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) write_row(os, {p.grid[i], p.u[i], p.f1[i], p.f2[i]});
}

/// Reads a four-column profile. Lines starting with '#' are skipped; the header must match the
/// chart. Trajectory CSVs (t,u,v,a,b,H) are accepted for the cylinder chart.
inline RadialProfile read_radial_csv(std::istream& is, RadialChart chart) {
  std::string line;
  std::vector<std::string> header;
  RadialProfile p;
  p.chart = chart;
  int cu = 1, c1 = 2, c2 = 3;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    while (true) {
      const auto pos = rest.find(',');
      cells.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (header.empty()) {
      for (auto c : cells) header.emplace_back(c);
      const std::string joined = line;
      if (chart == RadialChart::cylinder && joined == "t,u,v,a,b,H") {
        cu = 1, c1 = 3, c2 = 4;
      } else if (joined != radial_header(chart)) {
        throw InvalidInput("unexpected CSV header '" + joined + "' for chart " + to_string(chart));
      }
      continue;
    }
    if (cells.size() != header.size()) throw InvalidInput("ragged CSV row");
    p.grid.push_back(parse_double(cells[0]));
    p.u.push_back(parse_double(cells[cu]));
    p.f1.push_back(parse_double(cells[c1]));
    p.f2.push_back(parse_double(cells[c2]));
  }
  if (header.empty()) throw InvalidInput("empty CSV input");
  if (chart == RadialChart::cylinder) {
    p = cylinder_profile(p.grid, p.u, p.f1, p.f2);
  }
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

inline VectorXd vector_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline json state_json(const State4& s) { return json{{"u", s.u}, {"v", s.v}, {"a", s.a}, {"b", s.b}}; }

inline json field_to_json(const PeriodicField& f) {
  const EnergyBreakdown e = energy(f);
  const NehariResiduals r = nehari_residuals(f);
  return json{
      {"schema", kSchema},
      {"epsilon", f.eps()},
      {"K", f.K()},
      {"basis", "1/sqrt2, cos(k pi s), sin(k pi s) on s in [-1,1]; spinor in A-eigen coordinates"},
      {"u_coeffs", to_json(f.u)},
      {"z_plus_coeffs", to_json(f.z_plus)},
      {"z_minus_coeffs", to_json(f.z_minus)},
      {"energy",
       {{"scalar_quadratic", e.scalar_quadratic},
        {"spinor_quadratic", e.spinor_quadratic},
        {"coupling", e.coupling},
        {"total", e.total}}},
      {"residuals", {{"r1", r.r1}, {"r2", r.r2}, {"r3", r.r3}}},
  };
}

inline PeriodicField field_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kSchema) throw InvalidInput("unsupported schema");
    const double eps = j.at("epsilon").get<double>();
    const int K = j.at("K").get<int>();
    PeriodicField f(make_space(eps, K));
    f.u = vector_from_json(j.at("u_coeffs"));
    f.z_plus = vector_from_json(j.at("z_plus_coeffs"));
    f.z_minus = vector_from_json(j.at("z_minus_coeffs"));
    if (f.u.size() != f.space->m() || f.z_plus.size() != f.space->m() ||
        f.z_minus.size() != f.space->m()) {
      throw TruncationMismatch("coefficient arrays do not match K");
    }
    return f;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed field document: ") + e.what());
  }
}

/// OrbitRecord. Samples are thinned to at most max_samples rows.
inline json orbit_to_json(const PeriodicOrbit& o, std::size_t max_samples = 2001) {
  json samples = json::array();
  const auto& tr = o.trajectory;
  const std::size_t stride = tr.size() > max_samples ? (tr.size() + max_samples - 2) / (max_samples - 1) : 1;
  for (std::size_t i = 0; i < tr.size(); i += stride) {
    const auto& s = tr.states[i];
    samples.push_back({tr.times[i], s.u, s.v, s.a, s.b});
  }
  if (!tr.empty() && (tr.size() - 1) % stride != 0) {
    const auto& s = tr.states.back();
    samples.push_back({tr.times.back(), s.u, s.v, s.a, s.b});
  }
  json j{{"schema", kSchema},
         {"T", o.T},
         {"epsilon", std::isfinite(o.epsilon) ? json(o.epsilon) : json(nullptr)},
         {"H", o.H},
         {"residual", o.residual},
         {"initial_state", state_json(o.initial_state)},
         {"sample_columns", {"t", "u", "v", "a", "b"}},
         {"samples", samples},
         {"provenance", o.provenance}};
  return j;
}

inline json profile_to_json(const RadialProfile& p) {
  json j{{"schema", kSchema}, {"chart", to_string(p.chart)}, {"grid", p.grid}, {"u", p.u},
         {"f1", p.f1},        {"f2", p.f2}};
  if (p.lambda) j["lambda"] = *p.lambda;
  if (!p.convention.empty()) j["convention"] = p.convention;
  return j;
}

}  // namespace cdelab::io
