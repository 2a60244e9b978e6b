#include "z2top/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "z2top/error.hpp"

namespace z2top::io {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json geometry_json(const geometry::Geometry& g) {
  json points = json::array();
  for (const auto& p : g.points) points.push_back(p.bit_string());
  json lines = json::array();
  for (const auto& l : g.lines) lines.push_back(l.points);
  json hyperplanes = json::array();
  for (const auto& h : g.hyperplanes) {
    hyperplanes.push_back({{"normal", h.normal}, {"points", h.points}});
  }
  return {{"schema_version", kSchemaVersion},
          {"n", g.n},
          {"points", std::move(points)},
          {"lines", std::move(lines)},
          {"hyperplanes", std::move(hyperplanes)}};
}

std::string geometry_dot(const geometry::Geometry& g) {
  std::ostringstream out;
  out << "graph pg" << (g.n - 1) << "_2 {\n";
  out << "  node [shape=circle];\n";
  for (const auto& p : g.points) {
    out << "  p" << p.index() << " [label=\"" << p.index() << "\\n" << p.bit_string() << "\"];\n";
  }
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.lines.size(); ++i) {
    const auto& l = g.lines[i].points;
    out << "  l" << (i + 1) << " [label=\"{" << l[0] << "," << l[1] << "," << l[2] << "}\"];\n";
  }
  for (std::size_t i = 0; i < g.lines.size(); ++i) {
    for (auto p : g.lines[i].points) out << "  p" << p << " -- l" << (i + 1) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string equations_text(const TopSystem& system, const geometry::Collineation& labelling) {
  if (labelling.size() != system.dim()) throw InvalidParameter("labelling size mismatch");
  const geometry::Collineation back = labelling.inverse();
  std::ostringstream out;
  for (geometry::PointIndex shown = 1; shown <= system.dim(); ++shown) {
    const geometry::PointIndex i = back(shown);
    std::vector<std::array<geometry::PointIndex, 2>> terms;
    for (const auto& [j, k] : system.partners(i)) {
      auto a = labelling(j), b = labelling(k);
      if (a > b) std::swap(a, b);
      terms.push_back({a, b});
    }
    std::sort(terms.begin(), terms.end());
    out << "dω" << shown << "/dt =";
    for (std::size_t t = 0; t < terms.size(); ++t) {
      out << (t == 0 ? " " : " + ") << "ω" << terms[t][0] << " ω" << terms[t][1];
    }
    out << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  const std::size_t d = trajectory.samples.empty() ? 0 : trajectory.samples.front().x.size();
  out << 't';
  for (std::size_t i = 1; i <= d; ++i) out << ",x_" << i;
  out << '\n';
  for (const Sample& s : trajectory.samples) {
    out << format_double(s.t);
    for (double v : s.x) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

json trajectory_json(const Trajectory& trajectory, const json& metadata) {
  json samples = json::array();
  for (const Sample& s : trajectory.samples) samples.push_back({{"t", s.t}, {"x", s.x}});
  return {{"schema_version", kSchemaVersion},
          {"metadata", metadata},
          {"termination", std::string(to_string(trajectory.termination))},
          {"accepted_steps", trajectory.accepted_steps},
          {"rejected_steps", trajectory.rejected_steps},
          {"samples", std::move(samples)}};
}

json drift_json(const DriftReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name},
                       {"initial", e.initial},
                       {"max_drift", e.max_drift},
                       {"time_of_max", e.time_of_max},
                       {"relative", e.relative}});
  }
  return {{"schema_version", kSchemaVersion},
          {"max_drift", report.max_drift()},
          {"domain_failures", report.domain_failures},
          {"invariants", std::move(entries)}};
}

std::string drift_table(const DriftReport& report, bool color) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %24s %12s %12s\n", "invariant", "initial", "max drift",
                "t(max)");
  out << (color ? "\033[1m" : "") << line << (color ? "\033[0m" : "");
  for (const auto& e : report.entries) {
    std::snprintf(line, sizeof line, "%-12s %24.16e %12.3e %12.6f%s\n", e.name.c_str(), e.initial,
                  e.max_drift, e.time_of_max, e.relative ? "" : " (abs)");
    out << line;
  }
  if (!report.domain_failures.empty()) {
    out << "T undefined at " << report.domain_failures.size()
        << " sample(s); N_1j omitted there\n";
  }
  return out.str();
}

json comparison_json(const RouteComparison& c) {
  return {{"schema_version", kSchemaVersion},
          {"n", c.n},
          {"genus", c.genus},
          {"t_grid", c.t_grid},
          {"max_rel_err", c.max_rel_err},
          {"per_component_err", c.per_component_err},
          {"omega_termination", std::string(to_string(c.omega_termination))},
          {"r_termination", std::string(to_string(c.r_termination))}};
}

json zk_json(const ZkSystem& system, const Trajectory& trajectory, const ZkDrift& drift) {
  return {{"schema_version", kSchemaVersion},
          {"k", system.k()},
          {"genus", zk_genus(system.k())},
          {"termination", std::string(to_string(trajectory.termination))},
          {"t_final", trajectory.back().t},
          {"invariants_initial", drift.initial},
          {"max_drift", drift.max_drift},
          {"worst_drift", drift.worst}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace z2top::io
