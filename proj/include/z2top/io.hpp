#pragma once

// Serialization of geometry dumps, trajectories and reports. Every JSON
// document carries a `schema_version` field.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "z2top/dynamics.hpp"
#include "z2top/geometry.hpp"
#include "z2top/invariants.hpp"
#include "z2top/reduction.hpp"
#include "z2top/zktop.hpp"

namespace z2top::io {

inline constexpr int kSchemaVersion = 1;

nlohmann::json geometry_json(const geometry::Geometry& g);

/// Bipartite point-line incidence graph in Graphviz DOT.
std::string geometry_dot(const geometry::Geometry& g);

/// One line per equation, e.g. "dω1/dt = ω2 ω7 + ω3 ω6 + ω4 ω5".
/// Labels are mapped through `labelling` (canonical -> displayed).
std::string equations_text(const TopSystem& system, const geometry::Collineation& labelling);

/// Header `t,x_1,...,x_d`; values printed with 17 significant digits.
std::string trajectory_csv(const Trajectory& trajectory);

nlohmann::json trajectory_json(const Trajectory& trajectory, const nlohmann::json& metadata);

nlohmann::json drift_json(const DriftReport& report);

/// Fixed-width table: invariant, initial value, max drift, time of max.
std::string drift_table(const DriftReport& report, bool color);

nlohmann::json comparison_json(const RouteComparison& comparison);

nlohmann::json zk_json(const ZkSystem& system, const Trajectory& trajectory, const ZkDrift& drift);

/// Writes via a temporary sibling file and rename, so readers never observe
/// a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Canonical text form of a JSON document (2-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

}  // namespace z2top::io
