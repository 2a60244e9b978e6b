#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "z2top/fixtures.hpp"
#include "z2top/io.hpp"

using namespace z2top;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("geometry JSON") {
  const auto j = io::geometry_json(geometry::Geometry::build(3));
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["n"] == 3);
  CHECK(j["points"].size() == 7);
  CHECK(j["points"][0] == "001");
  CHECK(j["lines"].size() == 7);
  CHECK(j["lines"][0] == nlohmann::json::array({1, 2, 3}));
  CHECK(j["hyperplanes"].size() == 7);
  CHECK(j["hyperplanes"][0]["normal"] == 1);
  CHECK(j["hyperplanes"][0]["points"] == nlohmann::json::array({2, 4, 6}));

  const auto j4 = io::geometry_json(geometry::Geometry::build(4));
  for (const auto& h : j4["hyperplanes"]) CHECK(h["points"].size() == 7);
}

TEST_CASE("geometry DOT has one edge per incidence") {
  const std::string dot = io::geometry_dot(geometry::Geometry::build(3));
  std::size_t edges = 0;
  for (const auto& l : split_lines(dot)) {
    if (l.find(" -- ") != std::string::npos) ++edges;
  }
  CHECK(edges == 21);
  CHECK(dot.starts_with("graph"));
}

TEST_CASE("equation listings") {
  const TopSystem s2(2);
  CHECK(io::equations_text(s2, geometry::Collineation::identity(2)) ==
        "dω1/dt = ω2 ω3\ndω2/dt = ω1 ω3\ndω3/dt = ω1 ω2\n");

  const TopSystem s3(3);
  const auto lines3 = split_lines(io::equations_text(s3, fixtures::reference_labelling(3)));
  REQUIRE(lines3.size() == 7);
  CHECK(lines3[0] == "dω1/dt = ω2 ω7 + ω3 ω6 + ω4 ω5");

  // Every listed 15D equation appears with the same product terms.
  const TopSystem s4(4);
  const auto lines4 = split_lines(io::equations_text(s4, fixtures::reference_labelling(4)));
  REQUIRE(lines4.size() == 15);
  for (const auto& eq : fixtures::pg32_equations()) {
    std::set<std::array<geometry::PointIndex, 2>> terms;
    for (auto [j, k] : eq.pairs) terms.insert({std::min(j, k), std::max(j, k)});
    std::string expected = "dω" + std::to_string(eq.lhs) + "/dt =";
    bool first = true;
    for (const auto& [j, k] : terms) {
      expected += (first ? " " : " + ") + ("ω" + std::to_string(j)) + " ω" + std::to_string(k);
      first = false;
    }
    CHECK(lines4[eq.lhs - 1] == expected);
  }
}

TEST_CASE("trajectory CSV and JSON") {
  Trajectory t;
  t.samples = {{0.0, {1.0, 0.1}}, {0.5, {2.0, 1.0 / 3.0}}};
  const auto csv = split_lines(io::trajectory_csv(t));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "t,x_1,x_2");
  CHECK(csv[1] == "0,1,0.10000000000000001");
  CHECK(std::stod(csv[2].substr(csv[2].rfind(',') + 1)) == 1.0 / 3.0);

  const auto j = io::trajectory_json(t, {{"n", 2}});
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["termination"] == "completed");
  CHECK(j["samples"][1]["x"][1].get<double>() == 1.0 / 3.0);
}

TEST_CASE("drift JSON and table") {
  DriftReport r;
  r.entries.push_back({"N_1_2", 3.0, 1e-11, 0.25, true});
  r.entries.push_back({"gamma_1", 0.0, 2e-13, 0.5, false});
  const auto j = io::drift_json(r);
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["max_drift"].get<double>() == 1e-11);
  CHECK(j["invariants"].size() == 2);
  const std::string table = io::drift_table(r, false);
  CHECK(table.find("N_1_2") != std::string::npos);
  CHECK(table.find("(abs)") != std::string::npos);
  CHECK(table.find('\033') == std::string::npos);
  CHECK(io::drift_table(r, true).find('\033') != std::string::npos);
}

TEST_CASE("comparison JSON schema") {
  RouteComparison c;
  c.n = 3;
  c.genus = 9;
  c.t_grid = {0.0, 0.1};
  c.per_component_err.assign(7, 1e-9);
  c.max_rel_err = 1e-9;
  const auto j = io::comparison_json(c);
  for (const char* key : {"schema_version", "n", "t_grid", "max_rel_err", "per_component_err", "genus"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("atomic write replaces the file and leaves no temporaries") {
  const auto dir = std::filesystem::temp_directory_path() / "z2top_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  io::write_atomic(path, "first\n");
  io::write_atomic(path, "second\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second\n");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  CHECK_THROWS(io::write_atomic(dir / "missing" / "x.json", "x"));
  std::filesystem::remove_all(dir);
}
