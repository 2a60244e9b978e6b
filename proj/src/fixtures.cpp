#include "z2top/fixtures.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "z2top/error.hpp"

namespace z2top::fixtures {

const std::array<PointIndex, 7>& fano_coordinates() {
  // e1=(0,0,1) e2=(0,1,0) e3=(1,0,0) e4=(1,1,1) e5=(1,1,0) e6=(1,0,1) e7=(0,1,1)
  static const std::array<PointIndex, 7> kCoords{0b001, 0b010, 0b100, 0b111,
                                                 0b110, 0b101, 0b011};
  return kCoords;
}

const std::vector<Line>& fano_lines() {
  // c_127 = c_631 = c_541 = c_532 = c_246 = c_734 = c_567 = 1
  static const std::vector<Line> kLines{
      Line::make(1, 2, 7), Line::make(6, 3, 1), Line::make(5, 4, 1), Line::make(5, 3, 2),
      Line::make(2, 4, 6), Line::make(7, 3, 4), Line::make(5, 6, 7)};
  return kLines;
}

const std::vector<EquationTerms>& fano_equations() {
  static const std::vector<EquationTerms> kEquations{
      {1, {{2, 7}, {6, 3}, {5, 4}}}, {2, {{7, 1}, {5, 3}, {4, 6}}},
      {3, {{1, 6}, {2, 5}, {4, 7}}}, {4, {{1, 5}, {6, 2}, {7, 3}}},
      {5, {{4, 1}, {3, 2}, {6, 7}}}, {6, {{3, 1}, {2, 4}, {7, 5}}},
      {7, {{1, 2}, {3, 4}, {5, 6}}},
  };
  return kEquations;
}

const std::vector<std::vector<PointIndex>>& fano_a_supports() {
  static const std::vector<std::vector<PointIndex>> kSupports{
      {3, 4, 5, 6}, {1, 2, 5, 6}, {1, 3, 5, 7}, {2, 4, 5, 7},
      {2, 3, 6, 7}, {1, 4, 6, 7}, {1, 2, 3, 4},
  };
  return kSupports;
}

const std::vector<std::vector<PointIndex>>& pg32_planes() {
  static const std::vector<std::vector<PointIndex>> kPlanes{
      {1, 2, 3, 4, 5, 6, 7},        {1, 2, 8, 11, 10, 9, 7},    {1, 3, 8, 13, 12, 9, 6},
      {2, 3, 8, 14, 12, 10, 5},     {1, 2, 13, 14, 15, 12, 7},  {1, 3, 14, 11, 10, 15, 6},
      {1, 4, 8, 14, 15, 9, 5},      {1, 4, 13, 11, 10, 12, 5},  {2, 3, 11, 13, 15, 9, 5},
      {2, 4, 8, 13, 15, 10, 6},     {2, 4, 11, 14, 12, 9, 6},   {3, 4, 8, 11, 15, 12, 7},
      {3, 4, 9, 10, 14, 13, 7},     {5, 6, 8, 11, 13, 14, 7},   {5, 6, 9, 10, 12, 15, 7},
  };
  return kPlanes;
}

const std::vector<EquationTerms>& pg32_equations() {
  static const std::vector<EquationTerms> kEquations{
      {1, {{2, 7}, {3, 6}, {5, 4}, {8, 9}, {10, 11}, {12, 13}, {14, 15}}},
      {2, {{1, 7}, {3, 5}, {4, 6}, {8, 10}, {11, 9}, {12, 14}, {15, 13}}},
      {3, {{1, 6}, {2, 5}, {7, 4}, {8, 12}, {9, 13}, {10, 14}, {11, 15}}},
      {4, {{5, 1}, {2, 6}, {7, 3}, {8, 15}, {9, 14}, {10, 13}, {11, 12}}},
      {5, {{1, 4}, {2, 3}, {7, 6}, {8, 14}, {9, 15}, {10, 12}, {11, 13}}},
      {6, {{1, 3}, {2, 4}, {7, 5}, {8, 13}, {9, 12}, {10, 15}, {11, 14}}},
      {7, {{1, 2}, {3, 4}, {6, 5}, {8, 11}, {9, 10}, {12, 15}, {13, 14}}},
      {8, {{1, 9}, {2, 10}, {3, 12}, {4, 15}, {5, 14}, {6, 13}, {7, 11}}},
      {9, {{1, 8}, {2, 11}, {3, 13}, {4, 14}, {5, 15}, {6, 12}, {7, 10}}},
      {10, {{1, 11}, {2, 8}, {3, 14}, {4, 13}, {5, 12}, {6, 15}, {7, 9}}},
      {11, {{1, 10}, {2, 9}, {3, 15}, {4, 12}, {5, 13}, {6, 14}, {7, 8}}},
      {12, {{1, 13}, {2, 14}, {3, 8}, {4, 11}, {5, 10}, {6, 9}, {7, 15}}},
      {13, {{1, 12}, {2, 15}, {3, 9}, {4, 10}, {5, 11}, {6, 8}, {7, 14}}},
      {14, {{1, 15}, {2, 12}, {3, 10}, {4, 9}, {5, 8}, {6, 11}, {7, 13}}},
      {15, {{1, 14}, {2, 13}, {3, 11}, {4, 8}, {5, 9}, {6, 10}, {7, 12}}},
  };
  return kEquations;
}

std::vector<Line> lines_of(const std::vector<EquationTerms>& equations) {
  std::set<Line> out;
  for (const auto& eq : equations) {
    for (const auto& [j, k] : eq.pairs) out.insert(Line::make(eq.lhs, j, k));
  }
  return {out.begin(), out.end()};
}

}  // namespace z2top::fixtures

namespace z2top::fixtures {

geometry::Collineation reference_labelling(int n) {
  switch (n) {
    case 2:
      return geometry::Collineation::identity(2);
    case 3: {
      std::vector<PointIndex> image(8, 0);
      const auto& coords = fano_coordinates();
      for (PointIndex label = 1; label <= 7; ++label) image[coords[label - 1]] = label;
      return geometry::Collineation(std::move(image));
    }
    case 4: {
      auto c = geometry::find_hyperplane_collineation(4, pg32_planes());
      if (!c) throw Error("published PG(3,2) planes admit no collineation");
      return *c;
    }
    default:
      throw Unsupported("no published labelling for n=" + std::to_string(n));
  }
}

}  // namespace z2top::fixtures
