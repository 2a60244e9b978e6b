#pragma once

// Published labellings of PG(1,2), PG(2,2) and PG(3,2), transcribed as data.
// They are related to the canonical binary labelling by collineations and
// are used only to certify that relation and to print equations in the
// traditional labelling.

#include <array>
#include <vector>

#include "z2top/geometry.hpp"

namespace z2top::fixtures {

using geometry::Line;
using geometry::PointIndex;

/// Product terms of one equation: d(w_i)/dt = sum over pairs (j, k) of w_j w_k,
/// with pairs in the published order.
struct EquationTerms {
  PointIndex lhs;
  std::vector<std::array<PointIndex, 2>> pairs;
};

/// Homogeneous coordinates of the seven Fano points, as bit patterns
/// (z_0 most significant). Entry i-1 is point e_i.
const std::array<PointIndex, 7>& fano_coordinates();

/// The seven octonion triples c_ijk = 1, as unordered lines.
const std::vector<Line>& fano_lines();

/// The seven 7D top equations in the published labelling.
const std::vector<EquationTerms>& fano_equations();

/// Supports of the seven a-variables (the four w's summed into a_i).
const std::vector<std::vector<PointIndex>>& fano_a_supports();

/// The fifteen seven-point planes of PG(3,2), in published order and
/// within-bracket order.
const std::vector<std::vector<PointIndex>>& pg32_planes();

/// The fifteen 15D top equations in the published labelling.
const std::vector<EquationTerms>& pg32_equations();

/// Lines implied by an equation listing: {lhs, j, k} for every term.
std::vector<Line> lines_of(const std::vector<EquationTerms>& equations);

}  // namespace z2top::fixtures

namespace z2top::fixtures {

/// Map from canonical labels to the published labelling for n = 2, 3, 4.
/// n = 2 is the identity, n = 3 follows the published coordinates, n = 4 is
/// the first collineation carrying the canonical hyperplanes onto the
/// published planes. Throws Unsupported otherwise.
geometry::Collineation reference_labelling(int n);

}  // namespace z2top::fixtures
