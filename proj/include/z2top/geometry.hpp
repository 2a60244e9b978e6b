#pragma once

// Points, lines and hyperplanes of the projective space PG(n-1, 2).
//
// Points are the nonzero n-bit vectors. The canonical label of a point is
// its bit pattern read as a binary integer, with the least-significant bit
// holding the last homogeneous coordinate z_{n-1}; so (0,...,0,1) is point 1.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace z2top::geometry {

using PointIndex = std::uint32_t;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 16;
/// Largest n for which the collineation search is exhaustive.
inline constexpr int kMaxSearchDimension = 4;

/// Throws InvalidParameter unless kMinDimension <= n <= kMaxDimension.
void check_dimension(int n);

/// 2^n - 1.
constexpr std::size_t point_count(int n) { return (std::size_t{1} << n) - 1; }

/// 2^(n-1) - 1: points per hyperplane, lines per point, hyperplanes per point.
constexpr std::size_t plane_order(int n) { return (std::size_t{1} << (n - 1)) - 1; }

/// Dot product over GF(2).
constexpr int gf2_dot(PointIndex u, PointIndex v) {
  return __builtin_parity(u & v);
}

class Gf2Point {
 public:
  Gf2Point(int n, PointIndex index);

  int n() const { return n_; }
  PointIndex index() const { return bits_; }
  PointIndex bits() const { return bits_; }

  /// Homogeneous coordinate z_i, i = 0..n-1.
  int coordinate(int i) const { return (bits_ >> (n_ - 1 - i)) & 1U; }

  /// "z_0 z_1 ... z_{n-1}" as a string of '0'/'1'.
  std::string bit_string() const;

  friend bool operator==(const Gf2Point&, const Gf2Point&) = default;

 private:
  int n_;
  PointIndex bits_;
};

/// Unordered triple {p, q, p xor q}, stored sorted.
struct Line {
  std::array<PointIndex, 3> points;

  static Line make(PointIndex p, PointIndex q, PointIndex r);
  bool contains(PointIndex p) const;
  /// The point of the line other than p and q.
  PointIndex third(PointIndex p, PointIndex q) const;

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

struct Hyperplane {
  PointIndex normal;
  std::vector<PointIndex> points;  // sorted
};

std::vector<Gf2Point> enumerate_points(int n);

/// All lines, sorted lexicographically. Count (2^n-1)(2^(n-1)-1)/3.
std::vector<Line> lines(int n);

/// One hyperplane per nonzero normal, ordered by normal.
std::vector<Hyperplane> hyperplanes(int n);

/// Lines through point p, each reported as the pair of other points (j < k).
std::vector<std::array<PointIndex, 2>> pairs_through(int n, PointIndex p);

/// Incidence-preserving bijection from canonical labels to some target
/// labelling of the same space. Index 0 of the table is unused.
class Collineation {
 public:
  explicit Collineation(std::vector<PointIndex> image);

  /// The collineation induced by an invertible matrix over GF(2), given by
  /// the images of the basis points 1, 2, 4, ..., 2^(n-1).
  static Collineation linear(int n, std::span<const PointIndex> basis_images);
  static Collineation identity(int n);

  PointIndex operator()(PointIndex p) const { return image_.at(p); }
  std::size_t size() const { return image_.size() - 1; }
  const std::vector<PointIndex>& table() const { return image_; }

  Line apply(const Line& line) const;
  std::vector<PointIndex> apply(std::span<const PointIndex> points) const;
  Collineation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Collineation&, const Collineation&) = default;

 private:
  std::vector<PointIndex> image_;
};

/// True iff the bijection maps every canonical line onto a line of `target`.
bool maps_lines(int n, const Collineation& c, std::span<const Line> target);

/// Searches, over all ordered frames (images of the basis points), for an
/// isomorphism from the canonical line set onto `target`. A frame determines
/// the map uniquely, so for targets in canonical labelling the candidates are
/// exactly the elements of GL(n, 2). Returns the first match.
///
/// Throws InvalidParameter when `target` has the wrong number of lines or
/// labels outside 1..2^n-1, Unsupported for n > kMaxSearchDimension.
std::optional<Collineation> find_collineation(int n, std::span<const Line> target);

/// As find_collineation, but the target is given as a family of 2^n-1
/// hyperplanes (unordered point sets). The target's lines are recovered as
/// intersections of blocks before searching.
std::optional<Collineation> find_hyperplane_collineation(
    int n, std::span<const std::vector<PointIndex>> target);

/// All 2^n-1 points, lines and hyperplanes in one immutable bundle.
struct Geometry {
  int n;
  std::vector<Gf2Point> points;
  std::vector<Line> lines;
  std::vector<Hyperplane> hyperplanes;

  static Geometry build(int n);
};

}  // namespace z2top::geometry
