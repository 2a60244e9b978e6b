#include "z2top/geometry.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "z2top/error.hpp"

namespace z2top::geometry {

void check_dimension(int n) {
  if (n < kMinDimension || n > kMaxDimension) {
    throw InvalidParameter("dimension n=" + std::to_string(n) + " outside [" +
                           std::to_string(kMinDimension) + ", " +
                           std::to_string(kMaxDimension) + "]");
  }
}

Gf2Point::Gf2Point(int n, PointIndex index) : n_(n), bits_(index) {
  check_dimension(n);
  if (index == 0 || index > point_count(n)) {
    throw InvalidParameter("point index " + std::to_string(index) +
                           " outside 1.." + std::to_string(point_count(n)));
  }
}

std::string Gf2Point::bit_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if (coordinate(i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

Line Line::make(PointIndex p, PointIndex q, PointIndex r) {
  Line l{{p, q, r}};
  std::sort(l.points.begin(), l.points.end());
  return l;
}

bool Line::contains(PointIndex p) const {
  return std::find(points.begin(), points.end(), p) != points.end();
}

PointIndex Line::third(PointIndex p, PointIndex q) const {
  for (PointIndex r : points) {
    if (r != p && r != q) return r;
  }
  return 0;
}

std::vector<Gf2Point> enumerate_points(int n) {
  check_dimension(n);
  std::vector<Gf2Point> out;
  out.reserve(point_count(n));
  for (PointIndex p = 1; p <= point_count(n); ++p) out.emplace_back(n, p);
  return out;
}

std::vector<Line> lines(int n) {
  check_dimension(n);
  const auto d = static_cast<PointIndex>(point_count(n));
  std::vector<Line> out;
  out.reserve(d * plane_order(n) / 3);
  for (PointIndex p = 1; p <= d; ++p) {
    for (PointIndex q = p + 1; q <= d; ++q) {
      const PointIndex r = p ^ q;
      if (r > q) out.push_back(Line{{p, q, r}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Hyperplane> hyperplanes(int n) {
  check_dimension(n);
  const auto d = static_cast<PointIndex>(point_count(n));
  std::vector<Hyperplane> out;
  out.reserve(d);
  for (PointIndex v = 1; v <= d; ++v) {
    Hyperplane h{v, {}};
    h.points.reserve(plane_order(n));
    for (PointIndex p = 1; p <= d; ++p) {
      if (gf2_dot(v, p) == 0) h.points.push_back(p);
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::array<PointIndex, 2>> pairs_through(int n, PointIndex p) {
  check_dimension(n);
  const auto d = static_cast<PointIndex>(point_count(n));
  if (p == 0 || p > d) throw InvalidParameter("point index out of range");
  std::vector<std::array<PointIndex, 2>> out;
  out.reserve(plane_order(n));
  for (PointIndex j = 1; j <= d; ++j) {
    const PointIndex k = p ^ j;
    if (j != p && j < k) out.push_back({j, k});
  }
  return out;
}

Geometry Geometry::build(int n) {
  return Geometry{n, enumerate_points(n), geometry::lines(n), geometry::hyperplanes(n)};
}

// ---------------------------------------------------------------------------
// Collineations

Collineation::Collineation(std::vector<PointIndex> image) : image_(std::move(image)) {
  if (image_.empty() || image_[0] != 0) {
    throw InvalidParameter("collineation table must reserve slot 0");
  }
  std::vector<PointIndex> sorted(image_.begin() + 1, image_.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i + 1) throw InvalidParameter("collineation table is not a bijection");
  }
}

Collineation Collineation::linear(int n, std::span<const PointIndex> basis_images) {
  check_dimension(n);
  if (basis_images.size() != static_cast<std::size_t>(n)) {
    throw InvalidParameter("need one image per basis point");
  }
  const auto d = point_count(n);
  std::vector<PointIndex> image(d + 1, 0);
  for (PointIndex p = 1; p <= d; ++p) {
    PointIndex y = 0;
    for (int b = 0; b < n; ++b) {
      if ((p >> b) & 1U) y ^= basis_images[static_cast<std::size_t>(b)];
    }
    if (y == 0 || y > d) throw InvalidParameter("basis images are not an invertible matrix");
    image[p] = y;
  }
  return Collineation(std::move(image));
}

Collineation Collineation::identity(int n) {
  check_dimension(n);
  std::vector<PointIndex> image(point_count(n) + 1);
  for (std::size_t p = 0; p < image.size(); ++p) image[p] = static_cast<PointIndex>(p);
  return Collineation(std::move(image));
}

Line Collineation::apply(const Line& line) const {
  return Line::make((*this)(line.points[0]), (*this)(line.points[1]), (*this)(line.points[2]));
}

std::vector<PointIndex> Collineation::apply(std::span<const PointIndex> points) const {
  std::vector<PointIndex> out;
  out.reserve(points.size());
  for (PointIndex p : points) out.push_back((*this)(p));
  std::sort(out.begin(), out.end());
  return out;
}

Collineation Collineation::inverse() const {
  std::vector<PointIndex> inv(image_.size(), 0);
  for (std::size_t p = 1; p < image_.size(); ++p) inv[image_[p]] = static_cast<PointIndex>(p);
  return Collineation(std::move(inv));
}

bool Collineation::is_identity() const {
  for (std::size_t p = 0; p < image_.size(); ++p) {
    if (image_[p] != p) return false;
  }
  return true;
}

bool maps_lines(int n, const Collineation& c, std::span<const Line> target) {
  const std::set<Line> wanted(target.begin(), target.end());
  if (c.size() != point_count(n)) return false;
  for (const Line& l : lines(n)) {
    if (!wanted.contains(c.apply(l))) return false;
  }
  return true;
}

namespace {

// Dense lookup: third[p * (d + 1) + q] is the point completing the line
// through p and q, or 0 when the pair is not covered.
class ThirdPointTable {
 public:
  ThirdPointTable(std::size_t d, std::span<const Line> target)
      : d_(d), third_((d + 1) * (d + 1), 0) {
    for (const Line& l : target) {
      const auto [a, b, c] = l.points;
      if (!set(a, b, c) || !set(a, c, b) || !set(b, c, a)) {
        valid_ = false;
        return;
      }
    }
  }

  bool valid() const { return valid_; }
  PointIndex operator()(PointIndex p, PointIndex q) const { return third_[p * (d_ + 1) + q]; }

 private:
  bool set(PointIndex p, PointIndex q, PointIndex r) {
    auto& a = third_[p * (d_ + 1) + q];
    auto& b = third_[q * (d_ + 1) + p];
    if (a != 0 || b != 0) return false;  // pair on two lines
    a = r;
    b = r;
    return true;
  }

  std::size_t d_;
  std::vector<PointIndex> third_;
  bool valid_ = true;
};

void validate_lines(int n, std::span<const Line> target) {
  const auto d = point_count(n);
  if (target.size() != d * plane_order(n) / 3) {
    throw InvalidParameter("expected " + std::to_string(d * plane_order(n) / 3) +
                           " lines for n=" + std::to_string(n) + ", got " +
                           std::to_string(target.size()));
  }
  for (const Line& l : target) {
    for (PointIndex p : l.points) {
      if (p == 0 || p > d) throw InvalidParameter("line label outside 1..2^n-1");
    }
    if (l.points[0] == l.points[1] || l.points[1] == l.points[2] ||
        l.points[0] == l.points[2]) {
      throw InvalidParameter("line with repeated point");
    }
  }
}

}  // namespace

std::optional<Collineation> find_collineation(int n, std::span<const Line> target) {
  check_dimension(n);
  if (n > kMaxSearchDimension) {
    throw Unsupported("exhaustive collineation search is limited to n <= " +
                      std::to_string(kMaxSearchDimension));
  }
  std::vector<Line> normalized;
  normalized.reserve(target.size());
  for (const Line& l : target) normalized.push_back(Line::make(l.points[0], l.points[1], l.points[2]));
  validate_lines(n, normalized);

  const auto d = point_count(n);
  const ThirdPointTable third(d, normalized);
  if (!third.valid()) return std::nullopt;

  // image[s] is defined for every s in the span of the basis points fixed so
  // far; extending by basis point 2^level doubles the defined range.
  std::vector<PointIndex> image(d + 1, 0);
  std::vector<bool> used(d + 1, false);

  std::function<bool(int)> extend = [&](int level) -> bool {
    if (level == n) return maps_lines(n, Collineation(image), normalized);
    const PointIndex base = PointIndex{1} << level;
    for (PointIndex x = 1; x <= d; ++x) {
      if (used[x]) continue;
      // Tentatively fill base ^ s for all s < base.
      std::vector<PointIndex> assigned;
      bool ok = true;
      image[base] = x;
      used[x] = true;
      assigned.push_back(base);
      for (PointIndex s = 1; s < base && ok; ++s) {
        const PointIndex y = third(x, image[s]);
        if (y == 0 || used[y]) {
          ok = false;
          break;
        }
        image[base ^ s] = y;
        used[y] = true;
        assigned.push_back(base ^ s);
      }
      if (ok && extend(level + 1)) return true;
      for (PointIndex p : assigned) {
        used[image[p]] = false;
        image[p] = 0;
      }
    }
    return false;
  };

  if (extend(0)) return Collineation(image);
  return std::nullopt;
}

std::optional<Collineation> find_hyperplane_collineation(
    int n, std::span<const std::vector<PointIndex>> target) {
  check_dimension(n);
  const auto d = point_count(n);
  const auto k = plane_order(n);
  if (target.size() != d) {
    throw InvalidParameter("expected " + std::to_string(d) + " hyperplanes, got " +
                           std::to_string(target.size()));
  }
  std::set<std::vector<PointIndex>> blocks;
  for (const auto& b : target) {
    std::vector<PointIndex> s(b.begin(), b.end());
    std::sort(s.begin(), s.end());
    if (s.size() != k || std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidParameter("hyperplane must have " + std::to_string(k) + " distinct points");
    }
    if (s.front() == 0 || s.back() > d) throw InvalidParameter("hyperplane label outside 1..2^n-1");
    blocks.insert(std::move(s));
  }
  if (blocks.size() != d) return std::nullopt;

  // Recover the line through each pair as the intersection of all blocks
  // containing it. For n = 2 the blocks are single points and the only line
  // is the whole space.
  std::set<Line> derived;
  if (n == 2) {
    derived.insert(Line{{1, 2, 3}});
  } else {
    for (PointIndex p = 1; p <= d; ++p) {
      for (PointIndex q = p + 1; q <= d; ++q) {
        std::vector<PointIndex> common;
        bool first = true;
        for (const auto& b : blocks) {
          if (!std::binary_search(b.begin(), b.end(), p) ||
              !std::binary_search(b.begin(), b.end(), q)) {
            continue;
          }
          if (first) {
            common = b;
            first = false;
          } else {
            std::vector<PointIndex> next;
            std::set_intersection(common.begin(), common.end(), b.begin(), b.end(),
                                  std::back_inserter(next));
            common = std::move(next);
          }
        }
        if (common.size() != 3) return std::nullopt;
        derived.insert(Line::make(common[0], common[1], common[2]));
      }
    }
  }
  const std::vector<Line> derived_lines(derived.begin(), derived.end());
  if (derived_lines.size() != d * plane_order(n) / 3) return std::nullopt;

  auto c = find_collineation(n, derived_lines);
  if (!c) return std::nullopt;
  for (const Hyperplane& h : hyperplanes(n)) {
    if (!blocks.contains(c->apply(h.points))) return std::nullopt;
  }
  return c;
}

}  // namespace z2top::geometry
