#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "badic/tree.hpp"

namespace badic {

// Exact rational with a positive denominator, always reduced.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // "3", "0.6", "1/16".
  static Rational parse(std::string_view text);
  // Closest fraction with denominator <= max_den.
  static Rational approximate(double value, std::int64_t max_den = 1000);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// A point with exact base-b coordinates: numerators over b^precision.
struct Point {
  std::vector<std::int64_t> coords;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Finite point set under the max-metric. Points are kept sorted
// lexicographically and distinct.
class PointSet {
 public:
  PointSet(int base, int dim, int precision, std::vector<Point> points);

  int base() const noexcept { return base_; }
  int dim() const noexcept { return dim_; }
  int precision() const noexcept { return precision_; }
  std::int64_t scale() const noexcept { return scale_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  Rational coord(const Point& p, int i) const;
  Rational distance(const Point& a, const Point& b) const;
  // Position of `p` in the set, or size() if absent.
  std::size_t index_of(const Point& p) const;
  // Base-b positional text, coordinates joined with ','.
  std::string format(const Point& p) const;
  // Parse the format() text back.
  Point parse_point(std::string_view text) const;

 private:
  int base_;
  int dim_;
  int precision_;
  std::int64_t scale_;
  std::vector<Point> points_;
};

// Open max-metric ball tests, exact.
bool in_open_ball(const PointSet& ps, const Point& center, const Rational& radius, const Point& p);
// B(p, r) ⊂ B(center, R), i.e. |p - center| + r <= R.
bool ball_inside(const PointSet& ps, const Point& center, const Rational& R, const Point& p, const Rational& r);
// Open r-balls around a and b are disjoint, i.e. |a - b| >= 2r.
bool balls_disjoint(const PointSet& ps, const Point& a, const Point& b, const Rational& r);

// One point per leaf: the lower-left corner, at precision = depth.
PointSet leaf_representatives(const CubeTree& tree);
// One point per occupied level-`level` cube: the corner of its first leaf.
PointSet leaf_representatives(const CubeTree& tree, int level);

}  // namespace badic
