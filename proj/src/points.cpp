#include "badic/points.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "badic/error.hpp"

namespace badic {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError("rational arithmetic overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduce(i128 num, i128 den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  auto g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto a = parse(text.substr(0, slash));
    auto b = parse(text.substr(slash + 1));
    if (b.num() == 0) throw DomainError("zero denominator");
    return a / b;
  }
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  i128 num = 0, den = 1;
  bool seen_dot = false, seen_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw DomainError("invalid rational '" + std::string(text) + "'");
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    if (num > INT64_MAX || den > INT64_MAX) throw DomainError("rational literal too long");
  }
  if (!seen_digit) throw DomainError("invalid rational '" + std::string(text) + "'");
  return reduce(neg ? -num : num, den);
}

Rational Rational::approximate(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  // Continued-fraction convergents, then the best semiconvergent.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (std::fabs(a) > 1e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t q2 = q0 + ai * q1;
    if (q2 > max_den) {
      const std::int64_t k = (max_den - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1);
      const Rational conv(p1, q1);
      return std::fabs(semi.to_double() - value) < std::fabs(conv.to_double() - value) ? semi : conv;
    }
    const std::int64_t p2 = p0 + ai * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - a;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  return Rational(p1, q1);
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}
std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

PointSet::PointSet(int base, int dim, int precision, std::vector<Point> points)
    : base_(base), dim_(dim), precision_(precision), points_(std::move(points)) {
  if (base < 2 || base > kMaxBase) throw DomainError("base must lie in [2, 36]");
  if (precision < 0) throw DomainError("negative precision");
  auto s = ipow(static_cast<std::uint64_t>(base), static_cast<unsigned>(precision));
  if (s > (1ull << 52)) throw DomainError("point precision too fine for exact arithmetic");
  scale_ = static_cast<std::int64_t>(s);
  for (const auto& p : points_) {
    if (static_cast<int>(p.coords.size()) != dim) throw DomainError("point has wrong dimension");
    for (auto c : p.coords)
      if (c < 0) throw DomainError("negative coordinate");
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) throw DomainError("duplicate point");
}

Rational PointSet::coord(const Point& p, int i) const { return Rational(p.coords[static_cast<std::size_t>(i)], scale_); }

Rational PointSet::distance(const Point& a, const Point& b) const {
  std::int64_t m = 0;
  for (int i = 0; i < dim_; ++i) {
    const auto d = a.coords[static_cast<std::size_t>(i)] - b.coords[static_cast<std::size_t>(i)];
    m = std::max(m, d < 0 ? -d : d);
  }
  return Rational(m, scale_);
}

std::size_t PointSet::index_of(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  return (it != points_.end() && *it == p) ? static_cast<std::size_t>(it - points_.begin()) : points_.size();
}

std::string PointSet::format(const Point& p) const {
  std::string out;
  for (int i = 0; i < dim_; ++i) {
    if (i) out.push_back(',');
    auto v = static_cast<std::uint64_t>(p.coords[static_cast<std::size_t>(i)]);
    auto whole = v / static_cast<std::uint64_t>(scale_);
    auto frac = v % static_cast<std::uint64_t>(scale_);
    std::string w;
    do {
      w.push_back(digit_char(static_cast<unsigned>(whole % static_cast<std::uint64_t>(base_))));
      whole /= static_cast<std::uint64_t>(base_);
    } while (whole);
    std::reverse(w.begin(), w.end());
    out += w;
    if (precision_ > 0) {
      std::string f(static_cast<std::size_t>(precision_), '0');
      for (int k = precision_ - 1; k >= 0; --k) {
        f[static_cast<std::size_t>(k)] = digit_char(static_cast<unsigned>(frac % static_cast<std::uint64_t>(base_)));
        frac /= static_cast<std::uint64_t>(base_);
      }
      out += "." + f;
    }
  }
  return out;
}

Point PointSet::parse_point(std::string_view text) const {
  Point p;
  std::size_t start = 0;
  for (int i = 0; i < dim_; ++i) {
    auto comma = text.find(',', start);
    auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    i128 whole = 0, frac = 0;
    int frac_digits = 0;
    bool after = false;
    for (char c : field) {
      if (c == '.') {
        after = true;
        continue;
      }
      int v = digit_value(c);
      if (v < 0 || v >= base_) throw DomainError("invalid coordinate '" + std::string(field) + "'");
      if (after) {
        if (++frac_digits > precision_) throw DomainError("coordinate finer than point precision");
        frac = frac * base_ + v;
      } else {
        whole = whole * base_ + v;
      }
    }
    for (int k = frac_digits; k < precision_; ++k) frac *= base_;
    p.coords.push_back(narrow(whole * scale_ + frac));
    if (comma == std::string_view::npos) {
      if (i != dim_ - 1) throw DomainError("too few coordinates");
      break;
    }
    start = comma + 1;
  }
  return p;
}

bool in_open_ball(const PointSet& ps, const Point& center, const Rational& radius, const Point& p) {
  return ps.distance(center, p) < radius;
}

bool ball_inside(const PointSet& ps, const Point& center, const Rational& R, const Point& p, const Rational& r) {
  return ps.distance(center, p) + r <= R;
}

bool balls_disjoint(const PointSet& ps, const Point& a, const Point& b, const Rational& r) {
  return ps.distance(a, b) >= r * Rational(2);
}

PointSet leaf_representatives(const CubeTree& tree, int level) {
  if (level < 0 || level > tree.depth()) throw DomainError("representative level outside tree");
  std::vector<Point> pts;
  std::function<void(NodeId, const BadicCube&)> walk = [&](NodeId id, const BadicCube& cube) {
    if (cube.level() == level) {
      const BadicCube leaf = first_leaf(tree, cube);
      Point p;
      for (int i = 0; i < tree.dim(); ++i) p.coords.push_back(static_cast<std::int64_t>(leaf.corner(i)));
      pts.push_back(std::move(p));
      return;
    }
    for (const auto& c : tree.node(id).children) walk(c.node, cube.child(c.code));
  };
  walk(tree.root(), tree.root_cube());
  return PointSet(tree.base(), tree.dim(), tree.depth(), std::move(pts));
}

PointSet leaf_representatives(const CubeTree& tree) { return leaf_representatives(tree, tree.depth()); }

}  // namespace badic
