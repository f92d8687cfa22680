#include "badic/lower.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "badic/error.hpp"
#include "badic/estimators.hpp"
#include "badic/oracles.hpp"

namespace badic {

using boost::multiprecision::cpp_int;

std::int64_t inverse_ratio(int M, const Rational& alpha) {
  if (M < 2) throw DomainError("M must be >= 2");
  if (!(Rational(0) < alpha)) throw DomainError("alpha must be > 0");
  const auto p = static_cast<unsigned>(alpha.num());
  const auto q = static_cast<unsigned>(alpha.den());
  if (p > 64 || q > 64) throw DomainError("alpha needs a small exact fraction p/q");
  const cpp_int target = boost::multiprecision::pow(cpp_int(M), q);
  const auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(M), static_cast<double>(q) / p)));
  for (std::int64_t L = std::max<std::int64_t>(2, guess - 1); L <= guess + 1; ++L)
    if (boost::multiprecision::pow(cpp_int(L), p) == target) return L;
  throw DomainError("lambda = M^{-q/p} is not the reciprocal of an integer for M = " + std::to_string(M) +
                    ", alpha = " + alpha.to_string());
}

PackingChoice select_packing_children(const PointSet& points, std::size_t x, const Rational& R, const Rational& r,
                                      int M) {
  if (x >= points.size()) throw DomainError("center index out of range");
  if (M < 1) throw DomainError("M must be >= 1");
  if (!(Rational(0) < r) || !(r < R)) throw DomainError("radii must satisfy 0 < r < R");
  const Point& cx = points[x];
  PackingChoice out;
  out.centers.push_back(x);
  out.packing = packing_count(points, cx, R, r);
  for (std::size_t i = 0; i < points.size() && out.centers.size() < static_cast<std::size_t>(M); ++i) {
    if (i == x) continue;
    const Point& c = points[i];
    if (!ball_inside(points, cx, R, c, r)) continue;
    bool free = true;
    for (auto j : out.centers)
      if (!balls_disjoint(points, points[j], c, r)) {
        free = false;
        break;
      }
    if (free) out.centers.push_back(i);
  }
  if (out.centers.size() < static_cast<std::size_t>(M))
    throw DomainError("insufficient packing: achieved=" + std::to_string(out.centers.size()) + " < M=" +
                      std::to_string(M) + " around " + points.format(cx));
  return out;
}

Rational BallTree::radius(int k) const {
  Rational R = R0;
  for (int i = 0; i < k; ++i) R = R / Rational(lambda_inv);
  return R;
}

std::string BallTree::word(int level, std::size_t index) const {
  if (level == 0) return "()";
  std::vector<std::size_t> digits(static_cast<std::size_t>(level));
  for (int l = level - 1; l >= 0; --l) {
    digits[static_cast<std::size_t>(l)] = index % static_cast<std::size_t>(M) + 1;
    index /= static_cast<std::size_t>(M);
  }
  std::string s;
  for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "." : "") + std::to_string(digits[i]);
  return s;
}

PointSet BallTree::final_points() const {
  std::vector<Point> pts;
  for (auto i : centers.back()) pts.push_back(points[i]);
  return PointSet(points.base(), points.dim(), points.precision(), std::move(pts));
}

PointSet lower_candidates(const CubeTree& tree, const LowerParams& p) {
  const auto L = inverse_ratio(p.M, p.alpha);
  Rational R = p.R0;
  for (int k = 0; k < p.depth; ++k) R = R / Rational(L);
  int j = 0;
  while (j < tree.depth() && Rational(1, lattice_pow(tree.base(), j)) > R) ++j;
  return leaf_representatives(tree, j);
}

namespace {

BallTree grow(const PointSet& points, const LowerParams& p, std::size_t anchor) {
  BallTree t{p.M, p.alpha, p.R0, inverse_ratio(p.M, p.alpha), points, {{anchor}}, {}};
  const auto corners = static_cast<std::uint64_t>(p.M) + ipow(3, static_cast<unsigned>(points.dim()));
  for (int k = 0; k < p.depth; ++k) {
    const Rational R = t.radius(k), r = t.radius(k + 1);
    std::vector<std::size_t> next;
    const auto& level = t.centers.back();
    for (std::size_t w = 0; w < level.size(); ++w) {
      PackingChoice choice;
      try {
        choice = select_packing_children(points, level[w], R, r, p.M);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at word " + t.word(k, w));
      }
      if (choice.packing < corners) t.inadmissible.push_back(t.word(k, w));
      next.insert(next.end(), choice.centers.begin(), choice.centers.end());
    }
    t.centers.push_back(std::move(next));
  }
  return t;
}

}  // namespace

BallTree construct_subset_lower(const PointSet& points, const LowerParams& p) {
  if (p.depth < 0) throw DomainError("depth must be >= 0");
  if (!(Rational(0) < p.R0)) throw DomainError("R_0 must be > 0");
  if (Rational(points.dim()) < p.alpha) throw DomainError("alpha exceeds the ambient dimension");
  if (p.anchor) {
    if (*p.anchor >= points.size()) throw DomainError("anchor index out of range");
    return grow(points, p, *p.anchor);
  }
  std::string first_error;
  for (std::size_t a = 0; a < points.size(); ++a) {
    try {
      return grow(points, p, a);
    } catch (const DomainError& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  throw DomainError("no anchor admits the construction; from the first point: " + first_error);
}

BallTreeCheck check_ball_tree(const BallTree& t) {
  BallTreeCheck c;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag && c.first_failure.empty()) c.first_failure = what;
    flag = false;
  };
  const auto M = static_cast<std::size_t>(t.M);
  std::size_t expected = 1;
  for (int k = 0; k <= t.depth(); ++k, expected *= M) {
    const auto& level = t.centers[static_cast<std::size_t>(k)];
    if (level.size() != expected) fail(c.cardinality, "level " + std::to_string(k) + " has wrong size");
    const Rational R = t.radius(k);
    if (k >= 1)
      for (std::size_t i = 0; i < level.size(); ++i)
        for (std::size_t j = i + 1; j < level.size(); ++j)
          if (!balls_disjoint(t.points, t.points[level[i]], t.points[level[j]], R))
            fail(c.disjoint, "balls " + t.word(k, i) + " and " + t.word(k, j) + " intersect");
    if (k == 0) continue;
    const auto& parents = t.centers[static_cast<std::size_t>(k - 1)];
    const Rational Rp = t.radius(k - 1);
    for (std::size_t i = 0; i < level.size() && i / M < parents.size(); ++i) {
      const auto parent = parents[i / M];
      if (!ball_inside(t.points, t.points[parent], Rp, t.points[level[i]], R))
        fail(c.nested, "ball " + t.word(k, i) + " leaves its parent");
      if (i % M == 0 && level[i] != parent) fail(c.anchored, "word " + t.word(k, i) + " is not anchored");
    }
  }
  return c;
}

std::size_t LowerReport::violations() const {
  std::size_t v = 0;
  for (const auto& r : rows) v += r.ok ? 0 : 1;
  return v;
}

std::string LowerReport::to_tsv(const PointSet& points) const {
  std::ostringstream os;
  os << "x\tR\tr\tNstar\tbound\tok\n";
  for (const auto& row : rows)
    os << points.format(points[row.x]) << '\t' << row.R.to_string() << '\t' << row.r.to_string() << '\t' << row.nstar
       << '\t' << Rational(static_cast<std::int64_t>(row.bound_num), M + 1).to_string() << '\t' << (row.ok ? 1 : 0)
       << '\n';
  return os.str();
}

LowerReport verify_lower_bounds(const BallTree& t) {
  LowerReport rep;
  rep.M = t.M;
  const PointSet F = t.final_points();
  const int n = t.depth();
  rep.cardinality_ok = F.size() == ipow(static_cast<std::uint64_t>(t.M), static_cast<unsigned>(n));
  const auto p = static_cast<unsigned>(t.alpha.num());
  const auto q = static_cast<unsigned>(t.alpha.den());
  rep.lambda_exact = boost::multiprecision::pow(cpp_int(t.lambda_inv), p) == boost::multiprecision::pow(cpp_int(t.M), q);
  // n log M / (n log L - log R_0) equals p/q exactly iff R_0 = 1 and L^p = M^q.
  rep.box_ratio_exact = n > 0 && rep.cardinality_ok && rep.lambda_exact && t.R0 == Rational(1);
  if (n > 0)
    rep.box_ratio = n * std::log(static_cast<double>(t.M)) /
                    (n * std::log(static_cast<double>(t.lambda_inv)) - std::log(t.R0.to_double()));

  for (std::size_t x = 0; x < F.size(); ++x)
    for (int j = 0; j < n; ++j)
      for (int k = 1; j + k <= n; ++k) {
        LowerRow row;
        row.x = x;
        row.R = t.radius(j);
        row.r = t.radius(j + k);
        std::size_t inside = 0;
        for (const auto& pt : F.points()) inside += in_open_ball(F, F[x], row.R, pt) ? 1 : 0;
        if (F.dim() == 1 || inside > oracle::kMaxCandidates) {
          row.nstar = packing_count(F, F[x], row.R, row.r);
          row.exact = F.dim() == 1;
        } else {
          row.nstar = oracle::exact_packing(F, F[x], row.R, row.r);
          row.exact = true;
        }
        row.bound_num = ipow(static_cast<std::uint64_t>(t.M), static_cast<unsigned>(k));
        row.ok = row.nstar * static_cast<std::uint64_t>(t.M + 1) >= row.bound_num;
        rep.rows.push_back(row);
      }
  return rep;
}

CubeTree lower_subset_tree(const BallTree& t, const CubeTree& source) {
  const PointSet F = t.final_points();
  if (F.precision() != source.depth() || F.base() != source.base())
    throw DomainError("point set does not come from this tree");
  std::vector<BadicCube> leaves;
  for (const auto& pt : F.points()) {
    std::vector<std::vector<unsigned>> digits;
    for (auto c : pt.coords) {
      std::vector<unsigned> ds(static_cast<std::size_t>(source.depth()));
      for (int l = source.depth() - 1; l >= 0; --l) {
        ds[static_cast<std::size_t>(l)] = static_cast<unsigned>(c % source.base());
        c /= source.base();
      }
      digits.push_back(std::move(ds));
    }
    leaves.push_back(BadicCube::from_digits(source.base(), digits));
  }
  return tree_from_leaves(source.base(), source.dim(), source.depth(), std::move(leaves));
}

}  // namespace badic
