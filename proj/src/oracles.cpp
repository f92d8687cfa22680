#include "badic/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "badic/error.hpp"

namespace badic::oracle {

std::uint64_t exact_packing(const PointSet& points, const Point& center, const Rational& R, const Rational& r) {
  if (!(r < R)) throw DomainError("packing needs r < R");
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (in_open_ball(points, center, R, points[i])) cand.push_back(i);
  if (cand.size() > kMaxCandidates) throw DomainError("exact packing oracle: more than 20 candidates");
  const std::size_t n = cand.size();
  std::vector<std::uint32_t> conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !balls_disjoint(points, points[cand[i]], points[cand[j]], r)) conflict[i] |= 1u << j;

  std::function<int(std::uint32_t)> best = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    const int v = std::countr_zero(mask);
    const std::uint32_t bit = 1u << v;
    const int without = best(mask & ~bit);
    const int with = 1 + best(mask & ~bit & ~conflict[static_cast<std::size_t>(v)]);
    return std::max(with, without);
  };
  return static_cast<std::uint64_t>(best(n == 32 ? ~0u : (1u << n) - 1));
}

std::uint64_t exact_cover(const PointSet& points, const std::vector<std::size_t>& subset, const Rational& rho) {
  if (subset.size() > kMaxCandidates) throw DomainError("exact cover oracle: more than 20 points");
  if (subset.empty()) return 0;
  const std::size_t n = subset.size();
  const int d = points.dim();
  const Rational width = rho * Rational(2);

  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> solve = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const auto v = static_cast<std::size_t>(std::countr_zero(mask));
    const Point& pv = points[subset[v]];
    // Candidate lower corners per axis: coordinates of points within reach of v.
    std::vector<std::vector<std::int64_t>> corners(static_cast<std::size_t>(d));
    for (int ax = 0; ax < d; ++ax) {
      auto& cs = corners[static_cast<std::size_t>(ax)];
      const auto vi = pv.coords[static_cast<std::size_t>(ax)];
      for (std::size_t j = 0; j < n; ++j) {
        const auto cj = points[subset[j]].coords[static_cast<std::size_t>(ax)];
        if (cj <= vi && Rational(vi - cj, points.scale()) < width) cs.push_back(cj);
      }
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
    int result = static_cast<int>(n) + 1;
    std::set<std::uint32_t> tried;
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    for (;;) {
      std::uint32_t group = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask >> j & 1u)) continue;
        bool inside = true;
        for (int ax = 0; ax < d && inside; ++ax) {
          const auto c = corners[static_cast<std::size_t>(ax)][pick[static_cast<std::size_t>(ax)]];
          const auto x = points[subset[j]].coords[static_cast<std::size_t>(ax)];
          inside = x >= c && Rational(x - c, points.scale()) < width;
        }
        if (inside) group |= 1u << j;
      }
      if (tried.insert(group).second) result = std::min(result, 1 + solve(mask & ~group));
      std::size_t ax = 0;
      while (ax < pick.size() && ++pick[ax] == corners[ax].size()) pick[ax++] = 0;
      if (ax == pick.size()) break;
    }
    memo.emplace(mask, result);
    return result;
  };
  return static_cast<std::uint64_t>(solve(n == 32 ? ~0u : (1u << n) - 1));
}

HStar exact_hstar(const CubeTree& tree, int k) {
  if (k < 1 || k > tree.depth()) throw DomainError("k exceeds available resolution");
  if (tree.leaf_count() > kMaxLeaves) throw DomainError("exact h* oracle: tree exceeds size guard");
  std::vector<std::vector<std::uint32_t>> leaves;
  for (const auto& leaf : tree.leaves()) leaves.push_back(leaf.path());

  HStar best;
  bool have = false;
  for (int j = 0; j + k <= tree.depth(); ++j) {
    std::map<std::vector<std::uint32_t>, std::set<std::vector<std::uint32_t>>> pairs;
    for (const auto& p : leaves) {
      std::vector<std::uint32_t> anc(p.begin(), p.begin() + j);
      std::vector<std::uint32_t> desc(p.begin(), p.begin() + j + k);
      pairs[std::move(anc)].insert(std::move(desc));
    }
    for (const auto& [anc, descs] : pairs) {
      if (!have || descs.size() > best.count) {
        best = {descs.size(), anc};
        have = true;
      }
    }
  }
  return best;
}

std::uint64_t exact_hstar(const WindowedSet& set, int k, bool global) {
  const int L = set.leaf_exp();
  const int e_max = global ? set.max_side_exp() : 0;
  if (k < 1 || L + k > e_max) throw DomainError("k exceeds available resolution");
  std::uint64_t total = 0;
  for (const auto& w : set.windows()) total += w.tree.leaf_count();
  if (total > kMaxLeaves) throw DomainError("exact h* oracle: set exceeds size guard");

  // Leaf lattice indices in units of b^L.
  std::vector<std::vector<std::int64_t>> leaves;
  for (const auto& w : set.windows())
    for (const auto& leaf : w.tree.leaves()) {
      std::vector<std::int64_t> v;
      for (int i = 0; i < set.dim(); ++i)
        v.push_back(lattice_div(w.offset[static_cast<std::size_t>(i)], set.base(), L) +
                    static_cast<std::int64_t>(leaf.corner(i)));
      leaves.push_back(std::move(v));
    }
  auto cell = [&](const std::vector<std::int64_t>& v, int e) {
    std::vector<std::int64_t> c;
    const std::int64_t side = lattice_pow(set.base(), e - L);
    for (auto x : v) c.push_back(x >= 0 ? x / side : -((-x + side - 1) / side));
    return c;
  };
  std::uint64_t best = 0;
  for (int e = L + k; e <= e_max; ++e) {
    std::map<std::vector<std::int64_t>, std::set<std::vector<std::int64_t>>> pairs;
    for (const auto& v : leaves) pairs[cell(v, e)].insert(cell(v, e - k));
    for (const auto& [c, subs] : pairs) best = std::max<std::uint64_t>(best, subs.size());
  }
  return best;
}

}  // namespace badic::oracle
