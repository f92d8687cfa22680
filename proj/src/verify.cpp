#include "badic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "badic/assouad.hpp"
#include "badic/error.hpp"
#include "badic/estimators.hpp"
#include "badic/generators.hpp"
#include "badic/oracles.hpp"
#include "badic/random.hpp"

namespace badic {

namespace {

constexpr const char* kSuiteNames[] = {"h-star", "packing-sandwich", "prune-bound", "lemma21"};

struct Recorder {
  SuiteResult& r;
  void check(bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) r.violations.push_back(what);
  }
};

std::vector<std::pair<std::string, SetData>> sample_families(Rng& rng) {
  std::vector<std::pair<std::string, SetData>> out;
  auto add = [&](GeneratorSpec s) {
    std::string name = to_string(s.family);
    out.emplace_back(std::move(name), generate(s));
  };
  GeneratorSpec s;
  s.family = Family::DigitCantor, s.base = 3, s.digits = {0, 2}, s.depth = 6;
  add(s);
  s = {};
  s.family = Family::DigitCantor, s.base = 4, s.dim = 2, s.digits = {0, 3}, s.depth = 4;
  add(s);
  s = {};
  s.family = Family::FullCube, s.base = 2, s.dim = 2, s.depth = 5;
  add(s);
  s = {};
  s.family = Family::OneOverK, s.count = 64, s.depth = 12;
  add(s);
  s = {};
  s.family = Family::LatticeWindow, s.base = 2, s.dim = 2, s.window_exp = 3, s.frac = 2;
  add(s);
  s = {};
  s.family = Family::IntegerCantor, s.base = 3, s.int_digits = {0, 2}, s.window_exp = 1, s.windows = 3, s.frac = 2;
  add(s);
  s = {};
  s.family = Family::Prop5Union, s.base = 4, s.digits = {0, 2}, s.int_digits = {0, 1, 2}, s.window_exp = 1,
  s.windows = 2, s.frac = 3;
  add(s);
  for (int i = 0; i < 4; ++i) {
    s = {};
    s.family = Family::RandomBranching;
    s.base = 2 + static_cast<int>(rng.below(3));
    s.dim = 1 + static_cast<int>(rng.below(2));
    s.depth = 2 + static_cast<int>(rng.below(s.dim == 1 ? 7 : 4));
    s.max_children = 1 + static_cast<std::uint32_t>(rng.below(ipow(static_cast<std::uint64_t>(s.base), s.dim)));
    s.seed = rng.below(UINT32_MAX);
    add(s);
  }
  return out;
}

void hstar_suite(Recorder& rec, Rng& rng) {
  for (const auto& [name, set] : sample_families(rng)) {
    if (const auto* tree = std::get_if<CubeTree>(&set)) {
      for (int k = 1; k <= tree->depth(); ++k) {
        const auto h = h_star(*tree, k);
        const auto o = oracle::exact_hstar(*tree, k);
        rec.check(h.count == o.count, name + " k=" + std::to_string(k) + ": h_star " + std::to_string(h.count) +
                                          " != oracle " + std::to_string(o.count));
        rec.check(count_hit_subcubes(*tree, h.witness, k) == h.count, name + ": witness does not reproduce count");
        const auto par = h_star(*tree, k, 4);
        rec.check(par.count == h.count && par.witness == h.witness, name + ": worker count changed the result");
        for (int j = 1; j + k <= tree->depth(); ++j)
          rec.check(h_star(*tree, j + k).count <= h_star(*tree, j).count * h.count,
                    name + ": submultiplicativity fails at j=" + std::to_string(j) + " k=" + std::to_string(k));
      }
      const auto pruned = prune_greedy(*tree, 2);
      for (int k = 1; k <= tree->depth(); ++k)
        rec.check(h_star(pruned, k).count <= h_star(*tree, k).count, name + ": h_star not monotone under subsets");
    } else {
      const auto& ws = std::get<WindowedSet>(set);
      for (bool global : {false, true}) {
        const int top = (global ? ws.max_side_exp() : 0) - ws.leaf_exp();
        for (int k = 1; k <= top; ++k) {
          const auto h = h_star(ws, k, global);
          const auto o = oracle::exact_hstar(ws, k, global);
          rec.check(h.count == o, name + (global ? " global" : " local") + " k=" + std::to_string(k) + ": h_star " +
                                      std::to_string(h.count) + " != oracle " + std::to_string(o));
          rec.check(count_hit_subcubes(ws, h.witness, k) == h.count, name + ": witness does not reproduce count");
        }
      }
    }
  }
}

PointSet random_points(Rng& rng, int dim, std::size_t count) {
  const int precision = 5;
  const auto scale = static_cast<std::uint64_t>(lattice_pow(2, precision));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count * 4 && pts.size() < count; ++i) {
    Point p;
    for (int j = 0; j < dim; ++j) p.coords.push_back(static_cast<std::int64_t>(rng.below(scale)));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return PointSet(2, dim, precision, std::move(pts));
}

void sandwich_suite(Recorder& rec, Rng& rng, int samples) {
  const auto cantor3 = leaf_representatives(tree_from_digit_rule(3, 1, 3, {{0}, {2}}));
  const auto cantor4 = leaf_representatives(tree_from_digit_rule(3, 1, 4, {{0}, {2}}));
  for (int i = 0; i < samples; ++i) {
    const int kind = i % 4;
    const PointSet ps = kind == 0   ? cantor3
                        : kind == 1 ? cantor4
                                    : random_points(rng, kind == 2 ? 1 : 2, 2 + rng.below(19));
    const auto center = static_cast<std::size_t>(rng.below(ps.size()));
    const Rational R(1 + static_cast<std::int64_t>(rng.below(64)), 64);
    const Rational r = R * Rational(1 + static_cast<std::int64_t>(rng.below(15)), 16);
    const auto rep = verify_cover_pack_sandwich(ps, {{center, R, r}});
    const auto& row = rep.rows.front();
    std::ostringstream what;
    what << "sample " << i << " center=" << ps.format(ps[center]) << " R=" << R.to_string() << " r=" << r.to_string()
         << ": " << row.cover_2r_half << " <= " << row.pack_r << " <= " << row.cover_r3;
    rec.check(row.exact, what.str() + " (not exact)");
    rec.check(row.ok(), what.str());
    const auto greedy = packing_count(ps, ps[center], R, r);
    const auto scale = std::uint64_t{1} << ps.dim();
    rec.check(greedy <= row.pack_r && greedy * scale >= row.pack_r,
              what.str() + ": greedy packing " + std::to_string(greedy) + " outside [exact/2^d, exact]");
  }
}

void prune_suite(Recorder& rec, Rng& rng, int trees) {
  for (int i = 0; i < trees; ++i) {
    const int M = 2 + i % 3;
    const int depth = 1 + static_cast<int>(rng.below(6));
    const auto maxc = static_cast<std::uint32_t>(1 + rng.below(static_cast<std::uint64_t>(M)));
    const auto K = random_branching_tree(M, 1, depth, maxc, rng.below(UINT32_MAX));
    const double logM = std::log(static_cast<double>(M));
    const double s = std::log(static_cast<double>(K.leaf_count())) / (depth * logM);
    const double eps = std::max(0.05, std::log(static_cast<double>(max_child_count(K))) / logM - s);
    const auto cap = static_cast<std::uint64_t>(std::floor(std::pow(M, s + eps) + 1e-9));
    for (std::uint64_t N = 1; N <= cap; ++N) {
      PruneParams p;
      p.N = N;
      p.s = s;
      p.eps = eps;
      const std::string tag = "tree " + std::to_string(i) + " M=" + std::to_string(M) + " n=" + std::to_string(depth) +
                              " N=" + std::to_string(N);
      const auto violation = prune_hypothesis_violation(K, p);
      rec.check(!violation, tag + ": hypotheses fail: " + violation.value_or(""));
      if (violation) continue;
      const auto F = prune(K, p);
      const auto bound = prune_bound(N, depth, M, eps);
      rec.check(F.leaf_count() >= bound,
                tag + ": Card(F) = " + std::to_string(F.leaf_count()) + " < " + std::to_string(bound));
      rec.check(max_child_count(F) <= N, tag + ": child cap exceeded");
      rec.check(is_subtree(F, K), tag + ": F not contained in K");
    }
  }
}

void ball_cube_suite(Recorder& rec) {
  struct Case {
    int base, dim, depth;
    std::vector<std::vector<unsigned>> digits;
  };
  const std::vector<Case> cases = {
      {3, 1, 6, {{0}, {2}}},
      {4, 1, 4, {{0}, {1}, {3}}},
      {2, 1, 7, {{0}, {1}}},
      {3, 2, 3, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}},
      {4, 2, 3, {{0, 0}, {1, 2}, {3, 3}}},
  };
  for (const auto& c : cases) {
    const auto tree = tree_from_digit_rule(c.base, c.dim, c.depth, c.digits);
    const auto pts = leaf_representatives(tree);
    const auto factor = ipow(6, static_cast<unsigned>(c.dim));
    for (int j = 0; j < c.depth; ++j)
      for (int k = 1; j + k <= c.depth; ++k) {
        const Rational R(1, lattice_pow(c.base, j)), r(1, lattice_pow(c.base, j + k));
        std::uint64_t ball = 0;
        for (const auto& x : pts.points()) ball = std::max(ball, ball_cover_count(pts, x, R, r));
        const auto cube = h_star(tree, k).count;
        std::ostringstream what;
        what << "b=" << c.base << " d=" << c.dim << " j=" << j << " k=" << k << ": ball " << ball << " vs H* "
             << cube;
        rec.check(ball * factor >= cube && ball <= factor * cube, what.str());
      }
  }
}

}  // namespace

std::string to_string(Suite s) { return kSuiteNames[static_cast<int>(s)]; }

Suite parse_suite(std::string_view name) {
  for (int i = 0; i < 4; ++i)
    if (name == kSuiteNames[i]) return static_cast<Suite>(i);
  throw DomainError("unknown verify suite '" + std::string(name) + "'");
}

std::string SuiteResult::summary() const {
  return "suite=" + to_string(suite) + " checks=" + std::to_string(checks) +
         " violations=" + std::to_string(violations.size());
}

SuiteResult run_suite(Suite suite, const SuiteOptions& options) {
  SuiteResult r;
  r.suite = suite;
  Recorder rec{r};
  Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(suite)));
  switch (suite) {
    case Suite::HStar: hstar_suite(rec, rng); break;
    case Suite::PackingSandwich: sandwich_suite(rec, rng, options.samples > 0 ? options.samples : 500); break;
    case Suite::PruneBound: prune_suite(rec, rng, options.samples > 0 ? options.samples : 200); break;
    case Suite::BallCube: ball_cube_suite(rec); break;
  }
  return r;
}

}  // namespace badic
