#include "badic/assouad.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "badic/error.hpp"
#include "badic/random.hpp"

namespace badic {

using boost::multiprecision::cpp_int;

namespace {

constexpr double kTol = 1e-9;

std::uint64_t floor_pow(int M, double x) { return static_cast<std::uint64_t>(std::floor(std::pow(M, x) + kTol)); }

}  // namespace

std::uint64_t prune_bound(std::uint64_t N, int n, int M, double eps) {
  if (N == 0) return 0;
  const double x = std::exp(n * (std::log(static_cast<double>(N)) - eps * std::log(static_cast<double>(M))));
  return static_cast<std::uint64_t>(std::ceil(x - kTol * std::max(1.0, x)));
}

std::uint32_t max_child_count(const CubeTree& tree) {
  std::uint32_t best = 0;
  for (const auto& level : index_nodes(tree))
    for (const auto& n : level) best = std::max(best, static_cast<std::uint32_t>(tree.node(n.id).children.size()));
  return best;
}

std::optional<std::string> prune_hypothesis_violation(const CubeTree& tree, const PruneParams& p) {
  const int M = tree.base();
  const int n = tree.depth();
  const auto cap = floor_pow(M, p.s + p.eps);
  if (p.N < 1) return "N must be >= 1";
  if (p.eps < 0) return "eps must be >= 0";
  for (const auto& level : index_nodes(tree))
    for (const auto& node : level) {
      const auto c = tree.node(node.id).children.size();
      if (c > cap)
        return "node " + node.cube.to_string() + " has " + std::to_string(c) + " children > floor(M^{s+eps}) = " +
               std::to_string(cap);
    }
  if (std::log(static_cast<double>(tree.leaf_count())) < n * p.s * std::log(static_cast<double>(M)) - kTol)
    return "Card(K) = " + std::to_string(tree.leaf_count()) + " < M^{ns}";
  if (p.N > cap) return "N = " + std::to_string(p.N) + " > floor(M^{s+eps}) = " + std::to_string(cap);
  return std::nullopt;
}

CubeTree prune_greedy(const CubeTree& tree, std::uint64_t N) {
  if (N < 1) throw DomainError("N must be >= 1");
  TreeBuilder b(tree.base(), tree.dim());
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (id == kLeaf) return kLeaf;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::vector<Child> kids;
    for (const auto& c : tree.node(id).children) kids.push_back({c.code, rec(c.node)});
    if (kids.size() > N) {
      std::stable_sort(kids.begin(), kids.end(), [&](const Child& x, const Child& y) {
        return b.node(x.node).leaves() > b.node(y.node).leaves();
      });
      kids.resize(N);
      std::sort(kids.begin(), kids.end(), [](const Child& x, const Child& y) { return x.code < y.code; });
    }
    const NodeId out = b.make(std::move(kids));
    memo.emplace(id, out);
    return out;
  };
  return b.finish(tree.depth(), rec(tree.root()));
}

CubeTree prune_random(const CubeTree& tree, std::uint64_t N, std::uint64_t seed) {
  if (N < 1) throw DomainError("N must be >= 1");
  Rng rng(seed);
  TreeBuilder b(tree.base(), tree.dim());
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (id == kLeaf) return kLeaf;
    const auto& children = tree.node(id).children;
    std::vector<Child> kids;
    if (children.size() <= N) {
      for (const auto& c : children) kids.push_back({c.code, rec(c.node)});
    } else {
      for (auto i : rng.subset(static_cast<std::uint32_t>(children.size()), static_cast<std::uint32_t>(N)))
        kids.push_back({children[i].code, rec(children[i].node)});
    }
    return b.make(std::move(kids));
  };
  return b.finish(tree.depth(), rec(tree.root()));
}

CubeTree prune(const CubeTree& tree, const PruneParams& p) {
  if (auto v = prune_hypothesis_violation(tree, p)) throw DomainError("prune hypothesis violated: " + *v);
  if (p.strategy == PruneStrategy::Greedy) return prune_greedy(tree, p.N);
  const auto bound = prune_bound(p.N, tree.depth(), tree.base(), p.eps);
  for (int attempt = 0; attempt <= p.retries; ++attempt) {
    auto f = prune_random(tree, p.N, derive_seed(p.seed, static_cast<std::uint64_t>(attempt)));
    if (f.leaf_count() >= bound) return f;
  }
  throw DomainError("random prune stayed below N^n M^{-n eps} = " + std::to_string(bound) + " after " +
                    std::to_string(p.retries + 1) + " attempts");
}

namespace {

int power_exponent(int base, int M) {
  std::int64_t v = base;
  for (int t = 1; t <= 62 && v <= M; ++t, v *= base)
    if (v == M) return t;
  throw DomainError("M = " + std::to_string(M) + " is not a power of the set's base " + std::to_string(base));
}

}  // namespace

CubeTree rebase_to(const CubeTree& tree, int M) {
  if (M == tree.base()) return tree;
  const int t = power_exponent(tree.base(), M);
  if (tree.depth() < t) throw DomainError("set depth is below one level of base M");
  return rebase(tree, t);
}

WindowedSet rebase_to(const WindowedSet& set, int M) {
  if (M == set.base()) return set;
  const int t = power_exponent(set.base(), M);
  std::vector<Window> out;
  for (const auto& w : set.windows()) {
    if (w.side_exp % t != 0 || w.tree.depth() % t != 0)
      throw DomainError("window exponents and depths must be multiples of " + std::to_string(t) + " to use M = " +
                        std::to_string(M));
    out.push_back(Window{w.offset, w.side_exp / t, rebase(w.tree, t)});
  }
  return WindowedSet(M, set.dim(), std::move(out));
}

DenseWindow find_dense_window(const CubeTree& tree, const BadicCube& within, int min_level, int band) {
  if (band < 1) throw DomainError("window band must be >= 1");
  const auto index = index_nodes(tree, within);
  std::optional<DenseWindow> best;
  for (int level = std::max(min_level, within.level() + 1); level + band <= tree.depth(); ++level)
    for (const auto& n : index[static_cast<std::size_t>(level)]) {
      const auto c = tree.node(n.id).profile[static_cast<std::size_t>(band)];
      if (!best || c > best->count) best = DenseWindow{n.cube, c};
    }
  if (!best)
    throw DomainError("no window of " + std::to_string(band) + " levels at level >= " + std::to_string(min_level) +
                      " inside " + within.to_string() + " (depth budget exceeded)");
  return *best;
}

bool ConstructionTrace::in_range() const {
  return headline >= alpha - eps - delta - kTol && headline <= alpha + eps + delta + kTol;
}

bool ConstructionTrace::ok() const {
  return in_range() && std::all_of(stages.begin(), stages.end(), [](const auto& s) { return s.ok(); });
}

std::string ConstructionTrace::to_tsv() const {
  std::ostringstream os;
  os << "stage\twindow\tlevel\tcount\tbound\tok\n";
  for (const auto& s : stages)
    os << s.stage << '\t' << s.window << '\t' << s.level << '\t' << s.count << '\t' << s.bound << '\t'
       << (s.ok() ? 1 : 0) << '\n';
  return os.str();
}

std::uint64_t target_branching(double alpha, int M) { return floor_pow(M, alpha); }

namespace {

struct Target {
  std::uint64_t N;
  double alpha;
  double eps;
};

void check_conditions(ConstructionTrace& t, bool strict) {
  const double logM = std::log(static_cast<double>(t.M));
  const double corners = std::pow(3.0, t.dim);
  t.floor_condition = std::log(static_cast<double>(t.N)) >= (t.alpha - t.eps / 2) * logM - kTol;
  t.corner_condition = std::log(static_cast<double>(t.N) + corners) <= (t.alpha + t.eps) * logM + kTol;
  if (strict && !t.floor_condition) throw DomainError("floor(M^alpha) < M^{alpha-eps/2}");
  if (strict && !t.corner_condition) throw DomainError("N+3^d > M^{alpha+eps}");
}

CubeTree prune_piece(const CubeTree& piece, std::uint64_t N, PruneStrategy strategy, std::uint64_t seed,
                     std::uint64_t bound) {
  if (strategy == PruneStrategy::Greedy) return prune_greedy(piece, N);
  std::optional<CubeTree> last;
  for (std::uint64_t attempt = 0; attempt <= 100; ++attempt) {
    last = prune_random(piece, N, derive_seed(seed, attempt));
    if (last->leaf_count() >= bound) break;
  }
  return *last;
}

// Copies a pruned piece into `b` below the window, continuing every kept
// leaf by its first-leaf chain in the source tree.
NodeId extend_piece(TreeBuilder& b, const CubeTree& src, NodeId window, const CubeTree& piece) {
  std::map<std::pair<NodeId, NodeId>, NodeId> memo;
  std::function<NodeId(NodeId, NodeId)> rec = [&](NodeId p, NodeId e) -> NodeId {
    if (auto it = memo.find({p, e}); it != memo.end()) return it->second;
    NodeId out;
    if (piece.node(p).height == 0) {
      std::vector<std::uint32_t> codes;
      for (NodeId cur = e; src.node(cur).height > 0; cur = src.node(cur).children.front().node)
        codes.push_back(src.node(cur).children.front().code);
      out = b.chain(codes);
    } else {
      std::vector<Child> kids;
      const auto& ec = src.node(e).children;
      for (const auto& c : piece.node(p).children) {
        auto it = std::lower_bound(ec.begin(), ec.end(), c.code, [](const Child& x, std::uint32_t v) { return x.code < v; });
        kids.push_back({c.code, rec(c.node, it->node)});
      }
      out = b.make(std::move(kids));
    }
    memo.emplace(std::make_pair(p, e), out);
    return out;
  };
  return rec(piece.root(), window);
}

AssouadResult construct_with_target(const CubeTree& E, const Target& target, const AssouadParams& p, int workers) {
  const int M = E.base();
  const int D = E.depth();
  if (p.stages < 1) throw DomainError("stages must be >= 1");
  if (target.N < 1) throw DomainError("floor(M^alpha) = 0");
  if (target.alpha <= 0) throw DomainError("alpha must be > 0");
  if (target.eps < 0) throw DomainError("eps must be >= 0");
  if (D < 2) throw DomainError("set depth must be >= 2 in base M");
  const double top = star_dimension_report(E, D, workers).envelope_max();
  if (target.alpha > top + kTol)
    throw DomainError("alpha exceeds the star estimate of the input (" + format_ratio(top) + ")");

  ConstructionTrace trace;
  trace.M = M;
  trace.dim = E.dim();
  trace.N = target.N;
  trace.alpha = target.alpha;
  trace.eps = target.eps;
  check_conditions(trace, p.strict);

  TreeBuilder b(M, E.dim());
  std::optional<NodeId> acc;
  BadicCube reserve = E.root_cube();
  int band = 1;
  int last_band = 0;
  for (int k = 1; k <= p.stages; ++k) {
    const int eff = std::min(band, D - k);
    if (eff < 1)
      throw DomainError("resolution exhausted: depth " + std::to_string(D) + " leaves no room for stage " +
                        std::to_string(k));
    const auto win = find_dense_window(E, reserve, k, eff);
    const auto piece = subtree(E, win.cube, eff);
    StageRecord rec;
    rec.stage = k;
    rec.window = win.cube.to_string();
    rec.level = win.cube.level();
    rec.band = eff;
    rec.truncated = eff < band;
    rec.window_count = win.count;
    rec.bound = prune_bound(target.N, eff, M, target.eps / 2);
    const auto pruned = prune_piece(piece, target.N, p.strategy, derive_seed(p.seed, static_cast<std::uint64_t>(k)),
                                    rec.bound);
    rec.count = pruned.leaf_count();
    trace.stages.push_back(rec);

    const NodeId below = extend_piece(b, E, *E.find(win.cube), pruned);
    const NodeId grafted = b.graft(win.cube.path(), below);
    acc = acc ? b.unite(*acc, grafted) : grafted;
    last_band = eff;

    if (k == p.stages) break;
    const NodeId rid = *E.find(reserve);
    std::optional<Child> next;
    for (const auto& c : E.node(rid).children) {
      if (reserve.child(c.code).is_ancestor_of(win.cube)) continue;
      if (!next || E.node(c.node).leaves() > E.node(next->node).leaves()) next = c;
    }
    if (!next) throw DomainError("no reserve cube left beside the window at stage " + std::to_string(k));
    reserve = reserve.child(next->code);
    band += win.cube.level();
  }

  AssouadResult out{b.finish(D, *acc), {}};
  trace.k_eval = last_band;
  trace.headline = star_dimension_report(out.tree, last_band, workers).headline();
  trace.delta = E.dim() * std::log(2.0) / (last_band * std::log(static_cast<double>(M)));
  out.trace = std::move(trace);
  return out;
}

Target target_from(const AssouadParams& p, int M) {
  const double alpha = p.alpha.to_double();
  const double eps = p.eps.to_double();
  if (alpha <= 0) throw DomainError("alpha must be > 0");
  if (eps < 0) throw DomainError("eps must be >= 0");
  return {target_branching(alpha, M), alpha, eps};
}

// Integer q-th roots of non-negative big integers.
cpp_int floor_root(const cpp_int& x, unsigned q) {
  if (x < 2 || q == 1) return x;
  const auto bits = boost::multiprecision::msb(x) / q + 2;
  cpp_int lo = 0, hi = cpp_int(1) << bits;
  while (lo < hi) {
    cpp_int mid = (lo + hi + 1) >> 1;
    if (boost::multiprecision::pow(mid, q) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

cpp_int ceil_root(const cpp_int& x, unsigned q) {
  cpp_int r = floor_root(x, q);
  if (boost::multiprecision::pow(r, q) < x) ++r;
  return r;
}

// ⌈M^(m p/q)⌉ and ⌊v^(p/q)⌋.
cpp_int ceil_power(std::int64_t M, int m, const Rational& g) {
  return ceil_root(boost::multiprecision::pow(cpp_int(M), static_cast<unsigned>(m * g.num())),
                   static_cast<unsigned>(g.den()));
}

cpp_int floor_power(std::int64_t v, const Rational& g) {
  return floor_root(boost::multiprecision::pow(cpp_int(v), static_cast<unsigned>(g.num())),
                    static_cast<unsigned>(g.den()));
}

std::int64_t window_extent(const Window& w, int base) {
  const std::int64_t side = lattice_pow(base, w.side_exp);
  std::int64_t r = 0;
  for (auto o : w.offset) r = std::max({r, o < 0 ? -o : o, o + side < 0 ? -(o + side) : o + side});
  return r;
}

void check_gamma(const Rational& g) {
  if (!(Rational(0) < g)) throw DomainError("alpha + eps must be > 0");
  if (g.num() > 4096 || g.den() > 4096) throw DomainError("alpha + eps needs a small exact fraction");
}

}  // namespace

AssouadResult construct_subset_assouad(const CubeTree& tree, const AssouadParams& p, int workers) {
  return construct_with_target(tree, target_from(p, tree.base()), p, workers);
}

std::vector<GapRecord> verify_gap_condition(const WindowedSet& set, const Rational& gamma) {
  check_gamma(gamma);
  const auto& ws = set.windows();
  std::vector<GapRecord> out;
  cpp_int lhs = 0;
  std::int64_t extent = 0;
  for (std::size_t k = 0; k + 1 < ws.size(); ++k) {
    lhs += ceil_power(set.base(), ws[k].side_exp, gamma);
    extent = std::max(extent, window_extent(ws[k], set.base()));
    GapRecord g;
    g.k = static_cast<int>(k + 1);
    g.gap = ws[k + 1].distance() - extent;
    g.lhs = lhs.str();
    if (g.gap > 0) {
      const auto rhs = floor_power(g.gap, gamma);
      g.rhs = rhs.str();
      g.ok = lhs <= rhs;
    } else {
      g.rhs = "0";
    }
    out.push_back(std::move(g));
  }
  return out;
}

GlobalResult construct_subset_assouad_global(const WindowedSet& set, const AssouadParams& p) {
  const int M = set.base();
  const Target target = target_from(p, M);
  const Rational gamma = p.alpha + p.eps;
  check_gamma(gamma);

  ConstructionTrace trace;
  trace.M = M;
  trace.dim = set.dim();
  trace.N = target.N;
  trace.alpha = target.alpha;
  trace.eps = target.eps;
  check_conditions(trace, p.strict);

  const auto& ws = set.windows();
  std::vector<Window> out;
  std::uint64_t prev_count = 0;
  cpp_int lhs = 0;
  std::int64_t extent = 0;
  int ell_exp = -1;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const auto& w = ws[k];
    const int band = std::min(w.side_exp, w.tree.depth());
    const auto local = w.tree.node(w.tree.root()).profile[static_cast<std::size_t>(band)];
    if (local < prev_count) throw DomainError("window local counts must be nondecreasing");
    prev_count = local;

    StageRecord rec;
    rec.stage = static_cast<int>(k + 1);
    rec.level = w.side_exp;
    rec.band = band;
    rec.window_count = local;
    rec.bound = prune_bound(target.N, band, M, target.eps / 2);
    const auto piece = subtree(w.tree, w.tree.root_cube(), band);
    const auto pruned = prune_piece(piece, target.N, p.strategy, derive_seed(p.seed, k + 1), rec.bound);
    rec.count = pruned.leaf_count();

    TreeBuilder b(M, set.dim());
    const NodeId root = extend_piece(b, w.tree, w.tree.root(), pruned);
    CubeTree t = b.finish(w.tree.depth(), root);

    std::vector<std::int64_t> offset = w.offset;
    if (k > 0) {
      // Smallest ℓ = M^e, e increasing in k, with Σ ⌈diam^γ⌉ <= ⌊ℓ^γ⌋.
      int e = ell_exp + 1;
      while (floor_power(lattice_pow(M, e), gamma) < lhs) ++e;
      ell_exp = e;
      const std::int64_t ell = lattice_pow(M, e);
      const std::int64_t side = lattice_pow(M, w.side_exp);
      if (extent > INT64_MAX / 4 - ell) throw DomainError("window offset overflows 64-bit integers");
      const std::int64_t want = extent + ell;
      offset.assign(offset.size(), 0);
      offset[0] = (want + side - 1) / side * side;
    }
    out.push_back(Window{offset, w.side_exp, std::move(t)});
    std::vector<std::int64_t> idx;
    for (auto o : offset) idx.push_back(lattice_div(o, M, w.side_exp));
    rec.window = GlobalCube{w.side_exp, idx}.to_string();
    trace.stages.push_back(rec);
    lhs += ceil_power(M, w.side_exp, gamma);
    extent = std::max(extent, window_extent(out.back(), M));
  }

  WindowedSet F(M, set.dim(), std::move(out));
  const int k_eval = default_k_max(F, true);
  trace.k_eval = k_eval;
  trace.headline = star_dimension_report(F, true, k_eval).headline();
  trace.delta = set.dim() * std::log(2.0) / (k_eval * std::log(static_cast<double>(M)));
  auto gaps = verify_gap_condition(F, gamma);
  return GlobalResult{std::move(F), std::move(trace), std::move(gaps)};
}

bool LadderStage::in_interval() const {
  const bool above = lo_open ? headline > lo : headline >= lo;
  const bool below = hi_open ? headline < hi : headline <= hi;
  return above && below;
}

std::string LadderResult::to_tsv() const {
  std::ostringstream os;
  os << "n\tset\tinterval\tN\theadline\tok\n";
  for (const auto& s : stages)
    os << s.n << '\t' << s.which << '\t' << (s.lo_open ? '(' : '[') << format_ratio(s.lo) << ',' << format_ratio(s.hi)
       << (s.hi_open ? ')' : ']') << '\t' << s.N << '\t' << format_ratio(s.headline) << '\t'
       << (s.in_interval() ? 1 : 0) << '\n';
  return os.str();
}

namespace {

Target ladder_target(double lo, double hi, int M, int dim) {
  const double logM = std::log(static_cast<double>(M));
  const double mid = (lo + hi) / 2;
  std::optional<Target> best;
  const auto top = ipow(static_cast<std::uint64_t>(M), static_cast<unsigned>(dim));
  for (std::uint64_t N = 1; N <= top; ++N) {
    const double v = std::log(static_cast<double>(N)) / logM;
    if (!(v > lo && v < hi)) continue;
    if (!best || std::abs(v - mid) < std::abs(best->alpha - mid)) best = Target{N, v, std::min(v - lo, hi - v)};
  }
  if (!best)
    throw DomainError("no branching N with log N / log M inside (" + format_ratio(lo) + ", " + format_ratio(hi) +
                      ") for M = " + std::to_string(M) + "; use a larger M");
  return *best;
}

}  // namespace

LadderResult sandwich_assemble(const CubeTree& tree, double alpha, int levels, const AssouadParams& base) {
  if (levels < 1) throw DomainError("ladder depth must be >= 1");
  const int M = tree.base();
  const double s = star_dimension_report(tree, tree.depth()).headline();
  if (!(alpha > 0 && alpha < s)) throw DomainError("ladder needs 0 < alpha < headline(E) = " + format_ratio(s));
  auto a = [&](int n) { return alpha * (1 - std::ldexp(1.0, -n)); };
  auto bseq = [&](int n) { return s + (alpha - s) * (1 - std::ldexp(1.0, 1 - n)); };

  LadderResult res;
  auto run = [&](const CubeTree& E, double lo, double hi) {
    auto r = construct_with_target(E, ladder_target(lo, hi, M, tree.dim()), base, 1);
    res.traces.push_back(r.trace);
    return r.tree;
  };
  auto add_stage = [&](int n, char which, std::uint64_t N) {
    LadderStage st;
    st.n = n;
    st.which = which;
    if (which == 'A') {
      st.lo = a(n), st.hi = a(n + 1), st.lo_open = true;
    } else {
      st.lo = bseq(n + 1), st.hi = bseq(n), st.hi_open = true;
    }
    st.N = N;
    res.stages.push_back(st);
  };

  res.B.push_back(run(tree, bseq(2), bseq(1)));
  add_stage(1, 'B', res.traces.back().N);
  res.A.push_back(run(res.B[0], a(1), a(2)));
  add_stage(1, 'A', res.traces.back().N);
  for (int n = 1; n < levels; ++n) {
    const CubeTree Bp = run(res.B.back(), bseq(n + 2), bseq(n + 1));
    add_stage(n + 1, 'B', res.traces.back().N);
    const CubeTree Ap = run(Bp, a(n + 1), a(n + 2));
    add_stage(n + 1, 'A', res.traces.back().N);
    const CubeTree An = res.A.back();
    res.A.push_back(tree_union(An, Ap));
    res.B.push_back(tree_union(An, Bp));
  }

  res.k_eval = res.traces.front().k_eval;
  for (const auto& t : res.traces) res.k_eval = std::min(res.k_eval, t.k_eval);
  for (auto& st : res.stages) {
    const auto& X = st.which == 'A' ? res.A[static_cast<std::size_t>(st.n - 1)] : res.B[static_cast<std::size_t>(st.n - 1)];
    st.headline = star_dimension_report(X, res.k_eval).headline();
  }
  res.nested = true;
  for (int n = 0; n + 1 < levels; ++n) {
    res.nested = res.nested && is_subtree(res.A[static_cast<std::size_t>(n)], res.A[static_cast<std::size_t>(n + 1)]);
    res.nested = res.nested && is_subtree(res.B[static_cast<std::size_t>(n + 1)], res.B[static_cast<std::size_t>(n)]);
  }
  res.nested = res.nested && is_subtree(res.A.back(), res.B.back());
  return res;
}

}  // namespace badic
