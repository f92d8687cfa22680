#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "badic/estimators.hpp"
#include "badic/points.hpp"
#include "badic/tree.hpp"
#include "badic/windowed.hpp"

namespace badic {

enum class PruneStrategy { Greedy, Random };

struct PruneParams {
  std::uint64_t N = 1;  // branching cap
  double s = 0.0;
  double eps = 0.0;
  PruneStrategy strategy = PruneStrategy::Greedy;
  std::uint64_t seed = 0;
  int retries = 100;  // random strategy: extra attempts after the first
};

// ⌈N^n M^(-n eps)⌉, evaluated in log space with a 1e-9 tolerance.
std::uint64_t prune_bound(std::uint64_t N, int n, int M, double eps);

// Empty when K (base M, depth n) meets the pruning hypotheses: every internal
// node has at most ⌊M^(s+eps)⌋ children, K has at least M^(ns) leaves and
// N <= ⌊M^(s+eps)⌋. Otherwise a description of the first violation.
std::optional<std::string> prune_hypothesis_violation(const CubeTree& tree, const PruneParams& p);

// Checks the hypotheses, then keeps at most N children per node.
// Greedy keeps the N children whose pruned subtrees have the most leaves
// (ties to the smaller code), which maximizes the leaf count. Random keeps a
// uniform N-subset independently at every node occurrence and retries until
// the leaf count reaches prune_bound.
CubeTree prune(const CubeTree& tree, const PruneParams& p);
CubeTree prune_greedy(const CubeTree& tree, std::uint64_t N);
CubeTree prune_random(const CubeTree& tree, std::uint64_t N, std::uint64_t seed);
std::uint32_t max_child_count(const CubeTree& tree);

// Group levels so the tree has base M; M must be a power of the tree's base.
CubeTree rebase_to(const CubeTree& tree, int M);
WindowedSet rebase_to(const WindowedSet& set, int M);

struct DenseWindow {
  BadicCube cube;
  std::uint64_t count = 0;  // descendants `band` levels below
};

// Argmax of count_hit_subcubes(E, I, band) over nodes I strictly inside
// `within` at level >= min_level with level + band <= depth. Ties go to the
// shallowest, then lexicographically first, cube.
DenseWindow find_dense_window(const CubeTree& tree, const BadicCube& within, int min_level, int band);

struct AssouadParams {
  Rational alpha;
  Rational eps;
  int stages = 3;
  PruneStrategy strategy = PruneStrategy::Greedy;
  std::uint64_t seed = 0;
  // Refuse to run when the large-M conditions fail instead of recording them.
  bool strict = false;
};

struct StageRecord {
  int stage = 0;
  std::string window;  // cube text
  int level = 0;
  int band = 0;
  bool truncated = false;
  std::uint64_t window_count = 0;  // count of E in the window before pruning
  std::uint64_t count = 0;         // after pruning
  std::uint64_t bound = 0;         // ⌈N^n M^(-n eps/2)⌉
  bool ok() const { return count >= bound; }
};

struct ConstructionTrace {
  std::vector<StageRecord> stages;
  int M = 2;
  int dim = 1;
  std::uint64_t N = 1;
  double alpha = 0.0;
  double eps = 0.0;
  bool floor_condition = true;   // ⌊M^α⌋ >= M^(α-ε/2)
  bool corner_condition = true;  // N + 3^d <= M^(α+ε)
  int k_eval = 0;
  double headline = 0.0;
  double delta = 0.0;  // d log 2 / (k_eval log M)

  bool in_range() const;
  bool ok() const;
  // "stage\twindow\tlevel\tcount\tbound\tok"
  std::string to_tsv() const;
};

struct AssouadResult {
  CubeTree tree;
  ConstructionTrace trace;
};

std::uint64_t target_branching(double alpha, int M);

// Subset F of E (base M) whose star estimate lands near alpha: one pruned
// dense-window piece per stage, each piece inside a reserve cube disjoint
// from the earlier pieces, leaves continued by their first-leaf chains in E.
AssouadResult construct_subset_assouad(const CubeTree& tree, const AssouadParams& p, int workers = 1);

struct GapRecord {
  int k = 0;                    // windows 1..k
  std::int64_t gap = 0;         // distance of window k+1 beyond R_k
  std::string lhs;              // Σ ⌈diam(Q_i)^γ⌉ as an integer
  std::string rhs;              // ⌊gap^γ⌋
  bool ok = false;
};

struct GlobalResult {
  WindowedSet set;
  ConstructionTrace trace;
  std::vector<GapRecord> gaps;
};

// Windowed variant: every window is pruned to N over its own levels down to
// unit scale, and later windows are pushed outward along the first axis so
// that Σ_{i<=k} diam(Q_i)^(α+ε) <= ℓ_k^(α+ε), ℓ_k the smallest adequate power
// of M (strictly increasing in k).
GlobalResult construct_subset_assouad_global(const WindowedSet& set, const AssouadParams& p);

// Recomputes the gap condition from the emitted windows, in exact integers:
// Σ ⌈M^(m_i p/q)⌉ <= ⌊ℓ_k^(p/q)⌋ with γ = p/q.
std::vector<GapRecord> verify_gap_condition(const WindowedSet& set, const Rational& gamma);

struct LadderStage {
  int n = 0;
  char which = 'A';  // 'A' or 'B'
  double lo = 0.0, hi = 0.0;
  bool lo_open = false, hi_open = false;
  std::uint64_t N = 0;
  double headline = 0.0;
  bool in_interval() const;
};

struct LadderResult {
  std::vector<CubeTree> A;  // A_1..A_L
  std::vector<CubeTree> B;  // B_1..B_L
  std::vector<LadderStage> stages;
  std::vector<ConstructionTrace> traces;
  int k_eval = 0;
  bool nested = false;  // A_1 ⊂ ... ⊂ A_L ⊂ B_L ⊂ ... ⊂ B_1
  std::string to_tsv() const;
};

// a_n = α(1 - 2^-n), b_n = s + (α - s)(1 - 2^(1-n)), I_n = (a_n, a_{n+1}],
// J_n = [b_{n+1}, b_n), s the headline of E.
LadderResult sandwich_assemble(const CubeTree& tree, double alpha, int levels, const AssouadParams& base);

}  // namespace badic
