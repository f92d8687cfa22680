#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "badic/points.hpp"
#include "badic/tree.hpp"

namespace badic {

struct LowerParams {
  Rational alpha;        // p/q in (0, d]
  int M = 2;             // children per ball
  Rational R0{1};        // initial radius
  int depth = 1;         // iterations n
  // Index of the starting point in E. Unset: the first point, in
  // lexicographic order, from which every level can be filled.
  std::optional<std::size_t> anchor;
};

// 1/λ as an integer: the L with L^p = M^q, so that λ^α M = 1 exactly.
// Throws when M^(q/p) is not an integer.
std::int64_t inverse_ratio(int M, const Rational& alpha);

struct PackingChoice {
  std::vector<std::size_t> centers;  // first = x
  std::uint64_t packing = 0;         // greedy N*_r(E ∩ B(x, R)) for the admissibility record
};

// M centers around x: x itself, then a greedy lexicographic packing of
// points c with B(c, r) ⊂ B(x, R) and |c - x| >= 2r, pairwise >= 2r apart.
// Throws with the achieved count when fewer than M qualify.
PackingChoice select_packing_children(const PointSet& points, std::size_t x, const Rational& R, const Rational& r,
                                      int M);

struct BallTree {
  int M = 2;
  Rational alpha;
  Rational R0;
  std::int64_t lambda_inv = 2;
  PointSet points;
  // centers[k][w]: center of word w at level k, words in lexicographic order
  // (child j of word w is w*M + j).
  std::vector<std::vector<std::size_t>> centers;
  // Words whose packing fell below M + 3^d (admissibility not met there).
  std::vector<std::string> inadmissible;

  int depth() const { return static_cast<int>(centers.size()) - 1; }
  Rational radius(int k) const;
  std::string word(int level, std::size_t index) const;
  // Deepest-level centers as a point set.
  PointSet final_points() const;
};

// Points of E used by the construction: one per occupied cube at the first
// level whose side is <= R_depth (capped at the tree depth).
PointSet lower_candidates(const CubeTree& tree, const LowerParams& p);

BallTree construct_subset_lower(const PointSet& points, const LowerParams& p);

struct BallTreeCheck {
  bool cardinality = true;  // level k holds M^k centers
  bool disjoint = true;
  bool nested = true;
  bool anchored = true;
  std::string first_failure;
  bool ok() const { return cardinality && disjoint && nested && anchored; }
};

BallTreeCheck check_ball_tree(const BallTree& tree);

struct LowerRow {
  std::size_t x = 0;  // index into the final point set
  Rational R;
  Rational r;
  std::uint64_t nstar = 0;
  bool exact = false;   // nstar is the true packing number
  std::uint64_t bound_num = 0;  // bound = bound_num / (M + 1) = M^k / (M + 1)
  bool ok = false;
};

struct LowerReport {
  std::vector<LowerRow> rows;
  int M = 2;
  bool cardinality_ok = false;  // |F| = M^n
  bool lambda_exact = false;    // (1/λ)^p = M^q
  bool box_ratio_exact = false;  // log M^n / -log(R_0 λ^n) = p/q as a rational identity
  double box_ratio = 0.0;
  std::size_t violations() const;
  // "x\tR\tr\tNstar\tbound\tok"
  std::string to_tsv(const PointSet& points) const;
};

// All centers of F against every scale pair (R_j, R_{j+k}), k >= 1:
// N*_r(F ∩ B(x, R)) >= M^k / (M + 1), exact in integers.
LowerReport verify_lower_bounds(const BallTree& tree);

// F as a tree over E's leaves: the depth-n leaves whose corners are F's points.
CubeTree lower_subset_tree(const BallTree& tree, const CubeTree& source);

}  // namespace badic
