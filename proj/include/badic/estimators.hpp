#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "badic/points.hpp"
#include "badic/tree.hpp"
#include "badic/windowed.hpp"

namespace badic {

enum class ReportKind { StarLocal, StarGlobal, AssouadBall, LowerCover, LowerPack };

std::string to_string(ReportKind kind);
ReportKind parse_report_kind(std::string_view name);

struct ScaleRecord {
  int k = 0;
  std::uint64_t count = 0;
  double log_ratio = 0.0;  // log(count) / (k log b)
  std::string witness;
  std::optional<BadicCube> cube;         // tree witnesses
  std::optional<GlobalCube> global;      // windowed witnesses
  std::optional<std::size_t> center;     // ball witnesses: index into the point set
};

struct DimensionReport {
  ReportKind kind = ReportKind::StarLocal;
  int base = 2;
  std::vector<ScaleRecord> records;  // strictly increasing k

  double headline() const;
  double envelope_min() const;
  double envelope_max() const;
  int depth() const { return records.empty() ? 0 : records.back().k; }
  // "k\tcount\tlogratio\twitness" rows, log-ratios to 6 decimals.
  std::string to_tsv() const;
  // "estimate=<value> kind=<kind> depth=<k_max>"
  std::string headline_line() const;
};

std::string format_ratio(double v);
double log_ratio(std::uint64_t count, int k, int base);

// Number of depth-(level+k) descendants of Q present in the tree; 0 when Q is
// not a node. Throws DomainError when level+k exceeds the tree depth or k < 1.
std::uint64_t count_hit_subcubes(const CubeTree& tree, const BadicCube& q, int k);

struct TreeExtremum {
  std::uint64_t count = 0;
  BadicCube witness;
};

// H*_{b^k}: max over all tree nodes Q of count_hit_subcubes(Q, k). Ties go to
// the shallowest, then lexicographically first, cube. `workers` only affects speed.
TreeExtremum h_star(const CubeTree& tree, int k, int workers = 1);
// Min over occupied cubes with k levels below them; the dual of h_star.
TreeExtremum h_lower(const CubeTree& tree, int k, int workers = 1);

struct GlobalExtremum {
  std::uint64_t count = 0;
  GlobalCube witness;
};

// Windowed H*: local ranges over cubes of side <= 1, global over side
// exponents up to the largest window exponent.
GlobalExtremum h_star(const WindowedSet& set, int k, bool global);
// Re-evaluates N_{b^k}(E, Q) for an arbitrary lattice cube.
std::uint64_t count_hit_subcubes(const WindowedSet& set, const GlobalCube& q, int k);

DimensionReport star_dimension_report(const CubeTree& tree, int k_max, int workers = 1);
DimensionReport star_dimension_report(const WindowedSet& set, bool global, int k_max);
// Default scale ranges for windowed sets: global -> largest window exponent,
// local -> the sub-unit resolution.
int default_k_max(const WindowedSet& set, bool global);
DimensionReport lower_dimension_report(const CubeTree& tree, int k_max, int workers = 1);

// Greedy b-adic cell cover of A ∩ B(center, R) at the largest side b^-j <= r.
// Every cell fits in one r-ball, so this bounds the minimal N_r from above.
std::uint64_t ball_cover_count(const PointSet& points, const Point& center, const Rational& R, const Rational& r);
// Greedy maximal packing: candidates in A ∩ B(center, R) scanned in
// lexicographic order, accepted when |c - accepted| >= 2r for all accepted.
std::uint64_t packing_count(const PointSet& points, const Point& center, const Rational& R, const Rational& r);
std::vector<std::size_t> greedy_packing(const PointSet& points, const Point& center, const Rational& R,
                                        const Rational& r);

// Ball-based reports over the point set: for k = 1..k_max, r = b^-k inside
// balls of radius R: max over centers of the cell cover (assouad-ball) or min
// over centers of the greedy packing (lower-pack).
DimensionReport assouad_ball_report(const PointSet& points, int k_max, const Rational& R);
DimensionReport lower_pack_report(const PointSet& points, int k_max, const Rational& R);

struct SandwichSample {
  std::size_t center;  // index into the point set
  Rational R;
  Rational r;
};

struct SandwichRow {
  SandwichSample sample;
  std::uint64_t cover_2r_half = 0;  // N_{2r}(A ∩ B(a, R/2))
  std::uint64_t pack_r = 0;         // N*_r(A ∩ B(a, R))
  std::uint64_t cover_r3 = 0;       // N_{r/3}(A ∩ B(a, R))
  bool exact = false;               // oracles used on both sides
  bool left_ok = true;
  bool right_ok = true;
  bool ok() const { return left_ok && right_ok; }
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  std::size_t violations() const;
  std::string to_tsv() const;
};

// Checks N_{2r}(A∩B(a,R/2)) <= N*_r(A∩B(a,R)) <= N_{r/3}(A∩B(a,R)).
// With <= 20 candidates every term is computed exactly by the oracles;
// otherwise only the right inequality is checked, with the greedy packing
// against the cell cover.
SandwichReport verify_cover_pack_sandwich(const PointSet& points, const std::vector<SandwichSample>& samples);

}  // namespace badic
