#include "badic/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "badic/error.hpp"
#include "badic/oracles.hpp"

namespace badic {

std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::StarLocal: return "star-local";
    case ReportKind::StarGlobal: return "star-global";
    case ReportKind::AssouadBall: return "assouad-ball";
    case ReportKind::LowerCover: return "lower-cover";
    case ReportKind::LowerPack: return "lower-pack";
  }
  return "?";
}

ReportKind parse_report_kind(std::string_view name) {
  for (auto k : {ReportKind::StarLocal, ReportKind::StarGlobal, ReportKind::AssouadBall, ReportKind::LowerCover,
                 ReportKind::LowerPack})
    if (to_string(k) == name) return k;
  throw DomainError("unknown estimator kind '" + std::string(name) + "'");
}

std::string format_ratio(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double log_ratio(std::uint64_t count, int k, int base) {
  if (count == 0 || k == 0) return 0.0;
  return std::log(static_cast<double>(count)) / (k * std::log(static_cast<double>(base)));
}

double DimensionReport::headline() const {
  if (records.empty()) throw DomainError("empty report");
  return records.back().log_ratio;
}

double DimensionReport::envelope_min() const {
  if (records.empty()) throw DomainError("empty report");
  double v = records.front().log_ratio;
  for (const auto& r : records) v = std::min(v, r.log_ratio);
  return v;
}

double DimensionReport::envelope_max() const {
  if (records.empty()) throw DomainError("empty report");
  double v = records.front().log_ratio;
  for (const auto& r : records) v = std::max(v, r.log_ratio);
  return v;
}

std::string DimensionReport::to_tsv() const {
  std::ostringstream os;
  os << "k\tcount\tlogratio\twitness\n";
  for (const auto& r : records)
    os << r.k << '\t' << r.count << '\t' << format_ratio(r.log_ratio) << '\t' << r.witness << '\n';
  return os.str();
}

std::string DimensionReport::headline_line() const {
  return "estimate=" + format_ratio(headline()) + " kind=" + to_string(kind) + " depth=" + std::to_string(depth());
}

namespace {

void check_k(int k, int levels) {
  if (k < 1 || k > levels) throw DomainError("k exceeds available resolution");
}

// Candidates in (level, lexicographic) order; each worker reduces one
// contiguous slice and slices are merged in order, so the winner does not
// depend on the worker count.
template <class Better>
TreeExtremum tree_extremum(const CubeTree& tree, int k, int workers, Better better) {
  check_k(k, tree.depth());
  const auto index = index_nodes(tree);
  std::vector<const IndexedNode*> cands;
  for (int level = 0; level + k <= tree.depth(); ++level)
    for (const auto& n : index[static_cast<std::size_t>(level)]) cands.push_back(&n);

  struct Best {
    bool have = false;
    std::uint64_t count = 0;
    const IndexedNode* node = nullptr;
  };
  auto scan = [&](std::size_t lo, std::size_t hi) {
    Best b;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto c = tree.node(cands[i]->id).profile[static_cast<std::size_t>(k)];
      if (!b.have || better(c, b.count)) b = {true, c, cands[i]};
    }
    return b;
  };

  const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, cands.size());
  std::vector<Best> parts(w);
  if (w == 1) {
    parts[0] = scan(0, cands.size());
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < w; ++t) {
      const std::size_t lo = cands.size() * t / w, hi = cands.size() * (t + 1) / w;
      threads.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
    }
    for (auto& th : threads) th.join();
  }
  Best total;
  for (const auto& p : parts)
    if (p.have && (!total.have || better(p.count, total.count))) total = p;
  return {total.count, total.node->cube};
}

}  // namespace

std::uint64_t count_hit_subcubes(const CubeTree& tree, const BadicCube& q, int k) {
  if (k < 1 || q.level() + k > tree.depth()) throw DomainError("k exceeds available resolution");
  const auto id = tree.find(q);
  if (!id) return 0;
  return tree.node(*id).profile[static_cast<std::size_t>(k)];
}

TreeExtremum h_star(const CubeTree& tree, int k, int workers) {
  return tree_extremum(tree, k, workers, [](std::uint64_t a, std::uint64_t b) { return a > b; });
}

TreeExtremum h_lower(const CubeTree& tree, int k, int workers) {
  return tree_extremum(tree, k, workers, [](std::uint64_t a, std::uint64_t b) { return a < b; });
}

namespace {

std::uint64_t window_contribution(const Window& w, int k, int e) {
  const int j = k - (e - w.side_exp);
  if (j <= 0) return 1;
  return w.tree.node(w.tree.root()).profile[static_cast<std::size_t>(j)];
}

std::vector<std::int64_t> cube_index(const Window& w, const BadicCube& cube, int base, int e) {
  std::vector<std::int64_t> idx;
  for (std::size_t i = 0; i < w.offset.size(); ++i)
    idx.push_back(lattice_div(w.offset[i], base, e) + static_cast<std::int64_t>(cube.corner(static_cast<int>(i))));
  return idx;
}

}  // namespace

GlobalExtremum h_star(const WindowedSet& set, int k, bool global) {
  const int e_min = set.leaf_exp() + k;
  const int e_max = global ? set.max_side_exp() : 0;
  if (k < 1 || e_min > e_max) throw DomainError("k exceeds available resolution");

  bool have = false;
  GlobalExtremum best;
  auto consider = [&](std::uint64_t count, int exp, const std::vector<std::int64_t>& index) {
    const bool win = !have || count > best.count ||
                     (count == best.count &&
                      (exp < best.witness.exp || (exp == best.witness.exp && index < best.witness.index)));
    if (win) {
      best = {count, GlobalCube{exp, index}};
      have = true;
    }
  };

  // Cubes inside a single window.
  for (const auto& w : set.windows()) {
    const int hi = std::min(e_max, w.side_exp);
    if (hi < e_min) continue;
    const auto index = index_nodes(w.tree);
    for (int e = e_min; e <= hi; ++e) {
      const int level = w.side_exp - e;
      for (const auto& n : index[static_cast<std::size_t>(level)]) {
        const auto c = w.tree.node(n.id).profile[static_cast<std::size_t>(k)];
        if (have && c < best.count) continue;
        consider(c, e, cube_index(w, n.cube, set.base(), e));
      }
    }
  }
  // Cubes holding one or more whole windows.
  for (int e = e_min; e <= e_max; ++e) {
    std::map<std::vector<std::int64_t>, std::uint64_t> groups;
    for (const auto& w : set.windows()) {
      if (w.side_exp >= e) continue;
      std::vector<std::int64_t> idx;
      for (auto o : w.offset) idx.push_back(lattice_div(o, set.base(), e));
      groups[idx] += window_contribution(w, k, e);
    }
    for (const auto& [idx, c] : groups) consider(c, e, idx);
  }
  return best;
}

std::uint64_t count_hit_subcubes(const WindowedSet& set, const GlobalCube& q, int k) {
  if (k < 1 || q.exp - k < set.leaf_exp()) throw DomainError("k exceeds available resolution");
  if (q.index.size() != static_cast<std::size_t>(set.dim())) throw DomainError("cube dimension mismatch");
  std::uint64_t total = 0;
  for (const auto& w : set.windows()) {
    if (w.side_exp >= q.exp) {
      const int level = w.side_exp - q.exp;
      const std::int64_t span = lattice_pow(set.base(), level);
      std::vector<std::vector<unsigned>> digits;
      bool inside = true;
      for (std::size_t i = 0; i < q.index.size() && inside; ++i) {
        std::int64_t rel = q.index[i] - lattice_div(w.offset[i], set.base(), q.exp);
        if (rel < 0 || rel >= span) {
          inside = false;
          break;
        }
        std::vector<unsigned> ds(static_cast<std::size_t>(level));
        for (int l = level - 1; l >= 0; --l) {
          ds[static_cast<std::size_t>(l)] = static_cast<unsigned>(rel % set.base());
          rel /= set.base();
        }
        digits.push_back(std::move(ds));
      }
      if (!inside) continue;
      const auto cube = BadicCube::from_digits(set.base(), digits);
      if (const auto id = w.tree.find(cube)) total += w.tree.node(*id).profile[static_cast<std::size_t>(k)];
    } else {
      bool inside = true;
      for (std::size_t i = 0; i < q.index.size(); ++i)
        if (lattice_div(w.offset[i], set.base(), q.exp) != q.index[i]) inside = false;
      if (inside) total += window_contribution(w, k, q.exp);
    }
  }
  return total;
}

DimensionReport star_dimension_report(const CubeTree& tree, int k_max, int workers) {
  check_k(k_max, tree.depth());
  DimensionReport rep{ReportKind::StarLocal, tree.base(), {}};
  for (int k = 1; k <= k_max; ++k) {
    auto ex = h_star(tree, k, workers);
    ScaleRecord r;
    r.k = k;
    r.count = ex.count;
    r.log_ratio = log_ratio(ex.count, k, tree.base());
    r.witness = ex.witness.to_string();
    r.cube = ex.witness;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

int default_k_max(const WindowedSet& set, bool global) {
  if (global && set.max_side_exp() > 0) return set.max_side_exp();
  return -set.leaf_exp();
}

DimensionReport star_dimension_report(const WindowedSet& set, bool global, int k_max) {
  if (k_max < 1 || k_max > (global ? set.max_side_exp() : 0) - set.leaf_exp()) throw DomainError("k exceeds available resolution");
  DimensionReport rep{global ? ReportKind::StarGlobal : ReportKind::StarLocal, set.base(), {}};
  for (int k = 1; k <= k_max; ++k) {
    auto ex = h_star(set, k, global);
    ScaleRecord r;
    r.k = k;
    r.count = ex.count;
    r.log_ratio = log_ratio(ex.count, k, set.base());
    r.witness = ex.witness.to_string();
    r.global = ex.witness;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

DimensionReport lower_dimension_report(const CubeTree& tree, int k_max, int workers) {
  check_k(k_max, tree.depth());
  DimensionReport rep{ReportKind::LowerCover, tree.base(), {}};
  for (int k = 1; k <= k_max; ++k) {
    auto ex = h_lower(tree, k, workers);
    ScaleRecord r;
    r.k = k;
    r.count = ex.count;
    r.log_ratio = log_ratio(ex.count, k, tree.base());
    r.witness = ex.witness.to_string();
    r.cube = ex.witness;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

namespace {

void check_radii(const Rational& R, const Rational& r) {
  if (!(Rational(0) < r) || !(r < R)) throw DomainError("radii must satisfy 0 < r < R");
}

// Smallest j with b^-j <= r.
int cell_level(int base, const Rational& r) {
  int j = 0;
  auto side = [&](int e) { return e >= 0 ? Rational(1, lattice_pow(base, e)) : Rational(lattice_pow(base, -e)); };
  if (side(0) <= r) {
    while (j > -40 && side(j - 1) <= r) --j;
  } else {
    while (side(j) > r) ++j;
  }
  return j;
}

}  // namespace

std::uint64_t ball_cover_count(const PointSet& points, const Point& center, const Rational& R, const Rational& r) {
  check_radii(R, r);
  const int j = cell_level(points.base(), r);
  std::set<std::vector<std::int64_t>> cells;
  std::uint64_t fine = 0;
  for (const auto& p : points.points()) {
    if (!in_open_ball(points, center, R, p)) continue;
    if (j > points.precision()) {
      ++fine;
      continue;
    }
    const int shift = points.precision() - j;
    std::vector<std::int64_t> cell;
    for (auto c : p.coords) cell.push_back(shift > 40 ? 0 : c / lattice_pow(points.base(), shift));
    cells.insert(std::move(cell));
  }
  return fine + cells.size();
}

std::vector<std::size_t> greedy_packing(const PointSet& points, const Point& center, const Rational& R,
                                        const Rational& r) {
  check_radii(R, r);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!in_open_ball(points, center, R, points[i])) continue;
    bool ok = true;
    for (auto c : chosen)
      if (!balls_disjoint(points, points[c], points[i], r)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(i);
  }
  return chosen;
}

std::uint64_t packing_count(const PointSet& points, const Point& center, const Rational& R, const Rational& r) {
  return greedy_packing(points, center, R, r).size();
}

namespace {

template <class Count, class Better>
DimensionReport ball_report(ReportKind kind, const PointSet& points, int k_max, const Rational& R, Count count,
                            Better better) {
  if (points.size() == 0) throw DomainError("empty point set");
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  DimensionReport rep{kind, points.base(), {}};
  for (int k = 1; k <= k_max; ++k) {
    if (k > 40) throw DomainError("k exceeds available resolution");
    const Rational r(1, lattice_pow(points.base(), k));
    check_radii(R, r);
    std::uint64_t best = 0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = count(points, points[i], R, r);
      if (i == 0 || better(c, best)) {
        best = c;
        arg = i;
      }
    }
    ScaleRecord rec;
    rec.k = k;
    rec.count = best;
    rec.log_ratio = std::log(static_cast<double>(best)) / std::log(R.to_double() / r.to_double());
    rec.witness = "center=" + points.format(points[arg]) + " R=" + R.to_string() + " r=" + r.to_string();
    rec.center = arg;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace

DimensionReport assouad_ball_report(const PointSet& points, int k_max, const Rational& R) {
  return ball_report(ReportKind::AssouadBall, points, k_max, R, ball_cover_count,
                     [](std::uint64_t a, std::uint64_t b) { return a > b; });
}

DimensionReport lower_pack_report(const PointSet& points, int k_max, const Rational& R) {
  return ball_report(ReportKind::LowerPack, points, k_max, R, packing_count,
                     [](std::uint64_t a, std::uint64_t b) { return a < b; });
}

std::size_t SandwichReport::violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.ok(); }));
}

std::string SandwichReport::to_tsv() const {
  std::ostringstream os;
  os << "center\tR\tr\tcover2r\tpack\tcover_r3\texact\tok\n";
  for (const auto& row : rows)
    os << row.sample.center << '\t' << row.sample.R.to_string() << '\t' << row.sample.r.to_string() << '\t'
       << row.cover_2r_half << '\t' << row.pack_r << '\t' << row.cover_r3 << '\t' << (row.exact ? 1 : 0) << '\t'
       << (row.ok() ? 1 : 0) << '\n';
  return os.str();
}

SandwichReport verify_cover_pack_sandwich(const PointSet& points, const std::vector<SandwichSample>& samples) {
  SandwichReport rep;
  for (const auto& s : samples) {
    if (s.center >= points.size()) throw DomainError("sample center out of range");
    check_radii(s.R, s.r);
    const Point& a = points[s.center];
    std::vector<std::size_t> in_big, in_half;
    const Rational half = s.R / Rational(2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (in_open_ball(points, a, s.R, points[i])) in_big.push_back(i);
      if (in_open_ball(points, a, half, points[i])) in_half.push_back(i);
    }
    SandwichRow row{s};
    if (in_big.size() <= oracle::kMaxCandidates) {
      row.exact = true;
      row.cover_2r_half = oracle::exact_cover(points, in_half, s.r * Rational(2));
      row.pack_r = oracle::exact_packing(points, a, s.R, s.r);
      row.cover_r3 = oracle::exact_cover(points, in_big, s.r / Rational(3));
      row.left_ok = row.cover_2r_half <= row.pack_r;
    } else {
      row.pack_r = packing_count(points, a, s.R, s.r);
      row.cover_r3 = ball_cover_count(points, a, s.R, s.r / Rational(3));
    }
    row.right_ok = row.pack_r <= row.cover_r3;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace badic
