#include "badic/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "badic/error.hpp"
#include "badic/random.hpp"

namespace badic {

namespace {

constexpr const char* kFamilyNames[] = {"digit-cantor", "full-cube",   "lattice-window",  "integer-cantor",
                                        "one-over-k",   "prop5-union", "random-branching"};

void check_digits(const std::vector<unsigned>& digits, int base, const char* what) {
  if (digits.empty()) throw DomainError(std::string(what) + " digit set is empty");
  std::vector<unsigned> sorted = digits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError(std::string(what) + " digit set has repeats");
  if (sorted.back() >= static_cast<unsigned>(base)) throw DomainError(std::string(what) + " digit >= base");
}

// All d-tuples over `digits`.
std::vector<std::vector<unsigned>> tuples(const std::vector<unsigned>& digits, int dim) {
  std::vector<std::vector<unsigned>> out{{}};
  for (int i = 0; i < dim; ++i) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& t : out)
      for (unsigned d : digits) {
        auto u = t;
        u.push_back(d);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<unsigned> all_digits(int base) {
  std::vector<unsigned> d(static_cast<std::size_t>(base));
  for (int i = 0; i < base; ++i) d[static_cast<std::size_t>(i)] = static_cast<unsigned>(i);
  return d;
}

// `levels` digit-restricted levels above a corner chain of `frac` levels.
CubeTree integer_window_tree(int base, int dim, const std::vector<unsigned>& digits, int levels, int frac) {
  TreeBuilder b(base, dim);
  const std::vector<std::uint32_t> zeros(static_cast<std::size_t>(frac), 0);
  NodeId cur = b.chain(zeros);
  BadicCube probe(base, dim);
  std::vector<std::uint32_t> codes;
  for (const auto& t : tuples(digits, dim)) codes.push_back(probe.encode(t));
  std::sort(codes.begin(), codes.end());
  for (int h = 0; h < levels; ++h) {
    std::vector<Child> kids;
    for (auto c : codes) kids.push_back({c, cur});
    cur = b.make(std::move(kids));
  }
  return b.finish(levels + frac, cur);
}

void check_window_params(const GeneratorSpec& s) {
  if (s.window_exp < 0) throw DomainError("window exponent must be >= 0");
  if (s.frac < 0) throw DomainError("frac must be >= 0");
  if (s.windows < 1) throw DomainError("windows must be >= 1");
  if (s.window_exp + s.windows + 1 > 40 || s.window_exp + s.windows + s.frac > 60)
    throw DomainError("window parameters exceed the lattice range");
}

std::vector<Window> integer_cantor_windows(const GeneratorSpec& s, int shift) {
  std::vector<Window> out;
  for (int j = 0; j < s.windows; ++j) {
    const int m = s.window_exp + j;
    std::vector<std::int64_t> offset(static_cast<std::size_t>(s.dim), 0);
    offset[0] = (j + shift) * lattice_pow(s.base, m + 1);
    out.push_back(Window{std::move(offset), m, integer_window_tree(s.base, s.dim, s.int_digits, m, s.frac)});
  }
  return out;
}

void check_tree_params(const GeneratorSpec& s) {
  if (s.depth < 0 || s.depth > 60) throw DomainError("depth must lie in [0, 60]");
}

}  // namespace

std::string to_string(Family f) { return kFamilyNames[static_cast<int>(f)]; }

Family parse_family(std::string_view name) {
  for (int i = 0; i < 7; ++i)
    if (name == kFamilyNames[i]) return static_cast<Family>(i);
  throw DomainError("unknown generator family '" + std::string(name) + "'");
}

double digit_dimension(std::size_t digit_count, int base) {
  return std::log(static_cast<double>(digit_count)) / std::log(static_cast<double>(base));
}

CubeTree random_branching_tree(int base, int dim, int depth, std::uint32_t max_children, std::uint64_t seed) {
  BadicCube probe(base, dim);
  if (max_children < 1 || max_children > probe.arity()) throw DomainError("max_children must lie in [1, b^d]");
  if (depth < 0) throw DomainError("depth must be >= 0");
  Rng rng(seed);
  TreeBuilder b(base, dim);
  std::function<NodeId(int)> grow = [&](int height) -> NodeId {
    if (height == 0) return kLeaf;
    const auto n = static_cast<std::uint32_t>(1 + rng.below(max_children));
    std::vector<Child> kids;
    for (auto code : rng.subset(probe.arity(), n)) kids.push_back({code, grow(height - 1)});
    return b.make(std::move(kids));
  };
  return b.finish(depth, grow(depth));
}

SetData generate(const GeneratorSpec& s) {
  if (s.base < 2 || s.base > kMaxBase) throw DomainError("base must lie in [2, 36]");
  if (s.dim < 1 || s.dim > 8) throw DomainError("dimension must lie in [1, 8]");
  switch (s.family) {
    case Family::DigitCantor:
      check_tree_params(s);
      check_digits(s.digits, s.base, "cantor");
      return tree_from_digit_rule(s.base, s.dim, s.depth, tuples(s.digits, s.dim));
    case Family::FullCube:
      check_tree_params(s);
      return full_tree(s.base, s.dim, s.depth);
    case Family::LatticeWindow: {
      check_window_params(s);
      std::vector<Window> w;
      w.push_back(Window{std::vector<std::int64_t>(static_cast<std::size_t>(s.dim), 0), s.window_exp,
                         integer_window_tree(s.base, s.dim, all_digits(s.base), s.window_exp, s.frac)});
      return WindowedSet(s.base, s.dim, std::move(w));
    }
    case Family::IntegerCantor:
      check_window_params(s);
      check_digits(s.int_digits, s.base, "integer");
      return WindowedSet(s.base, s.dim, integer_cantor_windows(s, 0));
    case Family::OneOverK: {
      if (s.base != 2 || s.dim != 1) throw DomainError("one-over-k is defined for base 2, d = 1");
      check_tree_params(s);
      if (s.count < 1) throw DomainError("one-over-k needs K >= 1");
      const auto cells = static_cast<std::uint64_t>(lattice_pow(2, s.depth));
      std::vector<std::uint64_t> idx;
      for (std::uint64_t k = 1; k <= s.count; ++k) idx.push_back(std::min(cells / k, cells - 1));
      std::sort(idx.begin(), idx.end());
      idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
      std::vector<BadicCube> leaves;
      for (auto i : idx) {
        std::vector<unsigned> ds(static_cast<std::size_t>(s.depth));
        for (int l = s.depth - 1; l >= 0; --l, i >>= 1) ds[static_cast<std::size_t>(l)] = static_cast<unsigned>(i & 1);
        leaves.push_back(BadicCube::from_digits(2, {ds}));
      }
      return tree_from_leaves(2, 1, s.depth, std::move(leaves));
    }
    case Family::Prop5Union: {
      check_window_params(s);
      check_digits(s.digits, s.base, "cantor");
      check_digits(s.int_digits, s.base, "integer");
      if (s.frac < 1) throw DomainError("prop5-union needs frac >= 1");
      std::vector<Window> w;
      w.push_back(Window{std::vector<std::int64_t>(static_cast<std::size_t>(s.dim), 0), 0,
                         tree_from_digit_rule(s.base, s.dim, s.frac, tuples(s.digits, s.dim))});
      for (auto& iw : integer_cantor_windows(s, 1)) w.push_back(std::move(iw));
      return WindowedSet(s.base, s.dim, std::move(w));
    }
    case Family::RandomBranching:
      check_tree_params(s);
      return random_branching_tree(s.base, s.dim, s.depth, s.max_children, s.seed);
  }
  throw DomainError("unknown generator family");
}

}  // namespace badic
