#pragma once

#include <cstdint>
#include <vector>

#include "badic/tree.hpp"

namespace badic {

// A cube tree placed at [offset, offset + b^m)^d. The tree's leaf cubes have
// side b^(m - depth).
struct Window {
  std::vector<std::int64_t> offset;
  int side_exp = 0;
  CubeTree tree;

  int leaf_exp() const { return side_exp - tree.depth(); }
  std::int64_t distance() const;  // sup-norm of the offset
};

// Finite union of far-apart windows modeling an unbounded set E ⊂ R^d.
// Invariants (checked on construction): every offset coordinate is a
// multiple of b^m, footprints are pairwise disjoint, all windows share one
// leaf exponent, and windows are sorted by distance of offset from the origin
// (ties by offset).
class WindowedSet {
 public:
  WindowedSet(int base, int dim, std::vector<Window> windows);
  static WindowedSet from_tree(const CubeTree& tree);

  int base() const noexcept { return base_; }
  int dim() const noexcept { return dim_; }
  const std::vector<Window>& windows() const noexcept { return windows_; }
  int leaf_exp() const { return windows_.front().leaf_exp(); }
  int max_side_exp() const;

 private:
  int base_;
  int dim_;
  std::vector<Window> windows_;
};

// A b-adic cube of side b^exp anywhere on the lattice: Π [idx_i b^e, (idx_i+1) b^e).
struct GlobalCube {
  int exp = 0;
  std::vector<std::int64_t> index;
  std::string to_string() const;
};

// b^e as an exact integer when e >= 0.
std::int64_t lattice_pow(int base, int exp);
// floor(v / b^e) for e >= 0, v * b^-e for e < 0.
std::int64_t lattice_div(std::int64_t v, int base, int exp);

}  // namespace badic
