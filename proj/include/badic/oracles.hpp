#pragma once

#include <cstdint>
#include <vector>

#include "badic/cube.hpp"
#include "badic/points.hpp"
#include "badic/tree.hpp"
#include "badic/windowed.hpp"

// Brute-force reference implementations. They share no code path with the
// estimators they check, and refuse oversized inputs rather than falling back.
namespace badic::oracle {

inline constexpr std::size_t kMaxCandidates = 20;
inline constexpr std::uint64_t kMaxLeaves = 1u << 20;

// True maximum number of disjoint open r-balls centred in A ∩ B(center, R).
std::uint64_t exact_packing(const PointSet& points, const Point& center, const Rational& R, const Rational& r);

// Minimum number of open rho-balls (any centres) covering the given points.
std::uint64_t exact_cover(const PointSet& points, const std::vector<std::size_t>& subset, const Rational& rho);

struct HStar {
  std::uint64_t count = 0;
  std::vector<std::uint32_t> witness;  // path codes
};

// H*_{b^k} by flat enumeration of (ancestor, descendant) pairs over all leaves.
HStar exact_hstar(const CubeTree& tree, int k);

// Windowed H* from the leaves' lattice indices, bucketed at every side
// exponent in range (local: up to 0, global: up to the largest window).
std::uint64_t exact_hstar(const WindowedSet& set, int k, bool global);

}  // namespace badic::oracle
