#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace badic {

enum class Suite { HStar, PackingSandwich, PruneBound, BallCube };

std::string to_string(Suite s);
Suite parse_suite(std::string_view name);

struct SuiteResult {
  Suite suite = Suite::HStar;
  std::uint64_t checks = 0;
  std::vector<std::string> violations;  // one line per failed check
  bool ok() const { return violations.empty(); }
  // "suite=<name> checks=<n> violations=<v>"
  std::string summary() const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int samples = 0;  // 0: the suite's default size
};

// h-star: h_star against the flat-enumeration oracle on every generator
//   family, witness re-evaluation, submultiplicativity, monotonicity under
//   pruning and worker-count independence.
// packing-sandwich: the cover/pack sandwich with exact oracles on Cantor and
//   random point sets of <= 20 points, plus greedy packing within
//   [exact / 2^d, exact].
// prune-bound: greedy prune on random-branching trees for every admissible
//   N: leaf count >= ⌈N^n M^(-n eps)⌉, child cap, containment.
// lemma21: ball cover counts against H* at matched scales on digit-rule
//   trees, within a factor 6^d either way.
SuiteResult run_suite(Suite suite, const SuiteOptions& options);

}  // namespace badic
