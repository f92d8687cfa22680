#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "badic/io.hpp"

namespace badic {

enum class Family { DigitCantor, FullCube, LatticeWindow, IntegerCantor, OneOverK, Prop5Union, RandomBranching };

std::string to_string(Family f);
Family parse_family(std::string_view name);

struct GeneratorSpec {
  Family family = Family::DigitCantor;
  int base = 2;
  int dim = 1;
  int depth = 0;                      // tree families
  std::vector<unsigned> digits;       // digit-cantor; local part of prop5-union
  std::vector<unsigned> int_digits;   // integer-cantor; global part of prop5-union
  int window_exp = 0;                 // m: side exponent of the first integer window
  int windows = 1;
  int frac = 0;                       // sub-unit levels of windowed families
  std::uint64_t count = 0;            // one-over-k: K
  std::uint32_t max_children = 0;     // random-branching
  std::uint64_t seed = 0;
};

// digit-cantor    base, dim, depth, digits (applied to every coordinate)
// full-cube       base, dim, depth
// lattice-window  base, dim, window_exp, frac: every unit cell of [0, b^m)^d,
//                 each refined by its corner chain down to b^-frac
// integer-cantor  base, dim, int_digits, window_exp, windows, frac: window j
//                 has side b^(m+j), sits at (j b^(m+j+1), 0, ...) and holds the
//                 integers whose base-b digits lie in int_digits
// one-over-k      count, depth (base 2, d = 1): the cubes holding 1/k, k <= K
// prop5-union     base, dim, digits, int_digits, window_exp, windows, frac:
//                 digit-cantor in [0,1)^d plus integer-cantor windows shifted
//                 one slot outward
// random-branching base, dim, depth, max_children, seed
SetData generate(const GeneratorSpec& spec);

// Every internal node keeps a uniform number in [1, max_children] of
// uniformly chosen children.
CubeTree random_branching_tree(int base, int dim, int depth, std::uint32_t max_children, std::uint64_t seed);

// Finite-scale values the families are built to realize: log |digits| / log b.
double digit_dimension(std::size_t digit_count, int base);

}  // namespace badic
