#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace badic {

inline constexpr int kMaxBase = 36;

// Checked integer power; throws DomainError on uint64 overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

// Digit glyphs 0-9 then a-z.
char digit_char(unsigned digit);
int digit_value(char c);  // -1 if not a glyph

// A level-n b-adic cube in [0,1)^d. Stored as the sequence of child codes
// from the root; the code at each level packs the d coordinate digits with
// the first coordinate most significant, so ascending code order is the
// lexicographic order on digit tuples.
class BadicCube {
 public:
  BadicCube(int base, int dim);
  BadicCube(int base, int dim, std::vector<std::uint32_t> path);

  // Build from d digit strings of equal length.
  static BadicCube from_digits(int base, const std::vector<std::vector<unsigned>>& coords);
  // Parse "02,21" (d comma-separated digit strings).
  static BadicCube parse(int base, int dim, std::string_view text);

  int base() const noexcept { return base_; }
  int dim() const noexcept { return dim_; }
  int level() const noexcept { return static_cast<int>(path_.size()); }
  std::uint32_t arity() const noexcept { return arity_; }
  const std::vector<std::uint32_t>& path() const noexcept { return path_; }

  unsigned digit(int coord, int lvl) const;
  // Lower corner of coordinate `coord` as an integer over base^level.
  std::uint64_t corner(int coord) const;

  BadicCube child(std::uint32_t code) const;
  BadicCube parent() const;
  BadicCube prefix(int lvl) const;
  bool is_ancestor_of(const BadicCube& other) const;  // reflexive

  // "02,21"; the root renders as "root".
  std::string to_string() const;

  std::uint32_t encode(const std::vector<unsigned>& digits) const;
  std::vector<unsigned> decode(std::uint32_t code) const;

  friend bool operator==(const BadicCube& a, const BadicCube& b) {
    return a.base_ == b.base_ && a.dim_ == b.dim_ && a.path_ == b.path_;
  }
  friend std::strong_ordering operator<=>(const BadicCube& a, const BadicCube& b) {
    if (auto c = a.path_.size() <=> b.path_.size(); c != 0) return c;
    return a.path_ <=> b.path_;
  }

 private:
  int base_;
  int dim_;
  std::uint32_t arity_;
  std::vector<std::uint32_t> path_;
};

// The b^d children of `cube`, in lexicographic digit order.
std::vector<BadicCube> subdivide(const BadicCube& cube);

}  // namespace badic
