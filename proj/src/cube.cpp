#include "badic/cube.hpp"

#include "badic/error.hpp"

namespace badic {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) throw DomainError("integer power overflows 64 bits");
    out *= base;
  }
  return out;
}

char digit_char(unsigned digit) {
  return static_cast<char>(digit < 10 ? '0' + digit : 'a' + (digit - 10));
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

namespace {

std::uint32_t arity_of(int base, int dim) {
  if (base < 2 || base > kMaxBase) throw DomainError("base must lie in [2, 36]");
  if (dim < 1) throw DomainError("dimension must be >= 1");
  std::uint64_t a = ipow(static_cast<std::uint64_t>(base), static_cast<unsigned>(dim));
  if (a > (1u << 24)) throw DomainError("child alphabet b^d too large");
  return static_cast<std::uint32_t>(a);
}

}  // namespace

BadicCube::BadicCube(int base, int dim) : base_(base), dim_(dim), arity_(arity_of(base, dim)) {}

BadicCube::BadicCube(int base, int dim, std::vector<std::uint32_t> path)
    : base_(base), dim_(dim), arity_(arity_of(base, dim)), path_(std::move(path)) {
  for (auto code : path_)
    if (code >= arity_) throw DomainError("child code out of range");
}

BadicCube BadicCube::from_digits(int base, const std::vector<std::vector<unsigned>>& coords) {
  BadicCube cube(base, static_cast<int>(coords.size()));
  const std::size_t n = coords.empty() ? 0 : coords.front().size();
  for (const auto& c : coords)
    if (c.size() != n) throw DomainError("coordinate digit strings differ in length");
  std::vector<unsigned> digits(coords.size());
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i][l] >= static_cast<unsigned>(base)) throw DomainError("digit >= base");
      digits[i] = coords[i][l];
    }
    cube.path_.push_back(cube.encode(digits));
  }
  return cube;
}

BadicCube BadicCube::parse(int base, int dim, std::string_view text) {
  std::vector<std::vector<unsigned>> coords;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    auto field = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    std::vector<unsigned> digits;
    for (char c : field) {
      int v = digit_value(c);
      if (v < 0 || v >= base) throw DomainError(std::string("invalid digit '") + c + "'");
      digits.push_back(static_cast<unsigned>(v));
    }
    coords.push_back(std::move(digits));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(coords.size()) != dim)
    throw DomainError("expected " + std::to_string(dim) + " coordinates");
  return from_digits(base, coords);
}

std::uint32_t BadicCube::encode(const std::vector<unsigned>& digits) const {
  std::uint32_t code = 0;
  for (unsigned d : digits) code = code * static_cast<std::uint32_t>(base_) + d;
  return code;
}

std::vector<unsigned> BadicCube::decode(std::uint32_t code) const {
  std::vector<unsigned> digits(static_cast<std::size_t>(dim_));
  for (int i = dim_ - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = code % static_cast<std::uint32_t>(base_);
    code /= static_cast<std::uint32_t>(base_);
  }
  return digits;
}

unsigned BadicCube::digit(int coord, int lvl) const {
  std::uint32_t code = path_.at(static_cast<std::size_t>(lvl));
  for (int i = dim_ - 1; i > coord; --i) code /= static_cast<std::uint32_t>(base_);
  return code % static_cast<std::uint32_t>(base_);
}

std::uint64_t BadicCube::corner(int coord) const {
  std::uint64_t v = 0;
  for (int l = 0; l < level(); ++l) v = v * static_cast<std::uint64_t>(base_) + digit(coord, l);
  return v;
}

BadicCube BadicCube::child(std::uint32_t code) const {
  if (code >= arity_) throw DomainError("child code out of range");
  BadicCube c = *this;
  c.path_.push_back(code);
  return c;
}

BadicCube BadicCube::parent() const {
  if (path_.empty()) throw DomainError("root has no parent");
  BadicCube p = *this;
  p.path_.pop_back();
  return p;
}

BadicCube BadicCube::prefix(int lvl) const {
  BadicCube p(base_, dim_);
  p.path_.assign(path_.begin(), path_.begin() + lvl);
  return p;
}

bool BadicCube::is_ancestor_of(const BadicCube& other) const {
  if (other.base_ != base_ || other.dim_ != dim_ || other.path_.size() < path_.size()) return false;
  for (std::size_t i = 0; i < path_.size(); ++i)
    if (path_[i] != other.path_[i]) return false;
  return true;
}

std::string BadicCube::to_string() const {
  if (path_.empty()) return "root";
  std::string out;
  for (int i = 0; i < dim_; ++i) {
    if (i) out.push_back(',');
    for (int l = 0; l < level(); ++l) out.push_back(digit_char(digit(i, l)));
  }
  return out;
}

std::vector<BadicCube> subdivide(const BadicCube& cube) {
  std::vector<BadicCube> out;
  out.reserve(cube.arity());
  for (std::uint32_t c = 0; c < cube.arity(); ++c) out.push_back(cube.child(c));
  return out;
}

}  // namespace badic
