#include "badic/windowed.hpp"

#include <algorithm>
#include <cstdlib>

#include "badic/error.hpp"

namespace badic {

std::int64_t lattice_pow(int base, int exp) {
  if (exp < 0) throw DomainError("negative lattice exponent");
  auto v = ipow(static_cast<std::uint64_t>(base), static_cast<unsigned>(exp));
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("offset overflow beyond 64-bit lattice");
  return static_cast<std::int64_t>(v);
}

std::int64_t lattice_div(std::int64_t v, int base, int exp) {
  if (exp >= 0) {
    const auto p = lattice_pow(base, exp);
    std::int64_t q = v / p;
    if ((v % p != 0) && (v < 0)) --q;
    return q;
  }
  const auto p = lattice_pow(base, -exp);
  if (v != 0 && std::llabs(v) > INT64_MAX / p) throw DomainError("offset overflow beyond 64-bit lattice");
  return v * p;
}

std::int64_t Window::distance() const {
  std::int64_t d = 0;
  for (auto o : offset) d = std::max(d, static_cast<std::int64_t>(std::llabs(o)));
  return d;
}

std::string GlobalCube::to_string() const {
  std::string out = "e=" + std::to_string(exp) + "@";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(index[i]);
  }
  return out;
}

WindowedSet::WindowedSet(int base, int dim, std::vector<Window> windows)
    : base_(base), dim_(dim), windows_(std::move(windows)) {
  if (windows_.empty()) throw DomainError("windowed set needs at least one window");
  for (const auto& w : windows_) {
    if (w.tree.base() != base || w.tree.dim() != dim) throw DomainError("window tree base/dimension mismatch");
    if (static_cast<int>(w.offset.size()) != dim) throw DomainError("window offset has wrong dimension");
    if (w.side_exp < 0) throw DomainError("window side exponent must be >= 0");
    const auto side = lattice_pow(base, w.side_exp);
    for (auto o : w.offset) {
      if (o % side != 0) throw DomainError("window offset is not a multiple of b^m");
      if (o > INT64_MAX - side) throw DomainError("offset overflow beyond 64-bit lattice");
    }
    if (w.leaf_exp() != windows_.front().leaf_exp()) throw DomainError("windows have different leaf resolutions");
  }
  std::stable_sort(windows_.begin(), windows_.end(), [](const Window& a, const Window& b) {
    if (a.distance() != b.distance()) return a.distance() < b.distance();
    return a.offset < b.offset;
  });
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    for (std::size_t j = i + 1; j < windows_.size(); ++j) {
      const auto& a = windows_[i];
      const auto& b = windows_[j];
      const auto sa = lattice_pow(base, a.side_exp);
      const auto sb = lattice_pow(base, b.side_exp);
      bool overlap = true;
      for (int k = 0; k < dim; ++k) {
        const auto ak = a.offset[static_cast<std::size_t>(k)];
        const auto bk = b.offset[static_cast<std::size_t>(k)];
        if (ak + sa <= bk || bk + sb <= ak) overlap = false;
      }
      if (overlap) throw DomainError("window footprints overlap");
    }
  }
}

WindowedSet WindowedSet::from_tree(const CubeTree& tree) {
  return WindowedSet(tree.base(), tree.dim(),
                     {Window{std::vector<std::int64_t>(static_cast<std::size_t>(tree.dim()), 0), 0, tree}});
}

int WindowedSet::max_side_exp() const {
  int m = 0;
  for (const auto& w : windows_) m = std::max(m, w.side_exp);
  return m;
}

}  // namespace badic
