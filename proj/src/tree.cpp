#include "badic/tree.hpp"

#include <algorithm>
#include <set>

#include "badic/error.hpp"

namespace badic {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw DomainError("cube count overflows 64 bits");
  return a + b;
}

}  // namespace

std::size_t NodeStore::KeyHash::operator()(const std::vector<Child>& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
  for (const auto& c : v) {
    h ^= (static_cast<std::uint64_t>(c.code) << 32 | c.node) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

NodeStore::NodeStore() {
  Node leaf;
  leaf.profile = {1};
  nodes_.push_back(std::move(leaf));
}

NodeId NodeStore::make(std::vector<Child> children) {
  if (children.empty()) throw DomainError("internal node without children");
  if (auto it = index_.find(children); it != index_.end()) return it->second;

  Node n;
  n.height = nodes_[children.front().node].height + 1;
  n.profile.assign(n.height + 1, 0);
  n.profile[0] = 1;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i && children[i].code <= children[i - 1].code) throw DomainError("children not strictly ascending");
    const Node& c = nodes_[children[i].node];
    if (c.height + 1 != n.height) throw DomainError("children of unequal height");
    for (std::uint32_t j = 0; j <= c.height; ++j) n.profile[j + 1] = checked_add(n.profile[j + 1], c.profile[j]);
  }
  n.children = children;
  if (nodes_.size() >= UINT32_MAX) throw DomainError("node store exhausted");
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(children), id);
  return id;
}

CubeTree::CubeTree(int base, int dim, int depth, std::shared_ptr<const NodeStore> store, NodeId root)
    : base_(base), dim_(dim), depth_(depth), arity_(BadicCube(base, dim).arity()), store_(std::move(store)),
      root_(root) {
  if (depth < 0) throw DomainError("negative depth");
  if (node(root_).height != static_cast<std::uint32_t>(depth)) throw DomainError("root height differs from depth");
}

std::uint64_t CubeTree::level_count(int k) const {
  if (k < 0 || k > depth_) throw DomainError("level outside tree");
  return node(root_).profile[static_cast<std::size_t>(k)];
}

std::optional<NodeId> CubeTree::find(const BadicCube& cube) const {
  if (cube.base() != base_ || cube.dim() != dim_) throw DomainError("cube base/dimension mismatch");
  if (cube.level() > depth_) return std::nullopt;
  NodeId cur = root_;
  for (auto code : cube.path()) {
    const auto& kids = node(cur).children;
    auto it = std::lower_bound(kids.begin(), kids.end(), code,
                               [](const Child& c, std::uint32_t v) { return c.code < v; });
    if (it == kids.end() || it->code != code) return std::nullopt;
    cur = it->node;
  }
  return cur;
}

void CubeTree::for_each_leaf(const std::function<bool(const BadicCube&)>& fn) const {
  BadicCube cube = root_cube();
  std::vector<std::uint32_t> path;
  bool stop = false;
  std::function<void(NodeId)> walk = [&](NodeId id) {
    if (stop) return;
    const Node& n = node(id);
    if (n.height == 0) {
      if (!fn(BadicCube(base_, dim_, path))) stop = true;
      return;
    }
    for (const auto& c : n.children) {
      path.push_back(c.code);
      walk(c.node);
      path.pop_back();
      if (stop) return;
    }
  };
  walk(root_);
}

std::vector<BadicCube> CubeTree::leaves(std::size_t limit) const {
  std::vector<BadicCube> out;
  for_each_leaf([&](const BadicCube& c) {
    if (out.size() >= limit) return false;
    out.push_back(c);
    return true;
  });
  return out;
}

std::vector<std::vector<IndexedNode>> index_nodes(const CubeTree& tree, const BadicCube& start) {
  auto id = tree.find(start);
  if (!id) throw DomainError("cube " + start.to_string() + " not in tree");
  std::vector<std::vector<IndexedNode>> levels(static_cast<std::size_t>(tree.depth() + 1));
  levels[static_cast<std::size_t>(start.level())].push_back({*id, start});
  for (int l = start.level(); l < tree.depth(); ++l) {
    std::set<NodeId> seen;
    auto& next = levels[static_cast<std::size_t>(l + 1)];
    for (const auto& entry : levels[static_cast<std::size_t>(l)]) {
      for (const auto& c : tree.node(entry.id).children) {
        if (seen.insert(c.node).second) next.push_back({c.node, entry.cube.child(c.code)});
      }
    }
  }
  return levels;
}

std::vector<std::vector<IndexedNode>> index_nodes(const CubeTree& tree) {
  return index_nodes(tree, tree.root_cube());
}

TreeBuilder::TreeBuilder(int base, int dim) : base_(base), dim_(dim), store_(std::make_shared<NodeStore>()) {
  (void)BadicCube(base, dim);  // validates
}

NodeId TreeBuilder::import(const CubeTree& src, NodeId id) {
  if (&src.store() == store_.get()) return id;
  auto& memo = imported_[&src.store()];
  std::function<NodeId(NodeId)> rec = [&](NodeId n) -> NodeId {
    if (n == kLeaf) return kLeaf;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<Child> kids;
    for (const auto& c : src.node(n).children) kids.push_back({c.code, rec(c.node)});
    NodeId out = store_->make(std::move(kids));
    memo.emplace(n, out);
    return out;
  };
  return rec(id);
}

NodeId TreeBuilder::chain(std::span<const std::uint32_t> codes) { return graft(codes, kLeaf); }

NodeId TreeBuilder::graft(std::span<const std::uint32_t> prefix, NodeId below) {
  NodeId cur = below;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) cur = store_->make({{*it, cur}});
  return cur;
}

NodeId TreeBuilder::unite(NodeId a, NodeId b) {
  if (a == b) return a;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | b;
  if (auto it = unions_.find(key); it != unions_.end()) return it->second;
  const auto ka = store_->node(a).children;  // copies: make() may reallocate
  const auto kb = store_->node(b).children;
  if (store_->node(a).height != store_->node(b).height) throw DomainError("union of nodes at unequal height");
  std::vector<Child> merged;
  std::size_t i = 0, j = 0;
  while (i < ka.size() || j < kb.size()) {
    if (j == kb.size() || (i < ka.size() && ka[i].code < kb[j].code)) {
      merged.push_back(ka[i++]);
    } else if (i == ka.size() || kb[j].code < ka[i].code) {
      merged.push_back(kb[j++]);
    } else {
      merged.push_back({ka[i].code, unite(ka[i].node, kb[j].node)});
      ++i;
      ++j;
    }
  }
  NodeId out = store_->make(std::move(merged));
  unions_.emplace(key, out);
  return out;
}

CubeTree TreeBuilder::finish(int depth, NodeId root) const {
  return CubeTree(base_, dim_, depth, store_, root);
}

CubeTree tree_from_digit_rule(int base, int dim, int depth, const std::vector<std::vector<unsigned>>& allowed) {
  if (allowed.empty()) throw DomainError("allowed digit set is empty");
  BadicCube probe(base, dim);
  std::vector<std::uint32_t> codes;
  for (const auto& t : allowed) {
    if (static_cast<int>(t.size()) != dim) throw DomainError("digit tuple has wrong dimension");
    for (unsigned d : t)
      if (d >= static_cast<unsigned>(base)) throw DomainError("digit >= base");
    codes.push_back(probe.encode(t));
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  TreeBuilder b(base, dim);
  NodeId cur = kLeaf;
  for (int h = 0; h < depth; ++h) {
    std::vector<Child> kids;
    for (auto c : codes) kids.push_back({c, cur});
    cur = b.make(std::move(kids));
  }
  return b.finish(depth, cur);
}

CubeTree full_tree(int base, int dim, int depth) {
  std::vector<std::vector<unsigned>> all;
  BadicCube probe(base, dim);
  for (std::uint32_t c = 0; c < probe.arity(); ++c) all.push_back(probe.decode(c));
  return tree_from_digit_rule(base, dim, depth, all);
}

CubeTree tree_from_leaves(int base, int dim, int depth, std::vector<BadicCube> leaves) {
  if (leaves.empty()) throw DomainError("set has no leaves");
  for (const auto& l : leaves) {
    if (l.level() != depth) throw DomainError("leaf " + l.to_string() + " not at depth " + std::to_string(depth));
    if (l.base() != base || l.dim() != dim) throw DomainError("leaf base/dimension mismatch");
  }
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 1; i < leaves.size(); ++i)
    if (leaves[i] == leaves[i - 1]) throw DomainError("duplicate leaf " + leaves[i].to_string());
  TreeBuilder b(base, dim);
  std::function<NodeId(std::size_t, std::size_t, int)> build = [&](std::size_t lo, std::size_t hi, int lvl) {
    if (lvl == depth) return kLeaf;
    std::vector<Child> kids;
    std::size_t i = lo;
    while (i < hi) {
      const auto code = leaves[i].path()[static_cast<std::size_t>(lvl)];
      std::size_t j = i;
      while (j < hi && leaves[j].path()[static_cast<std::size_t>(lvl)] == code) ++j;
      kids.push_back({code, build(i, j, lvl + 1)});
      i = j;
    }
    return b.make(std::move(kids));
  };
  return b.finish(depth, build(0, leaves.size(), 0));
}

CubeTree tree_union(const CubeTree& a, const CubeTree& b) {
  if (a.base() != b.base() || a.dim() != b.dim() || a.depth() != b.depth())
    throw DomainError("union of trees with different base, dimension or depth");
  TreeBuilder builder(a.base(), a.dim());
  NodeId ra = builder.import(a, a.root());
  NodeId rb = builder.import(b, b.root());
  return builder.finish(a.depth(), builder.unite(ra, rb));
}

bool is_subtree(const CubeTree& a, const CubeTree& b) {
  if (a.base() != b.base() || a.dim() != b.dim() || a.depth() != b.depth()) return false;
  std::unordered_map<std::uint64_t, bool> memo;
  std::function<bool(NodeId, NodeId)> rec = [&](NodeId x, NodeId y) -> bool {
    if (x == kLeaf) return true;
    const std::uint64_t key = static_cast<std::uint64_t>(x) << 32 | y;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& kx = a.node(x).children;
    const auto& ky = b.node(y).children;
    bool ok = true;
    std::size_t j = 0;
    for (const auto& c : kx) {
      while (j < ky.size() && ky[j].code < c.code) ++j;
      if (j == ky.size() || ky[j].code != c.code || !rec(c.node, ky[j].node)) {
        ok = false;
        break;
      }
    }
    memo.emplace(key, ok);
    return ok;
  };
  return rec(a.root(), b.root());
}

CubeTree rebase(const CubeTree& tree, int t) {
  if (t < 1) throw DomainError("rebase factor must be >= 1");
  if (t == 1) return tree;
  const int new_base_wide = static_cast<int>(ipow(static_cast<std::uint64_t>(tree.base()), static_cast<unsigned>(t)));
  const int new_base = new_base_wide;
  BadicCube old_probe(tree.base(), tree.dim());
  BadicCube new_probe(new_base, tree.dim());
  const int new_depth = tree.depth() / t;
  const auto cut_height = static_cast<std::uint32_t>(tree.depth() - new_depth * t);

  TreeBuilder b(new_base, tree.dim());
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (tree.node(id).height == cut_height) return kLeaf;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::vector<Child> kids;
    std::vector<std::uint32_t> stack;
    std::function<void(NodeId, int)> collect = [&](NodeId cur, int lvl) {
      if (lvl == t) {
        std::vector<unsigned> digits(static_cast<std::size_t>(tree.dim()), 0);
        for (auto code : stack) {
          auto ds = old_probe.decode(code);
          for (std::size_t i = 0; i < ds.size(); ++i) digits[i] = digits[i] * static_cast<unsigned>(tree.base()) + ds[i];
        }
        kids.push_back({new_probe.encode(digits), rec(cur)});
        return;
      }
      for (const auto& c : tree.node(cur).children) {
        stack.push_back(c.code);
        collect(c.node, lvl + 1);
        stack.pop_back();
      }
    };
    collect(id, 0);
    std::sort(kids.begin(), kids.end(), [](const Child& x, const Child& y) { return x.code < y.code; });
    NodeId out = b.make(std::move(kids));
    memo.emplace(id, out);
    return out;
  };
  return b.finish(new_depth, rec(tree.root()));
}

CubeTree subtree(const CubeTree& tree, const BadicCube& cube, int levels) {
  auto id = tree.find(cube);
  if (!id) throw DomainError("cube " + cube.to_string() + " not in tree");
  if (levels < 0 || cube.level() + levels > tree.depth()) throw DomainError("subtree levels exceed tree depth");
  const auto cut = tree.node(*id).height - static_cast<std::uint32_t>(levels);
  TreeBuilder b(tree.base(), tree.dim());
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId n) -> NodeId {
    if (tree.node(n).height == cut) return kLeaf;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<Child> kids;
    for (const auto& c : tree.node(n).children) kids.push_back({c.code, rec(c.node)});
    NodeId out = b.make(std::move(kids));
    memo.emplace(n, out);
    return out;
  };
  return b.finish(levels, rec(*id));
}

BadicCube first_leaf(const CubeTree& tree, const BadicCube& cube) {
  auto id = tree.find(cube);
  if (!id) throw DomainError("cube " + cube.to_string() + " not in tree");
  BadicCube cur = cube;
  NodeId n = *id;
  while (tree.node(n).height > 0) {
    const auto& c = tree.node(n).children.front();
    cur = cur.child(c.code);
    n = c.node;
  }
  return cur;
}

}  // namespace badic
