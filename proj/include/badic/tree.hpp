#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "badic/cube.hpp"

namespace badic {

using NodeId = std::uint32_t;
inline constexpr NodeId kLeaf = 0;

struct Child {
  std::uint32_t code;
  NodeId node;
  friend bool operator==(const Child&, const Child&) = default;
};

struct Node {
  std::vector<Child> children;  // ascending code
  std::uint32_t height = 0;     // levels down to the leaves
  // profile[j] = number of descendants exactly j levels below (profile[0] = 1).
  std::vector<std::uint64_t> profile;

  std::uint64_t leaves() const { return profile.back(); }
};

// Hash-consed node pool. Structurally equal subtrees share one id, so a full
// depth-n tree costs n+1 nodes. Append-only; readers of a finished tree only
// ever see a const store.
class NodeStore {
 public:
  NodeStore();

  // `children` must be non-empty, strictly ascending in code, all of equal height.
  NodeId make(std::vector<Child> children);
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<Child>& v) const noexcept;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<Child>, NodeId, KeyHash> index_;
};

// A finite-resolution set E ⊂ [0,1]^d: a prefix tree of b-adic cubes whose
// leaves all sit at depth n. Immutable; safe for concurrent reads.
class CubeTree {
 public:
  CubeTree(int base, int dim, int depth, std::shared_ptr<const NodeStore> store, NodeId root);

  int base() const noexcept { return base_; }
  int dim() const noexcept { return dim_; }
  int depth() const noexcept { return depth_; }
  std::uint32_t arity() const noexcept { return arity_; }
  NodeId root() const noexcept { return root_; }
  const NodeStore& store() const noexcept { return *store_; }
  const Node& node(NodeId id) const { return store_->node(id); }

  std::uint64_t leaf_count() const { return node(root_).leaves(); }
  // Node count at depth k, i.e. N_{b^k}(E, [0,1]^d).
  std::uint64_t level_count(int k) const;

  std::optional<NodeId> find(const BadicCube& cube) const;
  BadicCube root_cube() const { return BadicCube(base_, dim_); }

  // Depth-first over leaves in code order; stop early by returning false.
  void for_each_leaf(const std::function<bool(const BadicCube&)>& fn) const;
  std::vector<BadicCube> leaves(std::size_t limit = SIZE_MAX) const;

 private:
  int base_;
  int dim_;
  int depth_;
  std::uint32_t arity_;
  std::shared_ptr<const NodeStore> store_;
  NodeId root_;
};

// One distinct DAG node together with the lexicographically first cube that
// reaches it. A node id determines its level (depth - height).
struct IndexedNode {
  NodeId id;
  BadicCube cube;
};

// Distinct nodes grouped by level; within a level, ordered by first cube.
std::vector<std::vector<IndexedNode>> index_nodes(const CubeTree& tree);
// Same, restricted to the subtree under `start` (levels are absolute).
std::vector<std::vector<IndexedNode>> index_nodes(const CubeTree& tree, const BadicCube& start);

// Mutable construction context. Nodes from other trees are imported on demand.
class TreeBuilder {
 public:
  TreeBuilder(int base, int dim);

  int base() const noexcept { return base_; }
  int dim() const noexcept { return dim_; }
  const Node& node(NodeId id) const { return store_->node(id); }

  NodeId make(std::vector<Child> children) { return store_->make(std::move(children)); }
  NodeId import(const CubeTree& src, NodeId id);
  // Node for the chain following `codes` down to a leaf.
  NodeId chain(std::span<const std::uint32_t> codes);
  // Node at the root whose only descendant path is `prefix` ending in `below`.
  NodeId graft(std::span<const std::uint32_t> prefix, NodeId below);
  NodeId unite(NodeId a, NodeId b);

  CubeTree finish(int depth, NodeId root) const;

 private:
  int base_;
  int dim_;
  std::shared_ptr<NodeStore> store_;
  std::unordered_map<const NodeStore*, std::unordered_map<NodeId, NodeId>> imported_;
  std::unordered_map<std::uint64_t, NodeId> unions_;
};

// Allowed digit tuples restrict each level independently: the self-similar
// set with those digits. Depth-k node count is |allowed|^k.
CubeTree tree_from_digit_rule(int base, int dim, int depth,
                              const std::vector<std::vector<unsigned>>& allowed);
CubeTree full_tree(int base, int dim, int depth);
// Leaves need not be sorted; duplicates are an error.
CubeTree tree_from_leaves(int base, int dim, int depth, std::vector<BadicCube> leaves);

CubeTree tree_union(const CubeTree& a, const CubeTree& b);
// a ⊂ b as node sets.
bool is_subtree(const CubeTree& a, const CubeTree& b);
// Group t levels into one: base b -> b^t, depth n -> floor(n/t). Finer digits are dropped.
CubeTree rebase(const CubeTree& tree, int t);
// Subtree under `cube`, cut `levels` levels below it, as a tree rooted at [0,1]^d.
CubeTree subtree(const CubeTree& tree, const BadicCube& cube, int levels);
// Lexicographically first leaf under `cube`.
BadicCube first_leaf(const CubeTree& tree, const BadicCube& cube);

}  // namespace badic
