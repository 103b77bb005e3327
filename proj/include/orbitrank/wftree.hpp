#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitrank/ordinal.hpp"

namespace orbitrank {

// One node of a finite leveled forest. Roots have level 0 and no parent;
// every other node's parent sits exactly one level above. An optional
// ordinal weight may sit on a terminal (childless) node: it records the rank
// of a pruned subtree standing below that node, i.e. subtree_rank(s) equals
// the weight instead of the usual node_rank(s) + 1. Weight 0 is the same as
// no weight.
struct TreeNode {
  int id = 0;
  int level = 0;
  std::optional<int> parent;
  std::optional<Ordinal> weight;
  std::string label;
};

// Finite well-founded leveled forest with exact ordinal ranks. Immutable
// after validation; all node ranks are computed eagerly.
class WfTree {
 public:
  WfTree() = default;

  // Throws CycleDetected, DanglingParent, LevelMismatch, ValidationError.
  static WfTree validate(std::vector<TreeNode> raw);

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }
  bool has_node(int id) const;
  const TreeNode& node(int id) const;               // throws NodeNotFound
  const std::vector<int>& node_ids() const { return ids_; }
  const std::vector<int>& roots() const { return roots_; }
  const std::vector<int>& children(int id) const;   // throws NodeNotFound
  int max_level() const;                            // -1 when empty
  std::vector<int> level_nodes(int level) const;
  bool is_ancestor(int a, int b) const;             // strict: a < b

  // rho_T(s): 0 on a plain terminal, the weight on a weighted terminal,
  // sup of child subtree ranks on an internal node.
  Ordinal node_rank(int id) const;                  // throws NodeNotFound
  // rho(T_s): weight on a weighted terminal, node_rank(s) + 1 otherwise;
  // 0 when absent (pass std::nullopt or an unknown id).
  Ordinal subtree_rank(std::optional<int> id) const;
  // rho(T) = sup of subtree ranks over the roots; 0 on the empty tree.
  Ordinal tree_rank() const;

  // Subtree at s, re-leveled so s has level 0; absent s gives the empty tree.
  WfTree subtree_at(std::optional<int> id) const;

  // Level subtree: keeps the levels listed in `indices` (strictly increasing)
  // plus every level beyond the last index, re-leveled consecutively; the
  // index list is read as the prefix of a sequence that continues n+1, n+2,...
  // A weighted terminal sitting in a skipped gap survives at the next kept
  // slot carrying limit_part(weight) (dropped when that is 0), since the
  // pruned subtree it stands for meets all deeper levels.
  WfTree level_subtree(const std::vector<int>& indices) const;

  std::string to_json_text() const;
  static WfTree from_json_text(std::string_view text);
  std::string to_dot() const;

 private:
  int index_of(int id) const;

  std::vector<TreeNode> nodes_;
  std::vector<int> ids_;                         // ids in storage order
  std::map<int, int> index_;                     // id -> storage index
  std::vector<std::vector<int>> children_;       // by storage index, child ids
  std::vector<int> roots_;
  std::vector<Ordinal> rank_;                    // node_rank by storage index
};

// Assignment from nodes of a source tree to nodes of a target tree.
struct NodeMap {
  std::map<int, int> assignment;
};

struct MapReport {
  bool order_preserving = false;  // s < t implies f(s) < f(t)
  bool injective = false;
  bool level_preserving = false;
  bool lipschitz = false;         // order preserving and level preserving
  bool embedding = false;         // injective and s < t iff f(s) < f(t)
  Ordinal rank_source;
  Ordinal rank_target;
  bool rank_le = false;           // rank_source <= rank_target
};

// Checks the map, throws MapNotTotal if some source node is unmapped or a
// target id does not exist. With require_lipschitz the report's `lipschitz`
// is what callers should assert on; the flag itself does not throw.
MapReport check_order_preserving(const NodeMap& map, const WfTree& source,
                                 const WfTree& target, bool require_lipschitz);

// Level-wise product forest: rank is exactly the maximum of the two ranks,
// weights combine by ordinal maximum. Pairs matching levels and keeps a copy
// of each unmatched branch, mirroring how classes of a product partition are
// non-singleton when either side is.
WfTree product_tree(const WfTree& s, const WfTree& t);

}  // namespace orbitrank
