#include "orbitrank/wftree.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "orbitrank/errors.hpp"

namespace orbitrank {

WfTree WfTree::validate(std::vector<TreeNode> raw) {
  WfTree t;
  t.nodes_ = std::move(raw);

  for (int i = 0; i < static_cast<int>(t.nodes_.size()); ++i) {
    auto [it, fresh] = t.index_.emplace(t.nodes_[i].id, i);
    if (!fresh)
      throw Error(Err::ValidationError,
                  "duplicate node id " + std::to_string(t.nodes_[i].id));
    t.ids_.push_back(t.nodes_[i].id);
  }

  for (const TreeNode& n : t.nodes_) {
    if (n.parent && !t.index_.count(*n.parent))
      throw Error(Err::DanglingParent, "node " + std::to_string(n.id) +
                                           " names missing parent " +
                                           std::to_string(*n.parent));
  }

  // Parent-walk with coloring; a repeat inside the current walk is a cycle.
  std::vector<int> color(t.nodes_.size(), 0);  // 0 new, 1 walking, 2 done
  for (std::size_t start = 0; start < t.nodes_.size(); ++start) {
    if (color[start]) continue;
    std::vector<int> path;
    int cur = static_cast<int>(start);
    while (cur >= 0 && color[cur] == 0) {
      color[cur] = 1;
      path.push_back(cur);
      const auto& p = t.nodes_[cur].parent;
      cur = p ? t.index_.at(*p) : -1;
    }
    if (cur >= 0 && color[cur] == 1)
      throw Error(Err::CycleDetected,
                  "parent chain through node " +
                      std::to_string(t.nodes_[cur].id) + " loops");
    for (int i : path) color[i] = 2;
  }

  for (const TreeNode& n : t.nodes_) {
    if (!n.parent) {
      if (n.level != 0)
        throw Error(Err::LevelMismatch, "root " + std::to_string(n.id) +
                                            " has level " +
                                            std::to_string(n.level));
    } else {
      const TreeNode& p = t.nodes_[t.index_.at(*n.parent)];
      if (p.level != n.level - 1)
        throw Error(Err::LevelMismatch,
                    "node " + std::to_string(n.id) + " at level " +
                        std::to_string(n.level) + " under parent at level " +
                        std::to_string(p.level));
    }
  }

  t.children_.assign(t.nodes_.size(), {});
  for (const TreeNode& n : t.nodes_)
    if (n.parent) t.children_[t.index_.at(*n.parent)].push_back(n.id);
  for (auto& c : t.children_) std::sort(c.begin(), c.end());
  for (const TreeNode& n : t.nodes_)
    if (!n.parent) t.roots_.push_back(n.id);
  std::sort(t.roots_.begin(), t.roots_.end());

  for (TreeNode& n : t.nodes_) {
    if (n.weight && n.weight->is_zero()) n.weight.reset();
    if (n.weight && !t.children_[t.index_.at(n.id)].empty())
      throw Error(Err::ValidationError,
                  "weight on non-terminal node " + std::to_string(n.id));
  }

  // Node ranks bottom-up (deepest level first).
  std::vector<int> order(t.nodes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return t.nodes_[a].level > t.nodes_[b].level;
  });
  t.rank_.assign(t.nodes_.size(), Ordinal());
  for (int i : order) {
    const TreeNode& n = t.nodes_[i];
    if (t.children_[i].empty()) {
      t.rank_[i] = n.weight ? *n.weight : Ordinal();
    } else {
      Ordinal best;
      for (int child : t.children_[i]) {
        Ordinal contribution = t.subtree_rank(child);
        if (contribution > best) best = contribution;
      }
      t.rank_[i] = best;
    }
  }
  return t;
}

int WfTree::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw Error(Err::NodeNotFound, "no node with id " + std::to_string(id));
  return it->second;
}

bool WfTree::has_node(int id) const { return index_.count(id) != 0; }

const TreeNode& WfTree::node(int id) const { return nodes_[index_of(id)]; }

const std::vector<int>& WfTree::children(int id) const {
  return children_[index_of(id)];
}

int WfTree::max_level() const {
  int m = -1;
  for (const TreeNode& n : nodes_) m = std::max(m, n.level);
  return m;
}

std::vector<int> WfTree::level_nodes(int level) const {
  std::vector<int> out;
  for (const TreeNode& n : nodes_)
    if (n.level == level) out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

bool WfTree::is_ancestor(int a, int b) const {
  (void)index_of(a);
  const TreeNode* cur = &node(b);
  while (cur->parent) {
    if (*cur->parent == a) return true;
    cur = &node(*cur->parent);
  }
  return false;
}

Ordinal WfTree::node_rank(int id) const { return rank_[index_of(id)]; }

Ordinal WfTree::subtree_rank(std::optional<int> id) const {
  if (!id || !has_node(*id)) return Ordinal();
  int i = index_.at(*id);
  if (nodes_[i].weight && children_[i].empty()) return *nodes_[i].weight;
  return succ(rank_[i]);
}

Ordinal WfTree::tree_rank() const {
  Ordinal best;
  for (int r : roots_) {
    Ordinal contribution = subtree_rank(r);
    if (contribution > best) best = contribution;
  }
  return best;
}

WfTree WfTree::subtree_at(std::optional<int> id) const {
  if (!id || !has_node(*id)) return WfTree();
  std::vector<TreeNode> out;
  const int base_level = node(*id).level;
  // Collect s and its descendants breadth-first.
  std::vector<int> queue{*id};
  std::set<int> picked{*id};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.erase(queue.begin());
    TreeNode n = node(cur);
    n.level -= base_level;
    if (cur == *id) n.parent.reset();
    out.push_back(n);
    for (int child : children(cur)) {
      picked.insert(child);
      queue.push_back(child);
    }
  }
  return validate(std::move(out));
}

WfTree WfTree::level_subtree(const std::vector<int>& indices) const {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || (i > 0 && indices[i] <= indices[i - 1]))
      throw Error(Err::ValidationError,
                  "level indices must be strictly increasing naturals");
  }
  if (indices.empty()) return *this;

  const int last = indices.back();
  auto kept = [&](int level) {
    return level > last ||
           std::binary_search(indices.begin(), indices.end(), level);
  };
  auto slot_of = [&](int level) {
    // slot of a kept level
    if (level > last)
      return static_cast<int>(indices.size()) + (level - last - 1);
    return static_cast<int>(
        std::lower_bound(indices.begin(), indices.end(), level) -
        indices.begin());
  };

  std::vector<TreeNode> out;
  for (const TreeNode& n : nodes_) {
    bool is_terminal = children_[index_.at(n.id)].empty();
    TreeNode copy = n;
    if (kept(n.level)) {
      copy.level = slot_of(n.level);
    } else if (is_terminal && n.weight) {
      // The pruned subtree below n meets all deeper levels; only its limit
      // part is guaranteed to survive slicing.
      Ordinal w = limit_part(*n.weight);
      if (w.is_zero()) continue;
      auto next = std::lower_bound(indices.begin(), indices.end(), n.level);
      copy.level = static_cast<int>(next - indices.begin());
      copy.weight = w;
    } else {
      continue;
    }
    // Re-wire to the nearest surviving strict ancestor.
    copy.parent.reset();
    const TreeNode* cur = &n;
    while (cur->parent) {
      const TreeNode& p = node(*cur->parent);
      if (kept(p.level) && slot_of(p.level) < copy.level) {
        copy.parent = p.id;
        break;
      }
      cur = &p;
    }
    out.push_back(copy);
  }
  return validate(std::move(out));
}

MapReport check_order_preserving(const NodeMap& map, const WfTree& source,
                                 const WfTree& target, bool require_lipschitz) {
  (void)require_lipschitz;
  for (int id : source.node_ids()) {
    auto it = map.assignment.find(id);
    if (it == map.assignment.end())
      throw Error(Err::MapNotTotal, "node " + std::to_string(id) + " unmapped");
    if (!target.has_node(it->second))
      throw Error(Err::MapNotTotal, "node " + std::to_string(id) +
                                        " maps to missing target " +
                                        std::to_string(it->second));
  }

  MapReport report;
  report.order_preserving = true;
  report.injective = true;
  report.level_preserving = true;
  bool reverse_ok = true;

  std::set<int> images;
  for (int id : source.node_ids()) {
    int image = map.assignment.at(id);
    if (!images.insert(image).second) report.injective = false;
    if (source.node(id).level != target.node(image).level)
      report.level_preserving = false;
  }
  const auto& ids = source.node_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (i == j) continue;
      bool src_lt = source.is_ancestor(ids[i], ids[j]);
      bool dst_lt = target.is_ancestor(map.assignment.at(ids[i]),
                                       map.assignment.at(ids[j]));
      if (src_lt && !dst_lt) report.order_preserving = false;
      if (dst_lt && !src_lt) reverse_ok = false;
    }
  }
  report.lipschitz = report.order_preserving && report.level_preserving;
  report.embedding = report.injective && report.order_preserving && reverse_ok;
  report.rank_source = source.tree_rank();
  report.rank_target = target.tree_rank();
  report.rank_le = report.rank_source <= report.rank_target;
  return report;
}

namespace {

struct ProductBuilder {
  const WfTree& s;
  const WfTree& t;
  std::vector<TreeNode> out;
  int next_id = 0;

  int fresh(int level, std::optional<int> parent, std::optional<Ordinal> weight,
            std::string label) {
    TreeNode n;
    n.id = next_id++;
    n.level = level;
    n.parent = parent;
    if (weight && !weight->is_zero()) n.weight = weight;
    n.label = std::move(label);
    out.push_back(std::move(n));
    return out.back().id;
  }

  // Plain structural copy of one side's subtree.
  int copy_side(const WfTree& side, int id, int level, std::optional<int> parent) {
    const TreeNode& n = side.node(id);
    int me = fresh(level, parent, n.weight, n.label);
    for (int child : side.children(id)) copy_side(side, child, level + 1, me);
    return me;
  }

  int pair(int sid, int tid, int level, std::optional<int> parent) {
    bool s_term = s.children(sid).empty();
    bool t_term = t.children(tid).empty();
    const auto& sw = s.node(sid).weight;
    const auto& tw = t.node(tid).weight;
    std::string label = s.node(sid).label + "|" + t.node(tid).label;

    if (s_term && t_term) {
      Ordinal w;
      if (sw && *sw > w) w = *sw;
      if (tw && *tw > w) w = *tw;
      return fresh(level, parent, w, label);
    }
    if (s_term && sw) {
      // Pruned subtree on the s side dominates or ties the finite t side.
      Ordinal w = std::max(*sw, succ(t.node_rank(tid)),
                           [](const Ordinal& a, const Ordinal& b) { return a < b; });
      return fresh(level, parent, w, label);
    }
    if (t_term && tw) {
      Ordinal w = std::max(*tw, succ(s.node_rank(sid)),
                           [](const Ordinal& a, const Ordinal& b) { return a < b; });
      return fresh(level, parent, w, label);
    }
    if (s_term) {
      int me = fresh(level, parent, std::nullopt, label);
      for (int tc : t.children(tid)) copy_side(t, tc, level + 1, me);
      return me;
    }
    if (t_term) {
      int me = fresh(level, parent, std::nullopt, label);
      for (int sc : s.children(sid)) copy_side(s, sc, level + 1, me);
      return me;
    }
    int me = fresh(level, parent, std::nullopt, label);
    for (int sc : s.children(sid))
      for (int tc : t.children(tid)) pair(sc, tc, level + 1, me);
    for (int sc : s.children(sid)) copy_side(s, sc, level + 1, me);
    for (int tc : t.children(tid)) copy_side(t, tc, level + 1, me);
    return me;
  }
};

}  // namespace

WfTree product_tree(const WfTree& s, const WfTree& t) {
  ProductBuilder b{s, t, {}, 0};
  for (int rs : s.roots())
    for (int rt : t.roots()) b.pair(rs, rt, 0, std::nullopt);
  for (int rs : s.roots()) b.copy_side(s, rs, 0, std::nullopt);
  for (int rt : t.roots()) b.copy_side(t, rt, 0, std::nullopt);
  return WfTree::validate(std::move(b.out));
}

std::string WfTree::to_json_text() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const TreeNode& n : nodes_) {
    nlohmann::json j;
    j["id"] = n.id;
    j["level"] = n.level;
    if (n.parent) j["parent"] = *n.parent;
    if (n.weight) j["weight"] = n.weight->str();
    if (!n.label.empty()) j["label"] = n.label;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

WfTree WfTree::from_json_text(std::string_view text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Err::SyntaxError, std::string("tree json: ") + e.what());
  }
  if (!arr.is_array())
    throw Error(Err::SyntaxError, "tree json: expected an array of nodes");
  std::vector<TreeNode> nodes;
  for (const auto& j : arr) {
    TreeNode n;
    n.id = j.at("id").get<int>();
    n.level = j.at("level").get<int>();
    if (j.contains("parent") && !j["parent"].is_null())
      n.parent = j["parent"].get<int>();
    if (j.contains("weight") && !j["weight"].is_null())
      n.weight = Ordinal::parse(j["weight"].get<std::string>());
    if (j.contains("label")) n.label = j["label"].get<std::string>();
    nodes.push_back(std::move(n));
  }
  return validate(std::move(nodes));
}

std::string WfTree::to_dot() const {
  std::string dot = "digraph orbit_tree {\n  rankdir=TB;\n  node [shape=box];\n";
  for (const TreeNode& n : nodes_) {
    std::string label = "L" + std::to_string(n.level);
    if (!n.label.empty()) label += " " + n.label;
    label += "\\nrank " + node_rank(n.id).str();
    if (n.weight) label += " (weight " + n.weight->str() + ")";
    dot += "  n" + std::to_string(n.id) + " [label=\"" + label + "\"];\n";
  }
  for (const TreeNode& n : nodes_)
    if (n.parent)
      dot += "  n" + std::to_string(*n.parent) + " -> n" +
             std::to_string(n.id) + ";\n";
  dot += "}\n";
  return dot;
}

}  // namespace orbitrank
