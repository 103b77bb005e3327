#include "orbitrank/eqseq.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "orbitrank/errors.hpp"

namespace orbitrank {

namespace {

std::string class_str(const std::vector<int>& members) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(members[i]);
  }
  return s + "}";
}

}  // namespace

EqSeq EqSeq::make(std::vector<int> points,
                  std::vector<std::vector<std::vector<int>>> partitions) {
  EqSeq e;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  e.points_ = std::move(points);
  for (int i = 0; i < static_cast<int>(e.points_.size()); ++i)
    e.point_index_[e.points_[i]] = i;

  if (partitions.empty())
    throw Error(Err::NotEventuallyDiscrete, "no partitions given");

  for (std::size_t level = 0; level < partitions.size(); ++level) {
    std::vector<std::vector<int>> blocks = partitions[level];
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    std::vector<int> covered;
    for (const auto& b : blocks) {
      if (b.empty())
        throw Error(Err::NotAPartition,
                    "empty block at level " + std::to_string(level));
      covered.insert(covered.end(), b.begin(), b.end());
    }
    std::sort(covered.begin(), covered.end());
    if (covered != e.points_ ||
        std::adjacent_find(covered.begin(), covered.end()) != covered.end())
      throw Error(Err::NotAPartition,
                  "level " + std::to_string(level) +
                      " does not partition the point set");

    std::vector<int> cls(e.points_.size(), -1);
    for (int c = 0; c < static_cast<int>(blocks.size()); ++c)
      for (int p : blocks[c]) cls[e.point_index_.at(p)] = c;
    e.class_of_.push_back(std::move(cls));
    e.classes_.push_back(std::move(blocks));
  }

  for (std::size_t level = 0; level + 1 < e.classes_.size(); ++level) {
    for (const auto& block : e.classes_[level + 1]) {
      int parent = e.class_of_[level][e.point_index_.at(block[0])];
      for (int p : block)
        if (e.class_of_[level][e.point_index_.at(p)] != parent)
          throw Error(Err::NotDecreasing,
                      "class " + class_str(block) + " at level " +
                          std::to_string(level + 1) +
                          " is not inside one class of level " +
                          std::to_string(level));
    }
  }

  if (!e.discrete(e.depth()))
    throw Error(Err::NotEventuallyDiscrete,
                "final partition is not the partition into singletons");
  return e;
}

int EqSeq::depth() const { return static_cast<int>(classes_.size()) - 1; }

int EqSeq::point_index(int point) const {
  auto it = point_index_.find(point);
  if (it == point_index_.end())
    throw Error(Err::NodeNotFound, "no point " + std::to_string(point));
  return it->second;
}

int EqSeq::class_of(int level, int point) const {
  if (level < 0) throw Error(Err::IndexOutOfRange, "negative level");
  if (level > depth()) level = depth();
  return class_of_[level][point_index(point)];
}

const std::vector<std::vector<int>>& EqSeq::classes(int level) const {
  if (level < 0 || level > depth())
    throw Error(Err::IndexOutOfRange, "level " + std::to_string(level));
  return classes_[level];
}

bool EqSeq::discrete(int level) const {
  return classes(level).size() == points_.size();
}

OrbitTree orbit_tree(const EqSeq& e) {
  OrbitTree out;
  std::vector<TreeNode> nodes;
  int next = 0;
  for (int level = 0; level <= e.depth(); ++level) {
    const auto& blocks = e.classes(level);
    for (int c = 0; c < static_cast<int>(blocks.size()); ++c) {
      if (blocks[c].size() < 2) continue;
      TreeNode n;
      n.id = next++;
      n.level = level;
      n.label = class_str(blocks[c]);
      if (level > 0) {
        int parent_class = e.class_of(level - 1, blocks[c][0]);
        n.parent = out.node_of.at({level - 1, parent_class});
      }
      out.node_of[{level, c}] = n.id;
      out.node_class.push_back({level, c});
      nodes.push_back(std::move(n));
    }
  }
  out.tree = WfTree::validate(std::move(nodes));
  return out;
}

int ProductSeq::id_of(int x, int y) const {
  auto ix = std::lower_bound(left_points.begin(), left_points.end(), x);
  auto iy = std::lower_bound(right_points.begin(), right_points.end(), y);
  if (ix == left_points.end() || *ix != x || iy == right_points.end() ||
      *iy != y)
    throw Error(Err::NodeNotFound, "no product point (" + std::to_string(x) +
                                       "," + std::to_string(y) + ")");
  return static_cast<int>(ix - left_points.begin()) * right_size +
         static_cast<int>(iy - right_points.begin());
}

std::pair<int, int> ProductSeq::pair_of(int id) const {
  return {left_points[id / right_size], right_points[id % right_size]};
}

ProductSeq product_seq(const EqSeq& e, const EqSeq& f) {
  ProductSeq out;
  out.left_points = e.points();
  out.right_points = f.points();
  out.right_size = static_cast<int>(f.points().size());

  const int depth = std::max(e.depth(), f.depth());
  std::vector<int> points;
  for (std::size_t i = 0; i < e.points().size() * f.points().size(); ++i)
    points.push_back(static_cast<int>(i));

  std::vector<std::vector<std::vector<int>>> partitions;
  for (int level = 0; level <= depth; ++level) {
    std::map<std::pair<int, int>, std::vector<int>> blocks;
    for (int x : e.points())
      for (int y : f.points())
        blocks[{e.class_of(level, x), f.class_of(level, y)}].push_back(
            out.id_of(x, y));
    std::vector<std::vector<int>> level_blocks;
    for (auto& [key, members] : blocks) level_blocks.push_back(std::move(members));
    partitions.push_back(std::move(level_blocks));
  }
  out.seq = EqSeq::make(std::move(points), std::move(partitions));
  return out;
}

namespace {

// Shared depth when two sequences are compared level-by-level.
int joint_depth(const EqSeq& e, const EqSeq& f) {
  return std::max(e.depth(), f.depth());
}

void require_total_on(const PointMap& theta, const EqSeq& e) {
  for (int x : e.points())
    if (!theta.assignment.count(x))
      throw Error(Err::MapNotTotal, "point " + std::to_string(x) + " unmapped");
}

}  // namespace

EmbeddingResult reduction_embedding(const PointMap& theta, const EqSeq& e,
                                    const EqSeq& f) {
  require_total_on(theta, e);
  std::set<int> image;
  for (int x : e.points()) {
    int y = theta.assignment.at(x);
    f.point_index(y);
    if (!image.insert(y).second)
      throw Error(Err::NotInjective, "two points share image " + std::to_string(y));
  }
  const int depth = joint_depth(e, f);
  for (int n = 0; n <= depth; ++n) {
    for (int x : e.points()) {
      for (int x2 : e.points()) {
        bool in_e = e.class_of(n, x) == e.class_of(n, x2);
        bool in_f = f.class_of(n, theta.assignment.at(x)) ==
                    f.class_of(n, theta.assignment.at(x2));
        if (in_e != in_f)
          throw Error(Err::NotAReduction,
                      "level " + std::to_string(n) + ", witness pair (" +
                          std::to_string(x) + "," + std::to_string(x2) + ")");
      }
    }
  }

  OrbitTree te = orbit_tree(e);
  OrbitTree tf = orbit_tree(f);
  EmbeddingResult result;
  for (std::size_t i = 0; i < te.node_class.size(); ++i) {
    auto [level, cls] = te.node_class[i];
    int x = e.classes(level)[cls][0];
    int target_class = f.class_of(level, theta.assignment.at(x));
    result.map.assignment[static_cast<int>(i)] =
        tf.node_of.at({level, target_class});
  }
  result.report = check_order_preserving(result.map, te.tree, tf.tree, true);
  bool bijective = image.size() == f.points().size();
  result.isomorphism = bijective && result.report.embedding &&
                       result.map.assignment.size() == tf.tree.size();
  return result;
}

EmbeddingResult surjection_embedding(const PointMap& theta, const EqSeq& e,
                                     const EqSeq& f) {
  require_total_on(theta, e);
  std::set<int> image;
  for (int x : e.points()) {
    int y = theta.assignment.at(x);
    f.point_index(y);
    image.insert(y);
  }
  if (image.size() != f.points().size())
    throw Error(Err::NotSurjective, "image misses " +
                                        std::to_string(f.points().size() -
                                                       image.size()) +
                                        " target points");
  const int depth = joint_depth(e, f);
  for (int n = 0; n <= depth; ++n) {
    for (int x : e.points()) {
      // theta([x]_{E_n}) must equal [theta(x)]_{F_n}.
      std::set<int> img;
      int cx = e.class_of(n, x);
      for (int x2 : e.points())
        if (e.class_of(n, x2) == cx) img.insert(theta.assignment.at(x2));
      int cf = f.class_of(n, theta.assignment.at(x));
      std::set<int> target;
      for (int y : f.points())
        if (f.class_of(n, y) == cf) target.insert(y);
      if (img != target)
        throw Error(Err::NotClassSurjective,
                    "level " + std::to_string(n) + ", class of point " +
                        std::to_string(x));
    }
  }

  OrbitTree te = orbit_tree(e);
  OrbitTree tf = orbit_tree(f);
  EmbeddingResult result;
  // witness point chosen for each F-node, consistent along branches
  std::map<int, int> witness;
  for (std::size_t i = 0; i < tf.node_class.size(); ++i) {
    auto [level, cls] = tf.node_class[i];
    int x_found = -1;
    if (level == 0) {
      for (int x : e.points())
        if (f.class_of(0, theta.assignment.at(x)) == cls) {
          x_found = x;
          break;
        }
    } else {
      int parent_id = *tf.tree.node(static_cast<int>(i)).parent;
      int x_prev = witness.at(parent_id);
      int prev_class = e.class_of(level - 1, x_prev);
      for (int x : e.points())
        if (e.class_of(level - 1, x) == prev_class &&
            f.class_of(level, theta.assignment.at(x)) == cls) {
          x_found = x;
          break;
        }
    }
    if (x_found < 0)
      throw Error(Err::NotClassSurjective,
                  "no witness for level " + std::to_string(level));
    witness[static_cast<int>(i)] = x_found;
    result.map.assignment[static_cast<int>(i)] =
        te.node_of.at({level, e.class_of(level, x_found)});
  }
  result.report = check_order_preserving(result.map, tf.tree, te.tree, true);
  result.isomorphism = result.report.embedding &&
                       result.map.assignment.size() == te.tree.size();
  return result;
}

std::string EqSeq::to_json_text() const {
  nlohmann::json j;
  j["points"] = points_;
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& level : classes_) parts.push_back(level);
  j["partitions"] = std::move(parts);
  return j.dump(2);
}

EqSeq EqSeq::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Err::SyntaxError, std::string("eqseq json: ") + e.what());
  }
  return make(j.at("points").get<std::vector<int>>(),
              j.at("partitions")
                  .get<std::vector<std::vector<std::vector<int>>>>());
}

}  // namespace orbitrank
