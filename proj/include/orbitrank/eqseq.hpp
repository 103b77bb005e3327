#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbitrank/wftree.hpp"

namespace orbitrank {

// A decreasing sequence of equivalence relations on a finite point set,
// given as partitions P_0, P_1, ..., P_N: every P_{n+1}-class refines some
// P_n-class and P_N is the partition into singletons. Immutable.
class EqSeq {
 public:
  // Throws NotAPartition, NotDecreasing, NotEventuallyDiscrete.
  static EqSeq make(std::vector<int> points,
                    std::vector<std::vector<std::vector<int>>> partitions);

  int depth() const;  // N; levels are 0..N
  const std::vector<int>& points() const { return points_; }
  int point_index(int point) const;             // throws NodeNotFound
  // Class index of a point; levels past N read as the final partition.
  int class_of(int level, int point) const;
  // Classes at a level, each sorted, ordered by least member.
  const std::vector<std::vector<int>>& classes(int level) const;
  bool discrete(int level) const;

  std::string to_json_text() const;
  static EqSeq from_json_text(std::string_view text);

 private:
  std::vector<int> points_;                     // sorted unique ids
  std::map<int, int> point_index_;
  std::vector<std::vector<int>> class_of_;      // [level][point idx] -> class
  std::vector<std::vector<std::vector<int>>> classes_;
};

// Orbit tree of a sequence: one node per pair (n, C) with C a non-singleton
// P_n-class; the parent of (n+1, D) is the unique (n, C) with C containing D.
struct OrbitTree {
  WfTree tree;
  // node id -> (level, class index) and back
  std::vector<std::pair<int, int>> node_class;
  std::map<std::pair<int, int>, int> node_of;
};

OrbitTree orbit_tree(const EqSeq& e);

// Product sequence on the Cartesian product of the point sets; classes are
// products of classes and the shorter sequence is padded with its final
// (discrete) partition. Product points get fresh ids in lexicographic order
// of (x, y).
struct ProductSeq {
  EqSeq seq;
  int right_size = 0;
  std::vector<int> left_points, right_points;
  int id_of(int x, int y) const;          // throws NodeNotFound
  std::pair<int, int> pair_of(int id) const;
};

ProductSeq product_seq(const EqSeq& e, const EqSeq& f);

// Total assignment between point sets.
struct PointMap {
  std::map<int, int> assignment;
};

struct EmbeddingResult {
  NodeMap map;
  MapReport report;
  bool isomorphism = false;  // bijective embedding onto the whole target
};

// Embedding induced by an injective level-wise reduction theta of E to F:
// (n, C) maps to (n, F_n-saturation of theta(C)). Throws NotInjective,
// NotAReduction. The returned map goes from orbit_tree(e) to orbit_tree(f)
// and is verified Lipschitz; `isomorphism` is set when theta is a bijection.
EmbeddingResult reduction_embedding(const PointMap& theta, const EqSeq& e,
                                    const EqSeq& f);

// Embedding induced by a class-surjective surjection theta of E onto F
// (theta([x]_{E_n}) = [theta(x)]_{F_n} for all n, x). Built level by level:
// the node (n, C) of orbit_tree(f) is sent to (n, [x]_{E_n}) for the least
// witness x compatible with the choice at level n-1. Throws NotSurjective,
// NotClassSurjective. The returned map goes from orbit_tree(f) to
// orbit_tree(e); consequently rank(T_F) <= rank(T_E).
EmbeddingResult surjection_embedding(const PointMap& theta, const EqSeq& e,
                                     const EqSeq& f);

}  // namespace orbitrank
