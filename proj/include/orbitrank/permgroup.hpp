#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbitrank/eqseq.hpp"
#include "orbitrank/ordinal.hpp"

namespace orbitrank {

// A permutation of {0, ..., degree-1}, stored as its image list. The total
// order (lexicographic on images) is the one used for canonical coset
// representatives.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);  // identity
  static Perm from_images(std::vector<int> images);
  // Cycle notation, e.g. "(0 1 2)(3 4)" or "()"; points beyond the cycles
  // are fixed.
  static Perm from_cycles(std::string_view text, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }
  bool is_identity() const;
  Perm inverse() const;
  std::string cycles() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

// (a * b)(x) = a(b(x)): apply b first.
Perm compose(const Perm& a, const Perm& b);

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.images()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Closure budget shared by all subgroup enumeration (configuration value
// `max_group_order`, default 20000). Exceeding it throws BudgetExceeded.
std::uint64_t max_group_order();
void set_max_group_order(std::uint64_t budget);

// Breadth-first closure of the generated subgroup; sorted element list.
std::vector<Perm> closure(int degree, const std::vector<Perm>& gens);
// Small generating set extracted greedily from an element list.
std::vector<Perm> reduce_generators(int degree, const std::vector<Perm>& elements);
bool contains(const std::vector<Perm>& sorted_elements, const Perm& p);

// A finite permutation group with a decreasing subgroup chain that ends at
// the trivial group. Element sets for every level are enumerated eagerly at
// construction; the object is immutable afterwards.
class ChainGroup {
 public:
  ChainGroup() = default;
  // Throws NotASubgroup(n), ChainNotTrivialAtEnd, BudgetExceeded.
  static ChainGroup make(int degree, std::vector<std::vector<Perm>> level_gens);

  int degree() const { return degree_; }
  int levels() const { return static_cast<int>(gens_.size()); }
  int top_index() const { return levels() - 1; }  // N
  const std::vector<Perm>& gens(int n) const;
  const std::vector<Perm>& elements(int n) const;  // sorted
  std::uint64_t order(int n) const;

 private:
  int degree_ = 1;
  std::vector<std::vector<Perm>> gens_;
  std::vector<std::vector<Perm>> elements_;
};

// Left cosets g H of a subgroup inside an ambient element list, identified
// by their lexicographically least member. Representatives are listed in
// increasing order.
struct CosetSpace {
  std::vector<Perm> reps;
  std::unordered_map<Perm, int, PermHash> coset_of;
  int size() const { return static_cast<int>(reps.size()); }
  // Index of the coset of g * reps[i].
  int act(const Perm& g, int i) const { return coset_of.at(compose(g, reps[i])); }
};

CosetSpace cosets_of(const std::vector<Perm>& ambient,
                     const std::vector<Perm>& subgroup);
// Cosets of the level-k subgroup inside the whole group.
CosetSpace cosets(const ChainGroup& g, int k);  // throws IndexOutOfRange

// Partition sequence on G/G_k whose level-n classes are the orbits of the
// level-n subgroup under left multiplication. The final partition is
// discrete because the chain ends at the trivial group.
EqSeq coset_eqseq(const ChainGroup& g, int k);

Ordinal rho_k(const ChainGroup& g, int k);  // rank of the orbit tree on G/G_k
Ordinal rho(const ChainGroup& g);           // sup over k

// Chain of intersections H ∩ G_n for the subgroup generated by h_gens.
ChainGroup subgroup_chain(const ChainGroup& g, const std::vector<Perm>& h_gens);

// Quotient by a normal subgroup, realized as the permutation group of the
// left-multiplication action on its cosets; the chain maps level-wise.
ChainGroup quotient_chain(const ChainGroup& g, const std::vector<Perm>& n_gens);

// Direct product on disjoint point sets; the chain is index-wise, padding
// the shorter chain with its trivial tail.
ChainGroup product_chain(const ChainGroup& a, const ChainGroup& b);

// Product of the given factor groups with the staggered chain: at level n
// factor i sits at its own level n when i < n and at its full group
// otherwise; extended until trivial.
ChainGroup staggered_product(const std::vector<ChainGroup>& factors);
ChainGroup power_chain(const ChainGroup& g, int copies);

// Imprimitive wreath product with the cyclic group of order b on blocks
// (residues enumerated 0, 1, ..., b-1; 0 is the identity). The chain is
// H_0 = whole group and H_{n+1} = base elements whose first min(n, b)
// coordinates lie in the level-n subgroup, extended until trivial.
ChainGroup wreath_truncation(int b, const ChainGroup& g);

// Common refinement of two chains over the same group: the merged chain
// contains both as subsequences (a_slots / b_slots give the positions).
// Throws NoInterleaving when two members are inclusion-incomparable.
struct InterleaveResult {
  ChainGroup merged;
  std::vector<int> a_slots, b_slots;
};
InterleaveResult interleave_chains(const ChainGroup& a, const ChainGroup& b);

// For the coset space of merged level k: checks that the orbit tree of the
// original chain is order-isomorphic, Lipschitz both ways, to the level
// subtree of the merged chain's orbit tree at the recorded slots.
struct InterleaveCheck {
  EmbeddingResult a_iso, b_iso;
  bool ok = false;
};
InterleaveCheck verify_interleaving(const ChainGroup& a, const ChainGroup& b,
                                    const InterleaveResult& r, int k);

// A finite set acted on by the group: the action is given on the generators
// of the whole group and validated to extend to a homomorphism by a
// simultaneous closure over (element, action) pairs.
class GSet {
 public:
  static GSet make(const ChainGroup& g, int npoints,
                   std::vector<Perm> gen_images);
  int points() const { return npoints_; }
  const Perm& action_of(const Perm& element) const;
 private:
  int npoints_ = 0;
  std::unordered_map<Perm, Perm, PermHash> act_;
};

struct StabilizerInfo {
  std::vector<Perm> elements;  // the stabilizer subgroup, sorted
  int least_k = 0;             // least chain index contained in it
};
StabilizerInfo stabilizer(const ChainGroup& g, const GSet& x, int point);

// Rank of the orbit tree of the action; always <= rho(g).
Ordinal gset_rank(const ChainGroup& g, const GSet& x);

struct TsiReport {
  std::vector<bool> normal_in_g0;   // per chain level
  bool all_normal = false;
  // m_k = least m with every level-m orbit on G/G_k a singleton; then the
  // union of conjugates of the level-m_k subgroup lies inside level k.
  std::vector<int> m_k;
  bool conjugate_union_contained = false;
  ChainGroup normal_core_chain;     // level-wise normal cores
  bool core_differs = false;        // core chain differs from the original
};
TsiReport tsi_check(const ChainGroup& g);

}  // namespace orbitrank
