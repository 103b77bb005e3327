#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "orbitrank/ordinal.hpp"
#include "orbitrank/permgroup.hpp"

namespace orbitrank {

class GroupExpr;
using ExprPtr = std::shared_ptr<const GroupExpr>;

// The two families of hierarchy witnesses: H-examples realize their rank
// tightly, G-examples do not.
enum class ExampleKind { G, H };

struct ExTrivial {};
struct ExAtom {
  std::string name;  // used for printing
  ChainGroup chain;
};
// A countably infinite discrete group (the integers work); wreath top.
struct ExDiscreteInfinite {};
struct ExProd { std::vector<ExprPtr> factors; };
// Countable power G^w.
struct ExPowInf { ExprPtr operand; };
// Infinite product with finitely many leading factors and a constant tail.
struct ExProdInf {
  std::vector<ExprPtr> head;
  ExprPtr tail;
};
// Infinite product over the family example(kind, a_i) with a_i running along
// the canonical fundamental sequence of `limit`. Covers the unbounded-rank
// families that a constant tail cannot express.
struct ExProdInfFamily {
  ExampleKind kind;
  Ordinal limit;
};
// Wreath product L wr G with L an infinite countable discrete group.
struct ExWreath { ExprPtr operand; };
// Restricted product: elements of the full product that eventually fall into
// the designated open subgroups. A finite factor list is read as the prefix
// of an infinite family continued canonically (see classify).
struct ExRestricted { std::vector<ExprPtr> factors; };
struct ExRestrictedFamily {
  ExampleKind kind;
  Ordinal limit;
};
struct ExExample {
  ExampleKind kind;
  Ordinal alpha;
};

class GroupExpr {
 public:
  using Node = std::variant<ExTrivial, ExAtom, ExDiscreteInfinite, ExProd,
                            ExPowInf, ExProdInf, ExProdInfFamily, ExWreath,
                            ExRestricted, ExRestrictedFamily, ExExample>;
  explicit GroupExpr(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }
  std::string str() const;  // expression syntax used by spec files

 private:
  Node node_;
};

ExprPtr make_expr(GroupExpr::Node node);

// rank + tightness: tight means the rank ordinal is realized exactly
// (rho = w*rank); not tight means rho = w*rank + m for some finite m >= 1
// left undetermined.
struct Classification {
  Ordinal rank;
  bool tight = false;
};

bool operator==(const Classification& a, const Classification& b);

// Structural rank calculus. Throws WreathOperandUnsupported when the wreath
// operand is neither (a, not tight) nor (successor a, tight), and
// LimitHypothesisFails when a restricted product's factor ranks are not
// strictly increasing.
Classification classify(const GroupExpr& e);

// rank < a, or rank = a realized tightly.
bool is_alpha_cli(const GroupExpr& e, const Ordinal& alpha);
// rank <= a.
bool is_L_alpha_cli(const GroupExpr& e, const Ordinal& alpha);

// The canonical chain for the two-element group, the base of the hierarchy.
ChainGroup builtin_z2_chain();

// Recursive hierarchy witnesses: H_0 trivial, G_0 the two-element atom;
// H_{a+1} the countable power of G_a, G_{a+1} the wreath over H_{a+1}; at
// limits the family product / restricted product over the G's along the
// canonical fundamental sequence. classify gives (a, tight) for kind H and
// (a, not tight) for kind G.
ExprPtr build_example(ExampleKind kind, const Ordinal& alpha);

// Finite shadow of an expression: a chain group obtained by cutting atom
// chains at `depth` levels and infinite constructs at `breadth` factors
// (staggered product chains, wreath blocks, restricted-product chains).
ChainGroup truncate(const GroupExpr& e, int depth, int breadth);

// Multi-line human description of an expression and its classification.
std::string describe(const GroupExpr& e);

}  // namespace orbitrank
