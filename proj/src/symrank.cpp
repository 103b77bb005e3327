#include "orbitrank/symrank.hpp"

#include <algorithm>

#include "orbitrank/errors.hpp"

namespace orbitrank {

ExprPtr make_expr(GroupExpr::Node node) {
  return std::make_shared<const GroupExpr>(std::move(node));
}

bool operator==(const Classification& a, const Classification& b) {
  return a.rank == b.rank && a.tight == b.tight;
}

namespace {

const char* kind_letter(ExampleKind k) { return k == ExampleKind::G ? "G" : "H"; }

// Least a such that the expression with this classification is a-CLI.
Ordinal cli_threshold(const Classification& c) {
  return c.tight ? c.rank : succ(c.rank);
}

bool alpha_cli(const Classification& c, const Ordinal& alpha) {
  return c.rank < alpha || (c.rank == alpha && c.tight);
}

// Factor ranks of a restricted product must be strictly increasing; the
// family is read as continuing toward the least limit ordinal above them, so
// the supremum of the factor rank sequence is that limit and is not attained.
Ordinal restricted_limit(const std::vector<Classification>& factor_cls) {
  if (factor_cls.empty())
    throw Error(Err::LimitHypothesisFails, "restricted product needs factors");
  for (std::size_t i = 1; i < factor_cls.size(); ++i)
    if (!(factor_cls[i - 1].rank < factor_cls[i].rank))
      throw Error(Err::LimitHypothesisFails,
                  "factor ranks are not strictly increasing (" +
                      factor_cls[i - 1].rank.str() + " then " +
                      factor_cls[i].rank.str() + ")");
  return add(limit_part(factor_cls.back().rank), Ordinal::omega());
}

}  // namespace

Classification classify(const GroupExpr& e) {
  return std::visit(
      [](const auto& node) -> Classification {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExTrivial>) {
          return {Ordinal(), true};
        } else if constexpr (std::is_same_v<T, ExAtom>) {
          return {Ordinal(), node.chain.order(0) == 1};
        } else if constexpr (std::is_same_v<T, ExDiscreteInfinite>) {
          return {Ordinal(), false};
        } else if constexpr (std::is_same_v<T, ExProd>) {
          Classification out{Ordinal(), true};
          for (const ExprPtr& f : node.factors) {
            Classification c = classify(*f);
            if (c.rank > out.rank)
              out = c;
            else if (c.rank == out.rank)
              out.tight = out.tight && c.tight;
          }
          return out;
        } else if constexpr (std::is_same_v<T, ExPowInf>) {
          return {cli_threshold(classify(*node.operand)), true};
        } else if constexpr (std::is_same_v<T, ExProdInf>) {
          Classification tail = classify(*node.tail);
          Ordinal rank = cli_threshold(tail);
          std::vector<Classification> head;
          for (const ExprPtr& f : node.head) {
            head.push_back(classify(*f));
            if (head.back().rank > rank) rank = head.back().rank;
          }
          bool tight = true;
          for (const Classification& c : head)
            tight = tight && alpha_cli(c, rank);
          return {rank, tight};
        } else if constexpr (std::is_same_v<T, ExProdInfFamily>) {
          if (successor_kind(node.limit) != OrdinalKind::limit)
            throw Error(Err::ValidationError,
                        "product family needs a limit ordinal");
          // Factor ranks run unboundedly below the limit; each factor is
          // limit-CLI, so the product realizes the limit rank tightly.
          return {node.limit, true};
        } else if constexpr (std::is_same_v<T, ExWreath>) {
          Classification c = classify(*node.operand);
          if (!c.tight) return {succ(c.rank), false};
          if (successor_kind(c.rank) == OrdinalKind::successor)
            return {c.rank, false};
          throw Error(Err::WreathOperandUnsupported,
                      "operand classifies as (" + c.rank.str() +
                          ", tight); need (a, not tight) or a successor "
                          "rank realized tightly");
        } else if constexpr (std::is_same_v<T, ExRestricted>) {
          std::vector<Classification> cls;
          for (const ExprPtr& f : node.factors) cls.push_back(classify(*f));
          return {restricted_limit(cls), false};
        } else if constexpr (std::is_same_v<T, ExRestrictedFamily>) {
          if (successor_kind(node.limit) != OrdinalKind::limit)
            throw Error(Err::LimitHypothesisFails,
                        "restricted family needs a limit ordinal");
          return {node.limit, false};
        } else {
          static_assert(std::is_same_v<T, ExExample>);
          return {node.alpha, node.kind == ExampleKind::H};
        }
      },
      e.node());
}

bool is_alpha_cli(const GroupExpr& e, const Ordinal& alpha) {
  return alpha_cli(classify(e), alpha);
}

bool is_L_alpha_cli(const GroupExpr& e, const Ordinal& alpha) {
  return classify(e).rank <= alpha;
}

ChainGroup builtin_z2_chain() {
  std::vector<std::vector<Perm>> gens(2);
  gens[0].push_back(Perm::from_images({1, 0}));
  return ChainGroup::make(2, std::move(gens));
}

ExprPtr build_example(ExampleKind kind, const Ordinal& alpha) {
  switch (successor_kind(alpha)) {
    case OrdinalKind::zero:
      if (kind == ExampleKind::H) return make_expr(ExTrivial{});
      return make_expr(ExAtom{"Z2", builtin_z2_chain()});
    case OrdinalKind::successor: {
      std::vector<Ordinal::Term> terms = alpha.terms();
      if (terms.back().coeff > 1)
        terms.back().coeff -= 1;
      else
        terms.pop_back();
      Ordinal beta = Ordinal::from_terms(std::move(terms));
      ExprPtr h = make_expr(ExPowInf{build_example(ExampleKind::G, beta)});
      if (kind == ExampleKind::H) return h;
      return make_expr(ExWreath{h});
    }
    case OrdinalKind::limit:
      if (kind == ExampleKind::H)
        return make_expr(ExProdInfFamily{ExampleKind::G, alpha});
      return make_expr(ExRestrictedFamily{ExampleKind::G, alpha});
  }
  throw Error(Err::ValidationError, "unreachable");
}

namespace {

ChainGroup truncate_atom(const ChainGroup& chain, int depth) {
  const int keep = std::min(chain.top_index(), depth);
  std::vector<std::vector<Perm>> gens;
  for (int n = 0; n <= keep; ++n) gens.push_back(chain.gens(n));
  if (chain.order(keep) != 1) gens.push_back({});
  return ChainGroup::make(chain.degree(), std::move(gens));
}

// Restricted-product chain: level 0 is the full product; at level n >= 1
// factor i sits at its own level n when i < n-1 and at its level 1
// otherwise. Extended until trivial, then cut at `depth`.
ChainGroup restricted_product_chain(const std::vector<ChainGroup>& factors,
                                    int depth) {
  int deg = 0;
  int max_top = 0;
  for (const ChainGroup& f : factors) {
    deg += f.degree();
    max_top = std::max(max_top, f.top_index());
  }
  const int count = static_cast<int>(factors.size());
  const int top = std::max(count + 1, max_top);
  std::vector<std::vector<Perm>> level_gens;
  for (int n = 0; n <= std::min(top, depth); ++n) {
    std::vector<Perm> gens;
    int offset = 0;
    for (int i = 0; i < count; ++i) {
      const ChainGroup& f = factors[i];
      int source;
      if (n == 0)
        source = 0;
      else if (i < n - 1)
        source = std::min(n, f.top_index());
      else
        source = std::min(1, f.top_index());
      for (const Perm& p : f.gens(source)) {
        std::vector<int> img(deg);
        for (int v = 0; v < deg; ++v) img[v] = v;
        for (int v = 0; v < p.degree(); ++v) img[offset + v] = offset + p(v);
        gens.push_back(Perm::from_images(std::move(img)));
      }
      offset += f.degree();
    }
    level_gens.push_back(std::move(gens));
  }
  level_gens.push_back({});  // ensure a trivial end after the cut
  return ChainGroup::make(deg, std::move(level_gens));
}

ChainGroup cyclic_chain(int order) {
  std::vector<int> img(order);
  for (int i = 0; i < order; ++i) img[i] = (i + 1) % order;
  std::vector<std::vector<Perm>> gens(2);
  gens[0].push_back(Perm::from_images(std::move(img)));
  if (order == 1) return ChainGroup::make(1, {{}});
  return ChainGroup::make(order, std::move(gens));
}

// Continuation factors for an explicitly listed restricted product: examples
// along the canonical fundamental sequence of the inferred limit, above the
// last listed rank.
std::vector<ExprPtr> restricted_continuation(const std::vector<ExprPtr>& listed,
                                             int needed) {
  std::vector<Classification> cls;
  for (const ExprPtr& f : listed) cls.push_back(classify(*f));
  Ordinal lim = restricted_limit(cls);
  std::vector<ExprPtr> out;
  std::uint64_t i = 0;
  while (static_cast<int>(out.size()) < needed) {
    Ordinal a = fundamental(lim, i++);
    if (a > cls.back().rank)
      out.push_back(make_expr(ExExample{ExampleKind::G, a}));
    if (i > 1000)
      throw Error(Err::ValidationError, "fundamental sequence stalled");
  }
  return out;
}

}  // namespace

ChainGroup truncate(const GroupExpr& e, int depth, int breadth) {
  if (depth < 1) throw Error(Err::ValidationError, "depth must be >= 1");
  if (breadth < 1) throw Error(Err::ValidationError, "breadth must be >= 1");
  return std::visit(
      [&](const auto& node) -> ChainGroup {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExTrivial>) {
          return ChainGroup::make(1, {{}});
        } else if constexpr (std::is_same_v<T, ExAtom>) {
          return truncate_atom(node.chain, depth);
        } else if constexpr (std::is_same_v<T, ExDiscreteInfinite>) {
          return cyclic_chain(breadth);
        } else if constexpr (std::is_same_v<T, ExProd>) {
          if (node.factors.empty()) return ChainGroup::make(1, {{}});
          ChainGroup acc = truncate(*node.factors[0], depth, breadth);
          for (std::size_t i = 1; i < node.factors.size(); ++i)
            acc = product_chain(acc, truncate(*node.factors[i], depth, breadth));
          return acc;
        } else if constexpr (std::is_same_v<T, ExPowInf>) {
          return power_chain(truncate(*node.operand, depth, breadth), breadth);
        } else if constexpr (std::is_same_v<T, ExProdInf>) {
          std::vector<ChainGroup> factors;
          for (int i = 0; i < breadth; ++i) {
            const ExprPtr& f = i < static_cast<int>(node.head.size())
                                   ? node.head[i]
                                   : node.tail;
            factors.push_back(truncate(*f, depth, breadth));
          }
          return staggered_product(factors);
        } else if constexpr (std::is_same_v<T, ExProdInfFamily>) {
          std::vector<ChainGroup> factors;
          for (int i = 0; i < breadth; ++i)
            factors.push_back(
                truncate(*build_example(node.kind,
                                        fundamental(node.limit, i)),
                         depth, breadth));
          return staggered_product(factors);
        } else if constexpr (std::is_same_v<T, ExWreath>) {
          return wreath_truncation(breadth, truncate(*node.operand, depth, breadth));
        } else if constexpr (std::is_same_v<T, ExRestricted>) {
          std::vector<ExprPtr> exprs = node.factors;
          if (static_cast<int>(exprs.size()) > breadth)
            exprs.resize(breadth);
          else if (static_cast<int>(exprs.size()) < breadth) {
            auto extra = restricted_continuation(
                node.factors, breadth - static_cast<int>(exprs.size()));
            exprs.insert(exprs.end(), extra.begin(), extra.end());
          }
          std::vector<ChainGroup> factors;
          for (const ExprPtr& f : exprs)
            factors.push_back(truncate(*f, depth, breadth));
          return restricted_product_chain(factors, depth);
        } else if constexpr (std::is_same_v<T, ExRestrictedFamily>) {
          std::vector<ChainGroup> factors;
          for (int i = 0; i < breadth; ++i)
            factors.push_back(
                truncate(*build_example(node.kind,
                                        fundamental(node.limit, i)),
                         depth, breadth));
          return restricted_product_chain(factors, depth);
        } else {
          static_assert(std::is_same_v<T, ExExample>);
          return truncate(*build_example(node.kind, node.alpha), depth, breadth);
        }
      },
      e.node());
}

std::string GroupExpr::str() const {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ExTrivial>) {
          return "trivial";
        } else if constexpr (std::is_same_v<T, ExAtom>) {
          return "atom(" + node.name + ")";
        } else if constexpr (std::is_same_v<T, ExDiscreteInfinite>) {
          return "Z";
        } else if constexpr (std::is_same_v<T, ExProd>) {
          std::string s = "prod(";
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i) s += ",";
            s += node.factors[i]->str();
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, ExPowInf>) {
          return "powinf(" + node.operand->str() + ")";
        } else if constexpr (std::is_same_v<T, ExProdInf>) {
          std::string s = "prodinf(";
          for (std::size_t i = 0; i < node.head.size(); ++i) {
            if (i) s += ",";
            s += node.head[i]->str();
          }
          return s + "; " + node.tail->str() + ")";
        } else if constexpr (std::is_same_v<T, ExProdInfFamily>) {
          // Same classification and truncation as the example it builds.
          return std::string("example(H, ") + node.limit.str() + ")";
        } else if constexpr (std::is_same_v<T, ExWreath>) {
          return "wreath(" + node.operand->str() + ")";
        } else if constexpr (std::is_same_v<T, ExRestricted>) {
          std::string s = "restricted(";
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i) s += ",";
            s += node.factors[i]->str();
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, ExRestrictedFamily>) {
          return std::string("example(G, ") + node.limit.str() + ")";
        } else {
          static_assert(std::is_same_v<T, ExExample>);
          return std::string("example(") + kind_letter(node.kind) + ", " +
                 node.alpha.str() + ")";
        }
      },
      node_);
}

std::string describe(const GroupExpr& e) {
  Classification c = classify(e);
  std::string out = e.str() + "\n";
  out += "  rank " + c.rank.str() + ", " + (c.tight ? "tight" : "not tight") +
         (c.tight ? "  (rho = w*rank exactly)\n"
                  : "  (rho = w*rank + m for some finite m >= 1)\n");
  out += std::string("  ") + c.rank.str() + "-CLI: " +
         (alpha_cli(c, c.rank) ? "yes" : "no") + ", L-" + c.rank.str() +
         "-CLI: yes\n";
  if (const auto* fam = std::get_if<ExProdInfFamily>(&e.node())) {
    out += "  factors: ";
    for (int i = 0; i < 3; ++i)
      out += "example(" + std::string(kind_letter(fam->kind)) + ", " +
             fundamental(fam->limit, i).str() + "), ";
    out += "...\n";
  }
  if (const auto* fam = std::get_if<ExRestrictedFamily>(&e.node())) {
    out += "  factors: ";
    for (int i = 0; i < 3; ++i)
      out += "example(" + std::string(kind_letter(fam->kind)) + ", " +
             fundamental(fam->limit, i).str() + "), ";
    out += "...\n";
  }
  return out;
}

}  // namespace orbitrank
