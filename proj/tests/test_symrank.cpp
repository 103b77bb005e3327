#include "orbitrank/symrank.hpp"

#include <doctest.h>

#include "orbitrank/errors.hpp"
#include "orbitrank/verify.hpp"

using namespace orbitrank;

namespace {

ExprPtr z2_atom() { return make_expr(ExAtom{"Z2", builtin_z2_chain()}); }

Classification cls(const ExprPtr& e) { return classify(*e); }

}  // namespace

TEST_CASE("classify base cases") {
  CHECK(cls(make_expr(ExTrivial{})) == Classification{Ordinal(), true});
  CHECK(cls(z2_atom()) == Classification{Ordinal(), false});
  CHECK(cls(make_expr(ExDiscreteInfinite{})) ==
        Classification{Ordinal(), false});
}

TEST_CASE("classify powers and products") {
  ExprPtr pow = make_expr(ExPowInf{z2_atom()});
  CHECK(cls(pow) == Classification{Ordinal::nat(1), true});
  CHECK(cls(make_expr(ExPowInf{make_expr(ExTrivial{})})) ==
        Classification{Ordinal(), true});

  ExprPtr wr = make_expr(ExWreath{pow});
  CHECK(cls(wr) == Classification{Ordinal::nat(1), false});

  // max rule with tightness on the maximal-rank factors
  ExprPtr rank2_tight = build_example(ExampleKind::H, Ordinal::nat(2));
  ExprPtr rank1_any = build_example(ExampleKind::G, Ordinal::nat(1));
  CHECK(cls(make_expr(ExProd{{rank2_tight, rank1_any}})) ==
        Classification{Ordinal::nat(2), true});
  CHECK(cls(make_expr(ExProd{{rank2_tight,
                              build_example(ExampleKind::G, Ordinal::nat(2))}})) ==
        Classification{Ordinal::nat(2), false});

  // product classification ignores the factor order and trivial factors
  ExprPtr a = build_example(ExampleKind::G, Ordinal::nat(1));
  ExprPtr b = build_example(ExampleKind::H, Ordinal::nat(3));
  CHECK(cls(make_expr(ExProd{{a, b}})) == cls(make_expr(ExProd{{b, a}})));
  CHECK(cls(make_expr(ExProd{{a, make_expr(ExTrivial{})}})) == cls(a));

  // eventually-constant infinite product: the tail decides, the head caps
  ExprPtr prodinf = make_expr(ExProdInf{{b}, a});
  CHECK(cls(prodinf) == Classification{Ordinal::nat(3), true});
  // a maximal-rank head factor that misses tightness spoils it
  ExprPtr prodinf2 =
      make_expr(ExProdInf{{build_example(ExampleKind::G, Ordinal::nat(3))}, b});
  CHECK(cls(prodinf2) == Classification{Ordinal::nat(3), false});
  // a low-rank head factor is absorbed
  CHECK(cls(make_expr(ExProdInf{{a}, b})) ==
        Classification{Ordinal::nat(3), true});
}

TEST_CASE("classify wreath edge cases") {
  // operand (a, not tight): result (a+1, not tight)
  ExprPtr g1 = build_example(ExampleKind::G, Ordinal::nat(1));
  CHECK(cls(make_expr(ExWreath{g1})) ==
        Classification{Ordinal::nat(2), false});
  // tight successor rank: result keeps the rank, loses tightness
  ExprPtr h2 = build_example(ExampleKind::H, Ordinal::nat(2));
  CHECK(cls(make_expr(ExWreath{h2})) ==
        Classification{Ordinal::nat(2), false});
  // tight limit rank is not covered by the composition rules
  ExprPtr hw = build_example(ExampleKind::H, Ordinal::omega());
  CHECK_THROWS_WITH_AS(classify(*make_expr(ExWreath{hw})),
                       doctest::Contains("WreathOperandUnsupported"), Error);
  CHECK_THROWS_WITH_AS(classify(*make_expr(ExWreath{make_expr(ExTrivial{})})),
                       doctest::Contains("WreathOperandUnsupported"), Error);
}

TEST_CASE("classify restricted products") {
  // strictly increasing ranks continue toward the least limit above them
  ExprPtr r = make_expr(ExRestricted{{build_example(ExampleKind::G, Ordinal()),
                                      build_example(ExampleKind::G, Ordinal::nat(1))}});
  CHECK(cls(r) == Classification{Ordinal::omega(), false});
  CHECK(cls(r) == cls(build_example(ExampleKind::G, Ordinal::omega())));

  ExprPtr above = make_expr(
      ExRestricted{{build_example(ExampleKind::G, Ordinal::omega()),
                    build_example(ExampleKind::G, succ(Ordinal::omega()))}});
  CHECK(cls(above) == Classification{mul_omega(Ordinal::nat(2)), false});

  CHECK_THROWS_WITH_AS(
      classify(*make_expr(ExRestricted{{z2_atom(), z2_atom()}})),
      doctest::Contains("LimitHypothesisFails"), Error);
  CHECK_THROWS_WITH_AS(classify(*make_expr(ExRestricted{{}})),
                       doctest::Contains("LimitHypothesisFails"), Error);
}

TEST_CASE("alpha-CLI verdicts") {
  ExprPtr trivial = make_expr(ExTrivial{});
  CHECK(is_alpha_cli(*trivial, Ordinal()));
  ExprPtr atom = z2_atom();
  CHECK_FALSE(is_alpha_cli(*atom, Ordinal()));
  CHECK(is_L_alpha_cli(*atom, Ordinal()));
  ExprPtr gw = build_example(ExampleKind::G, Ordinal::omega());
  CHECK_FALSE(is_alpha_cli(*gw, Ordinal::omega()));
  CHECK(is_L_alpha_cli(*gw, Ordinal::omega()));
  // L-a always gives (a+1)-CLI
  for (const ExprPtr& e : {atom, gw, build_example(ExampleKind::H, Ordinal::nat(2))}) {
    Ordinal rank = classify(*e).rank;
    CHECK(is_L_alpha_cli(*e, rank));
    CHECK(is_alpha_cli(*e, succ(rank)));
  }
}

TEST_CASE("build_example shapes") {
  CHECK(std::holds_alternative<ExTrivial>(
      build_example(ExampleKind::H, Ordinal())->node()));
  ExprPtr g1 = build_example(ExampleKind::G, Ordinal::nat(1));
  REQUIRE(std::holds_alternative<ExWreath>(g1->node()));
  const auto& wr = std::get<ExWreath>(g1->node());
  REQUIRE(std::holds_alternative<ExPowInf>(wr.operand->node()));
  const auto& pw = std::get<ExPowInf>(wr.operand->node());
  CHECK(std::holds_alternative<ExAtom>(pw.operand->node()));

  ExprPtr hw = build_example(ExampleKind::H, Ordinal::omega());
  REQUIRE(std::holds_alternative<ExProdInfFamily>(hw->node()));
  CHECK(std::get<ExProdInfFamily>(hw->node()).kind == ExampleKind::G);
  ExprPtr gw = build_example(ExampleKind::G, Ordinal::omega());
  CHECK(std::holds_alternative<ExRestrictedFamily>(gw->node()));
}

TEST_CASE("hierarchy witnesses across the test set") {
  CHECK(verify::check_hierarchy_examples().failures == 0);
}

TEST_CASE("truncate basics") {
  CHECK(rho(truncate(*make_expr(ExTrivial{}), 3, 2)).is_zero());

  // staggered cube of the two-element group
  ChainGroup cube = truncate(*make_expr(ExPowInf{z2_atom()}), 4, 3);
  CHECK(cube.order(0) == 8);
  for (int k = 0; k < cube.levels(); ++k) {
    Ordinal bound = add(rho_k(builtin_z2_chain(),
                              std::min(k, builtin_z2_chain().top_index())),
                        Ordinal::nat(k));
    CHECK(rho_k(cube, k) <= bound);
  }

  ChainGroup cyc = truncate(*make_expr(ExDiscreteInfinite{}), 3, 4);
  CHECK(cyc.order(0) == 4);
  CHECK(rho(cyc) == Ordinal::nat(1));

  CHECK_THROWS_AS(truncate(*z2_atom(), 3, 0), Error);
}

TEST_CASE("truncate monotone in depth and breadth") {
  ExprPtr e = build_example(ExampleKind::G, Ordinal::nat(1));
  Ordinal prev_b;
  for (int b = 1; b <= 3; ++b) {
    ChainGroup t = truncate(*e, 4, b);
    Ordinal r = rho(t);
    CHECK(prev_b <= r);
    prev_b = r;
  }
  ExprPtr atom = make_expr(ExAtom{"S3", [] {
                             std::vector<std::vector<Perm>> gens(3);
                             gens[0] = {Perm::from_cycles("(0 1 2)", 3),
                                        Perm::from_cycles("(0 1)", 3)};
                             gens[1] = {Perm::from_cycles("(0 1 2)", 3)};
                             return ChainGroup::make(3, std::move(gens));
                           }()});
  Ordinal prev_d;
  for (int d = 1; d <= 3; ++d) {
    Ordinal r = rho(truncate(*atom, d, 2));
    CHECK(prev_d <= r);
    prev_d = r;
  }
  CHECK(verify::check_truncation_bounds().failures == 0);
}

TEST_CASE("wreath separation shadow") {
  verify::CheckResult res = verify::check_wreath_separation();
  for (const std::string& note : res.notes) MESSAGE(note);
  CHECK(res.failures == 0);
}

TEST_CASE("restricted truncation stays within bounds") {
  ExprPtr gw = build_example(ExampleKind::G, Ordinal::omega());
  ChainGroup t = truncate(*gw, 3, 2);
  CHECK(t.order(0) >= 2);
  Ordinal r = rho(t);
  CHECK(!r.is_zero());
  // a bigger breadth is out of budget for this family and says so
  CHECK_THROWS_WITH_AS(truncate(*gw, 3, 4),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("expression printing") {
  ExprPtr w = make_expr(ExWreath{make_expr(ExPowInf{z2_atom()})});
  CHECK(w->str() == "wreath(powinf(atom(Z2)))");
  CHECK(build_example(ExampleKind::H, Ordinal::omega())->str() ==
        "example(H, w)");
  CHECK(build_example(ExampleKind::G, Ordinal::nat(2))->str() ==
        "wreath(powinf(wreath(powinf(atom(Z2)))))");
  CHECK(describe(*w).find("rank 1") != std::string::npos);
}
