#include "orbitrank/eqseq.hpp"

#include <doctest.h>

#include "orbitrank/errors.hpp"
#include "orbitrank/verify.hpp"

using namespace orbitrank;

namespace {

using Blocks = std::vector<std::vector<int>>;

EqSeq seq(std::vector<int> points, std::vector<Blocks> parts) {
  return EqSeq::make(std::move(points), std::move(parts));
}

}  // namespace

TEST_CASE("make validation") {
  EqSeq discrete = seq({1, 2}, {Blocks{{1}, {2}}});
  CHECK(discrete.depth() == 0);
  EqSeq two = seq({1, 2}, {Blocks{{1, 2}}, Blocks{{1}, {2}}});
  CHECK(two.depth() == 1);
  CHECK_THROWS_WITH_AS(seq({1, 2}, {Blocks{{1}, {2}}, Blocks{{1, 2}}}),
                       doctest::Contains("NotDecreasing"), Error);
  CHECK_THROWS_WITH_AS(seq({1, 2}, {Blocks{{1}}}),
                       doctest::Contains("NotAPartition"), Error);
  CHECK_THROWS_WITH_AS(seq({1, 2}, {Blocks{{1, 2}}}),
                       doctest::Contains("NotEventuallyDiscrete"), Error);
}

TEST_CASE("orbit_tree") {
  EqSeq all_discrete = seq({1, 2, 3}, {Blocks{{1}, {2}, {3}}});
  CHECK(orbit_tree(all_discrete).tree.empty());
  CHECK(orbit_tree(all_discrete).tree.tree_rank().is_zero());

  EqSeq pair = seq({1, 2}, {Blocks{{1, 2}}, Blocks{{1}, {2}}});
  OrbitTree t = orbit_tree(pair);
  CHECK(t.tree.size() == 1);
  CHECK(t.tree.tree_rank() == Ordinal::nat(1));

  EqSeq split = seq({1, 2, 3, 4}, {Blocks{{1, 2, 3, 4}},
                                   Blocks{{1, 2}, {3, 4}},
                                   Blocks{{1}, {2}, {3}, {4}}});
  OrbitTree t2 = orbit_tree(split);
  CHECK(t2.tree.size() == 3);
  CHECK(t2.tree.tree_rank() == Ordinal::nat(2));
  CHECK(t2.tree.tree_rank() == verify::brute_rank(split));

  // node levels equal the length of the containment chain above them
  verify::Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    EqSeq e = verify::random_eqseq(rng);
    OrbitTree tree = orbit_tree(e);
    for (std::size_t i = 0; i < tree.node_class.size(); ++i) {
      int id = static_cast<int>(i);
      int depth = 0;
      const TreeNode* cur = &tree.tree.node(id);
      while (cur->parent) {
        ++depth;
        cur = &tree.tree.node(*cur->parent);
      }
      CHECK(depth == tree.tree.node(id).level);
      CHECK(tree.node_class[i].first == tree.tree.node(id).level);
    }
  }
}

TEST_CASE("product_seq") {
  EqSeq e = seq({1, 2, 3, 4}, {Blocks{{1, 2, 3, 4}},
                               Blocks{{1, 2}, {3, 4}},
                               Blocks{{1}, {2}, {3}, {4}}});
  EqSeq singleton = seq({9}, {Blocks{{9}}});
  CHECK(orbit_tree(product_seq(e, singleton).seq).tree.tree_rank() ==
        orbit_tree(e).tree.tree_rank());

  // rank 2 and rank 3 factors give a rank 3 product
  EqSeq deeper = seq({1, 2, 3}, {Blocks{{1, 2, 3}}, Blocks{{1, 2}, {3}},
                                 Blocks{{1, 2}, {3}},
                                 Blocks{{1}, {2}, {3}}});
  CHECK(verify::brute_rank(deeper) == Ordinal::nat(3));
  ProductSeq prod = product_seq(e, deeper);
  CHECK(orbit_tree(prod.seq).tree.tree_rank() == Ordinal::nat(3));
  CHECK(verify::brute_rank(prod.seq) == Ordinal::nat(3));

  // two rank-2 factors of different shape stay at rank 2
  EqSeq other = seq({5, 6, 7}, {Blocks{{5, 6, 7}}, Blocks{{5, 6}, {7}},
                                Blocks{{5}, {6}, {7}}});
  CHECK(verify::brute_rank(other) == Ordinal::nat(2));
  CHECK(orbit_tree(product_seq(e, other).seq).tree.tree_rank() ==
        Ordinal::nat(2));

  // product tree empty iff both factor trees are empty
  EqSeq flat = seq({1, 2}, {Blocks{{1}, {2}}});
  CHECK(orbit_tree(product_seq(flat, flat).seq).tree.empty());
  CHECK_FALSE(orbit_tree(product_seq(flat, e).seq).tree.empty());

  verify::Rng rng(6);
  verify::CheckResult res = verify::check_eqseq_product(rng, 40);
  CHECK(res.failures == 0);
}

TEST_CASE("reduction_embedding") {
  EqSeq e = seq({1, 2, 3, 4}, {Blocks{{1, 2, 3, 4}},
                               Blocks{{1, 2}, {3, 4}},
                               Blocks{{1}, {2}, {3}, {4}}});
  PointMap identity;
  for (int p : e.points()) identity.assignment[p] = p;
  EmbeddingResult iso = reduction_embedding(identity, e, e);
  CHECK(iso.isomorphism);
  CHECK(iso.report.lipschitz);

  // inclusion of a union of classes
  EqSeq sub = seq({1, 2}, {Blocks{{1, 2}}, Blocks{{1, 2}}, Blocks{{1}, {2}}});
  PointMap incl;
  incl.assignment[1] = 1;
  incl.assignment[2] = 2;
  EmbeddingResult emb = reduction_embedding(incl, sub, e);
  CHECK(emb.report.lipschitz);
  CHECK(emb.report.embedding);
  CHECK(emb.report.rank_le);

  // gluing two points is not injective
  PointMap glue;
  glue.assignment[1] = 1;
  glue.assignment[2] = 1;
  glue.assignment[3] = 3;
  glue.assignment[4] = 4;
  CHECK_THROWS_WITH_AS(reduction_embedding(glue, e, e),
                       doctest::Contains("NotInjective"), Error);

  // mapping related points to unrelated points is not a reduction
  EqSeq fine = seq({1, 2, 3, 4}, {Blocks{{1, 2}, {3, 4}},
                                  Blocks{{1}, {2}, {3}, {4}}});
  PointMap shuffle;
  shuffle.assignment[1] = 1;
  shuffle.assignment[2] = 3;
  shuffle.assignment[3] = 2;
  shuffle.assignment[4] = 4;
  CHECK_THROWS_WITH_AS(reduction_embedding(shuffle, fine, fine),
                       doctest::Contains("NotAReduction"), Error);
}

TEST_CASE("surjection_embedding") {
  EqSeq e = seq({1, 2, 3, 4}, {Blocks{{1, 2, 3, 4}},
                               Blocks{{1, 2}, {3, 4}},
                               Blocks{{1}, {2}, {3}, {4}}});
  PointMap identity;
  for (int p : e.points()) identity.assignment[p] = p;
  CHECK(surjection_embedding(identity, e, e).isomorphism);

  // collapse a 6-point space onto 3 points, gluing paired classes
  EqSeq six = seq({0, 1, 2, 3, 4, 5},
                  {Blocks{{0, 1, 2, 3, 4, 5}},
                   Blocks{{0, 1}, {2, 3}, {4, 5}},
                   Blocks{{0}, {1}, {2}, {3}, {4}, {5}}});
  EqSeq three = seq({0, 1, 2}, {Blocks{{0, 1, 2}}, Blocks{{0}, {1}, {2}},
                                Blocks{{0}, {1}, {2}}});
  PointMap collapse;
  for (int p = 0; p < 6; ++p) collapse.assignment[p] = p / 2;
  EmbeddingResult emb = surjection_embedding(collapse, six, three);
  CHECK(emb.report.lipschitz);
  CHECK(emb.report.embedding);
  // rank of the collapsed space cannot exceed the source
  CHECK(orbit_tree(three).tree.tree_rank() <= orbit_tree(six).tree.tree_rank());

  // class images must fill whole target classes
  EqSeq target = seq({0, 1, 2}, {Blocks{{0, 1, 2}}, Blocks{{0, 1}, {2}},
                                 Blocks{{0}, {1}, {2}}});
  CHECK_THROWS_WITH_AS(surjection_embedding(collapse, six, target),
                       doctest::Contains("NotClassSurjective"), Error);

  PointMap missing;
  for (int p = 0; p < 6; ++p) missing.assignment[p] = 0;
  CHECK_THROWS_WITH_AS(surjection_embedding(missing, six, three),
                       doctest::Contains("NotSurjective"), Error);

  verify::Rng rng(8);
  CHECK(verify::check_surjection_device(rng, 20).failures == 0);
}

TEST_CASE("json round trip") {
  verify::Rng rng(10);
  EqSeq e = verify::random_eqseq(rng);
  EqSeq back = EqSeq::from_json_text(e.to_json_text());
  CHECK(back.depth() == e.depth());
  CHECK(verify::brute_rank(back) == verify::brute_rank(e));
}
