#include "orbitrank/wftree.hpp"

#include <doctest.h>

#include "orbitrank/errors.hpp"
#include "orbitrank/verify.hpp"

using namespace orbitrank;

namespace {

TreeNode node(int id, int level, std::optional<int> parent = std::nullopt,
              std::optional<Ordinal> weight = std::nullopt) {
  TreeNode n;
  n.id = id;
  n.level = level;
  n.parent = parent;
  n.weight = weight;
  return n;
}

WfTree chain_tree(int height) {
  std::vector<TreeNode> nodes;
  for (int i = 0; i < height; ++i)
    nodes.push_back(node(i, i, i ? std::optional<int>(i - 1) : std::nullopt));
  return WfTree::validate(std::move(nodes));
}

}  // namespace

TEST_CASE("validation") {
  WfTree single = WfTree::validate({node(0, 0)});
  CHECK(single.roots().size() == 1);
  CHECK(single.node(0).level == 0);

  CHECK_THROWS_WITH_AS(WfTree::validate({node(0, 2), node(1, 2, 0)}),
                       doctest::Contains("LevelMismatch"), Error);
  CHECK_THROWS_WITH_AS(WfTree::validate({node(0, 0), node(1, 1, 7)}),
                       doctest::Contains("DanglingParent"), Error);
  CHECK_THROWS_WITH_AS(WfTree::validate({node(0, 5, 1), node(1, 6, 0)}),
                       doctest::Contains("CycleDetected"), Error);
  CHECK_THROWS_WITH_AS(
      WfTree::validate({node(0, 0, std::nullopt, Ordinal::omega()),
                        node(1, 1, 0)}),
      doctest::Contains("weight on non-terminal"), Error);

  WfTree chain = chain_tree(3);
  CHECK(chain.node(2).level == 2);  // lh of the deepest node
}

TEST_CASE("node_rank") {
  WfTree chain = chain_tree(3);
  CHECK(chain.node_rank(2).is_zero());            // plain terminal
  CHECK(chain.node_rank(0) == Ordinal::nat(2));   // root of the 3-chain
  WfTree weighted =
      WfTree::validate({node(0, 0, std::nullopt, Ordinal::omega())});
  CHECK(weighted.node_rank(0) == Ordinal::omega());
  CHECK_THROWS_AS(chain.node_rank(99), Error);
}

TEST_CASE("tree_rank") {
  CHECK(WfTree().tree_rank().is_zero());
  CHECK(WfTree::validate({node(0, 0)}).tree_rank() == Ordinal::nat(1));
  // two roots carrying node ranks 2 and 5
  std::vector<TreeNode> nodes;
  for (int i = 0; i < 3; ++i)
    nodes.push_back(node(i, i, i ? std::optional<int>(i - 1) : std::nullopt));
  for (int i = 0; i < 6; ++i)
    nodes.push_back(
        node(10 + i, i, i ? std::optional<int>(10 + i - 1) : std::nullopt));
  WfTree two = WfTree::validate(std::move(nodes));
  CHECK(two.node_rank(0) == Ordinal::nat(2));
  CHECK(two.node_rank(10) == Ordinal::nat(5));
  CHECK(two.tree_rank() == Ordinal::nat(6));
}

TEST_CASE("subtree_at") {
  WfTree chain = chain_tree(3);
  WfTree at_root = chain.subtree_at(0);
  CHECK(at_root.tree_rank() == chain.tree_rank());
  CHECK(chain.subtree_at(std::nullopt).empty());
  CHECK(chain.subtree_at(77).tree_rank().is_zero());
  WfTree at_terminal = chain.subtree_at(2);
  CHECK(at_terminal.size() == 1);
  CHECK(at_terminal.tree_rank() == Ordinal::nat(1));
  CHECK(at_terminal.node(2).level == 0);  // re-leveled
  // rho(T_s) = node_rank(s) + 1 on plain nodes
  for (int id : chain.node_ids())
    CHECK(chain.subtree_at(id).tree_rank() == succ(chain.node_rank(id)));
}

TEST_CASE("level_subtree") {
  WfTree chain = chain_tree(3);
  CHECK(chain.level_subtree({0, 1, 2}).tree_rank() == chain.tree_rank());
  WfTree sliced = chain.level_subtree({0, 2});
  CHECK(sliced.size() == 2);
  CHECK(sliced.tree_rank() == Ordinal::nat(2));
  CHECK(sliced.node(2).level == 1);
  CHECK(*sliced.node(2).parent == 0);
  CHECK(chain.level_subtree({5, 7}).empty());
  CHECK_THROWS_AS(chain.level_subtree({2, 1}), Error);
  // slot j of the slice holds exactly the nodes of level indices[j]
  verify::Rng rng(3);
  WfTree tree = verify::random_tree(rng, 30);
  std::vector<int> indices{1, 3};
  WfTree cut = tree.level_subtree(indices);
  for (std::size_t j = 0; j < indices.size(); ++j)
    CHECK(cut.level_nodes(static_cast<int>(j)) == tree.level_nodes(indices[j]));
}

TEST_CASE("check_order_preserving") {
  WfTree chain = chain_tree(3);
  NodeMap identity;
  for (int id : chain.node_ids()) identity.assignment[id] = id;
  MapReport rep = check_order_preserving(identity, chain, chain, true);
  CHECK(rep.order_preserving);
  CHECK(rep.lipschitz);
  CHECK(rep.embedding);
  CHECK(rep.rank_source == rep.rank_target);

  // collapsing a 2-chain onto one node is not order preserving
  WfTree two = chain_tree(2);
  WfTree one = WfTree::validate({node(0, 0)});
  NodeMap collapse;
  collapse.assignment[0] = 0;
  collapse.assignment[1] = 0;
  MapReport bad = check_order_preserving(collapse, two, one, false);
  CHECK_FALSE(bad.order_preserving);
  CHECK_FALSE(bad.injective);

  NodeMap partial;
  partial.assignment[0] = 0;
  CHECK_THROWS_AS(check_order_preserving(partial, two, one, false), Error);

  // level-subtree inclusion maps stay order preserving with the rank bound
  verify::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    WfTree tree = verify::random_tree(rng, 30);
    if (tree.max_level() < 1) continue;
    WfTree cut = tree.level_subtree(verify::random_level_indices(rng, tree.max_level()));
    NodeMap inclusion;
    for (int id : cut.node_ids()) inclusion.assignment[id] = id;
    if (cut.empty()) continue;
    MapReport r = check_order_preserving(inclusion, cut, tree, false);
    CHECK(r.order_preserving);
    CHECK(r.rank_le);
  }
}

TEST_CASE("product_tree") {
  WfTree empty;
  WfTree chain5 = chain_tree(5);
  CHECK(product_tree(empty, chain5).tree_rank() == chain5.tree_rank());
  CHECK(product_tree(chain_tree(2), chain5).tree_rank() == Ordinal::nat(5));

  WfTree wa = WfTree::validate({node(0, 0, std::nullopt, Ordinal::omega())});
  WfTree wb = WfTree::validate(
      {node(0, 0, std::nullopt, mul_omega(Ordinal::nat(2)))});
  WfTree prod = product_tree(wa, wb);
  CHECK(prod.tree_rank() == mul_omega(Ordinal::nat(2)));

  // rank law on random weighted trees
  verify::Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    WfTree a = t % 2 ? verify::random_tree(rng, 12)
                     : verify::random_weighted_limit_tree(rng);
    WfTree b = verify::random_tree(rng, 12);
    Ordinal expect = std::max(a.tree_rank(), b.tree_rank(),
                              [](const Ordinal& x, const Ordinal& y) { return x < y; });
    CHECK(product_tree(a, b).tree_rank() == expect);
  }
}

TEST_CASE("weighted level subtree keeps limit ranks") {
  verify::Rng rng(2);
  verify::CheckResult res = verify::check_weighted_level_subtree(rng, 25);
  CHECK(res.failures == 0);
}

TEST_CASE("tree proposition suite") {
  verify::Rng rng(23);
  verify::CheckResult res = verify::check_tree_props(rng, 60);
  CHECK(res.failures == 0);
}

TEST_CASE("json and dot round trip") {
  verify::Rng rng(9);
  WfTree tree = verify::random_weighted_limit_tree(rng);
  WfTree back = WfTree::from_json_text(tree.to_json_text());
  CHECK(back.size() == tree.size());
  CHECK(back.tree_rank() == tree.tree_rank());
  for (int id : tree.node_ids()) CHECK(back.node_rank(id) == tree.node_rank(id));
  CHECK(tree.to_dot().find("digraph") == 0);
}
