#include "orbitrank/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "orbitrank/errors.hpp"
#include "orbitrank/spec_dsl.hpp"
#include "orbitrank/symrank.hpp"

namespace orbitrank::verify {

namespace {

std::string chain_dump(const ChainGroup& g) {
  std::string out = chain_statement("cx", g) + "  # orders:";
  for (int n = 0; n < g.levels(); ++n)
    out += " " + std::to_string(g.order(n));
  return out;
}

std::string eqseq_dump(const EqSeq& e) { return e.to_json_text(); }

// Greedy shrink: drop interior chain levels while the predicate keeps
// failing.
template <typename Fails>
ChainGroup shrink_chain(ChainGroup g, Fails fails) {
  bool progress = true;
  while (progress && g.levels() > 2) {
    progress = false;
    for (int n = 1; n + 1 < g.levels(); ++n) {
      std::vector<std::vector<Perm>> gens;
      for (int m = 0; m < g.levels(); ++m)
        if (m != n) gens.push_back(g.gens(m));
      ChainGroup smaller = ChainGroup::make(g.degree(), std::move(gens));
      if (fails(smaller)) {
        g = smaller;
        progress = true;
        break;
      }
    }
  }
  return g;
}

// Greedy shrink: drop points, then interior partition levels.
template <typename Fails>
EqSeq shrink_eqseq(EqSeq e, Fails fails) {
  auto without_point = [](const EqSeq& seq, int victim) {
    std::vector<int> points;
    for (int p : seq.points())
      if (p != victim) points.push_back(p);
    std::vector<std::vector<std::vector<int>>> parts;
    for (int n = 0; n <= seq.depth(); ++n) {
      std::vector<std::vector<int>> level;
      for (auto block : seq.classes(n)) {
        block.erase(std::remove(block.begin(), block.end(), victim), block.end());
        if (!block.empty()) level.push_back(std::move(block));
      }
      parts.push_back(std::move(level));
    }
    return EqSeq::make(std::move(points), std::move(parts));
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int p : e.points()) {
      if (e.points().size() <= 2) break;
      try {
        EqSeq smaller = without_point(e, p);
        if (fails(smaller)) {
          e = smaller;
          progress = true;
          break;
        }
      } catch (const Error&) {
      }
    }
  }
  return e;
}

Perm random_element(Rng& rng, const std::vector<Perm>& elements) {
  return elements[pick(rng, elements.size())];
}

}  // namespace

ChainGroup random_chain(Rng& rng, const ChainGenOptions& opt) {
  const std::uint64_t saved_budget = max_group_order();
  set_max_group_order(opt.max_order);
  ChainGroup result;
  try {
    for (int attempt = 0;; ++attempt) {
      int degree = 2 + static_cast<int>(pick(rng, opt.max_degree - 1));
      std::vector<Perm> pool;
      // structured pool: transpositions, 3-cycles, a full cycle, swaps
      for (int reps = 0; reps < 3; ++reps) {
        int a = static_cast<int>(pick(rng, degree));
        int b = static_cast<int>(pick(rng, degree));
        if (a != b) {
          Perm p(degree);
          std::vector<int> img = p.images();
          std::swap(img[a], img[b]);
          pool.push_back(Perm::from_images(img));
        }
        int c = static_cast<int>(pick(rng, degree));
        if (a != b && b != c && a != c) {
          std::vector<int> img = Perm(degree).images();
          img[a] = b;
          img[b] = c;
          img[c] = a;
          pool.push_back(Perm::from_images(img));
        }
      }
      {
        std::vector<int> img(degree);
        for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
        pool.push_back(Perm::from_images(img));
      }
      std::vector<Perm> gens;
      int count = 1 + static_cast<int>(pick(rng, 2));
      for (int i = 0; i < count; ++i) gens.push_back(pool[pick(rng, pool.size())]);
      std::vector<Perm> elements;
      try {
        elements = closure(degree, gens);
      } catch (const Error&) {
        if (attempt > 30) {
          std::vector<int> img(degree);
          for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
          gens = {Perm::from_images(img)};
          elements = closure(degree, gens);
        } else {
          continue;
        }
      }
      if (elements.size() == 1) continue;

      std::vector<std::vector<Perm>> level_gens{gens};
      std::vector<Perm> current = elements;
      while (current.size() > 1 &&
             static_cast<int>(level_gens.size()) < opt.max_levels - 1) {
        std::vector<Perm> next_gens;
        std::vector<Perm> next;
        bool found = false;
        for (int tries = 0; tries < 8 && !found; ++tries) {
          next_gens.clear();
          int take = 1 + static_cast<int>(pick(rng, 2));
          for (int i = 0; i < take; ++i)
            next_gens.push_back(random_element(rng, current));
          next = closure(degree, next_gens);
          if (next.size() < current.size()) found = true;
        }
        if (!found) break;
        level_gens.push_back(next_gens);
        current = next;
      }
      if (current.size() > 1) level_gens.push_back({});
      result = ChainGroup::make(degree, std::move(level_gens));
      break;
    }
  } catch (...) {
    set_max_group_order(saved_budget);
    throw;
  }
  set_max_group_order(saved_budget);
  return result;
}

std::vector<Perm> random_subgroup_gens(Rng& rng, const ChainGroup& g) {
  std::vector<Perm> gens;
  int count = 1 + static_cast<int>(pick(rng, 2));
  for (int i = 0; i < count; ++i)
    gens.push_back(random_element(rng, g.elements(0)));
  return gens;
}

std::vector<Perm> random_normal_gens(Rng& rng, const ChainGroup& g) {
  Perm seed = random_element(rng, g.elements(0));
  // conjugation orbit of the seed generates a normal subgroup
  std::set<Perm> orbit{seed};
  std::vector<Perm> todo{seed};
  while (!todo.empty()) {
    Perm cur = todo.back();
    todo.pop_back();
    for (const Perm& c : g.gens(0)) {
      Perm conj = compose(compose(c, cur), c.inverse());
      if (orbit.insert(conj).second) todo.push_back(conj);
    }
  }
  return {orbit.begin(), orbit.end()};
}

ChainGroup random_normal_chain(Rng& rng, const ChainGenOptions& opt) {
  ChainGroup g = random_chain(rng, opt);
  // replace every level by its normal core in the whole group
  return tsi_check(g).normal_core_chain;
}

EqSeq random_eqseq(Rng& rng, int max_points, int max_depth) {
  int n = 2 + static_cast<int>(pick(rng, max_points - 1));
  std::vector<int> points(n);
  std::iota(points.begin(), points.end(), 0);

  std::vector<std::vector<std::vector<int>>> partitions;
  // coarse start: random split into 1..2 blocks
  std::vector<std::vector<int>> blocks;
  {
    std::vector<int> shuffled = points;
    for (int i = n - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[pick(rng, i + 1)]);
    int nblocks = 1 + static_cast<int>(pick(rng, 2));
    blocks.assign(nblocks, {});
    for (int i = 0; i < n; ++i)
      blocks[i % nblocks].push_back(shuffled[i]);
  }
  partitions.push_back(blocks);
  while (static_cast<int>(partitions.size()) < max_depth) {
    std::vector<std::vector<int>> refined;
    bool all_single = true;
    for (const auto& block : partitions.back()) {
      if (block.size() > 1 && pick(rng, 2) == 0) {
        // split off a random nonempty piece
        std::size_t cut = 1 + pick(rng, block.size() - 1);
        refined.emplace_back(block.begin(), block.begin() + cut);
        refined.emplace_back(block.begin() + cut, block.end());
      } else {
        refined.push_back(block);
      }
      if (refined.back().size() > 1) all_single = false;
    }
    partitions.push_back(refined);
    if (all_single) break;
  }
  // force a discrete final partition
  std::vector<std::vector<int>> discrete;
  for (int p : points) discrete.push_back({p});
  partitions.push_back(discrete);
  return EqSeq::make(points, partitions);
}

WfTree random_tree(Rng& rng, int max_nodes) {
  std::vector<TreeNode> nodes;
  int next_id = 0;
  int budget = 1 + static_cast<int>(pick(rng, max_nodes));
  int roots = 1 + static_cast<int>(pick(rng, 3));
  std::vector<int> frontier;
  for (int r = 0; r < roots && next_id < budget; ++r) {
    TreeNode n;
    n.id = next_id++;
    n.level = 0;
    nodes.push_back(n);
    frontier.push_back(n.id);
  }
  std::size_t head = 0;
  while (head < frontier.size() && next_id < budget) {
    int parent = frontier[head++];
    int kids = static_cast<int>(pick(rng, 4));
    for (int k = 0; k < kids && next_id < budget; ++k) {
      TreeNode n;
      n.id = next_id++;
      n.level = 0;
      for (const TreeNode& m : nodes)
        if (m.id == parent) n.level = m.level + 1;
      n.parent = parent;
      nodes.push_back(n);
      frontier.push_back(n.id);
    }
  }
  return WfTree::validate(std::move(nodes));
}

WfTree random_weighted_limit_tree(Rng& rng) {
  WfTree base = random_tree(rng, 20);
  std::vector<TreeNode> nodes;
  for (int id : base.node_ids()) {
    TreeNode n = base.node(id);
    if (base.children(id).empty() && pick(rng, 3) == 0) {
      // small ordinal weight on some terminals
      Ordinal w = Ordinal::nat(pick(rng, 4));
      if (pick(rng, 2) == 0)
        w = add(mul_omega(Ordinal::nat(1 + pick(rng, 2))), w);
      if (!w.is_zero()) n.weight = w;
    }
    nodes.push_back(n);
  }
  // dominating weighted root with a limit weight
  TreeNode top;
  top.id = 1000000;
  top.level = 0;
  top.weight = mul_omega(Ordinal::nat(4 + pick(rng, 4)));
  nodes.push_back(top);
  return WfTree::validate(std::move(nodes));
}

std::vector<int> random_level_indices(Rng& rng, int max_level) {
  std::vector<int> out;
  for (int l = 0; l <= max_level; ++l)
    if (pick(rng, 2) == 0) out.push_back(l);
  if (out.empty()) out.push_back(static_cast<int>(pick(rng, max_level + 1)));
  return out;
}

std::vector<Ordinal> ordinals_below_w3(int coeff_bound) {
  std::vector<Ordinal> out;
  const Ordinal two = Ordinal::nat(2);
  for (int a = 0; a <= coeff_bound; ++a)
    for (int b = 0; b <= coeff_bound; ++b)
      for (int c = 0; c <= coeff_bound; ++c) {
        Ordinal v = add(add(Ordinal::omega_pow(two, a),
                            Ordinal::omega_pow(Ordinal::nat(1), b)),
                        Ordinal::nat(c));
        out.push_back(v);
      }
  std::sort(out.begin(), out.end(),
            [](const Ordinal& x, const Ordinal& y) { return x < y; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Ordinal& x, const Ordinal& y) { return x == y; }),
            out.end());
  return out;
}

Ordinal brute_rank(const EqSeq& e) {
  // rank of the node (level, class) by direct recursion
  std::function<Ordinal(int, int)> node_rank = [&](int level, int cls) {
    Ordinal best;
    if (level < e.depth()) {
      const auto& members = e.classes(level)[cls];
      std::set<int> child_classes;
      for (int p : members) child_classes.insert(e.class_of(level + 1, p));
      for (int child : child_classes) {
        if (e.classes(level + 1)[child].size() < 2) continue;
        Ordinal r = succ(node_rank(level + 1, child));
        if (r > best) best = r;
      }
    }
    return best;
  };
  Ordinal best;
  for (int cls = 0; cls < static_cast<int>(e.classes(0).size()); ++cls) {
    if (e.classes(0)[cls].size() < 2) continue;
    Ordinal r = succ(node_rank(0, cls));
    if (r > best) best = r;
  }
  return best;
}

// ---------------------------------------------------------------------------
// checks

CheckResult check_ordinal_laws(Rng& rng, int trials) {
  CheckResult res;
  res.name = "ordinal-laws";
  std::vector<Ordinal> grid = ordinals_below_w3(5);
  auto any = [&](Rng& r) { return grid[pick(r, grid.size())]; };

  // total order on the whole grid
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      int c = compare(grid[i], grid[j]);
      int d = compare(grid[j], grid[i]);
      if (c != -d || (i == j && c != 0)) {
        ++res.failures;
        res.notes.push_back("compare asymmetry at " + grid[i].str() + " / " +
                            grid[j].str());
      }
    }
  for (int t = 0; t < trials; ++t) {
    Ordinal a = any(rng), b = any(rng), c = any(rng);
    ++res.trials;
    if (add(add(a, b), c) != add(a, add(b, c))) {
      ++res.failures;
      res.notes.push_back("associativity: " + a.str() + " + " + b.str() +
                          " + " + c.str());
    }
    if (add(a, Ordinal()) != a || add(Ordinal(), a) != a) {
      ++res.failures;
      res.notes.push_back("identity at " + a.str());
    }
    if (b < c && !(mul_omega(b) < mul_omega(c))) {
      ++res.failures;
      res.notes.push_back("mul_omega monotonicity at " + b.str() + " < " + c.str());
    }
    if (b <= c && !(add(a, b) <= add(a, c))) {
      ++res.failures;
      res.notes.push_back("add right-monotonicity at " + a.str());
    }
    if (limit_part(limit_part(a)) != limit_part(a)) {
      ++res.failures;
      res.notes.push_back("limit_part idempotence at " + a.str());
    }
    if (mul_omega(add(b, c)) != add(mul_omega(b), mul_omega(c))) {
      ++res.failures;
      res.notes.push_back("mul_omega distributivity at " + b.str() + ", " + c.str());
    }
    bool fixed = limit_part(a) == a;
    bool limit_or_zero = successor_kind(a) != OrdinalKind::successor;
    if (fixed != limit_or_zero) {
      ++res.failures;
      res.notes.push_back("limit_part fixpoint at " + a.str());
    }
    if (limit_part(mul_omega(a)) != mul_omega(a)) {
      ++res.failures;
      res.notes.push_back("w*a not limit-or-zero at " + a.str());
    }
  }
  return res;
}

CheckResult check_tree_props(Rng& rng, int trials) {
  CheckResult res;
  res.name = "tree-props";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    WfTree tree = random_tree(rng);
    bool bad = false;
    std::string why;

    // subtree recursion: rho(T_s) = sup over children rho(T_t) + 1
    for (int id : tree.node_ids()) {
      Ordinal expect;
      for (int child : tree.children(id)) {
        Ordinal r = tree.subtree_rank(child);
        if (r > expect) expect = r;
      }
      expect = succ(expect);
      if (tree.subtree_rank(id) != expect) {
        bad = true;
        why = "subtree recursion at node " + std::to_string(id);
        break;
      }
      if (successor_kind(tree.subtree_rank(id)) == OrdinalKind::limit) {
        bad = true;
        why = "plain subtree rank is a limit at node " + std::to_string(id);
        break;
      }
    }
    // level bound: sup of level-k subtree ranks <= rho(T) <= sup + k
    int maxl = tree.max_level();
    for (int k = 0; k <= maxl + 1 && !bad; ++k) {
      Ordinal level_sup;
      for (int id : tree.level_nodes(k)) {
        Ordinal r = tree.subtree_rank(id);
        if (r > level_sup) level_sup = r;
      }
      Ordinal rank = tree.tree_rank();
      if (!(level_sup <= rank) || !(rank <= add(level_sup, Ordinal::nat(k)))) {
        bad = true;
        why = "level bound at k=" + std::to_string(k);
      }
    }
    // level subtree never raises the rank; inclusion map is order preserving
    if (!bad && maxl >= 0) {
      std::vector<int> indices = random_level_indices(rng, maxl);
      WfTree sliced = tree.level_subtree(indices);
      if (!(sliced.tree_rank() <= tree.tree_rank())) {
        bad = true;
        why = "level subtree raised the rank";
      } else if (!sliced.empty()) {
        NodeMap inclusion;
        for (int id : sliced.node_ids()) inclusion.assignment[id] = id;
        MapReport rep = check_order_preserving(inclusion, sliced, tree, false);
        if (!rep.order_preserving || !rep.injective || !rep.rank_le) {
          bad = true;
          why = "level-subtree inclusion map is not order preserving";
        }
      }
    }
    // subtree_at agrees with node ranks
    if (!bad && !tree.empty()) {
      int id = tree.node_ids()[pick(rng, tree.node_ids().size())];
      if (tree.subtree_at(id).tree_rank() != tree.subtree_rank(id)) {
        bad = true;
        why = "subtree_at rank mismatch at node " + std::to_string(id);
      }
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back(why + "\n" + tree.to_json_text());
    }
  }
  return res;
}

CheckResult check_weighted_level_subtree(Rng& rng, int trials) {
  CheckResult res;
  res.name = "weighted-level-subtree";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    WfTree tree = random_weighted_limit_tree(rng);
    Ordinal rank = tree.tree_rank();
    if (successor_kind(rank) != OrdinalKind::limit) {
      ++res.failures;
      res.notes.push_back("generator failed to produce a limit rank");
      continue;
    }
    std::vector<int> indices = random_level_indices(rng, std::max(tree.max_level(), 1));
    WfTree sliced = tree.level_subtree(indices);
    Ordinal sliced_rank = sliced.tree_rank();
    if (!(limit_part(rank) <= sliced_rank) || !(sliced_rank <= rank) ||
        sliced_rank != rank) {
      ++res.failures;
      std::string idx;
      for (int i : indices) idx += std::to_string(i) + " ";
      res.notes.push_back("limit-rank slicing changed the rank: " + rank.str() +
                          " -> " + sliced_rank.str() + " at levels " + idx +
                          "\n" + tree.to_json_text());
    }
  }
  return res;
}

CheckResult check_eqseq_product(Rng& rng, int trials) {
  CheckResult res;
  res.name = "eqseq-product-max";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    EqSeq e = random_eqseq(rng);
    EqSeq f = random_eqseq(rng);
    ProductSeq prod = product_seq(e, f);
    Ordinal expect = std::max(brute_rank(e), brute_rank(f),
                              [](const Ordinal& a, const Ordinal& b) { return a < b; });
    Ordinal via_tree = orbit_tree(prod.seq).tree.tree_rank();
    Ordinal via_brute = brute_rank(prod.seq);
    bool empty_law = (orbit_tree(prod.seq).tree.empty()) ==
                     (orbit_tree(e).tree.empty() && orbit_tree(f).tree.empty());
    if (via_tree != expect || via_brute != expect || !empty_law) {
      ++res.failures;
      auto fails = [&](const EqSeq& smaller) {
        try {
          ProductSeq p2 = product_seq(smaller, f);
          Ordinal want = std::max(brute_rank(smaller), brute_rank(f),
                                  [](const Ordinal& a, const Ordinal& b) { return a < b; });
          return orbit_tree(p2.seq).tree.tree_rank() != want;
        } catch (const Error&) {
          return false;
        }
      };
      EqSeq small = shrink_eqseq(e, fails);
      res.notes.push_back("product rank law failed; left factor:\n" +
                          eqseq_dump(small));
    }
  }
  return res;
}

CheckResult check_surjection_device(Rng& rng, int trials) {
  CheckResult res;
  res.name = "eqseq-surjection";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    // quotient a random sequence by gluing points of one final-level pair
    EqSeq e = random_eqseq(rng);
    // theta: identity on points; target glues nothing (identity embedding)
    PointMap theta;
    for (int p : e.points()) theta.assignment[p] = p;
    EmbeddingResult r = surjection_embedding(theta, e, e);
    if (!r.report.lipschitz || !r.report.embedding || !r.isomorphism) {
      ++res.failures;
      res.notes.push_back("identity surjection is not an isomorphism:\n" +
                          eqseq_dump(e));
    }
  }
  return res;
}

CheckResult check_rho0(Rng& rng, int trials) {
  CheckResult res;
  res.name = "rho0-zero";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup g = random_chain(rng, {});
    if (!rho_k(g, 0).is_zero()) {
      ++res.failures;
      auto fails = [](const ChainGroup& c) { return !rho_k(c, 0).is_zero(); };
      res.notes.push_back(chain_dump(shrink_chain(g, fails)));
    }
  }
  return res;
}

CheckResult check_rho_monotone(Rng& rng, int trials) {
  CheckResult res;
  res.name = "rho-monotone";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup g = random_chain(rng, {});
    bool bad = false;
    std::string why;
    for (int k = 0; k + 1 < g.levels() && !bad; ++k) {
      // coset projection G/G_{k+1} -> G/G_k as a point map
      CosetSpace fine = cosets(g, k + 1);
      CosetSpace coarse = cosets(g, k);
      PointMap theta;
      for (int i = 0; i < fine.size(); ++i)
        theta.assignment[i] = coarse.coset_of.at(fine.reps[i]);
      EqSeq efine = coset_eqseq(g, k + 1);
      EqSeq ecoarse = coset_eqseq(g, k);
      EmbeddingResult emb = surjection_embedding(theta, efine, ecoarse);
      if (!emb.report.lipschitz || !emb.report.embedding) {
        bad = true;
        why = "projection witness not a Lipschitz embedding at k=" +
              std::to_string(k);
      }
      if (!(rho_k(g, k) <= rho_k(g, k + 1))) {
        bad = true;
        why = "rho_k decreased at k=" + std::to_string(k);
      }
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back(why + "\n" + chain_dump(g));
    }
  }
  return res;
}

CheckResult check_product_law(Rng& rng, int trials, ProductRule rule) {
  CheckResult res;
  res.name = "product-law";
  ChainGenOptions small{6, 100, 4};
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup a = random_chain(rng, small);
    ChainGroup b = random_chain(rng, small);
    ChainGroup ab = product_chain(a, b);
    bool bad = false;
    int bad_k = -1;
    for (int k = 0; k < ab.levels(); ++k) {
      Ordinal ra = rho_k(a, std::min(k, a.top_index()));
      Ordinal rb = rho_k(b, std::min(k, b.top_index()));
      Ordinal predicted = rule == ProductRule::maximum
                              ? std::max(ra, rb,
                                         [](const Ordinal& x, const Ordinal& y) {
                                           return x < y;
                                         })
                              : add(ra, rb);
      if (rho_k(ab, k) != predicted) {
        bad = true;
        bad_k = k;
        break;
      }
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back("product law failed at k=" + std::to_string(bad_k) +
                          "\n  left:  " + chain_dump(a) +
                          "\n  right: " + chain_dump(b));
    }
  }
  return res;
}

CheckResult check_subgroup_quotient(Rng& rng, int trials) {
  CheckResult res;
  res.name = "subgroup-quotient-monotone";
  ChainGenOptions small{6, 400, 5};
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup g = random_chain(rng, small);
    bool bad = false;
    std::string why;
    {
      ChainGroup h = subgroup_chain(g, random_subgroup_gens(rng, g));
      for (int k = 0; k < g.levels(); ++k)
        if (!(rho_k(h, k) <= rho_k(g, k))) {
          bad = true;
          why = "subgroup chain raised rho_k at k=" + std::to_string(k);
        }
    }
    if (!bad) {
      try {
        ChainGroup q = quotient_chain(g, random_normal_gens(rng, g));
        for (int k = 0; k < g.levels(); ++k)
          if (!(rho_k(q, k) <= rho_k(g, k))) {
            bad = true;
            why = "quotient chain raised rho_k at k=" + std::to_string(k);
          }
      } catch (const Error& e) {
        if (e.kind() != Err::BudgetExceeded) throw;
      }
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back(why + "\n" + chain_dump(g));
    }
  }
  return res;
}

CheckResult check_power_bound(Rng& rng, int trials) {
  CheckResult res;
  res.name = "power-bound";
  ChainGenOptions small{5, 25, 4};
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup g = random_chain(rng, small);
    bool bad = false;
    for (int copies = 1; copies <= 3 && !bad; ++copies) {
      ChainGroup p = power_chain(g, copies);
      for (int k = 0; k < p.levels(); ++k) {
        Ordinal factor = rho_k(g, std::min(k, g.top_index()));
        Ordinal bound = add(factor, Ordinal::nat(k));
        if (!(rho_k(p, k) <= bound)) {
          bad = true;
          res.notes.push_back("power bound failed, copies=" +
                              std::to_string(copies) + " k=" + std::to_string(k) +
                              "\n" + chain_dump(g));
          break;
        }
      }
    }
    if (bad) ++res.failures;
  }
  return res;
}

CheckResult check_normal_shadow(Rng& rng, int trials) {
  CheckResult res;
  res.name = "normal-shadow";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    ChainGroup g = random_normal_chain(rng, {});
    TsiReport report = tsi_check(g);
    bool bad = false;
    std::string why;
    if (!report.all_normal) {
      bad = true;
      why = "core chain member not normal";
    }
    for (int k = 0; k < g.levels() && !bad; ++k)
      if (!(rho_k(g, k) <= Ordinal::nat(k))) {
        bad = true;
        why = "rho_k above k on a normal chain, k=" + std::to_string(k);
      }
    if (!bad && !report.conjugate_union_contained) {
      bad = true;
      why = "conjugate union escaped its level";
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back(why + "\n" + chain_dump(g));
    }
  }
  return res;
}

CheckResult check_interleave(Rng& rng, int trials) {
  CheckResult res;
  res.name = "interleave-iso";
  for (int t = 0; t < trials; ++t) {
    ++res.trials;
    // two compatible chains: subchains of one random chain
    ChainGroup base = random_chain(rng, {6, 600, 6});
    auto subchain = [&](Rng& r) {
      std::vector<std::vector<Perm>> gens;
      gens.push_back(base.gens(0));
      for (int n = 1; n + 1 < base.levels(); ++n)
        if (pick(r, 2) == 0) gens.push_back(base.gens(n));
      gens.push_back(base.gens(base.top_index()));
      return ChainGroup::make(base.degree(), std::move(gens));
    };
    ChainGroup a = subchain(rng);
    ChainGroup b = subchain(rng);
    InterleaveResult merged = interleave_chains(a, b);
    bool bad = false;
    for (int k = 0; k < merged.merged.levels() && !bad; ++k) {
      InterleaveCheck check = verify_interleaving(a, b, merged, k);
      if (!check.ok) bad = true;
    }
    if (bad) {
      ++res.failures;
      res.notes.push_back("interleaving isomorphism failed\n  a: " +
                          chain_dump(a) + "\n  b: " + chain_dump(b));
    }
  }
  return res;
}

CheckResult check_hierarchy_examples() {
  CheckResult res;
  res.name = "hierarchy-witnesses";
  std::vector<Ordinal> alphas{
      Ordinal(),          Ordinal::nat(1),
      Ordinal::nat(2),    Ordinal::nat(3),
      Ordinal::omega(),   succ(Ordinal::omega()),
      mul_omega(Ordinal::nat(2))};
  for (const Ordinal& alpha : alphas) {
    ++res.trials;
    Classification h = classify(*build_example(ExampleKind::H, alpha));
    Classification g = classify(*build_example(ExampleKind::G, alpha));
    if (!(h == Classification{alpha, true})) {
      ++res.failures;
      res.notes.push_back("H witness at " + alpha.str() + " classified as (" +
                          h.rank.str() + (h.tight ? ", tight)" : ", not tight)"));
    }
    if (!(g == Classification{alpha, false})) {
      ++res.failures;
      res.notes.push_back("G witness at " + alpha.str() + " classified as (" +
                          g.rank.str() + (g.tight ? ", tight)" : ", not tight)"));
    }
  }
  return res;
}

CheckResult check_wreath_separation() {
  CheckResult res;
  res.name = "wreath-separation";
  ++res.trials;
  ExprPtr e = make_expr(ExPowInf{make_expr(ExAtom{"Z2", builtin_z2_chain()})});
  ExprPtr w = make_expr(ExWreath{e});

  // Values pinned from the brute-force run; see tests/acceptance.cpp notes.
  const std::vector<std::uint64_t> expected_w_rho{2, 3, 4};   // b = 1, 2, 3
  const std::uint64_t expected_e3_rho = 3;

  std::vector<Ordinal> w_rho;
  for (int b = 1; b <= 3; ++b) w_rho.push_back(rho(truncate(*w, 4, b)));
  for (int b = 0; b < 3; ++b)
    if (w_rho[b] != Ordinal::nat(expected_w_rho[b])) {
      ++res.failures;
      res.notes.push_back("wreath truncation rho at b=" + std::to_string(b + 1) +
                          " is " + w_rho[b].str() + ", pinned " +
                          std::to_string(expected_w_rho[b]));
    }
  bool strictly_increases = false;
  for (int b = 0; b + 1 < 3; ++b) {
    if (w_rho[b] > w_rho[b + 1]) {
      ++res.failures;
      res.notes.push_back("wreath truncation rho decreased in b");
    }
    if (w_rho[b] < w_rho[b + 1]) strictly_increases = true;
  }
  if (!strictly_increases) {
    ++res.failures;
    res.notes.push_back("wreath truncation rho never increased over b=1..3");
  }

  ChainGroup w3 = truncate(*w, 4, 3);
  ChainGroup e3 = truncate(*e, 4, 3);
  if (rho(e3) != Ordinal::nat(expected_e3_rho)) {
    ++res.failures;
    res.notes.push_back("power truncation rho is " + rho(e3).str() +
                        ", pinned " + std::to_string(expected_e3_rho));
  }
  bool exceeded = false;
  for (int k = 0; k < e3.levels(); ++k) {
    Ordinal rw = rho_k(w3, std::min(k, w3.top_index()));
    Ordinal re = rho_k(e3, k);
    if (!(rw >= re)) {
      ++res.failures;
      res.notes.push_back("wreath truncation fell below the power at k=" +
                          std::to_string(k));
    }
    if (rw > re) exceeded = true;
  }
  if (!exceeded) {
    ++res.failures;
    res.notes.push_back("wreath truncation never exceeded the power truncation");
  }
  return res;
}

CheckResult check_truncation_bounds() {
  CheckResult res;
  res.name = "truncation-bounds";
  ++res.trials;
  ExprPtr z2 = make_expr(ExAtom{"Z2", builtin_z2_chain()});
  ExprPtr s3;
  {
    std::vector<std::vector<Perm>> gens(3);
    gens[0] = {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)};
    gens[1] = {Perm::from_cycles("(0 1 2)", 3)};
    s3 = make_expr(ExAtom{"S3", ChainGroup::make(3, std::move(gens))});
  }
  // product truncation obeys the exact max law
  ChainGroup pa = truncate(*z2, 4, 2);
  ChainGroup pb = truncate(*s3, 4, 2);
  ChainGroup pab = truncate(*make_expr(ExProd{{z2, s3}}), 4, 2);
  for (int k = 0; k < pab.levels(); ++k) {
    Ordinal expect = std::max(rho_k(pa, std::min(k, pa.top_index())),
                              rho_k(pb, std::min(k, pb.top_index())),
                              [](const Ordinal& x, const Ordinal& y) { return x < y; });
    if (rho_k(pab, k) != expect) {
      ++res.failures;
      res.notes.push_back("product truncation law failed at k=" + std::to_string(k));
    }
  }
  // power truncation obeys the staggered bound; monotone in depth and breadth
  ExprPtr pow = make_expr(ExPowInf{z2});
  Ordinal prev;
  for (int b = 1; b <= 3; ++b) {
    ChainGroup t = truncate(*pow, 4, b);
    ChainGroup base = truncate(*z2, 4, b);
    for (int k = 0; k < t.levels(); ++k) {
      Ordinal bound = add(rho_k(base, std::min(k, base.top_index())),
                          Ordinal::nat(k));
      if (!(rho_k(t, k) <= bound)) {
        ++res.failures;
        res.notes.push_back("staggered bound failed, b=" + std::to_string(b));
      }
    }
    Ordinal r = rho(t);
    if (r < prev) {
      ++res.failures;
      res.notes.push_back("truncation rho not monotone in breadth");
    }
    prev = r;
  }
  return res;
}

std::vector<CheckResult> run_all(std::uint64_t seed, int trials) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(check_ordinal_laws(rng, std::max(trials * 5, 1)));
  out.push_back(check_tree_props(rng, trials * 2));
  out.push_back(check_weighted_level_subtree(rng, trials));
  out.push_back(check_eqseq_product(rng, trials));
  out.push_back(check_surjection_device(rng, std::max(trials / 2, 1)));
  out.push_back(check_rho0(rng, trials));
  out.push_back(check_rho_monotone(rng, std::max(trials / 2, 1)));
  out.push_back(check_product_law(rng, std::max(trials / 2, 1)));
  out.push_back(check_subgroup_quotient(rng, std::max(trials / 2, 1)));
  out.push_back(check_power_bound(rng, std::max(trials / 3, 1)));
  out.push_back(check_normal_shadow(rng, std::max(trials / 3, 1)));
  out.push_back(check_interleave(rng, std::max(trials / 4, 1)));
  out.push_back(check_hierarchy_examples());
  out.push_back(check_wreath_separation());
  out.push_back(check_truncation_bounds());
  return out;
}

}  // namespace orbitrank::verify
