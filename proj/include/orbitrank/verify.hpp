#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orbitrank/eqseq.hpp"
#include "orbitrank/permgroup.hpp"
#include "orbitrank/wftree.hpp"

namespace orbitrank::verify {

using Rng = std::mt19937_64;

// Uniform-ish pick in [0, n); modulo keeps runs reproducible across
// platforms, which uniform_int_distribution does not guarantee.
inline std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }

struct ChainGenOptions {
  int max_degree = 8;
  std::uint64_t max_order = 2000;
  int max_levels = 5;
};

ChainGroup random_chain(Rng& rng, const ChainGenOptions& opt);
std::vector<Perm> random_subgroup_gens(Rng& rng, const ChainGroup& g);
// Normal closure of a random element (whole group when it generates it).
std::vector<Perm> random_normal_gens(Rng& rng, const ChainGroup& g);
// A chain every member of which is normal in the whole group.
ChainGroup random_normal_chain(Rng& rng, const ChainGenOptions& opt);

EqSeq random_eqseq(Rng& rng, int max_points = 6, int max_depth = 5);
WfTree random_tree(Rng& rng, int max_nodes = 40);
// Weighted tree whose rank is a limit ordinal (a dominating weighted root).
WfTree random_weighted_limit_tree(Rng& rng);
std::vector<int> random_level_indices(Rng& rng, int max_level);
std::vector<Ordinal> ordinals_below_w3(int coeff_bound);  // exhaustive grid

// Independent rank oracle: recursion over (level, class) pairs of the
// sequence itself, bypassing the tree machinery.
Ordinal brute_rank(const EqSeq& e);

struct CheckResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> notes;  // counterexample dumps, shrunk
  bool passed() const { return failures == 0; }
};

// How the rank of a product is predicted from the factor ranks. The sum
// variant exists to show the suite catches a wrong law.
enum class ProductRule { maximum, sum };

CheckResult check_ordinal_laws(Rng& rng, int trials);
CheckResult check_tree_props(Rng& rng, int trials);
CheckResult check_weighted_level_subtree(Rng& rng, int trials);
CheckResult check_eqseq_product(Rng& rng, int trials);
CheckResult check_surjection_device(Rng& rng, int trials);
CheckResult check_rho0(Rng& rng, int trials);
CheckResult check_rho_monotone(Rng& rng, int trials);
CheckResult check_product_law(Rng& rng, int trials,
                              ProductRule rule = ProductRule::maximum);
CheckResult check_subgroup_quotient(Rng& rng, int trials);
CheckResult check_power_bound(Rng& rng, int trials);
CheckResult check_normal_shadow(Rng& rng, int trials);
CheckResult check_interleave(Rng& rng, int trials);
CheckResult check_hierarchy_examples();
CheckResult check_wreath_separation();
CheckResult check_truncation_bounds();

// The whole suite with one seed; deterministic given the seed.
std::vector<CheckResult> run_all(std::uint64_t seed, int trials);

}  // namespace orbitrank::verify
