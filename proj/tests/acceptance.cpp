// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion runs the corresponding law check with its required instance
// count and wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orbitrank/verify.hpp"

using namespace orbitrank;
using verify::CheckResult;

namespace {

struct Criterion {
  std::string name;
  double seconds_limit;
  std::function<CheckResult()> run;
};

int run_all(const std::vector<Criterion>& criteria) {
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    CheckResult result = c.run();
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    bool ok = result.passed() && elapsed <= c.seconds_limit;
    std::printf("%s criterion %02zu %-28s (%d instances, %.2fs, limit %.0fs)\n",
                ok ? "PASS" : "FAIL", i + 1, c.name.c_str(), result.trials,
                elapsed, c.seconds_limit);
    if (!result.passed())
      for (const std::string& note : result.notes)
        std::printf("     %s\n", note.c_str());
    if (!ok) ++failed;
  }
  std::printf("acceptance: %zu/%zu passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;
  auto seeded = [](std::uint64_t seed, auto fn, int trials) {
    return [seed, fn, trials] {
      verify::Rng rng(seed);
      return fn(rng, trials);
    };
  };

  criteria.push_back({"rho0-zero", 1.0,
                      seeded(101, verify::check_rho0, 110)});
  criteria.push_back({"rho-monotone-witness", 10.0,
                      seeded(102, verify::check_rho_monotone, 110)});
  criteria.push_back(
      {"product-law", 30.0, [] {
         verify::Rng rng(103);
         return verify::check_product_law(rng, 55, verify::ProductRule::maximum);
       }});
  criteria.push_back({"subgroup-quotient", 30.0,
                      seeded(104, verify::check_subgroup_quotient, 55)});
  criteria.push_back({"power-bound", 30.0,
                      seeded(105, verify::check_power_bound, 40)});
  criteria.push_back({"normal-shadow", 10.0,
                      seeded(106, verify::check_normal_shadow, 35)});
  criteria.push_back({"tree-lemmas", 10.0, [] {
                        verify::Rng rng(107);
                        CheckResult plain = verify::check_tree_props(rng, 220);
                        CheckResult weighted =
                            verify::check_weighted_level_subtree(rng, 25);
                        CheckResult merged = plain;
                        merged.name = "tree-lemmas";
                        merged.trials += weighted.trials;
                        merged.failures += weighted.failures;
                        merged.notes.insert(merged.notes.end(),
                                            weighted.notes.begin(),
                                            weighted.notes.end());
                        return merged;
                      }});
  criteria.push_back({"eqseq-product-max", 10.0,
                      seeded(108, verify::check_eqseq_product, 110)});
  criteria.push_back({"interleave-iso", 10.0,
                      seeded(109, verify::check_interleave, 22)});
  criteria.push_back({"hierarchy-witnesses", 1.0,
                      [] { return verify::check_hierarchy_examples(); }});
  criteria.push_back({"wreath-separation", 60.0,
                      [] { return verify::check_wreath_separation(); }});
  criteria.push_back({"ordinal-kernel", 1.0,
                      seeded(112, verify::check_ordinal_laws, 500)});

  return run_all(criteria);
}
