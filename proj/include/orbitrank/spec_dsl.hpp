#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orbitrank/symrank.hpp"

namespace orbitrank {

// A parsed group-spec file: named chain groups and named expressions.
//
// Line-oriented syntax, `#` starts a comment:
//
//   chain S3 = [ (0 1 2),(0 1) ] > [ (0 1 2) ] > [ ]
//   group W  = wreath(powinf(atom(S3)))
//
// `>` separates chain levels, `[ ]` is the trivial subgroup, permutations
// are written in cycle notation and the degree is the largest point
// mentioned in the chain plus one. Expressions may reference earlier
// definitions by name; `atom(Z2)` resolves to a built-in two-element chain
// unless the file defines its own `Z2`.
class SpecFile {
 public:
  static SpecFile parse(std::string_view text);

  const std::vector<std::string>& chain_names() const { return chain_order_; }
  const std::vector<std::string>& group_names() const { return group_order_; }
  bool has_chain(const std::string& name) const;
  bool has_group(const std::string& name) const;
  const ChainGroup& chain(const std::string& name) const;  // throws UnknownName
  const ExprPtr& group(const std::string& name) const;     // throws UnknownName

  void add_chain(const std::string& name, ChainGroup chain);
  void add_group(const std::string& name, ExprPtr expr);

  std::string print() const;  // canonical text; parse(print()) round-trips

 private:
  std::vector<std::string> chain_order_, group_order_;
  std::map<std::string, ChainGroup> chains_;
  std::map<std::string, ExprPtr> groups_;
};

// One chain definition as spec-file text (used by the truncate command).
std::string chain_statement(const std::string& name, const ChainGroup& g);

}  // namespace orbitrank
