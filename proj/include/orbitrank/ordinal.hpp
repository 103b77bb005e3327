#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbitrank {

// Countable ordinal below epsilon_0 in Cantor normal form:
//
//   a  =  w^e1 * c1  +  w^e2 * c2  +  ...  +  w^ek * ck
//
// with e1 > e2 > ... > ek (ordinal comparison) and every ci >= 1. The empty
// term list is 0. Values are immutable and always canonical, so equality of
// ordinals is equality of term lists.
//
// Exponent nesting depth is bounded (default 8); constructing deeper values
// throws Err::DepthBudgetExceeded.
class Ordinal {
 public:
  struct Term;

  Ordinal();  // zero
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();
  // w^exponent * coeff; coeff 0 gives 0.
  static Ordinal omega_pow(const Ordinal& exponent, std::uint64_t coeff = 1);
  // Validates strict exponent descent and positive coefficients.
  static Ordinal from_terms(std::vector<Term> terms);

  bool is_zero() const;
  bool is_finite() const;
  std::uint64_t finite_value() const;  // requires is_finite()
  const std::vector<Term>& terms() const;
  int exponent_depth() const;

  // Text form used everywhere: `0`, `5`, `w`, `w*3`, `w^2*3+w+4`, `w^(w+1)`.
  std::string str() const;
  static Ordinal parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coeff = 1;
};

enum class OrdinalKind { zero, successor, limit };

// Total order; negative / zero / positive like strcmp.
int compare(const Ordinal& a, const Ordinal& b);

bool operator==(const Ordinal& a, const Ordinal& b);
bool operator!=(const Ordinal& a, const Ordinal& b);
bool operator<(const Ordinal& a, const Ordinal& b);
bool operator<=(const Ordinal& a, const Ordinal& b);
bool operator>(const Ordinal& a, const Ordinal& b);
bool operator>=(const Ordinal& a, const Ordinal& b);

// Ordinal sum a + b (absorbs low terms of a below the leading term of b).
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);

// Left multiplication by omega: w * b, term-wise w*(w^e*c) = w^(1+e)*c.
Ordinal mul_omega(const Ordinal& b);

// Largest limit ordinal <= a, or 0: drops the finite tail of the CNF.
Ordinal limit_part(const Ordinal& a);

OrdinalKind successor_kind(const Ordinal& a);

// Maximum of the list; empty list gives 0.
Ordinal sup(const std::vector<Ordinal>& values);

// i-th element of the canonical fundamental sequence of a limit ordinal:
// with last term w^g*c, element i is  (prefix + w^g*(c-1)) + w^{g_i}*i,
// where g_i = g-1 when g is a successor and the i-th fundamental-sequence
// element of g when g is a limit. Strictly increasing with supremum `lim`.
Ordinal fundamental(const Ordinal& lim, std::uint64_t i);

// Configurable exponent nesting bound (default 8).
int max_exponent_depth();
void set_max_exponent_depth(int depth);

}  // namespace orbitrank
