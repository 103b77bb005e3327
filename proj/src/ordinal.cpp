#include "orbitrank/ordinal.hpp"

#include <algorithm>
#include <cctype>

#include "orbitrank/errors.hpp"

namespace orbitrank {

namespace {
int g_max_exponent_depth = 8;
}

int max_exponent_depth() { return g_max_exponent_depth; }
void set_max_exponent_depth(int depth) { g_max_exponent_depth = depth; }

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

bool Ordinal::is_zero() const { return terms_.empty(); }

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].coeff;
}

const std::vector<Ordinal::Term>& Ordinal::terms() const { return terms_; }

int Ordinal::exponent_depth() const {
  if (is_finite()) return 0;
  int deepest = 0;
  for (const Term& t : terms_)
    deepest = std::max(deepest, t.exponent.exponent_depth());
  return 1 + deepest;
}

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal a;
  if (n > 0) a.terms_.push_back(Term{Ordinal(), n});
  return a;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& exponent, std::uint64_t coeff) {
  Ordinal a;
  if (coeff == 0) return a;
  a.terms_.push_back(Term{exponent, coeff});
  if (a.exponent_depth() > g_max_exponent_depth)
    throw Error(Err::DepthBudgetExceeded,
                "exponent nesting deeper than " +
                    std::to_string(g_max_exponent_depth));
  return a;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal a;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0)
      throw Error(Err::ValidationError, "zero coefficient in CNF term");
    if (i > 0 && compare(terms[i - 1].exponent, terms[i].exponent) <= 0)
      throw Error(Err::ValidationError, "CNF exponents not strictly decreasing");
  }
  a.terms_ = std::move(terms);
  if (a.exponent_depth() > g_max_exponent_depth)
    throw Error(Err::DepthBudgetExceeded,
                "exponent nesting deeper than " +
                    std::to_string(g_max_exponent_depth));
  return a;
}

int compare(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(ta[i].exponent, tb[i].exponent);
    if (c != 0) return c;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }
bool operator!=(const Ordinal& a, const Ordinal& b) { return compare(a, b) != 0; }
bool operator<(const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; }
bool operator<=(const Ordinal& a, const Ordinal& b) { return compare(a, b) <= 0; }
bool operator>(const Ordinal& a, const Ordinal& b) { return compare(a, b) > 0; }
bool operator>=(const Ordinal& a, const Ordinal& b) { return compare(a, b) >= 0; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms()[0].exponent;
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    if (compare(t.exponent, lead) > 0)
      out.push_back(t);
    else
      break;
  }
  std::size_t keep = out.size();
  if (keep < a.terms().size() && a.terms()[keep].exponent == lead) {
    out.push_back(
        Ordinal::Term{lead, a.terms()[keep].coeff + b.terms()[0].coeff});
  } else {
    out.push_back(b.terms()[0]);
  }
  for (std::size_t i = 1; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  return Ordinal::from_terms(std::move(out));
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal::nat(1)); }

Ordinal mul_omega(const Ordinal& b) {
  std::vector<Ordinal::Term> out;
  out.reserve(b.terms().size());
  for (const auto& t : b.terms())
    out.push_back(Ordinal::Term{add(Ordinal::nat(1), t.exponent), t.coeff});
  return Ordinal::from_terms(std::move(out));
}

Ordinal limit_part(const Ordinal& a) {
  std::vector<Ordinal::Term> out = a.terms();
  if (!out.empty() && out.back().exponent.is_zero()) out.pop_back();
  return Ordinal::from_terms(std::move(out));
}

OrdinalKind successor_kind(const Ordinal& a) {
  if (a.is_zero()) return OrdinalKind::zero;
  if (a.terms().back().exponent.is_zero()) return OrdinalKind::successor;
  return OrdinalKind::limit;
}

Ordinal sup(const std::vector<Ordinal>& values) {
  Ordinal best;
  for (const Ordinal& v : values)
    if (v > best) best = v;
  return best;
}

Ordinal fundamental(const Ordinal& lim, std::uint64_t i) {
  if (successor_kind(lim) != OrdinalKind::limit)
    throw Error(Err::ValidationError,
                "fundamental sequence requires a limit ordinal, got " +
                    lim.str());
  std::vector<Ordinal::Term> base = lim.terms();
  const Ordinal g = base.back().exponent;  // >= 1
  if (base.back().coeff > 1)
    base.back().coeff -= 1;
  else
    base.pop_back();
  Ordinal prefix = Ordinal::from_terms(std::move(base));

  Ordinal step_exp;
  if (successor_kind(g) == OrdinalKind::successor) {
    std::vector<Ordinal::Term> gt = g.terms();
    if (gt.back().coeff > 1)
      gt.back().coeff -= 1;
    else
      gt.pop_back();
    step_exp = Ordinal::from_terms(std::move(gt));
  } else {
    step_exp = fundamental(g, i);
  }
  return add(prefix, Ordinal::omega_pow(step_exp, i));
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) out += "+";
    first = false;
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += "w";
    if (t.exponent != nat(1)) {
      if (t.exponent.is_finite())
        out += "^" + std::to_string(t.exponent.finite_value());
      else
        out += "^(" + t.exponent.str() + ")";
    }
    if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

namespace {

struct OrdParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error(Err::SyntaxError,
                "ordinal `" + std::string(text) + "` at " + std::to_string(pos) +
                    ": " + what);
  }
  std::uint64_t number() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected a number");
    std::uint64_t n = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      n = n * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      ++pos;
    }
    return n;
  }

  Ordinal expr() {
    Ordinal acc = term();
    while (eat('+')) acc = add(acc, term());
    return acc;
  }

  Ordinal term() {
    skip_ws();
    if (pos >= text.size()) fail("expected a term");
    if (std::isdigit(static_cast<unsigned char>(text[pos])))
      return Ordinal::nat(number());
    if (text[pos] != 'w') fail("expected `w` or a number");
    ++pos;
    Ordinal exponent = Ordinal::nat(1);
    if (eat('^')) exponent = exp_atom();
    std::uint64_t coeff = 1;
    if (eat('*')) coeff = number();
    return Ordinal::omega_pow(exponent, coeff);
  }

  Ordinal exp_atom() {
    skip_ws();
    if (pos >= text.size()) fail("expected an exponent");
    if (text[pos] == '(') {
      ++pos;
      Ordinal inner = expr();
      if (!eat(')')) fail("expected `)`");
      return inner;
    }
    if (text[pos] == 'w') {
      ++pos;
      return Ordinal::omega();
    }
    return Ordinal::nat(number());
  }
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) {
  OrdParser p{text};
  Ordinal a = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return a;
}

const char* err_name(Err kind) {
  switch (kind) {
    case Err::DepthBudgetExceeded: return "DepthBudgetExceeded";
    case Err::CycleDetected: return "CycleDetected";
    case Err::DanglingParent: return "DanglingParent";
    case Err::LevelMismatch: return "LevelMismatch";
    case Err::NodeNotFound: return "NodeNotFound";
    case Err::MapNotTotal: return "MapNotTotal";
    case Err::NotAPartition: return "NotAPartition";
    case Err::NotDecreasing: return "NotDecreasing";
    case Err::NotEventuallyDiscrete: return "NotEventuallyDiscrete";
    case Err::NotInjective: return "NotInjective";
    case Err::NotAReduction: return "NotAReduction";
    case Err::NotSurjective: return "NotSurjective";
    case Err::NotClassSurjective: return "NotClassSurjective";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::NotASubgroup: return "NotASubgroup";
    case Err::ChainNotTrivialAtEnd: return "ChainNotTrivialAtEnd";
    case Err::IndexOutOfRange: return "IndexOutOfRange";
    case Err::NotNormal: return "NotNormal";
    case Err::NoInterleaving: return "NoInterleaving";
    case Err::WreathOperandUnsupported: return "WreathOperandUnsupported";
    case Err::LimitHypothesisFails: return "LimitHypothesisFails";
    case Err::SyntaxError: return "SyntaxError";
    case Err::UnknownName: return "UnknownName";
    case Err::DuplicateName: return "DuplicateName";
    case Err::ValidationError: return "ValidationError";
  }
  return "Error";
}

}  // namespace orbitrank
