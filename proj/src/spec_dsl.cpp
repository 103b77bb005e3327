#include "orbitrank/spec_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "orbitrank/errors.hpp"

namespace orbitrank {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Err::SyntaxError,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(column()) + ": " + what);
  }
  int column() const {
    int col = 1;
    for (std::size_t i = pos; i > 0 && text[i - 1] != '\n'; --i) ++col;
    return col;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_space_in_line() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
      ++pos;
    if (!done() && text[pos] == '#')
      while (!done() && text[pos] != '\n') ++pos;
  }
  void skip_blank() {
    for (;;) {
      skip_space_in_line();
      if (!done() && text[pos] == '\n') {
        take();
        continue;
      }
      return;
    }
  }
  bool eat(char c) {
    skip_space_in_line();
    if (peek() == c) {
      take();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected `") + c + "`");
  }
  std::string ident() {
    skip_space_in_line();
    if (done() || (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_'))
      fail("expected a name");
    std::string out;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      out += take();
    return out;
  }
  int number() {
    skip_space_in_line();
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a number");
    int n = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
      n = n * 10 + (take() - '0');
    return n;
  }
};

// Cycle lists for one chain level: `[ ]` or `[ (0 1 2)(3 4), (0 1) ]`.
// Returns the raw cycle strings; degrees are resolved once the whole chain
// statement is read.
std::vector<std::string> parse_level(Cursor& c) {
  c.expect('[');
  std::vector<std::string> perms;
  c.skip_space_in_line();
  while (c.peek() != ']') {
    if (c.done()) c.fail("unterminated `[`");
    std::string cycles;
    while (c.peek() == '(') {
      cycles += '(';
      c.take();
      c.skip_space_in_line();
      while (c.peek() != ')') {
        if (c.done() || c.peek() == '\n') c.fail("unterminated cycle");
        cycles += std::to_string(c.number());
        c.skip_space_in_line();
        if (c.peek() == ',') {
          c.take();
          c.skip_space_in_line();
        }
        if (c.peek() != ')') cycles += ' ';
      }
      c.take();
      cycles += ')';
      c.skip_space_in_line();
    }
    if (cycles.empty()) c.fail("expected a permutation in cycle notation");
    perms.push_back(std::move(cycles));
    if (c.peek() == ',') {
      c.take();
      c.skip_space_in_line();
    }
  }
  c.take();  // ']'
  return perms;
}

int max_point(const std::string& cycles) {
  int best = -1;
  int cur = -1;
  for (char ch : cycles) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur = (cur < 0 ? 0 : cur * 10) + (ch - '0');
    } else {
      best = std::max(best, cur);
      cur = -1;
    }
  }
  return std::max(best, cur);
}

ExprPtr parse_expr(Cursor& c, const SpecFile& spec);

std::vector<ExprPtr> parse_expr_list(Cursor& c, const SpecFile& spec,
                                     char terminator) {
  std::vector<ExprPtr> out;
  c.skip_space_in_line();
  if (c.peek() == terminator) return out;
  for (;;) {
    out.push_back(parse_expr(c, spec));
    c.skip_space_in_line();
    if (c.peek() == ',') {
      c.take();
      continue;
    }
    return out;
  }
}

// Ordinal literal inside an expression: read to the matching `)` at depth 0.
Ordinal parse_ordinal_arg(Cursor& c) {
  c.skip_space_in_line();
  std::string lit;
  int depth = 0;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '(') ++depth;
    if (ch == ')') {
      if (depth == 0) break;
      --depth;
    }
    if (ch == '\n') break;
    lit += c.take();
  }
  try {
    return Ordinal::parse(lit);
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

ExprPtr parse_expr(Cursor& c, const SpecFile& spec) {
  std::string head = c.ident();
  if (head == "trivial") return make_expr(ExTrivial{});
  if (head == "Z") return make_expr(ExDiscreteInfinite{});
  if (head == "atom") {
    c.expect('(');
    std::string name = c.ident();
    c.expect(')');
    if (spec.has_chain(name)) return make_expr(ExAtom{name, spec.chain(name)});
    if (name == "Z2") return make_expr(ExAtom{"Z2", builtin_z2_chain()});
    c.fail("unknown chain `" + name + "`");
  }
  if (head == "prod") {
    c.expect('(');
    auto factors = parse_expr_list(c, spec, ')');
    c.expect(')');
    return make_expr(ExProd{std::move(factors)});
  }
  if (head == "powinf") {
    c.expect('(');
    ExprPtr operand = parse_expr(c, spec);
    c.expect(')');
    return make_expr(ExPowInf{std::move(operand)});
  }
  if (head == "prodinf") {
    c.expect('(');
    auto head_factors = parse_expr_list(c, spec, ';');
    c.expect(';');
    ExprPtr tail = parse_expr(c, spec);
    c.expect(')');
    return make_expr(ExProdInf{std::move(head_factors), std::move(tail)});
  }
  if (head == "wreath") {
    c.expect('(');
    ExprPtr operand = parse_expr(c, spec);
    c.expect(')');
    return make_expr(ExWreath{std::move(operand)});
  }
  if (head == "restricted") {
    c.expect('(');
    auto factors = parse_expr_list(c, spec, ')');
    c.expect(')');
    return make_expr(ExRestricted{std::move(factors)});
  }
  if (head == "example") {
    c.expect('(');
    std::string kind = c.ident();
    if (kind != "G" && kind != "H") c.fail("example kind must be G or H");
    c.expect(',');
    Ordinal alpha = parse_ordinal_arg(c);
    c.expect(')');
    return make_expr(ExExample{kind == "G" ? ExampleKind::G : ExampleKind::H,
                               std::move(alpha)});
  }
  // Reference to an earlier definition.
  if (spec.has_group(head)) return spec.group(head);
  if (spec.has_chain(head)) return make_expr(ExAtom{head, spec.chain(head)});
  throw Error(Err::UnknownName,
              "line " + std::to_string(c.line) + ": `" + head + "`");
}

}  // namespace

SpecFile SpecFile::parse(std::string_view text) {
  SpecFile spec;
  Cursor c{text};
  for (;;) {
    c.skip_blank();
    if (c.done()) break;
    std::string keyword = c.ident();
    if (keyword == "chain") {
      std::string name = c.ident();
      c.expect('=');
      std::vector<std::vector<std::string>> levels;
      levels.push_back(parse_level(c));
      while (c.eat('>')) levels.push_back(parse_level(c));
      int degree = 1;
      for (const auto& level : levels)
        for (const auto& perm : level)
          degree = std::max(degree, max_point(perm) + 1);
      std::vector<std::vector<Perm>> gens;
      for (const auto& level : levels) {
        std::vector<Perm> level_gens;
        for (const auto& perm : level)
          level_gens.push_back(Perm::from_cycles(perm, degree));
        gens.push_back(std::move(level_gens));
      }
      try {
        spec.add_chain(name, ChainGroup::make(degree, std::move(gens)));
      } catch (const Error& e) {
        if (e.kind() == Err::DuplicateName) throw;
        throw Error(Err::ValidationError,
                    "chain `" + name + "`: " + e.what());
      }
    } else if (keyword == "group") {
      std::string name = c.ident();
      c.expect('=');
      spec.add_group(name, parse_expr(c, spec));
    } else {
      c.fail("expected `chain` or `group`, got `" + keyword + "`");
    }
    c.skip_space_in_line();
    if (!c.done() && c.peek() != '\n') c.fail("trailing input");
  }
  return spec;
}

bool SpecFile::has_chain(const std::string& name) const {
  return chains_.count(name) != 0;
}

bool SpecFile::has_group(const std::string& name) const {
  return groups_.count(name) != 0;
}

const ChainGroup& SpecFile::chain(const std::string& name) const {
  auto it = chains_.find(name);
  if (it == chains_.end()) throw Error(Err::UnknownName, "chain `" + name + "`");
  return it->second;
}

const ExprPtr& SpecFile::group(const std::string& name) const {
  auto it = groups_.find(name);
  if (it == groups_.end()) throw Error(Err::UnknownName, "group `" + name + "`");
  return it->second;
}

void SpecFile::add_chain(const std::string& name, ChainGroup chain) {
  if (chains_.count(name) || groups_.count(name))
    throw Error(Err::DuplicateName, "`" + name + "`");
  chains_.emplace(name, std::move(chain));
  chain_order_.push_back(name);
}

void SpecFile::add_group(const std::string& name, ExprPtr expr) {
  if (chains_.count(name) || groups_.count(name))
    throw Error(Err::DuplicateName, "`" + name + "`");
  groups_.emplace(name, std::move(expr));
  group_order_.push_back(name);
}

std::string chain_statement(const std::string& name, const ChainGroup& g) {
  std::string out = "chain " + name + " =";
  for (int n = 0; n < g.levels(); ++n) {
    if (n) out += " >";
    out += " [";
    const auto& gens = g.gens(n);
    bool wrote = false;
    for (const Perm& p : gens) {
      if (p.is_identity()) continue;
      out += wrote ? ", " : " ";
      out += p.cycles();
      wrote = true;
    }
    out += wrote ? " ]" : " ]";
  }
  return out;
}

std::string SpecFile::print() const {
  std::ostringstream out;
  for (const std::string& name : chain_order_)
    out << chain_statement(name, chains_.at(name)) << "\n";
  for (const std::string& name : group_order_)
    out << "group " << name << " = " << groups_.at(name)->str() << "\n";
  return out.str();
}

}  // namespace orbitrank
