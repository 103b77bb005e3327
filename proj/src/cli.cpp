#include "orbitrank/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "orbitrank/errors.hpp"
#include "orbitrank/spec_dsl.hpp"
#include "orbitrank/symrank.hpp"
#include "orbitrank/verify.hpp"

namespace orbitrank {

namespace {

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Err::ValidationError, "cannot open spec file `" + path + "`");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return SpecFile::parse(buffer.str());
}

int rank_command(const std::string& file, const std::string& name,
                 const std::optional<std::string>& alpha_text,
                 std::ostream& out) {
  SpecFile spec = load_spec(file);
  if (spec.has_chain(name)) {
    const ChainGroup& g = spec.chain(name);
    out << "chain " << name << ": degree " << g.degree() << ", levels "
        << g.levels() << " (orders:";
    for (int n = 0; n < g.levels(); ++n) out << " " << g.order(n);
    out << ")\n";
    out << "  rho_k:";
    Ordinal top;
    for (int k = 0; k < g.levels(); ++k) {
      Ordinal r = rho_k(g, k);
      if (r > top) top = r;
      out << " k=" << k << ": " << r.str() << ";";
    }
    out << "\n  rho: " << top.str() << "\n";
    return 0;
  }
  if (spec.has_group(name)) {
    const ExprPtr& e = spec.group(name);
    Classification c = classify(*e);
    out << "group " << name << " = " << e->str() << "\n";
    out << "  classification: rank = " << c.rank.str() << ", "
        << (c.tight ? "tight" : "not tight") << "\n";
    if (alpha_text) {
      Ordinal alpha = Ordinal::parse(*alpha_text);
      out << "  " << alpha.str() << "-CLI: "
          << (is_alpha_cli(*e, alpha) ? "yes" : "no") << "; L-" << alpha.str()
          << "-CLI: " << (is_L_alpha_cli(*e, alpha) ? "yes" : "no") << "\n";
    }
    return 0;
  }
  throw Error(Err::UnknownName, "`" + name + "` in " + file);
}

int tree_command(const std::string& file, const std::string& name, int k,
                 bool dot, std::ostream& out) {
  SpecFile spec = load_spec(file);
  const ChainGroup& g = spec.chain(name);
  OrbitTree t = orbit_tree(coset_eqseq(g, k));
  out << (dot ? t.tree.to_dot() : t.tree.to_json_text()) << "\n";
  return 0;
}

int verify_command(const std::optional<std::string>& file, std::uint64_t seed,
                   int trials, std::ostream& out) {
  if (trials == 0) {
    out << "warning: 0 trials requested; nothing checked (vacuous pass)\n";
    return 0;
  }
  bool all_ok = true;
  if (file) {
    SpecFile spec = load_spec(*file);
    for (const std::string& name : spec.chain_names()) {
      const ChainGroup& g = spec.chain(name);
      bool ok = rho_k(g, 0).is_zero();
      Ordinal prev;
      for (int k = 0; k < g.levels(); ++k) {
        Ordinal r = rho_k(g, k);
        if (r < prev) ok = false;
        prev = r;
      }
      out << "chain " << name << ": " << (ok ? "ok" : "FAIL")
          << " (rho = " << prev.str() << ")\n";
      all_ok = all_ok && ok;
    }
    for (const std::string& name : spec.group_names()) {
      try {
        Classification c = classify(*spec.group(name));
        out << "group " << name << ": rank " << c.rank.str() << ", "
            << (c.tight ? "tight" : "not tight") << "\n";
      } catch (const Error& e) {
        out << "group " << name << ": FAIL (" << e.what() << ")\n";
        all_ok = false;
      }
    }
  }
  auto results = verify::run_all(seed, trials);
  for (const auto& r : results) {
    out << (r.passed() ? "ok   " : "FAIL ") << r.name << " (" << r.trials
        << " trials)\n";
    if (!r.passed()) {
      all_ok = false;
      for (const std::string& note : r.notes) out << "  " << note << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int truncate_command(const std::string& file, const std::string& name,
                     int depth, int breadth, const std::string& out_path,
                     std::ostream& out) {
  SpecFile spec = load_spec(file);
  ExprPtr expr;
  if (spec.has_group(name))
    expr = spec.group(name);
  else if (spec.has_chain(name))
    expr = make_expr(ExAtom{name, spec.chain(name)});
  else
    throw Error(Err::UnknownName, "`" + name + "` in " + file);
  ChainGroup g = truncate(*expr, depth, breadth);
  std::string text =
      chain_statement(name + "_d" + std::to_string(depth) + "b" +
                          std::to_string(breadth),
                      g) +
      "\n";
  std::ofstream sink(out_path);
  if (!sink)
    throw Error(Err::ValidationError, "cannot write `" + out_path + "`");
  sink << text;
  out << "wrote " << out_path << " (degree " << g.degree() << ", order "
      << g.order(0) << ", levels " << g.levels() << ")\n";
  return 0;
}

int examples_command(const std::string& alpha_text,
                     const std::optional<std::string>& kind, std::ostream& out) {
  Ordinal alpha = Ordinal::parse(alpha_text);
  auto show = [&](ExampleKind k) {
    ExprPtr e = build_example(k, alpha);
    out << (k == ExampleKind::G ? "G" : "H") << "_" << alpha.str() << " = "
        << describe(*e);
  };
  if (!kind || *kind == "H") show(ExampleKind::H);
  if (!kind || *kind == "G") show(ExampleKind::G);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"orbit-tree ranks for subgroup chains and symbolic groups"};
  app.require_subcommand(1);

  std::string file, name, out_path;
  std::optional<std::string> alpha;
  std::optional<std::string> verify_file;
  std::optional<std::string> kind;
  std::string examples_alpha;
  int k = 0, depth = 3, breadth = 2;
  bool dot = false, json = false;
  std::uint64_t seed = 1;
  int trials = 25;

  CLI::App* rank = app.add_subcommand("rank", "rho_k table or classification");
  rank->add_option("file", file)->required();
  rank->add_option("name", name)->required();
  rank->add_option("--alpha", alpha, "ordinal for CLI verdicts");

  CLI::App* tree = app.add_subcommand("tree", "orbit tree of a chain group");
  tree->add_option("file", file)->required();
  tree->add_option("name", name)->required();
  tree->add_option("--k", k, "coset level")->required();
  tree->add_flag("--dot", dot, "DOT output");
  tree->add_flag("--json", json, "JSON output (default)");

  CLI::App* verify = app.add_subcommand("verify", "randomized law checks");
  verify->add_option("--file", verify_file, "also check a spec file");
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials);

  CLI::App* trunc = app.add_subcommand("truncate", "finite shadow of a group");
  trunc->add_option("file", file)->required();
  trunc->add_option("name", name)->required();
  trunc->add_option("--depth", depth)->required();
  trunc->add_option("--breadth", breadth)->required();
  trunc->add_option("-o,--out", out_path)->required();

  CLI::App* examples = app.add_subcommand("examples", "hierarchy witnesses");
  examples->add_option("--alpha", examples_alpha)->required();
  examples->add_option("--kind", kind, "G or H");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help goes to stdout with a zero exit
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (rank->parsed()) return rank_command(file, name, alpha, out);
    if (tree->parsed()) return tree_command(file, name, k, dot, out);
    if (verify->parsed()) return verify_command(verify_file, seed, trials, out);
    if (trunc->parsed())
      return truncate_command(file, name, depth, breadth, out_path, out);
    if (examples->parsed()) return examples_command(examples_alpha, kind, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace orbitrank
