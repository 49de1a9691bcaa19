// catq — exhaustive finite-model checking of quantifier and coherence laws.
//
// Subcommands:
//   check category|functor|natural|adjunction <file>   validate + law-check
//   check beck-chevalley <square file>                  transport commutation
//   check suite [--suite a,b] [--cap m=n] [--seed n]    registered suites
//   quantify --op forall|exists [--model set|kan] --in <predicate file>
//   kan --in <predicate file>                           Kan route vs. direct
//   groth build <indexed model file>                    total category
//   pseudolimit <diagram file>                          limit + universality
//
// Output: --format text (default) or json.  JSON output is byte-identical
// across runs for identical inputs and seed.  Exit codes: 0 all checks pass,
// 1 any check failed (witnesses explain why), 2 malformed input.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "catq/adjunction.hpp"
#include "catq/coherence.hpp"
#include "catq/errors.hpp"
#include "catq/fincat.hpp"
#include "catq/grothendieck.hpp"
#include "catq/json_io.hpp"
#include "catq/presheaf.hpp"
#include "catq/report.hpp"
#include "catq/setmodel.hpp"
#include "catq/suites.hpp"

namespace {

using namespace catq;

struct CliOptions {
  std::string format = "text";
  unsigned seed = 0;
  std::vector<std::string> cap_specs;
  std::vector<std::string> suite_specs;
};

/// "module=n" -> caps entry; anything else is an input error.
Caps parse_caps(const std::vector<std::string>& specs) {
  Caps caps;
  for (const std::string& s : specs) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw MalformedInput("cap '" + s + "' is not of the form module=n");
    const std::string module_name = s.substr(0, eq);
    long long value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw MalformedInput("cap '" + s + "' does not end in an integer");
    }
    if (value <= 0) throw MalformedInput("cap '" + s + "' must be positive");
    caps.by_module[module_name] = value;
  }
  return caps;
}

std::vector<std::string> split_commas(const std::vector<std::string>& specs) {
  std::vector<std::string> out;
  for (const std::string& s : specs) {
    std::size_t start = 0;
    while (start <= s.size()) {
      const std::size_t comma = s.find(',', start);
      const std::string piece =
          s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

int emit(const std::vector<CheckReport>& reports, const std::string& format) {
  if (format == "json")
    std::fputs(reports_to_json(reports).c_str(), stdout);
  else
    std::fputs(reports_to_text(reports).c_str(), stdout);
  return exit_code(reports);
}

int emit_one(const std::string& suite, const LawReport& rep, const std::string& format) {
  return emit({report_from_laws(suite, rep)}, format);
}

// --- check handlers -------------------------------------------------------

int run_check_category(const std::string& path, const CliOptions& opt) {
  const FinCategory c = load_category(path);  // loader law-checks; reaching here = lawful
  LawReport rep = check_category(c);
  return emit_one("category", rep, opt.format);
}

int run_check_functor(const std::string& path, const CliOptions& opt) {
  const FinFunctor f = load_functor(path);
  return emit_one("functor", check_functor(f), opt.format);
}

int run_check_natural(const std::string& path, const CliOptions& opt) {
  const NatTransform t = load_natural(path);
  return emit_one("natural", check_natural(t), opt.format);
}

int run_check_adjunction(const std::string& path, const CliOptions& opt) {
  const Adjunction adj = load_adjunction(path);
  return emit_one("adjunction", verify_adjunction(adj), opt.format);
}

int run_check_beck_chevalley(const std::string& path, const CliOptions& opt) {
  const PullbackSquare sq = load_square(path);
  LawReport rep = check_pullback_square(sq);
  if (rep.pass()) {
    rep.merge(check_beck_chevalley(sq));
    return emit_one("beck-chevalley", rep, opt.format);
  }
  // The square loaded cleanly but is not a pullback: that is a finding, not
  // an input error.  Exhibit a transported predicate that tells the routes
  // apart whenever one exists.
  LawReport out;
  out.note_law("not-a-pullback");
  out.instances = rep.instances;
  std::string detail = rep.failures.front().detail;
  if (const auto phi = beck_counterexample(sq))
    detail += "; transport routes differ at " + phi->label();
  out.fail("not-a-pullback", {}, detail);
  return emit_one("beck-chevalley", out, opt.format);
}

int run_check_suite(const CliOptions& opt) {
  RunConfig cfg;
  cfg.caps = parse_caps(opt.cap_specs);
  cfg.seed = opt.seed;
  cfg.suites = split_commas(opt.suite_specs);
  cfg.format = opt.format;
  return emit(run_suites(cfg), opt.format);
}

// --- quantify / kan -------------------------------------------------------

Predicate quantify_direct(const QuantifyInput& q, const std::string& op) {
  const ExtendedContext ext = extend_context(q.gamma, q.a);
  return op == "forall" ? forall(ext, q.phi) : exists(ext, q.phi);
}

Predicate quantify_kan(const QuantifyInput& q, const std::string& op) {
  PresheafCaps caps;
  caps.max_set = 12;
  const KanModel km =
      make_kan_model(presheaf_of_context(q.gamma), presheaf_of_context(q.a), caps);
  const int id = static_cast<int>(q.phi.bits);
  const int out =
      op == "forall" ? km.forall_adj.right.on_object(id) : km.exists_adj.left.on_object(id);
  return Predicate(q.gamma, static_cast<std::uint64_t>(out));
}

int run_quantify(const std::string& path, const std::string& op, const std::string& model,
                 const CliOptions& opt) {
  const QuantifyInput q = load_quantify_input(path);
  const Predicate result = model == "kan" ? quantify_kan(q, op) : quantify_direct(q, op);
  if (opt.format == "json") {
    std::vector<std::string> members;
    for (int i = 0; i < q.gamma.size(); ++i)
      if (result.test(i)) members.push_back(q.gamma.elements[static_cast<std::size_t>(i)].label());
    std::string line = "{\"op\": \"" + op + "\", \"result\": [";
    for (std::size_t i = 0; i < members.size(); ++i)
      line += (i ? ", \"" : "\"") + members[i] + "\"";
    line += "]}\n";
    std::fputs(line.c_str(), stdout);
  } else {
    std::fputs((result.label() + "\n").c_str(), stdout);
  }
  return 0;
}

int run_kan(const std::string& path, const CliOptions& opt) {
  const QuantifyInput q = load_quantify_input(path);
  PresheafCaps caps;
  caps.max_set = 12;
  const KanModel km =
      make_kan_model(presheaf_of_context(q.gamma), presheaf_of_context(q.a), caps);
  const ExtendedContext ext = extend_context(q.gamma, q.a);
  LawReport rep;
  const int id = static_cast<int>(q.phi.bits);
  rep.note_law("kan-forall-agrees");
  ++rep.instances;
  if (static_cast<std::uint64_t>(km.forall_adj.right.on_object(id)) !=
      forall(ext, q.phi).bits)
    rep.fail("kan-forall-agrees", {id},
             "right Kan extension disagrees with the direct universal image");
  rep.note_law("kan-exists-agrees");
  ++rep.instances;
  if (static_cast<std::uint64_t>(km.exists_adj.left.on_object(id)) !=
      exists(ext, q.phi).bits)
    rep.fail("kan-exists-agrees", {id},
             "left Kan extension disagrees with the direct existential image");
  rep.merge(verify_adjunction(km.forall_adj));
  rep.merge(verify_adjunction(km.exists_adj));
  return emit_one("kan", rep, opt.format);
}

// --- groth / pseudolimit --------------------------------------------------

int run_groth_build(const std::string& path, const CliOptions& opt) {
  const IndexedModel m = load_indexed_model(path);
  LawReport rep = check_indexed_model(m);
  if (!rep.pass()) return emit_one("groth", rep, opt.format);
  const TotalCategory t = build_total(m);
  rep.merge(check_category(*t.category));
  rep.merge(check_functor(t.projection));
  rep.merge(check_cartesian_lifts(t, m));
  rep.merge(check_fiber_recovery(t, m));
  CheckReport out = report_from_laws("groth", rep);
  out.stats["total-objects"] = static_cast<long long>(t.category->objects.size());
  out.stats["total-morphisms"] = static_cast<long long>(t.category->morphisms.size());
  return emit({out}, opt.format);
}

int run_pseudolimit(const std::string& path, const CliOptions& opt) {
  const CatDiagram d = load_diagram(path);
  LawReport rep = check_cat_diagram(d);
  if (!rep.pass()) return emit_one("pseudolimit", rep, opt.format);
  const PseudoLimit l = pseudo_limit(d);
  rep.merge(verify_pseudo_universal(l, cone_of_limit(l)));
  CheckReport out = report_from_laws("pseudolimit", rep);
  out.stats["limit-objects"] = static_cast<long long>(l.category->objects.size());
  out.stats["limit-morphisms"] = static_cast<long long>(l.category->morphisms.size());
  return emit({out}, opt.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exhaustive finite-model checks for quantifier and coherence laws"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized corpora")->capture_default_str();
  app.add_option("--cap", opt.cap_specs, "size cap, as module=n (repeatable)");

  // check <what> [file]
  CLI::App* check = app.add_subcommand("check", "law-check one model file or run suites");
  check->fallthrough();
  check->require_subcommand(1);
  struct Target {
    std::string path;
  };
  auto add_file_sub = [&](const std::string& name, const std::string& help, Target& t,
                          const char* extra_flag = nullptr) {
    CLI::App* sub = check->add_subcommand(name, help);
    sub->fallthrough();
    CLI::Option* positional = sub->add_option("file", t.path, "model file");
    CLI::Option* via_in = sub->add_option("--in", t.path, "model file");
    if (extra_flag) sub->add_option(extra_flag, t.path, "model file");
    positional->excludes(via_in);
    return sub;
  };
  Target cat_t, fun_t, nat_t, adj_t, bc_t;
  CLI::App* c_cat = add_file_sub("category", "objects, identities, composition", cat_t);
  CLI::App* c_fun = add_file_sub("functor", "structure preservation", fun_t);
  CLI::App* c_nat = add_file_sub("natural", "naturality squares", nat_t);
  CLI::App* c_adj = add_file_sub("adjunction", "triangles and transposes", adj_t);
  CLI::App* c_bc =
      add_file_sub("beck-chevalley", "transport commutation over a square", bc_t, "--square");
  CLI::App* c_suite = check->add_subcommand("suite", "run registered check suites");
  c_suite->fallthrough();
  c_suite->add_option("--suite", opt.suite_specs,
                      "suite names, comma-separated (default: all)");

  // quantify / kan
  std::string op = "forall", model = "set", quantify_in, kan_in;
  CLI::App* quant = app.add_subcommand("quantify", "apply a quantifier to a predicate file");
  quant->fallthrough();
  quant->add_option("--op", op, "which quantifier")
      ->check(CLI::IsMember({"forall", "exists"}))
      ->capture_default_str();
  quant->add_option("--model", model, "evaluation route")
      ->check(CLI::IsMember({"set", "kan"}))
      ->capture_default_str();
  quant->add_option("--in", quantify_in, "predicate file")->required();

  CLI::App* kan = app.add_subcommand("kan", "check the Kan route against the direct formulas");
  kan->fallthrough();
  kan->add_option("--in", kan_in, "predicate file")->required();

  // groth build / pseudolimit
  Target groth_t, plim_t;
  CLI::App* groth = app.add_subcommand("groth", "indexed-category operations");
  groth->fallthrough();
  groth->require_subcommand(1);
  CLI::App* groth_build = groth->add_subcommand("build", "assemble and check the total category");
  groth_build->fallthrough();
  groth_build->add_option("file", groth_t.path, "indexed model file");
  groth_build->add_option("--in", groth_t.path, "indexed model file");
  CLI::App* plim = app.add_subcommand("pseudolimit", "build a pseudo-limit and verify it");
  plim->fallthrough();
  plim->add_option("file", plim_t.path, "diagram file");
  plim->add_option("--in", plim_t.path, "diagram file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // malformed invocation is an input error
  }

  auto need_path = [](const Target& t, const char* what) {
    if (t.path.empty()) throw MalformedInput(std::string("no ") + what + " file given");
    return t.path;
  };

  try {
    if (c_cat->parsed()) return run_check_category(need_path(cat_t, "category"), opt);
    if (c_fun->parsed()) return run_check_functor(need_path(fun_t, "functor"), opt);
    if (c_nat->parsed()) return run_check_natural(need_path(nat_t, "transformation"), opt);
    if (c_adj->parsed()) return run_check_adjunction(need_path(adj_t, "adjunction"), opt);
    if (c_bc->parsed()) return run_check_beck_chevalley(need_path(bc_t, "square"), opt);
    if (c_suite->parsed()) return run_check_suite(opt);
    if (quant->parsed()) return run_quantify(quantify_in, op, model, opt);
    if (kan->parsed()) return run_kan(kan_in, opt);
    if (groth_build->parsed()) return run_groth_build(need_path(groth_t, "indexed model"), opt);
    if (plim->parsed()) return run_pseudolimit(need_path(plim_t, "diagram"), opt);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 2;  // no subcommand handler matched; unreachable with require_subcommand
}
