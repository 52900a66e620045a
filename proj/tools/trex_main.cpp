// trex: translate formulas between logics, classify clause systems, and
// run the verification suites over the shipped catalog.
//
// Exit codes: 0 all expected outcomes met, 1 data mismatch or malformed
// formula, 2 usage or resolution errors.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trex/parallel.hpp"
#include "trex/report.hpp"
#include "trex/suites.hpp"

namespace {

using namespace trex;

int cmd_translate(const Catalog& cat, const std::string& name, const std::string& text) {
  if (!cat.has_translation(name)) {
    std::cerr << "unknown translation: " << name << "\n";
    return 2;
  }
  const ClauseSystem& t = cat.translation(name);
  Formula f;
  try {
    f = parse(text, t.source.signature);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  }
  std::cout << apply_translation(t, f).text() << "\n";
  return 0;
}

int cmd_classify(const Catalog& cat, const std::string& name) {
  if (!cat.has_translation(name)) {
    std::cerr << "unknown translation: " << name << "\n";
    return 2;
  }
  const ClauseSystem& t = cat.translation(name);
  auto s = classify_shape(t);
  std::cout << "translation " << name << ": " << t.source.name << " -> " << t.target.name << "\n";
  if (!t.description.empty()) std::cout << "  " << t.description << "\n";
  auto flag = [](bool v) { return v ? "yes" : "no"; };
  std::cout << "  opaque:                 " << flag(s.opaque) << "\n"
            << "  general-recursive:      " << flag(s.general_recursive)
            << (s.context_family ? " (extended: context family)" : "") << "\n"
            << "  single translator:      " << flag(s.single_translator) << "\n"
            << "  fixed templates only:   " << flag(s.fixed_templates_only) << "\n"
            << "  parameter free:         " << flag(s.parameter_free) << "\n"
            << "  atom identity:          " << flag(s.atom_identity) << "\n"
            << "  composite keys:         " << flag(s.composite_keys) << "\n";
  if (!s.literal_connectives.empty()) {
    std::cout << "  literal for:           ";
    for (const auto& c : s.literal_connectives) std::cout << " " << c;
    std::cout << "\n";
  }
  std::cout << "  classes:";
  bool any = false;
  auto name_class = [&](bool v, const char* n) {
    if (v) {
      std::cout << (any ? ", " : " ") << n;
      any = true;
    }
  };
  name_class(s.compositional(), "compositional");
  name_class(s.grammatical_shape(), "grammatical shape");
  name_class(s.definitional_shape(), "definitional shape");
  name_class(s.general_recursive, "general-recursive");
  name_class(s.gr_conditional_compositional, "compositional for the conditional");
  name_class(s.opaque, "opaque");
  if (!any) std::cout << " (none)";
  std::cout << "\n";
  return 0;
}

int cmd_verify(const Catalog& cat, const std::vector<std::string>& spec, const Bounds& bounds,
               const std::string& out_path) {
  SuiteResult result;
  if (spec.empty()) {
    std::cerr << "verify needs a suite: edge|counterexamples|dt|connectives|corpus|preorder|full\n";
    return 2;
  }
  const std::string& kind = spec[0];
  try {
    if (kind == "edge") {
      // verify edge SRC->TGT via NAME
      if (spec.size() != 4 || spec[2] != "via") {
        std::cerr << "usage: verify edge SRC->TGT via NAME\n";
        return 2;
      }
      auto arrow = spec[1].find("->");
      if (arrow == std::string::npos) {
        std::cerr << "usage: verify edge SRC->TGT via NAME\n";
        return 2;
      }
      std::string src = spec[1].substr(0, arrow);
      std::string tgt = spec[1].substr(arrow + 2);
      if (!cat.has_translation(spec[3])) {
        std::cerr << "unknown translation: " << spec[3] << "\n";
        return 2;
      }
      const ClauseSystem& t = cat.translation(spec[3]);
      if (t.source.node() != src || t.target.node() != tgt) {
        std::cerr << "translation " << spec[3] << " runs " << t.source.node() << " -> "
                  << t.target.node() << ", not " << src << " -> " << tgt << "\n";
        return 2;
      }
      result = run_edge_suite(cat, spec[3], bounds);
    } else if (kind == "counterexamples") {
      result = run_counterexample_suite(cat, bounds);
    } else if (kind == "dt") {
      result = run_dt_suite(cat, bounds);
    } else if (kind == "connectives") {
      result = run_connective_suite(cat, bounds);
    } else if (kind == "corpus") {
      result = run_corpus_suite(cat, bounds.max_model_size, bounds);
    } else if (kind == "preorder") {
      result = run_preorder_suite(cat, bounds);
    } else if (kind == "full") {
      result = run_full_suite(cat, bounds);
    } else {
      std::cerr << "unknown suite " << kind << "\n";
      return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Json report = result.registry
                    ? make_report(result.name, bounds, result.entries, *result.registry)
                    : make_report(result.name, bounds, result.entries);
  report["all_expected"] = result.all_expected;
  if (!out_path.empty()) write_report(report, out_path);

  for (const auto& e : result.entries)
    std::cout << (e.holds() || e.status == VerdictStatus::Skipped ? "  ok   " : "  FAIL ")
              << e.property << " [" << to_string(e.status) << "]"
              << (e.note.empty() ? "" : " - " + e.note) << "\n";
  if (!result.all_expected) {
    for (const auto& f : result.failures) std::cerr << "expectation missed: " << f << "\n";
    return 1;
  }
  std::cout << "all expected outcomes met";
  if (!out_path.empty()) std::cout << "; report written to " << out_path;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trex: a workbench for logic translations and relative expressiveness"};
  app.require_subcommand(1);

  std::string catalog_path;
  app.add_option("--catalog", catalog_path, "extra catalog file merged with the builtins")
      ->expected(1);
  int workers = 0;
  app.add_option("--workers", workers, "worker thread count (default: hardware)");

  auto* translate = app.add_subcommand("translate", "apply a translation to a formula");
  std::string t_name, t_formula;
  translate->add_option("name", t_name)->required();
  translate->add_option("formula", t_formula)->required();

  auto* classify = app.add_subcommand("classify", "print the shape of a clause system");
  std::string c_name;
  classify->add_option("name", c_name)->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> v_spec;
  verify->add_option("spec", v_spec, "edge SRC->TGT via NAME | counterexamples | dt | "
                                     "connectives | corpus | preorder | full");
  std::string v_suite_flag;
  verify->add_option("--suite", v_suite_flag, "suite name (alternative to the positional form)");
  std::string out_path = "report.json";
  verify->add_option("--out", out_path, "report path (default report.json)");
  std::vector<std::string> bounds_kv;
  verify->add_option("--bounds", bounds_kv, "bound overrides, key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    trex::set_worker_count(workers);
    trex::Catalog cat = trex::Catalog::builtin();
    if (!catalog_path.empty()) cat.merge_user_file(catalog_path);

    if (*translate) return cmd_translate(cat, t_name, t_formula);
    if (*classify) return cmd_classify(cat, c_name);
    if (*verify) {
      std::map<std::string, long long> kv;
      for (const auto& s : bounds_kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
          std::cerr << "bounds are key=value, got " << s << "\n";
          return 2;
        }
        kv[s.substr(0, eq)] = std::stoll(s.substr(eq + 1));
      }
      trex::Bounds bounds = trex::Bounds::from_flags(kv);
      if (!v_suite_flag.empty()) v_spec.insert(v_spec.begin(), v_suite_flag);
      return cmd_verify(cat, v_spec, bounds, out_path);
    }
  } catch (const trex::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const trex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
