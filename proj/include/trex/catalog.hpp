#pragma once

// The shipped catalog: logics, translations, model maps, counterexample
// witnesses and the formula corpus, all defined in a line-oriented text
// format. The builtin entries are embedded as text and run through the
// same loader as user files; user catalogs merge by name and cannot
// override shipped entries.

#include <map>
#include <string>
#include <vector>

#include "trex/model_map.hpp"
#include "trex/translation.hpp"

namespace trex {

struct CorpusEntry {
  std::string logic;
  bool expected_valid = false;
  std::string formula;
};

struct Counterexample {
  std::string name;
  // "gv" runs the sub-logic witness conditions; "truth-preservation" runs
  // the forward truth check of the pair
  std::string kind = "gv";
  std::string translation;
  std::string map;
  std::vector<std::string> theta;  // target-signature formulas; "@delta" is
                                   // replaced by the encoding set at check time
  std::map<std::string, bool> expected;  // gate name -> expected pass
  std::string note;
};

struct ShapeExpectation {
  std::string translation;
  std::vector<std::string> expected;  // tokens checked by the regression suite
};

struct GateExpectation {
  std::string translation;
  std::string gate;  // "g" or "gg"
  bool expect_pass = false;
};

class Catalog {
 public:
  // Parses the embedded builtin catalog.
  static Catalog builtin();
  // Parses additional entries; shipped names are immutable.
  void merge_text(const std::string& text, const std::string& origin);
  void merge_user_file(const std::string& path);

  bool has_logic(const std::string& name) const { return logics_.count(name) > 0; }
  const LogicSpec& logic(const std::string& name) const;
  bool has_translation(const std::string& name) const { return translations_.count(name) > 0; }
  const ClauseSystem& translation(const std::string& name) const;
  const ModelMap& model_map(const std::string& name) const;

  std::vector<std::string> logic_names() const;
  std::vector<std::string> translation_names() const;
  std::vector<std::string> map_names() const;
  const std::vector<Counterexample>& counterexamples() const { return counterexamples_; }
  const std::vector<CorpusEntry>& corpus() const { return corpus_; }
  const std::vector<ShapeExpectation>& shape_expectations() const { return shapes_; }
  const std::vector<GateExpectation>& gate_expectations() const { return gates_; }

 private:
  std::map<std::string, LogicSpec> logics_;
  std::map<std::string, ClauseSystem> translations_;
  std::map<std::string, ModelMap> maps_;
  std::vector<Counterexample> counterexamples_;
  std::vector<CorpusEntry> corpus_;
  std::vector<ShapeExpectation> shapes_;
  std::vector<GateExpectation> gates_;
  std::map<std::string, std::string> shipped_;  // name -> entry kind

  friend struct CatalogParser;
};

// The encoding set over a subformula-closed set: one defining biconditional
// per binary compound in the closure and one half-negation implication per
// negation, all over base-indexed atoms.
FormulaSet mossakowski_delta(const FormulaSet& closure, const SignatureSpec& target_sig,
                             const std::string& base = "p");

// Raw text of the embedded catalog (kept separate for tests of the loader).
const char* builtin_catalog_text();

}  // namespace trex
