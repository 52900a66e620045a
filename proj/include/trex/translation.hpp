#pragma once

// Translations as recursive clause systems.
//
// A ClauseSystem holds one or more mutually recursive translators. Each
// translator gives a rule for atoms and one clause per (possibly
// composite) connective key; a clause is a target-signature template plus
// an operand plan binding every placeholder either to a translated operand
// ("via <translator> <operand>") or to an indexed fresh atom built from
// raw source operands ("idx <base> <operands...>"). Composite keys like
// "not box" match a spine of unary connectives and are tried longest
// first. A system may instead carry an opaque whole-formula rule (double
// negation, formula-indexed atoms, a fixed constant, or
// enumeration-indexed validities); opaque systems are exactly the ones
// that are not general-recursive.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trex/semantics.hpp"

namespace trex {

enum class OperandRange : std::uint8_t { AnyFormula, AtomOnly };

struct PlanStep {
  enum class Kind : std::uint8_t { Via, Index } kind = Kind::Via;
  std::string translator;   // Via
  int operand = 0;          // Via
  bool shift_context = false;
  std::string index_base;         // Index
  std::vector<int> index_tuple;   // Index: raw source operand indices
};

struct Clause {
  std::vector<std::string> key;  // single symbol, or a unary spine like {"not","box"}
  Template body;
  std::vector<PlanStep> plan;  // plan[i] fills placeholder #(i+1)
  std::vector<OperandRange> ranges;

  std::string key_text() const;
};

struct AtomRule {
  enum class Kind : std::uint8_t { Identity, Template, Indexed, PredLift } kind = Kind::Identity;
  std::optional<Template> body;  // Template: exactly one placeholder
  std::string base;              // Indexed
};

struct Translator {
  std::string id;
  AtomRule atom;
  std::optional<AtomRule> pred;  // defaults to literal for first-order atoms
  std::vector<Clause> clauses;

  const Clause* find_clause(const std::string& key_text) const;
};

struct OpaqueRule {
  enum class Kind : std::uint8_t { DoubleNegation, IndexAtom, ConstFormula, EnumValidities } kind =
      Kind::IndexAtom;
  std::string base;  // IndexAtom
  std::optional<Formula> constant;
  // EnumValidities: formulas are ranked in the canonical enumeration over
  // these atoms and mapped to the equally ranked valid target formula.
  std::vector<std::string> enum_atoms = {"p", "q"};
  int enum_max_nodes = 7;
};

struct ContextFamily {
  // variable tokens for T^x-style translator families; translation
  // alternates between the two on every shift
  std::vector<std::string> tokens = {"x", "y"};
};

struct ClauseSystem {
  std::string name;
  std::string description;
  LogicSpec source;
  LogicSpec target;
  std::string main = "T";
  std::map<std::string, Translator> translators;
  std::optional<ContextFamily> context;
  std::optional<OpaqueRule> opaque;
  bool declares_model_map_dependency = false;
  // Fragment systems cover only part of the source signature (kept for
  // classification demos); coverage checking is skipped for them.
  bool fragment = false;
  // set by compose_translations
  std::string composition_mode;  // "", "surjective", "weakened"

  bool is_opaque() const { return opaque.has_value(); }
  // Invariants: placeholders bound by the plan, index steps produce
  // indexed atoms only, and (unless opaque or fragment) every source
  // connective is covered by a single-symbol clause in every translator.
  void check() const;
};

// Recursive clause application from the main translator; composite keys
// are matched longest first. Throws on connectives without a clause.
Formula apply_translation(const ClauseSystem& cs, const Formula& f);
// Images of a whole set, in canonical order of the images.
FormulaSet apply_translation(const ClauseSystem& cs, const FormulaSet& fs);

// --- shape classification ------------------------------------------------------

struct ShapeClass {
  std::set<std::string> literal_connectives;
  bool single_translator = false;
  bool fixed_templates_only = false;
  bool parameter_free = false;
  bool atom_identity = false;
  bool general_recursive = false;
  bool gr_conditional_compositional = false;
  bool opaque = false;
  bool context_family = false;
  bool composite_keys = false;
  bool fragment = false;

  bool compositional() const {
    return !opaque && single_translator && fixed_templates_only && !composite_keys &&
           !context_family;
  }
  bool grammatical_shape() const { return compositional() && parameter_free; }
  bool definitional_shape() const { return grammatical_shape() && atom_identity; }
};

ShapeClass classify_shape(const ClauseSystem& cs);

// --- composition -----------------------------------------------------------------

enum class CompositionMode : std::uint8_t { Surjective, Weakened };

// Clause fusion computing t2 after t1. Weakened mode records that the
// backward guarantee only covers the intersected range of the composite;
// verifiers read that from composition_mode. Neither input may be opaque;
// context families, composite keys in t2 and indexing in t2 are not
// fusable and raise errors.
ClauseSystem compose_translations(const ClauseSystem& t1, const ClauseSystem& t2,
                                  CompositionMode mode);

// Literal embedding of a sub-signature into a host logic.
ClauseSystem make_identity_translation(const std::string& name, const LogicSpec& source,
                                       const LogicSpec& target);

}  // namespace trex
