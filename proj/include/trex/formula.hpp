#pragma once

// Formula syntax trees over explicit signatures.
//
// Formulas are immutable values sharing structure through counted nodes.
// Every node caches its canonical rendering and its node count, so equality
// and the canonical (size, then text) order are cheap. The concrete syntax
// is a prefix s-expression grammar:
//
//   formula := atom | indexed | const | "(" symbol formula* ")"
//   indexed := base "{" key "}"
//
// Canonical form uses single spaces and the fixed symbol names
// not, and, or, ->, <->, box, dia, top, bot, forall, exists.
// Atoms of the shape "#k" are reserved as template placeholders.
// An indexed atom carries an opaque key; keys produced by indexed_atom()
// are the comma-joined canonical renderings of the operand tuple, which
// makes construction injective on operand tuples.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

enum class FormulaKind : std::uint8_t { Atom, IndexedAtom, Const, Apply, Pred, Quant };
enum class ConstKind : std::uint8_t { Top, Bot };
enum class QuantKind : std::uint8_t { Forall, Exists };

struct ConnectiveSpec {
  std::string symbol;
  int arity = 1;
};

// First-order extension of a signature: unary/n-ary predicate symbols, a
// binary accessibility relation symbol and the variable namespace.
struct FoPart {
  std::vector<std::pair<std::string, int>> predicates;
  std::string relation_symbol = "R";
  std::vector<std::string> variables = {"x", "y"};

  std::optional<int> predicate_arity(const std::string& symbol) const;
};

struct SignatureSpec {
  std::string name;
  std::vector<ConnectiveSpec> connectives;
  bool has_top = false;
  bool has_bot = false;
  // Johansson-style falsum: "bot" parses as a plain atom instead of a
  // constant, so it gets no special evaluation clause.
  bool bot_is_atom = false;
  std::string atom_prefix = "p";
  std::optional<FoPart> fo;

  std::optional<int> arity_of(const std::string& symbol) const;
  bool has_connective(const std::string& symbol) const { return arity_of(symbol).has_value(); }
  // Invariants: symbols pairwise distinct, arities >= 1, no clash with the
  // reserved words top/bot/forall/exists.
  void check() const;
};

class Formula {
 public:
  Formula() = default;  // empty handle; only valid after assignment

  static Formula atom(std::string name);
  static Formula indexed(std::string base, std::string key);
  static Formula constant(ConstKind c);
  static Formula apply(std::string symbol, std::vector<Formula> operands);
  static Formula pred(std::string symbol, std::vector<std::string> vars);
  static Formula quant(QuantKind q, std::string var, Formula body);

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const { return node_->kind; }
  // Atom name, indexed base, Apply connective or Pred symbol.
  const std::string& symbol() const { return node_->symbol; }
  // IndexedAtom key, or the bound variable of a quantifier.
  const std::string& key() const { return node_->aux; }
  const std::string& quant_var() const { return node_->aux; }
  ConstKind const_kind() const { return node_->ckind; }
  QuantKind quant_kind() const { return node_->qkind; }
  const std::vector<Formula>& operands() const { return node_->operands; }
  const Formula& quant_body() const { return node_->operands.front(); }
  const std::vector<std::string>& pred_vars() const { return node_->vars; }

  // Canonical rendering; parse(text()) reproduces the formula.
  const std::string& text() const { return node_->text; }
  int node_count() const { return node_->count; }

  bool operator==(const Formula& o) const { return text() == o.text(); }
  bool operator!=(const Formula& o) const { return !(*this == o); }
  // Canonical order: node count, then lexicographic on canonical text.
  bool operator<(const Formula& o) const {
    if (node_->count != o.node_->count) return node_->count < o.node_->count;
    return node_->text < o.node_->text;
  }

 private:
  struct Node {
    FormulaKind kind;
    std::string symbol;
    std::string aux;  // indexed key / quantified variable
    ConstKind ckind = ConstKind::Top;
    QuantKind qkind = QuantKind::Forall;
    std::vector<Formula> operands;
    std::vector<std::string> vars;  // Pred arguments
    std::string text;
    int count = 1;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

// --- parsing and rendering -------------------------------------------------

// Parses canonical prefix syntax, validating symbols and arities against the
// signature. Quantifiers and predicate applications require a first-order
// part. Throws ParseError with the offending offset.
Formula parse(const std::string& text, const SignatureSpec& sig);

inline std::string render(const Formula& f) { return f.text(); }

// --- templates ---------------------------------------------------------------

// A formula over placeholder atoms #1..#m. Placeholders are disjoint from
// signature atoms by construction of the "#" prefix.
struct Template {
  Formula body;
  int placeholder_count = 0;

  static Template over(Formula body, int count);
  // Parses the body against `sig` and takes the placeholder count from the
  // highest #k occurring (or an explicit count >= that).
  static Template parse(const std::string& text, const SignatureSpec& sig,
                        std::optional<int> count = std::nullopt);
};

// True iff f is a placeholder atom "#k"; writes k (1-based) to index.
bool is_placeholder(const Formula& f, int* index = nullptr);

// Replaces each #i by args[i-1]. Propositional placeholders only, so there
// are no capture issues.
Formula substitute(const Template& t, std::span<const Formula> args);

// Renames quantified variables and predicate arguments (used for the
// context tokens of variable-indexed translator families).
Formula rename_variables(const Formula& f, const std::map<std::string, std::string>& renaming);

// --- structural helpers ------------------------------------------------------

// Least superset closed under immediate subformulas, in canonical order.
FormulaSet subformula_closure(const FormulaSet& set);
FormulaSet subformula_closure(const Formula& f);

// Names of plain atoms occurring in f.
std::set<std::string> plain_atoms(const Formula& f);
// Rendered texts of Atom and IndexedAtom leaves (the valuation domain of a
// propositional model for f).
std::set<std::string> atom_keys(const Formula& f);
std::set<std::string> atom_keys(const FormulaSet& set);
// IndexedAtom leaves themselves.
void collect_indexed_atoms(const Formula& f, FormulaSet& out);

// Splits an indexed-atom key into its top-level comma-separated parts,
// respecting nested parentheses and braces.
std::vector<std::string> split_indexed_key(const std::string& key);

// --- fresh atoms -------------------------------------------------------------

// IndexedAtom whose key is the comma-joined canonical rendering of the
// operands; injective on operand tuples.
Formula indexed_atom(const std::string& base, std::span<const Formula> operands);

// --- enumeration -------------------------------------------------------------

// Every formula over `atoms` (plus the signature's constants) with at most
// max_nodes nodes, each exactly once, ordered by node count then canonical
// text. Quantifiers and predicates are not enumerated. The result is a
// plain vector, so worker shards can restart anywhere.
std::vector<Formula> enumerate_formulas(const SignatureSpec& sig,
                                        const std::vector<Formula>& atoms,
                                        int max_nodes);

}  // namespace trex
