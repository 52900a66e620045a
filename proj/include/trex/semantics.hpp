#pragma once

// Executable semantics for the catalog logics.
//
// A LogicSpec couples a signature with one of six engines:
//
//   Matrix       finite truth tables with a designated set
//   Kripke       finite pointed models over a frame class (K, S4, finite
//                posets for the desk reading of Grz, persistent posets for
//                intuitionistic logic)
//   Bivaluation  assignments over a subformula closure with classical
//                clauses for and/or/-> and the half clause for negation
//                (truth of a formula forces falsity of its negation, not
//                conversely)
//   Relatedness  classical valuation plus a reflexive symmetric relation
//                on atoms; the arrow is material implication gated by the
//                lifted relation (some atom of the antecedent related to
//                some atom of the consequent)
//   FOFinite     finite first-order structures with unary predicates and
//                one binary relation
//   Explicit     a finite consequence relation given by listing
//
// Model enumeration is exposed as indexable spaces so worker shards can
// restart anywhere; Kripke and matrix models also have packed forms with
// compiled evaluators for the inner sweep kernels. The recursive
// evaluators are the reference semantics and stay around for tests.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trex/formula.hpp"

namespace trex {

enum class EngineKind : std::uint8_t { Matrix, Kripke, Bivaluation, Relatedness, FOFinite, Explicit };
enum class FrameClass : std::uint8_t { K, S4, GrzDesk, Ipl };
enum class Decidable : std::uint8_t { Yes, No, Unknown };
enum class ConsequenceMode : std::uint8_t { TheoremhoodOnly, Full };

std::string to_string(EngineKind k);
std::string to_string(FrameClass c);

// --- engines -------------------------------------------------------------------

struct MatrixSemantics {
  std::vector<std::string> value_names;       // e.g. "0", "1/2", "1"
  std::vector<bool> designated;               // per value index
  std::map<std::string, std::vector<int>> tables;  // symbol -> row-major table
  int top_value = -1;  // interpretation of constants when the signature has them
  int bot_value = -1;

  int value_count() const { return static_cast<int>(value_names.size()); }
  void check(const SignatureSpec& sig) const;
};

struct ExplicitConsequence {
  std::vector<Formula> universe;  // canonical order
  // The pairs that hold. Kept reflexive and monotone over the universe.
  std::set<std::pair<std::set<Formula>, Formula>> holds;

  bool derives(const std::set<Formula>& premises, const Formula& conclusion) const;
  void check() const;
};

struct LogicSpec {
  std::string name;
  SignatureSpec signature;
  EngineKind engine = EngineKind::Matrix;
  std::optional<MatrixSemantics> matrix;
  std::optional<FrameClass> frame;
  std::string bivaluation_constraint;  // only "wpl-half-negation" is known
  std::optional<ExplicitConsequence> explicit_rel;
  Decidable decidable = Decidable::Yes;
  ConsequenceMode consequence_mode = ConsequenceMode::Full;
  // Registry identity; fragments point at their parent logic.
  std::string registry_node;

  const std::string& node() const { return registry_node.empty() ? name : registry_node; }
  // Matrix, Bivaluation, Relatedness and Explicit enumerations are
  // exhaustive for the relevant atoms/closure; Kripke and FOFinite are not.
  bool exact_engine() const;
  void check() const;
};

// --- models --------------------------------------------------------------------

struct MatrixModel {
  std::map<std::string, int> valuation;  // atom key -> value index
};

struct KripkeModel {
  int world_count = 0;
  std::vector<std::vector<bool>> access;
  std::map<std::string, std::vector<bool>> valuation;  // atom key -> per-world
  int point = 0;
};

struct BivaluationModel {
  std::vector<Formula> domain;  // a subformula closure, canonical order
  std::map<Formula, bool> assignment;
};

struct RelatednessModel {
  std::map<std::string, bool> valuation;
  std::set<std::pair<std::string, std::string>> related;  // reflexive, symmetric

  bool are_related(const std::string& a, const std::string& b) const {
    return related.count({a, b}) > 0 || related.count({b, a}) > 0 || a == b;
  }
};

struct FOStructure {
  int domain_size = 0;
  std::map<std::string, std::vector<bool>> unary;  // predicate -> extension
  std::vector<std::vector<bool>> relation;         // binary R
};

using Model = std::variant<MatrixModel, KripkeModel, BivaluationModel, RelatednessModel, FOStructure>;

// --- reference evaluation --------------------------------------------------------

int matrix_value(const LogicSpec& logic, const MatrixModel& m, const Formula& f);
bool matrix_designated(const LogicSpec& logic, const MatrixModel& m, const Formula& f);
// Forcing at a world; IPL frames use the persistent clauses for -> and not.
bool kripke_forces(const LogicSpec& logic, const KripkeModel& m, int world, const Formula& f);
bool relatedness_value(const RelatednessModel& m, const Formula& f);
// Tarskian satisfaction over a finite domain. Throws on unassigned free
// variables.
bool fol_evaluate(const FOStructure& s, const Formula& f,
                  const std::map<std::string, int>& assignment);

// Designation / forcing at the point / assignment lookup, per engine.
bool satisfies(const LogicSpec& logic, const Model& m, const Formula& f);

// Domain = worlds, R = access, uppercase(atom) = the worlds where the atom
// holds.
FOStructure kripke_to_structure(const KripkeModel& m);
std::string predicate_name_for_atom(const std::string& atom);

// --- packed forms and compiled evaluators ----------------------------------------

inline constexpr int kMaxWorlds = 4;
inline constexpr int kMaxAtomSlots = 12;

struct PackedKripke {
  std::uint8_t n = 1;       // world count
  std::uint32_t rel = 0;    // bit (w * n + v): w sees v
  std::uint64_t val = 0;    // bit (slot * n + w): atom[slot] true at w
  std::uint8_t point = 0;
};

KripkeModel unpack_kripke(const PackedKripke& p, std::span<const std::string> atom_slots);

// Compiled bit-parallel forcing over packed models: every subformula value
// is a mask over worlds. One instance serves all model sizes <= kMaxWorlds.
class KripkeEvaluator {
 public:
  KripkeEvaluator(const LogicSpec& logic, const Formula& f,
                  std::span<const std::string> atom_slots);
  // mask of worlds forcing the formula
  std::uint32_t mask(const PackedKripke& m) const;
  bool at_point(const PackedKripke& m) const { return (mask(m) >> m.point) & 1u; }

 private:
  struct Node {
    int op;                // see semantics.cpp
    int a = -1, b = -1;    // operand node indices
    int slot = -1;         // atom slot
  };
  std::vector<Node> nodes_;
  bool intuitionistic_ = false;
};

// Compiled matrix evaluation over valuation digit vectors.
class MatrixEvaluator {
 public:
  MatrixEvaluator(const LogicSpec& logic, const Formula& f,
                  std::span<const std::string> atom_slots);
  int value(std::span<const int> digits) const;
  bool designated(std::span<const int> digits) const;

 private:
  struct Node {
    const std::vector<int>* table = nullptr;  // owned by the LogicSpec's matrix
    std::vector<int> kids;
    int slot = -1;       // atom slot when leaf
    int fixed = -1;      // constant value when leaf
  };
  std::vector<Node> nodes_;
  std::vector<bool> designated_;
  int values_ = 2;
};

struct PackedFO {
  int n = 1;
  std::uint32_t rel = 0;                       // bit (a * n + b)
  std::uint32_t unary[kMaxAtomSlots] = {0};    // bit per element
};

PackedFO structure_from_packed_kripke(const PackedKripke& m);

// Compiled Tarskian evaluation with variable slots; quantifiers loop over
// the finite domain. Reference semantics is fol_evaluate.
class FoEvaluator {
 public:
  FoEvaluator(const Formula& f, std::span<const std::string> variables,
              std::span<const std::string> unary_slots);
  bool eval(const PackedFO& s, std::span<const int> var_values) const;

 private:
  struct Node {
    int op;
    int a = -1, b = -1;
    int pred_slot = -1;  // unary slot, or -2 for the binary relation
    int var1 = -1, var2 = -1;
    int quant_var = -1;
  };
  std::vector<Node> nodes_;
  int var_count_ = 0;
  bool eval_node(const PackedFO& s, int node, int* vals) const;
};

// --- model spaces -----------------------------------------------------------------

// Indexable deterministic model enumerations (canonical order = index order).
class ModelSpace {
 public:
  EngineKind engine() const { return engine_; }
  std::size_t size() const;
  Model at(std::size_t i) const;

  // atom keys backing valuation slots (matrix / kripke / relatedness / fo preds)
  const std::vector<std::string>& atom_slots() const { return atom_slots_; }
  const std::vector<Formula>& bival_domain() const { return bival_domain_; }

  // fast paths
  PackedKripke kripke_at(std::size_t i) const;
  void matrix_digits_at(std::size_t i, std::span<int> out) const;
  std::uint64_t bival_mask_at(std::size_t i) const;
  bool bival_mask_value(std::uint64_t mask, const Formula& f) const;

  friend ModelSpace enumerate_models(const LogicSpec&, const FormulaSet&, int);

 private:
  EngineKind engine_ = EngineKind::Matrix;
  std::vector<std::string> atom_slots_;

  // matrix
  int values_ = 2;

  // kripke: per world count, the frame masks of the class; model index is
  // (frame, valuation bits, point) within the n-block
  struct KripkeBlock {
    int n;
    std::vector<std::uint32_t> frames;
    std::size_t vals_per_frame;  // 2^(n * atoms), or list size when filtered
    std::vector<std::uint64_t> ipl_pairs;  // packed (frame_idx << 32 | val) when persistent
  };
  std::vector<KripkeBlock> kripke_blocks_;
  bool ipl_filtered_ = false;

  // bivaluation
  std::vector<Formula> bival_domain_;
  std::vector<std::uint64_t> bival_masks_;

  // relatedness
  std::vector<std::pair<int, int>> free_pairs_;

  // fo
  int fo_domain_bound_ = 0;

  std::size_t size_ = 0;
};

// Engine-specific enumeration over a formula context:
//   Matrix       all valuations of the atoms occurring in the context
//   Bivaluation  all constraint-satisfying assignments on the closure
//   Relatedness  all (valuation, relation) pairs over the context atoms
//   Kripke/FO    all models up to size_bound (raw enumeration)
ModelSpace enumerate_models(const LogicSpec& logic, const FormulaSet& context, int size_bound);

// Frame masks of a class at a given world count (cached).
const std::vector<std::uint32_t>& frames_of(FrameClass c, int n);

// --- verdicts and consequence -----------------------------------------------------

enum class VerdictStatus : std::uint8_t {
  ValidExact,
  ValidBounded,
  Refuted,
  Passed,
  Failed,
  Skipped,
};

std::string to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::ValidExact;
  std::map<std::string, long long> bounds;  // exact search space of bounded runs
  std::optional<Model> witness_model;
  std::optional<Formula> witness_formula;
  double elapsed_ms = 0.0;

  bool holds() const {
    return status == VerdictStatus::ValidExact || status == VerdictStatus::ValidBounded ||
           status == VerdictStatus::Passed;
  }
};

// Semantic consequence: refuted iff some enumerated model designates/forces
// every premise but not the conclusion. Exact for Matrix, Bivaluation,
// Relatedness and Explicit engines; bounded for Kripke and FOFinite.
Verdict consequence(const LogicSpec& logic, const FormulaSet& premises, const Formula& conclusion,
                    int size_bound);

// Theoremhood shortcut: consequence from no premises.
Verdict validity(const LogicSpec& logic, const Formula& f, int size_bound);

}  // namespace trex
