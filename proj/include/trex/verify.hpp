#pragma once

// Property checkers, criterion gates and the expressiveness registry.
//
// Every checker returns a CheckEntry: a verdict plus the exact bounds it
// searched and replayable witnesses for refutations. Checkers are pure over
// immutable inputs; their inner sweeps run on the parallel kernels with
// canonical-order witness merging, so results are identical for every
// worker count.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trex/catalog.hpp"
#include "trex/model_map.hpp"
#include "trex/translation.hpp"

namespace trex {

struct Bounds {
  int max_nodes = 6;        // formula enumeration cap
  int max_atoms = 2;        // enumeration alphabet size
  int max_model_size = 3;   // Kripke worlds / FO domain
  int max_premises = 3;     // |Gamma| cap for conservativity
  int dt_premises = 2;      // |Gamma| cap for deduction-theorem checks
  int dt_nodes = 4;         // formula cap inside deduction-theorem checks
  int template_bound = 7;   // general-DT template search cap
  int pt_nodes = 3;         // formula universe cap for connective presence
  int pt_template_nodes = 4;
  int target_nodes = 9;     // search cap on the expressive side of EC
  int compose_nodes = 5;    // re-verification cap for composed edges

  std::map<std::string, long long> as_map() const;
  static Bounds from_flags(const std::map<std::string, long long>& kv);
};

struct Witness {
  std::map<std::string, std::string> formulas;  // role -> canonical text
  std::optional<Model> model;
  std::string note;
};

struct CheckEntry {
  std::string property;
  VerdictStatus status = VerdictStatus::Passed;
  std::map<std::string, long long> bounds;
  std::vector<Witness> witnesses;
  std::string provenance = "direct";
  std::string note;
  std::map<std::string, bool> flags;
  double elapsed_ms = 0.0;

  bool holds() const {
    return status == VerdictStatus::ValidExact || status == VerdictStatus::ValidBounded ||
           status == VerdictStatus::Passed;
  }
};

using Reports = std::map<std::string, CheckEntry>;

// --- semantic checks ------------------------------------------------------------

// m |= phi iff image-model |= t(phi), over enumerated models of the side
// the map consumes and source formulas within bounds. Throws if map is null.
CheckEntry verify_truth_preservation(const ClauseSystem& t, const ModelMap* map, const Bounds& b);

// |- phi iff |- t(phi), both directions, over enumerated source formulas.
CheckEntry verify_theoremhood(const ClauseSystem& t, const Bounds& b);

// Gamma |- phi iff t(Gamma) |- t(phi) for Gamma within the premise pool.
CheckEntry verify_conservativity(const ClauseSystem& t, const FormulaSet& premise_pool,
                                 const Bounds& b);

struct GvWitness {
  const ClauseSystem* translation = nullptr;
  ModelMap map;  // must run target-models -> source-models
  FormulaSet theta;
  FormulaSet source_pool;      // source formulas for condition (b)
  FormulaSet source_context;   // context for enumerating source models
  FormulaSet target_context;   // context for enumerating target models
  int source_bound = 1;
  int target_bound = 1;
};

// Definition-2.1 conditions: (a) every enumerated source model is hit by
// the map from some theta-satisfying target model; (b) theta-satisfying
// target models agree with their images on translated formulas.
CheckEntry verify_gv_sublogic(const GvWitness& w, const Bounds& b);

// Builds the witness for a catalog counterexample entry ("@delta" in theta
// is replaced by the encoding set of the chosen closure).
GvWitness make_gv_witness(const Catalog& cat, const Counterexample& ce, const Bounds& b);

// Gamma, phi |- psi iff Gamma |- phi -> psi over the pool and bounded
// formulas. Requires a conditional in the signature.
CheckEntry verify_standard_dt(const LogicSpec& logic, const FormulaSet& pool, const Bounds& b);

// First two-placeholder template alpha (canonical order, both placeholders
// used) for which Gamma, phi |- psi iff Gamma |- alpha(phi, psi) survives
// all bounded instances; "exhausted" when none does.
CheckEntry search_general_dt(const LogicSpec& logic, const FormulaSet& pool, const Bounds& b);

// The translated image satisfies the general deduction theorem with alpha
// the instantiated conditional template. Skipped unless the source has the
// standard deduction theorem, t is compositional for the conditional and
// back-and-forth verified (all read from `reports`).
CheckEntry verify_dt_preservation(const ClauseSystem& t, const Reports& reports,
                                  const FormulaSet& pool, const Bounds& b);

enum class PtRole : std::uint8_t { Falsum, Conjunction, Disjunction, Implication, Negation };
enum class PtMode : std::uint8_t { StrictTemplate, RelaxedInstancewise };

// Presence of a proof-theoretic connective. Strict mode searches one
// template satisfying the defining biconditional over all bounded
// instances. Relaxed mode demands a per-instance witness, but the
// witnessing must be stable under every atom substitution of the bounded
// universe (choices may not depend on the identity of the atoms).
CheckEntry verify_pt_connective(const LogicSpec& logic, PtRole role, PtMode mode, const Bounds& b);

// phi |- psi for all bounded phi, psi. flags["trivial"] records the answer.
CheckEntry verify_triviality(const LogicSpec& logic, const Bounds& b);

// Bounded single-class expressiveness: every l1-formula within bounds has
// an l2-formula with the same bounded model set. The shared space is plain
// valuations for matrix pairs and pointed Kripke models when either side
// is a Kripke logic.
CheckEntry verify_ec_bounded(const LogicSpec& l1, const LogicSpec& l2, const Bounds& b);

// --- gates ---------------------------------------------------------------------

// model based + finitely generated (non-opaque finite clauses) + verified
// truth preservation.
CheckEntry gate_expressiveness_g(const ClauseSystem& t, const ModelMap* map,
                                 const Reports& reports);

// back-and-forth verified + general-recursive + no declared model-map
// dependency + compositional conditional when the source has the standard
// deduction theorem + the decidability flag rule.
CheckEntry gate_expressiveness_gg(const ClauseSystem& t, const Reports& reports);

// --- corpus ---------------------------------------------------------------------

// Checks every corpus entry against its expected status (countermodels
// within the world bound for refuted ones) and the status consistency of
// the translation images under the named systems.
CheckEntry run_corpus(const Catalog& cat, const std::vector<std::string>& image_translations,
                      int world_bound, const Bounds& b);

// --- registry -------------------------------------------------------------------

struct RegistryEdge {
  std::string translation;
  std::string source_node;
  std::string target_node;
  ClauseSystem system;
  Reports reports;
  bool gg_pass = false;
  std::string provenance = "direct";  // or composed-surjective / composed-weakened
};

struct Registry {
  std::vector<std::string> nodes;
  std::vector<RegistryEdge> edges;
  std::set<std::pair<std::string, std::string>> relation;
};

// Runs the per-edge checks and gates for every catalog translation whose
// endpoints lie inside `nodes`.
Registry make_registry(const Catalog& cat, const std::vector<std::string>& nodes, const Bounds& b);

// Reflexive-transitive closure over gate-passing edges; compositions are
// fused, re-verified at bounds and added with their provenance. Idempotent.
Registry build_preorder(Registry reg, const Bounds& b);

// every target-bounded formula is hit by a bounded source formula
bool bounded_surjectivity(const ClauseSystem& t, const Bounds& b);

// catalog model map matching the translation's endpoints, if any
const ModelMap* find_map_for(const Catalog& cat, const ClauseSystem& t);

// the standard per-edge check battery: theoremhood, conservativity when
// both consequence relations are full and exact, the source deduction
// theorem, truth preservation when a map is attached, and both gates
Reports edge_reports(const ClauseSystem& t, const Catalog& cat, const Bounds& b);

// Re-runs a stored refutation: the witness model must designate/force all
// premise-role formulas and refute the conclusion role.
bool witness_replays(const LogicSpec& logic, const Witness& w);

// default deduction-theorem premise pool for a logic
FormulaSet default_dt_pool(const LogicSpec& logic);

}  // namespace trex
