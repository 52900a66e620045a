#pragma once

// Builtin structure transformations between the model classes of two
// logics. Each map names its translation endpoints, the direction it runs
// in, structural flags consumed by the gates, and one of five builtin
// transforms. Guarded maps (the one running against an encoding set)
// refuse models violating the guard and report the violated formula.

#include "trex/semantics.hpp"

namespace trex {

struct GuardViolation : Error {
  Formula guard_formula;
  explicit GuardViolation(Formula g)
      : Error("model map guard violated: " + g.text()), guard_formula(std::move(g)) {}
};

struct ModelMap {
  enum class Direction : std::uint8_t { SourceToTarget, TargetToSource };
  enum class Transform : std::uint8_t {
    WplToCpl,             // keep the atom valuation, reinterpret classically
    CplToWpl,             // read the closure assignment off indexed atoms; guarded
    EpsteinRelatedness,   // copy atoms, set telltale atoms from the lifted relation
    KuijerWorlds,         // keep the worlds, valuate formula atoms by forcing sets
    TrivialCollapse,      // everything onto the one trivial-logic model
  };

  std::string name;
  LogicSpec source;  // translation source logic
  LogicSpec target;  // translation target logic
  Direction direction = Direction::SourceToTarget;
  bool model_based = false;
  Transform transform = Transform::TrivialCollapse;

  // CplToWpl: the bivaluation closure and its encoding guard
  FormulaSet closure;
  FormulaSet guard;
  // EpsteinRelatedness / KuijerWorlds / CplToWpl: base of the indexed atoms
  std::string index_base = "d";

  const LogicSpec& consumes() const {
    return direction == Direction::SourceToTarget ? source : target;
  }
  const LogicSpec& produces() const {
    return direction == Direction::SourceToTarget ? target : source;
  }
};

// Applies the builtin transform. `context` lists target-side formulas whose
// atoms the produced model must cover (ignored by transforms with a fixed
// output domain). Throws GuardViolation when the consumed model does not
// satisfy the map's guard.
Model apply_model_map(const ModelMap& map, const Model& m, const FormulaSet& context);

}  // namespace trex
