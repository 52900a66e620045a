#include "trex/semantics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <mutex>

#include "trex/parallel.hpp"

namespace trex {

std::string to_string(EngineKind k) {
  switch (k) {
    case EngineKind::Matrix: return "matrix";
    case EngineKind::Kripke: return "kripke";
    case EngineKind::Bivaluation: return "bivaluation";
    case EngineKind::Relatedness: return "relatedness";
    case EngineKind::FOFinite: return "fo-finite";
    case EngineKind::Explicit: return "explicit";
  }
  return "?";
}

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::K: return "K";
    case FrameClass::S4: return "S4";
    case FrameClass::GrzDesk: return "Grz-desk";
    case FrameClass::Ipl: return "IPL";
  }
  return "?";
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::ValidExact: return "valid-exact";
    case VerdictStatus::ValidBounded: return "valid-bounded";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::Passed: return "passed";
    case VerdictStatus::Failed: return "failed";
    case VerdictStatus::Skipped: return "skipped";
  }
  return "?";
}

// --- engine checks ---------------------------------------------------------------

void MatrixSemantics::check(const SignatureSpec& sig) const {
  const int v = value_count();
  if (v < 1) throw Error("matrix of " + sig.name + " has no truth values");
  if (static_cast<int>(designated.size()) != v)
    throw Error("matrix of " + sig.name + ": designated mask size mismatch");
  if (std::none_of(designated.begin(), designated.end(), [](bool b) { return b; }))
    throw Error("matrix of " + sig.name + ": designated set is empty");
  for (const auto& c : sig.connectives) {
    auto it = tables.find(c.symbol);
    if (it == tables.end()) throw Error("matrix of " + sig.name + ": no table for " + c.symbol);
    long long cells = 1;
    for (int i = 0; i < c.arity; ++i) cells *= v;
    if (static_cast<long long>(it->second.size()) != cells)
      throw Error("matrix of " + sig.name + ": table for " + c.symbol + " is not total");
    for (int cell : it->second)
      if (cell < 0 || cell >= v)
        throw Error("matrix of " + sig.name + ": table value out of range for " + c.symbol);
  }
  if (sig.has_top && (top_value < 0 || top_value >= v))
    throw Error("matrix of " + sig.name + ": top value missing");
  if (sig.has_bot && (bot_value < 0 || bot_value >= v))
    throw Error("matrix of " + sig.name + ": bot value missing");
}

bool ExplicitConsequence::derives(const std::set<Formula>& premises,
                                  const Formula& conclusion) const {
  return holds.count({premises, conclusion}) > 0;
}

void ExplicitConsequence::check() const {
  std::set<Formula> uni(universe.begin(), universe.end());
  for (const auto& [premises, conclusion] : holds) {
    if (!uni.count(conclusion)) throw Error("explicit consequence: conclusion outside universe");
    for (const auto& p : premises)
      if (!uni.count(p)) throw Error("explicit consequence: premise outside universe");
  }
  // reflexive
  for (const auto& f : universe)
    if (!derives({f}, f)) throw Error("explicit consequence: not reflexive");
  // monotone over the (finite) powerset
  for (const auto& [premises, conclusion] : holds) {
    for (const auto& extra : universe) {
      auto bigger = premises;
      bigger.insert(extra);
      if (!derives(bigger, conclusion)) throw Error("explicit consequence: not monotone");
    }
  }
}

bool LogicSpec::exact_engine() const {
  return engine == EngineKind::Matrix || engine == EngineKind::Bivaluation ||
         engine == EngineKind::Relatedness || engine == EngineKind::Explicit;
}

void LogicSpec::check() const {
  signature.check();
  switch (engine) {
    case EngineKind::Matrix:
      if (!matrix) throw Error("logic " + name + ": matrix engine without tables");
      matrix->check(signature);
      break;
    case EngineKind::Kripke:
      if (!frame) throw Error("logic " + name + ": kripke engine without a frame class");
      break;
    case EngineKind::Bivaluation:
      if (bivaluation_constraint != "wpl-half-negation")
        throw Error("logic " + name + ": unknown bivaluation constraint");
      break;
    case EngineKind::Relatedness:
      for (const char* s : {"not", "and", "->"})
        if (!signature.has_connective(s))
          throw Error("logic " + name + ": relatedness engine needs not/and/->");
      break;
    case EngineKind::FOFinite:
      if (!signature.fo) throw Error("logic " + name + ": fo engine without fo part");
      break;
    case EngineKind::Explicit:
      if (!explicit_rel) throw Error("logic " + name + ": explicit engine without relation");
      explicit_rel->check();
      break;
  }
}

// --- reference evaluation -----------------------------------------------------------

int matrix_value(const LogicSpec& logic, const MatrixModel& m, const Formula& f) {
  const auto& mx = *logic.matrix;
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::IndexedAtom: {
      auto it = m.valuation.find(f.text());
      if (it == m.valuation.end()) throw Error("matrix model: unassigned atom " + f.text());
      return it->second;
    }
    case FormulaKind::Const:
      return f.const_kind() == ConstKind::Top ? mx.top_value : mx.bot_value;
    case FormulaKind::Apply: {
      auto it = mx.tables.find(f.symbol());
      if (it == mx.tables.end()) throw Error("matrix of " + logic.name + ": no table for " + f.symbol());
      const int v = mx.value_count();
      int idx = 0;
      for (const auto& op : f.operands()) idx = idx * v + matrix_value(logic, m, op);
      return it->second[idx];
    }
    default:
      throw Error("matrix evaluation of a first-order formula");
  }
}

bool matrix_designated(const LogicSpec& logic, const MatrixModel& m, const Formula& f) {
  return logic.matrix->designated[matrix_value(logic, m, f)];
}

bool kripke_forces(const LogicSpec& logic, const KripkeModel& m, int world, const Formula& f) {
  const bool ipl = logic.frame == FrameClass::Ipl;
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::IndexedAtom: {
      auto it = m.valuation.find(f.text());
      if (it == m.valuation.end()) throw Error("kripke model: unassigned atom " + f.text());
      return it->second[world];
    }
    case FormulaKind::Const:
      return f.const_kind() == ConstKind::Top;
    case FormulaKind::Apply: {
      const auto& sym = f.symbol();
      const auto& ops = f.operands();
      if (sym == "and") return kripke_forces(logic, m, world, ops[0]) && kripke_forces(logic, m, world, ops[1]);
      if (sym == "or") return kripke_forces(logic, m, world, ops[0]) || kripke_forces(logic, m, world, ops[1]);
      if (sym == "not") {
        if (!ipl) return !kripke_forces(logic, m, world, ops[0]);
        for (int v = 0; v < m.world_count; ++v)
          if (m.access[world][v] && kripke_forces(logic, m, v, ops[0])) return false;
        return true;
      }
      if (sym == "->") {
        if (!ipl)
          return !kripke_forces(logic, m, world, ops[0]) || kripke_forces(logic, m, world, ops[1]);
        for (int v = 0; v < m.world_count; ++v)
          if (m.access[world][v] && kripke_forces(logic, m, v, ops[0]) &&
              !kripke_forces(logic, m, v, ops[1]))
            return false;
        return true;
      }
      if (sym == "<->") {
        if (ipl) throw Error("<-> is not part of the intuitionistic clauses");
        return kripke_forces(logic, m, world, ops[0]) == kripke_forces(logic, m, world, ops[1]);
      }
      if (sym == "box") {
        for (int v = 0; v < m.world_count; ++v)
          if (m.access[world][v] && !kripke_forces(logic, m, v, ops[0])) return false;
        return true;
      }
      if (sym == "dia") {
        for (int v = 0; v < m.world_count; ++v)
          if (m.access[world][v] && kripke_forces(logic, m, v, ops[0])) return true;
        return false;
      }
      throw Error("kripke clauses: unknown connective " + sym);
    }
    default:
      throw Error("kripke forcing of a first-order formula");
  }
}

bool relatedness_value(const RelatednessModel& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      auto it = m.valuation.find(f.symbol());
      if (it == m.valuation.end()) throw Error("relatedness model: unassigned atom " + f.symbol());
      return it->second;
    }
    case FormulaKind::Apply: {
      const auto& sym = f.symbol();
      const auto& ops = f.operands();
      if (sym == "not") return !relatedness_value(m, ops[0]);
      if (sym == "and") return relatedness_value(m, ops[0]) && relatedness_value(m, ops[1]);
      if (sym == "->") {
        // material implication gated by the lifted relation: some atom of
        // the antecedent related to some atom of the consequent
        bool material = !relatedness_value(m, ops[0]) || relatedness_value(m, ops[1]);
        if (!material) return false;
        for (const auto& a : plain_atoms(ops[0]))
          for (const auto& b : plain_atoms(ops[1]))
            if (m.are_related(a, b)) return true;
        return false;
      }
      throw Error("relatedness clauses: unknown connective " + sym);
    }
    default:
      throw Error("relatedness evaluation: unsupported formula " + f.text());
  }
}

bool fol_evaluate(const FOStructure& s, const Formula& f,
                  const std::map<std::string, int>& assignment) {
  switch (f.kind()) {
    case FormulaKind::Const:
      return f.const_kind() == ConstKind::Top;
    case FormulaKind::Pred: {
      std::vector<int> args;
      for (const auto& v : f.pred_vars()) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw Error("unassigned free variable " + v);
        args.push_back(it->second);
      }
      if (args.size() == 2) return s.relation[args[0]][args[1]];
      auto it = s.unary.find(f.symbol());
      if (it == s.unary.end()) throw Error("structure has no extension for " + f.symbol());
      return it->second[args[0]];
    }
    case FormulaKind::Quant: {
      auto inner = assignment;
      for (int d = 0; d < s.domain_size; ++d) {
        inner[f.quant_var()] = d;
        bool v = fol_evaluate(s, f.quant_body(), inner);
        if (f.quant_kind() == QuantKind::Forall && !v) return false;
        if (f.quant_kind() == QuantKind::Exists && v) return true;
      }
      return f.quant_kind() == QuantKind::Forall;
    }
    case FormulaKind::Apply: {
      const auto& sym = f.symbol();
      const auto& ops = f.operands();
      if (sym == "not") return !fol_evaluate(s, ops[0], assignment);
      if (sym == "and") return fol_evaluate(s, ops[0], assignment) && fol_evaluate(s, ops[1], assignment);
      if (sym == "or") return fol_evaluate(s, ops[0], assignment) || fol_evaluate(s, ops[1], assignment);
      if (sym == "->")
        return !fol_evaluate(s, ops[0], assignment) || fol_evaluate(s, ops[1], assignment);
      if (sym == "<->")
        return fol_evaluate(s, ops[0], assignment) == fol_evaluate(s, ops[1], assignment);
      throw Error("first-order evaluation: unknown connective " + sym);
    }
    default:
      throw Error("first-order evaluation of a propositional atom " + f.text());
  }
}

bool satisfies(const LogicSpec& logic, const Model& m, const Formula& f) {
  switch (logic.engine) {
    case EngineKind::Matrix:
      return matrix_designated(logic, std::get<MatrixModel>(m), f);
    case EngineKind::Kripke: {
      const auto& km = std::get<KripkeModel>(m);
      return kripke_forces(logic, km, km.point, f);
    }
    case EngineKind::Bivaluation: {
      const auto& bm = std::get<BivaluationModel>(m);
      auto it = bm.assignment.find(f);
      if (it == bm.assignment.end())
        throw Error("formula outside the bivaluation domain: " + f.text());
      return it->second;
    }
    case EngineKind::Relatedness:
      return relatedness_value(std::get<RelatednessModel>(m), f);
    case EngineKind::FOFinite:
      return fol_evaluate(std::get<FOStructure>(m), f, {});
    case EngineKind::Explicit:
      throw Error("explicit-consequence logics have no models");
  }
  return false;
}

std::string predicate_name_for_atom(const std::string& atom) {
  std::string out = atom;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

FOStructure kripke_to_structure(const KripkeModel& m) {
  FOStructure s;
  s.domain_size = m.world_count;
  s.relation.assign(m.world_count, std::vector<bool>(m.world_count, false));
  for (int w = 0; w < m.world_count; ++w)
    for (int v = 0; v < m.world_count; ++v) s.relation[w][v] = m.access[w][v];
  for (const auto& [atom, worlds] : m.valuation) s.unary[predicate_name_for_atom(atom)] = worlds;
  return s;
}

// --- packed kripke + compiled evaluators ----------------------------------------------

KripkeModel unpack_kripke(const PackedKripke& p, std::span<const std::string> atom_slots) {
  KripkeModel m;
  m.world_count = p.n;
  m.point = p.point;
  m.access.assign(p.n, std::vector<bool>(p.n, false));
  for (int w = 0; w < p.n; ++w)
    for (int v = 0; v < p.n; ++v) m.access[w][v] = (p.rel >> (w * p.n + v)) & 1u;
  for (std::size_t a = 0; a < atom_slots.size(); ++a) {
    std::vector<bool> col(p.n, false);
    for (int w = 0; w < p.n; ++w) col[w] = (p.val >> (a * p.n + w)) & 1u;
    m.valuation[atom_slots[a]] = std::move(col);
  }
  return m;
}

namespace {

enum Op : int {
  kAtom,
  kTop,
  kBot,
  kNot,
  kAnd,
  kOr,
  kImp,
  kIff,
  kBox,
  kDia,
};

int op_of(const std::string& sym) {
  if (sym == "not") return kNot;
  if (sym == "and") return kAnd;
  if (sym == "or") return kOr;
  if (sym == "->") return kImp;
  if (sym == "<->") return kIff;
  if (sym == "box") return kBox;
  if (sym == "dia") return kDia;
  throw Error("no kripke clause for connective " + sym);
}

int slot_of(std::span<const std::string> slots, const std::string& key) {
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i] == key) return static_cast<int>(i);
  throw Error("atom " + key + " not among the model's atom slots");
}

}  // namespace

KripkeEvaluator::KripkeEvaluator(const LogicSpec& logic, const Formula& f,
                                 std::span<const std::string> atom_slots) {
  intuitionistic_ = (logic.frame == FrameClass::Ipl);
  std::map<std::string, int> memo;
  struct Build {
    KripkeEvaluator& ev;
    std::span<const std::string> slots;
    std::map<std::string, int>& memo;
    int walk(const Formula& g) {
      auto it = memo.find(g.text());
      if (it != memo.end()) return it->second;
      Node n;
      switch (g.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::IndexedAtom:
          n.op = kAtom;
          n.slot = slot_of(slots, g.text());
          break;
        case FormulaKind::Const:
          n.op = g.const_kind() == ConstKind::Top ? kTop : kBot;
          break;
        case FormulaKind::Apply:
          n.op = op_of(g.symbol());
          n.a = walk(g.operands()[0]);
          if (g.operands().size() > 1) n.b = walk(g.operands()[1]);
          break;
        default:
          throw Error("kripke evaluation of a first-order formula");
      }
      int id = static_cast<int>(ev.nodes_.size());
      ev.nodes_.push_back(n);
      memo.emplace(g.text(), id);
      return id;
    }
  } b{*this, atom_slots, memo};
  b.walk(f);
  if (nodes_.size() > 256) throw Error("formula too large for the packed kripke evaluator");
}

std::uint32_t KripkeEvaluator::mask(const PackedKripke& m) const {
  const int n = m.n;
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  std::uint32_t succ[kMaxWorlds];
  for (int w = 0; w < n; ++w) {
    std::uint32_t s = 0;
    for (int v = 0; v < n; ++v)
      if ((m.rel >> (w * n + v)) & 1u) s |= (1u << v);
    succ[w] = s;
  }
  std::array<std::uint32_t, 256> reg;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    std::uint32_t out = 0;
    switch (nd.op) {
      case kAtom:
        out = static_cast<std::uint32_t>((m.val >> (nd.slot * n)) & full);
        break;
      case kTop:
        out = full;
        break;
      case kBot:
        out = 0;
        break;
      case kNot:
        if (intuitionistic_) {
          for (int w = 0; w < n; ++w)
            if ((succ[w] & reg[nd.a]) == 0) out |= (1u << w);
        } else {
          out = ~reg[nd.a] & full;
        }
        break;
      case kAnd:
        out = reg[nd.a] & reg[nd.b];
        break;
      case kOr:
        out = reg[nd.a] | reg[nd.b];
        break;
      case kImp:
        if (intuitionistic_) {
          for (int w = 0; w < n; ++w)
            if ((succ[w] & reg[nd.a] & ~reg[nd.b]) == 0) out |= (1u << w);
        } else {
          out = (~reg[nd.a] | reg[nd.b]) & full;
        }
        break;
      case kIff:
        out = ~(reg[nd.a] ^ reg[nd.b]) & full;
        break;
      case kBox:
        for (int w = 0; w < n; ++w)
          if ((succ[w] & ~reg[nd.a] & full) == 0) out |= (1u << w);
        break;
      case kDia:
        for (int w = 0; w < n; ++w)
          if ((succ[w] & reg[nd.a]) != 0) out |= (1u << w);
        break;
    }
    reg[i] = out;
  }
  return reg[nodes_.size() - 1];
}

MatrixEvaluator::MatrixEvaluator(const LogicSpec& logic, const Formula& f,
                                 std::span<const std::string> atom_slots) {
  const auto& mx = *logic.matrix;
  values_ = mx.value_count();
  designated_ = mx.designated;
  std::map<std::string, int> memo;
  struct Build {
    MatrixEvaluator& ev;
    const MatrixSemantics& mx;
    std::span<const std::string> slots;
    std::map<std::string, int>& memo;
    int walk(const Formula& g) {
      auto it = memo.find(g.text());
      if (it != memo.end()) return it->second;
      Node n;
      switch (g.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::IndexedAtom:
          n.slot = slot_of(slots, g.text());
          break;
        case FormulaKind::Const:
          n.fixed = g.const_kind() == ConstKind::Top ? mx.top_value : mx.bot_value;
          if (n.fixed < 0) throw Error("matrix has no value for " + g.text());
          break;
        case FormulaKind::Apply: {
          auto t = mx.tables.find(g.symbol());
          if (t == mx.tables.end()) throw Error("no matrix table for " + g.symbol());
          n.table = &t->second;
          for (const auto& op : g.operands()) n.kids.push_back(walk(op));
          break;
        }
        default:
          throw Error("matrix evaluation of a first-order formula");
      }
      int id = static_cast<int>(ev.nodes_.size());
      ev.nodes_.push_back(std::move(n));
      memo.emplace(g.text(), id);
      return id;
    }
  } b{*this, mx, atom_slots, memo};
  b.walk(f);
  if (nodes_.size() > 256) throw Error("formula too large for the matrix evaluator");
}

int MatrixEvaluator::value(std::span<const int> digits) const {
  std::array<int, 256> reg;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    int out;
    if (n.table) {
      int idx = 0;
      for (int kid : n.kids) idx = idx * values_ + reg[kid];
      out = (*n.table)[idx];
    } else if (n.slot >= 0) {
      out = digits[n.slot];
    } else {
      out = n.fixed;
    }
    reg[i] = out;
  }
  return reg[nodes_.size() - 1];
}

bool MatrixEvaluator::designated(std::span<const int> digits) const {
  return designated_[value(digits)];
}

PackedFO structure_from_packed_kripke(const PackedKripke& m) {
  PackedFO s;
  s.n = m.n;
  s.rel = m.rel;
  for (int a = 0; a < kMaxAtomSlots; ++a)
    s.unary[a] = static_cast<std::uint32_t>((m.val >> (a * m.n)) & ((1u << m.n) - 1u));
  return s;
}

FoEvaluator::FoEvaluator(const Formula& f, std::span<const std::string> variables,
                         std::span<const std::string> unary_slots) {
  var_count_ = static_cast<int>(variables.size());
  auto var_slot = [&](const std::string& v) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == v) return static_cast<int>(i);
    throw Error("unknown variable " + v);
  };
  struct Build {
    FoEvaluator& ev;
    std::span<const std::string> unary;
    const std::function<int(const std::string&)> var_slot;
    int walk(const Formula& g) {
      Node n;
      switch (g.kind()) {
        case FormulaKind::Const:
          n.op = g.const_kind() == ConstKind::Top ? kTop : kBot;
          break;
        case FormulaKind::Pred:
          if (g.pred_vars().size() == 2) {
            n.op = kAtom;
            n.pred_slot = -2;
            n.var1 = var_slot(g.pred_vars()[0]);
            n.var2 = var_slot(g.pred_vars()[1]);
          } else {
            n.op = kAtom;
            n.pred_slot = slot_of(unary, g.symbol());
            n.var1 = var_slot(g.pred_vars()[0]);
          }
          break;
        case FormulaKind::Quant:
          n.op = g.quant_kind() == QuantKind::Forall ? kBox : kDia;  // reuse tags
          n.quant_var = var_slot(g.quant_var());
          n.a = walk(g.quant_body());
          break;
        case FormulaKind::Apply:
          n.op = op_of(g.symbol());
          n.a = walk(g.operands()[0]);
          if (g.operands().size() > 1) n.b = walk(g.operands()[1]);
          break;
        default:
          throw Error("first-order evaluator: propositional atom " + g.text());
      }
      ev.nodes_.push_back(n);
      return static_cast<int>(ev.nodes_.size()) - 1;
    }
  } b{*this, unary_slots, var_slot};
  b.walk(f);
}

bool FoEvaluator::eval_node(const PackedFO& s, int node, int* vals) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case kTop: return true;
    case kBot: return false;
    case kAtom:
      if (n.pred_slot == -2) return (s.rel >> (vals[n.var1] * s.n + vals[n.var2])) & 1u;
      return (s.unary[n.pred_slot] >> vals[n.var1]) & 1u;
    case kNot: return !eval_node(s, n.a, vals);
    case kAnd: return eval_node(s, n.a, vals) && eval_node(s, n.b, vals);
    case kOr: return eval_node(s, n.a, vals) || eval_node(s, n.b, vals);
    case kImp: return !eval_node(s, n.a, vals) || eval_node(s, n.b, vals);
    case kIff: return eval_node(s, n.a, vals) == eval_node(s, n.b, vals);
    case kBox: {  // forall
      int saved = vals[n.quant_var];
      for (int d = 0; d < s.n; ++d) {
        vals[n.quant_var] = d;
        if (!eval_node(s, n.a, vals)) {
          vals[n.quant_var] = saved;
          return false;
        }
      }
      vals[n.quant_var] = saved;
      return true;
    }
    case kDia: {  // exists
      int saved = vals[n.quant_var];
      for (int d = 0; d < s.n; ++d) {
        vals[n.quant_var] = d;
        if (eval_node(s, n.a, vals)) {
          vals[n.quant_var] = saved;
          return true;
        }
      }
      vals[n.quant_var] = saved;
      return false;
    }
  }
  return false;
}

bool FoEvaluator::eval(const PackedFO& s, std::span<const int> var_values) const {
  int vals[8] = {0};
  for (std::size_t i = 0; i < var_values.size() && i < 8; ++i) vals[i] = var_values[i];
  return eval_node(s, static_cast<int>(nodes_.size()) - 1, vals);
}

// --- frames ---------------------------------------------------------------------------

namespace {

bool mask_reflexive(std::uint32_t rel, int n) {
  for (int w = 0; w < n; ++w)
    if (!((rel >> (w * n + w)) & 1u)) return false;
  return true;
}

bool mask_transitive(std::uint32_t rel, int n) {
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      if (!((rel >> (w * n + v)) & 1u)) continue;
      for (int u = 0; u < n; ++u)
        if (((rel >> (v * n + u)) & 1u) && !((rel >> (w * n + u)) & 1u)) return false;
    }
  return true;
}

bool mask_antisymmetric(std::uint32_t rel, int n) {
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (w != v && ((rel >> (w * n + v)) & 1u) && ((rel >> (v * n + w)) & 1u)) return false;
  return true;
}

}  // namespace

const std::vector<std::uint32_t>& frames_of(FrameClass c, int n) {
  if (n < 1 || n > kMaxWorlds) throw Error("frame enumeration supports 1.." + std::to_string(kMaxWorlds) + " worlds");
  static std::map<std::pair<int, int>, std::vector<std::uint32_t>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(c), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::uint32_t> frames;
  const std::uint64_t limit = 1ull << (n * n);
  for (std::uint64_t m = 0; m < limit; ++m) {
    auto rel = static_cast<std::uint32_t>(m);
    switch (c) {
      case FrameClass::K:
        break;
      case FrameClass::S4:
        if (!mask_reflexive(rel, n) || !mask_transitive(rel, n)) continue;
        break;
      case FrameClass::GrzDesk:
      case FrameClass::Ipl:
        if (!mask_reflexive(rel, n) || !mask_transitive(rel, n) || !mask_antisymmetric(rel, n))
          continue;
        break;
    }
    frames.push_back(rel);
  }
  return cache.emplace(key, std::move(frames)).first->second;
}

// --- model spaces ------------------------------------------------------------------------

namespace {

bool persistent_valuation(std::uint32_t rel, std::uint64_t val, int n, int atoms) {
  for (int a = 0; a < atoms; ++a)
    for (int w = 0; w < n; ++w) {
      if (!((val >> (a * n + w)) & 1u)) continue;
      for (int v = 0; v < n; ++v)
        if (((rel >> (w * n + v)) & 1u) && !((val >> (a * n + v)) & 1u)) return false;
    }
  return true;
}

// Constraint-satisfying assignments over a closure, in lexicographic order
// of the domain bit string (false branch first).
void bival_masks(const std::vector<Formula>& domain,
                 std::vector<std::uint64_t>& out) {
  const std::size_t k = domain.size();
  if (k > 64) throw Error("bivaluation domain too large: " + std::to_string(k));
  std::map<Formula, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index.emplace(domain[i], i);

  struct Gen {
    const std::vector<Formula>& domain;
    const std::map<Formula, std::size_t>& index;
    std::vector<std::uint64_t>& out;
    std::uint64_t mask = 0;

    bool bit(const Formula& f) const { return (mask >> index.at(f)) & 1u; }

    void go(std::size_t i) {
      if (i == domain.size()) {
        out.push_back(mask);
        return;
      }
      const Formula& f = domain[i];
      auto set_and_go = [&](bool v) {
        if (v) mask |= (1ull << i);
        go(i + 1);
        if (v) mask &= ~(1ull << i);
      };
      switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::IndexedAtom:
          set_and_go(false);
          set_and_go(true);
          return;
        case FormulaKind::Const:
          set_and_go(f.const_kind() == ConstKind::Top);
          return;
        case FormulaKind::Apply: {
          const auto& sym = f.symbol();
          const auto& ops = f.operands();
          if (sym == "not") {
            // half clause: a true operand forces falsity; otherwise free
            if (bit(ops[0])) {
              set_and_go(false);
            } else {
              set_and_go(false);
              set_and_go(true);
            }
            return;
          }
          bool a = bit(ops[0]);
          bool b = ops.size() > 1 && bit(ops[1]);
          if (sym == "and") return set_and_go(a && b);
          if (sym == "or") return set_and_go(a || b);
          if (sym == "->") return set_and_go(!a || b);
          if (sym == "<->") return set_and_go(a == b);
          throw Error("bivaluation clauses: unknown connective " + sym);
        }
        default:
          throw Error("bivaluation domain holds a first-order formula");
      }
    }
  } gen{domain, index, out};
  gen.go(0);
}

}  // namespace

std::size_t ModelSpace::size() const { return size_; }

ModelSpace enumerate_models(const LogicSpec& logic, const FormulaSet& context, int size_bound) {
  ModelSpace sp;
  sp.engine_ = logic.engine;
  switch (logic.engine) {
    case EngineKind::Matrix: {
      auto keys = atom_keys(context);
      sp.atom_slots_.assign(keys.begin(), keys.end());
      sp.values_ = logic.matrix->value_count();
      std::size_t n = 1;
      for (std::size_t i = 0; i < sp.atom_slots_.size(); ++i) n *= sp.values_;
      sp.size_ = n;
      break;
    }
    case EngineKind::Kripke: {
      if (size_bound < 1) throw Error("kripke enumeration needs size_bound >= 1");
      auto keys = atom_keys(context);
      sp.atom_slots_.assign(keys.begin(), keys.end());
      if (sp.atom_slots_.size() > kMaxAtomSlots) throw Error("too many atoms for packed models");
      const int atoms = static_cast<int>(sp.atom_slots_.size());
      sp.ipl_filtered_ = (logic.frame == FrameClass::Ipl);
      std::size_t total = 0;
      for (int n = 1; n <= size_bound; ++n) {
        ModelSpace::KripkeBlock blk;
        blk.n = n;
        blk.frames = frames_of(*logic.frame, n);
        blk.vals_per_frame = 1ull << (n * atoms);
        if (sp.ipl_filtered_) {
          for (std::size_t fi = 0; fi < blk.frames.size(); ++fi)
            for (std::uint64_t v = 0; v < blk.vals_per_frame; ++v)
              if (persistent_valuation(blk.frames[fi], v, n, atoms))
                blk.ipl_pairs.push_back((static_cast<std::uint64_t>(fi) << 32) | v);
          total += blk.ipl_pairs.size() * n;
        } else {
          total += blk.frames.size() * blk.vals_per_frame * n;
        }
        sp.kripke_blocks_.push_back(std::move(blk));
      }
      sp.size_ = total;
      break;
    }
    case EngineKind::Bivaluation: {
      if (context.empty()) throw Error("bivaluation enumeration needs a nonempty context");
      auto closure = subformula_closure(context);
      sp.bival_domain_.assign(closure.begin(), closure.end());
      bival_masks(sp.bival_domain_, sp.bival_masks_);
      sp.size_ = sp.bival_masks_.size();
      break;
    }
    case EngineKind::Relatedness: {
      if (context.empty()) throw Error("relatedness enumeration needs a nonempty context");
      auto keys = atom_keys(context);
      sp.atom_slots_.assign(keys.begin(), keys.end());
      const int k = static_cast<int>(sp.atom_slots_.size());
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) sp.free_pairs_.emplace_back(i, j);
      sp.size_ = (1ull << k) * (1ull << sp.free_pairs_.size());
      break;
    }
    case EngineKind::FOFinite: {
      if (size_bound < 1) throw Error("fo enumeration needs size_bound >= 1");
      std::set<std::string> preds;
      for (const auto& f : subformula_closure(context))
        if (f.kind() == FormulaKind::Pred && f.pred_vars().size() == 1) preds.insert(f.symbol());
      sp.atom_slots_.assign(preds.begin(), preds.end());
      sp.fo_domain_bound_ = size_bound;
      std::size_t total = 0;
      for (int n = 1; n <= size_bound; ++n)
        total += (1ull << (n * sp.atom_slots_.size())) * (1ull << (n * n));
      sp.size_ = total;
      break;
    }
    case EngineKind::Explicit:
      sp.size_ = 0;
      break;
  }
  return sp;
}

PackedKripke ModelSpace::kripke_at(std::size_t i) const {
  for (const auto& blk : kripke_blocks_) {
    const int n = blk.n;
    std::size_t block_size = ipl_filtered_ ? blk.ipl_pairs.size() * n
                                           : blk.frames.size() * blk.vals_per_frame * n;
    if (i >= block_size) {
      i -= block_size;
      continue;
    }
    PackedKripke p;
    p.n = static_cast<std::uint8_t>(n);
    if (ipl_filtered_) {
      std::uint64_t pair = blk.ipl_pairs[i / n];
      p.rel = blk.frames[pair >> 32];
      p.val = pair & 0xffffffffull;
      p.point = static_cast<std::uint8_t>(i % n);
    } else {
      std::size_t chunk = blk.vals_per_frame * n;
      p.rel = blk.frames[i / chunk];
      std::size_t r = i % chunk;
      p.val = r / n;
      p.point = static_cast<std::uint8_t>(r % n);
    }
    return p;
  }
  throw Error("kripke model index out of range");
}

void ModelSpace::matrix_digits_at(std::size_t i, std::span<int> out) const {
  const std::size_t k = atom_slots_.size();
  for (std::size_t s = 0; s < k; ++s) {
    std::size_t div = 1;
    for (std::size_t t = s + 1; t < k; ++t) div *= values_;
    out[s] = static_cast<int>((i / div) % values_);
  }
}

std::uint64_t ModelSpace::bival_mask_at(std::size_t i) const { return bival_masks_[i]; }

bool ModelSpace::bival_mask_value(std::uint64_t mask, const Formula& f) const {
  auto it = std::lower_bound(bival_domain_.begin(), bival_domain_.end(), f);
  if (it == bival_domain_.end() || !(*it == f))
    throw Error("formula outside the bivaluation domain: " + f.text());
  return (mask >> (it - bival_domain_.begin())) & 1u;
}

Model ModelSpace::at(std::size_t i) const {
  switch (engine_) {
    case EngineKind::Matrix: {
      std::vector<int> digits(atom_slots_.size());
      matrix_digits_at(i, digits);
      MatrixModel m;
      for (std::size_t s = 0; s < atom_slots_.size(); ++s) m.valuation[atom_slots_[s]] = digits[s];
      return m;
    }
    case EngineKind::Kripke:
      return unpack_kripke(kripke_at(i), atom_slots_);
    case EngineKind::Bivaluation: {
      BivaluationModel m;
      m.domain = bival_domain_;
      std::uint64_t mask = bival_masks_[i];
      for (std::size_t s = 0; s < bival_domain_.size(); ++s)
        m.assignment[bival_domain_[s]] = (mask >> s) & 1u;
      return m;
    }
    case EngineKind::Relatedness: {
      RelatednessModel m;
      const std::size_t k = atom_slots_.size();
      std::uint64_t vbits = i >> free_pairs_.size();
      std::uint64_t pbits = i & ((1ull << free_pairs_.size()) - 1ull);
      for (std::size_t s = 0; s < k; ++s) m.valuation[atom_slots_[s]] = (vbits >> (k - 1 - s)) & 1u;
      for (const auto& slot : atom_slots_) m.related.insert({slot, slot});
      for (std::size_t pi = 0; pi < free_pairs_.size(); ++pi)
        if ((pbits >> pi) & 1u) {
          const auto& [a, b] = free_pairs_[pi];
          m.related.insert({atom_slots_[a], atom_slots_[b]});
          m.related.insert({atom_slots_[b], atom_slots_[a]});
        }
      return m;
    }
    case EngineKind::FOFinite: {
      const std::size_t u = atom_slots_.size();
      for (int n = 1; n <= fo_domain_bound_; ++n) {
        std::size_t block = (1ull << (n * u)) * (1ull << (n * n));
        if (i >= block) {
          i -= block;
          continue;
        }
        std::uint64_t rel_bits = i & ((1ull << (n * n)) - 1ull);
        std::uint64_t ext_bits = i >> (n * n);
        FOStructure s;
        s.domain_size = n;
        s.relation.assign(n, std::vector<bool>(n, false));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s.relation[a][b] = (rel_bits >> (a * n + b)) & 1u;
        for (std::size_t p = 0; p < u; ++p) {
          std::vector<bool> ext(n, false);
          for (int d = 0; d < n; ++d) ext[d] = (ext_bits >> (p * n + d)) & 1u;
          s.unary[atom_slots_[p]] = std::move(ext);
        }
        return s;
      }
      throw Error("fo model index out of range");
    }
    case EngineKind::Explicit:
      throw Error("explicit-consequence logics have no models");
  }
  throw Error("unreachable");
}

// --- consequence ---------------------------------------------------------------------------

Verdict consequence(const LogicSpec& logic, const FormulaSet& premises, const Formula& conclusion,
                    int size_bound) {
  Verdict v;
  FormulaSet context = premises;
  context.insert(conclusion);

  switch (logic.engine) {
    case EngineKind::Explicit: {
      std::set<Formula> prem(premises.begin(), premises.end());
      const auto& rel = *logic.explicit_rel;
      std::set<Formula> uni(rel.universe.begin(), rel.universe.end());
      for (const auto& f : context)
        if (!uni.count(f))
          throw Error("formula outside the explicit universe of " + logic.name + ": " + f.text());
      bool ok = rel.derives(prem, conclusion);
      v.status = ok ? VerdictStatus::ValidExact : VerdictStatus::Refuted;
      if (!ok) v.witness_formula = conclusion;
      return v;
    }
    case EngineKind::Matrix: {
      auto space = enumerate_models(logic, context, size_bound);
      std::vector<MatrixEvaluator> prem_ev;
      for (const auto& p : premises) prem_ev.emplace_back(logic, p, space.atom_slots());
      MatrixEvaluator concl_ev(logic, conclusion, space.atom_slots());
      const std::size_t k = space.atom_slots().size();
      auto refutes = [&](std::size_t i) {
        std::array<int, 16> digits;
        space.matrix_digits_at(i, std::span<int>(digits.data(), k));
        std::span<const int> d(digits.data(), k);
        for (const auto& ev : prem_ev)
          if (!ev.designated(d)) return false;
        return !concl_ev.designated(d);
      };
      auto hit = first_index(space.size(), refutes);
      v.bounds["models"] = static_cast<long long>(space.size());
      if (hit) {
        v.status = VerdictStatus::Refuted;
        v.witness_model = space.at(*hit);
      } else {
        v.status = VerdictStatus::ValidExact;
      }
      return v;
    }
    case EngineKind::Kripke: {
      auto space = enumerate_models(logic, context, size_bound);
      std::vector<KripkeEvaluator> prem_ev;
      for (const auto& p : premises) prem_ev.emplace_back(logic, p, space.atom_slots());
      KripkeEvaluator concl_ev(logic, conclusion, space.atom_slots());
      auto refutes = [&](std::size_t i) {
        PackedKripke m = space.kripke_at(i);
        for (const auto& ev : prem_ev)
          if (!ev.at_point(m)) return false;
        return !concl_ev.at_point(m);
      };
      auto hit = first_index(space.size(), refutes);
      v.bounds["models"] = static_cast<long long>(space.size());
      v.bounds["max_worlds"] = size_bound;
      if (hit) {
        v.status = VerdictStatus::Refuted;
        v.witness_model = space.at(*hit);
      } else {
        v.status = VerdictStatus::ValidBounded;
      }
      return v;
    }
    case EngineKind::Bivaluation: {
      auto space = enumerate_models(logic, context, size_bound);
      auto refutes = [&](std::size_t i) {
        std::uint64_t mask = space.bival_mask_at(i);
        for (const auto& p : premises)
          if (!space.bival_mask_value(mask, p)) return false;
        return !space.bival_mask_value(mask, conclusion);
      };
      auto hit = first_index(space.size(), refutes);
      v.bounds["models"] = static_cast<long long>(space.size());
      if (hit) {
        v.status = VerdictStatus::Refuted;
        v.witness_model = space.at(*hit);
      } else {
        v.status = VerdictStatus::ValidExact;
      }
      return v;
    }
    case EngineKind::Relatedness: {
      auto space = enumerate_models(logic, context, size_bound);
      auto refutes = [&](std::size_t i) {
        auto m = std::get<RelatednessModel>(space.at(i));
        for (const auto& p : premises)
          if (!relatedness_value(m, p)) return false;
        return !relatedness_value(m, conclusion);
      };
      auto hit = first_index(space.size(), refutes);
      v.bounds["models"] = static_cast<long long>(space.size());
      if (hit) {
        v.status = VerdictStatus::Refuted;
        v.witness_model = space.at(*hit);
      } else {
        v.status = VerdictStatus::ValidExact;
      }
      return v;
    }
    case EngineKind::FOFinite: {
      auto space = enumerate_models(logic, context, size_bound);
      auto refutes = [&](std::size_t i) {
        auto s = std::get<FOStructure>(space.at(i));
        for (const auto& p : premises)
          if (!fol_evaluate(s, p, {})) return false;
        return !fol_evaluate(s, conclusion, {});
      };
      auto hit = first_index(space.size(), refutes);
      v.bounds["models"] = static_cast<long long>(space.size());
      v.bounds["max_domain"] = size_bound;
      if (hit) {
        v.status = VerdictStatus::Refuted;
        v.witness_model = space.at(*hit);
      } else {
        v.status = VerdictStatus::ValidBounded;
      }
      return v;
    }
  }
  throw Error("unreachable");
}

Verdict validity(const LogicSpec& logic, const Formula& f, int size_bound) {
  return consequence(logic, {}, f, size_bound);
}

}  // namespace trex
