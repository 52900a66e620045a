#pragma once

// Hand-built clause systems mirroring well-known translations, used by the
// engine tests below the catalog layer.

#include "logic_fixtures.hpp"
#include "trex/translation.hpp"

namespace trex::fixtures {

inline LogicSpec cpl_not_imp() {
  LogicSpec L = cpl();
  L.name = "CPL_not_imp";
  L.signature.name = L.name;
  L.signature.connectives = {{"not", 1}, {"->", 2}};
  L.signature.has_top = false;
  L.signature.has_bot = false;
  L.matrix->tables.erase("and");
  L.matrix->tables.erase("or");
  L.matrix->tables.erase("<->");
  L.matrix->top_value = -1;
  L.matrix->bot_value = -1;
  L.registry_node = "CPL";
  return L;
}

inline LogicSpec cpl_std() {
  LogicSpec L = cpl();
  L.name = "CPL_std";
  L.signature.name = L.name;
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  L.matrix->tables.erase("<->");
  L.registry_node = "CPL";
  return L;
}

inline LogicSpec grz_frag() {
  LogicSpec L = modal("Grz_frag", FrameClass::GrzDesk);
  L.signature.name = L.name;
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"->", 2}, {"box", 1}};
  L.signature.has_top = false;
  L.signature.has_bot = false;
  L.registry_node = "Grz";
  return L;
}

inline PlanStep via(const std::string& tr, int operand, bool shift = false) {
  PlanStep s;
  s.kind = PlanStep::Kind::Via;
  s.translator = tr;
  s.operand = operand;
  s.shift_context = shift;
  return s;
}

inline PlanStep idx(const std::string& base, std::vector<int> tuple) {
  PlanStep s;
  s.kind = PlanStep::Kind::Index;
  s.index_base = base;
  s.index_tuple = std::move(tuple);
  return s;
}

inline Clause clause(const std::vector<std::string>& key, const std::string& body,
                     const SignatureSpec& target, std::vector<PlanStep> plan,
                     std::vector<OperandRange> ranges = {}) {
  Clause c;
  c.key = key;
  c.body = Template::parse(body, target, static_cast<int>(plan.size()));
  c.plan = std::move(plan);
  c.ranges = std::move(ranges);
  return c;
}

inline Clause literal_clause(const std::string& sym, int arity, const SignatureSpec& target,
                             const std::string& owner) {
  std::string body = "(" + sym;
  std::vector<PlanStep> plan;
  for (int i = 1; i <= arity; ++i) {
    body += " #" + std::to_string(i);
    plan.push_back(via(owner, i - 1));
  }
  body += ")";
  return clause({sym}, body, target, std::move(plan));
}

// Wojcicki: classical {not,->} into three-valued Lukasiewicz.
inline ClauseSystem tl() {
  ClauseSystem cs;
  cs.name = "Tl";
  cs.source = cpl_not_imp();
  cs.target = l3();
  cs.main = "T";
  Translator t;
  t.id = "T";
  const auto& tgt = cs.target.signature;
  t.clauses.push_back(clause({"not"}, "(-> #1 (not #1))", tgt, {via("T", 0)}));
  t.clauses.push_back(clause({"->"}, "(-> #1 (-> #1 #2))", tgt, {via("T", 0), via("T", 1)}));
  cs.translators.emplace("T", std::move(t));
  cs.check();
  return cs;
}

// Godel: intuitionistic logic into S4.
inline ClauseSystem tg() {
  ClauseSystem cs;
  cs.name = "Tg";
  cs.source = ipl();
  cs.target = s4();
  cs.main = "T";
  Translator t;
  t.id = "T";
  const auto& tgt = cs.target.signature;
  t.atom.kind = AtomRule::Kind::Template;
  t.atom.body = Template::parse("(box #1)", tgt, 1);
  t.clauses.push_back(clause({"not"}, "(box (not #1))", tgt, {via("T", 0)}));
  t.clauses.push_back(clause({"->"}, "(box (-> #1 #2))", tgt, {via("T", 0), via("T", 1)}));
  t.clauses.push_back(literal_clause("and", 2, tgt, "T"));
  t.clauses.push_back(literal_clause("or", 2, tgt, "T"));
  cs.translators.emplace("T", std::move(t));
  cs.check();
  return cs;
}

// Epstein: relatedness logic into classical logic with telltale atoms.
inline ClauseSystem te() {
  ClauseSystem cs;
  cs.name = "TE";
  cs.source = relatedness();
  cs.target = cpl();
  cs.main = "T";
  cs.declares_model_map_dependency = true;
  Translator t;
  t.id = "T";
  const auto& tgt = cs.target.signature;
  t.clauses.push_back(clause({"->"}, "(and (-> #1 #2) #3)", tgt,
                             {via("T", 0), via("T", 1), idx("d", {0, 1})}));
  t.clauses.push_back(literal_clause("not", 1, tgt, "T"));
  t.clauses.push_back(literal_clause("and", 2, tgt, "T"));
  cs.translators.emplace("T", std::move(t));
  cs.check();
  return cs;
}

// Gentzen: classical into intuitionistic logic by double-negating atoms.
inline ClauseSystem tc() {
  ClauseSystem cs;
  cs.name = "Tc";
  cs.source = cpl_std();
  cs.target = ipl();
  cs.main = "T";
  Translator t;
  t.id = "T";
  const auto& tgt = cs.target.signature;
  t.atom.kind = AtomRule::Kind::Template;
  t.atom.body = Template::parse("(not (not #1))", tgt, 1);
  t.clauses.push_back(clause({"or"}, "(not (and (not #1) (not #2)))", tgt,
                             {via("T", 0), via("T", 1)}));
  t.clauses.push_back(literal_clause("not", 1, tgt, "T"));
  t.clauses.push_back(literal_clause("and", 2, tgt, "T"));
  t.clauses.push_back(literal_clause("->", 2, tgt, "T"));
  cs.translators.emplace("T", std::move(t));
  cs.check();
  return cs;
}

// Demri-Gore: Grz into S4 through two mutually recursive translators.
inline ClauseSystem tpm() {
  ClauseSystem cs;
  cs.name = "DemriGore";
  cs.source = grz_frag();
  cs.target = s4();
  cs.main = "plus";
  const auto& tgt = cs.target.signature;
  Translator plus;
  plus.id = "plus";
  plus.clauses.push_back(clause({"box"}, "(box (-> (box (-> #1 (box #2))) #3))", tgt,
                                {via("plus", 0), via("minus", 0), via("plus", 0)}));
  plus.clauses.push_back(clause({"not"}, "(not #1)", tgt, {via("minus", 0)}));
  plus.clauses.push_back(clause({"->"}, "(-> #1 #2)", tgt, {via("minus", 0), via("plus", 1)}));
  plus.clauses.push_back(literal_clause("and", 2, tgt, "plus"));
  Translator minus;
  minus.id = "minus";
  minus.clauses.push_back(clause({"box"}, "(box #1)", tgt, {via("minus", 0)}));
  minus.clauses.push_back(clause({"not"}, "(not #1)", tgt, {via("plus", 0)}));
  minus.clauses.push_back(clause({"->"}, "(-> #1 #2)", tgt, {via("plus", 0), via("minus", 1)}));
  minus.clauses.push_back(literal_clause("and", 2, tgt, "minus"));
  cs.translators.emplace("plus", std::move(plus));
  cs.translators.emplace("minus", std::move(minus));
  cs.check();
  return cs;
}

// whole-formula image as a fresh indexed atom
inline ClauseSystem tprime() {
  ClauseSystem cs;
  cs.name = "Tprime";
  cs.source = wpl();
  cs.target = cpl();
  cs.declares_model_map_dependency = true;
  OpaqueRule r;
  r.kind = OpaqueRule::Kind::IndexAtom;
  r.base = "p";
  cs.opaque = r;
  cs.check();
  return cs;
}

inline ClauseSystem glivenko() {
  ClauseSystem cs;
  cs.name = "Glivenko";
  cs.source = cpl_std();
  cs.target = ipl();
  OpaqueRule r;
  r.kind = OpaqueRule::Kind::DoubleNegation;
  cs.opaque = r;
  cs.check();
  return cs;
}

}  // namespace trex::fixtures
