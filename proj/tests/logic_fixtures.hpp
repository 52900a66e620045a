#pragma once

// Hand-built logics for unit tests. The shipped catalog has its own copies;
// tests below the catalog layer construct these directly so failures point
// at the semantics, not at catalog loading.

#include "trex/semantics.hpp"

namespace trex::fixtures {

inline LogicSpec cpl() {
  LogicSpec L;
  L.name = "CPL";
  L.signature.name = "CPL";
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}, {"<->", 2}};
  L.signature.has_top = true;
  L.signature.has_bot = true;
  MatrixSemantics m;
  m.value_names = {"0", "1"};
  m.designated = {false, true};
  m.tables["not"] = {1, 0};
  m.tables["and"] = {0, 0, 0, 1};
  m.tables["or"] = {0, 1, 1, 1};
  m.tables["->"] = {1, 1, 0, 1};
  m.tables["<->"] = {1, 0, 0, 1};
  m.top_value = 1;
  m.bot_value = 0;
  L.matrix = std::move(m);
  L.engine = EngineKind::Matrix;
  return L;
}

// Lukasiewicz three-valued logic on {not, ->}; values 0, 1/2, 1 with 1
// designated.
inline LogicSpec l3() {
  LogicSpec L;
  L.name = "L3";
  L.signature.name = "L3";
  L.signature.connectives = {{"not", 1}, {"->", 2}};
  MatrixSemantics m;
  m.value_names = {"0", "1/2", "1"};
  m.designated = {false, false, true};
  m.tables["not"] = {2, 1, 0};
  m.tables["->"] = {2, 2, 2, 1, 2, 2, 0, 1, 2};
  L.matrix = std::move(m);
  L.engine = EngineKind::Matrix;
  return L;
}

inline LogicSpec wpl() {
  LogicSpec L;
  L.name = "WPL";
  L.signature.name = "WPL";
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  L.engine = EngineKind::Bivaluation;
  L.bivaluation_constraint = "wpl-half-negation";
  return L;
}

inline LogicSpec relatedness() {
  LogicSpec L;
  L.name = "R";
  L.signature.name = "R";
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"->", 2}};
  L.engine = EngineKind::Relatedness;
  return L;
}

inline LogicSpec modal(const std::string& name, FrameClass frame) {
  LogicSpec L;
  L.name = name;
  L.signature.name = name;
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}, {"box", 1}, {"dia", 1}};
  L.signature.has_top = true;
  L.signature.has_bot = true;
  L.engine = EngineKind::Kripke;
  L.frame = frame;
  return L;
}

inline LogicSpec s4() { return modal("S4", FrameClass::S4); }
inline LogicSpec k() { return modal("K", FrameClass::K); }

inline LogicSpec ipl() {
  LogicSpec L;
  L.name = "IPL";
  L.signature.name = "IPL";
  L.signature.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  L.signature.has_top = true;
  L.signature.has_bot = true;
  L.engine = EngineKind::Kripke;
  L.frame = FrameClass::Ipl;
  return L;
}

// Tarskian toy logic: the universe is a set of atoms plus top, and
// Gamma |- phi iff phi is top or a member of Gamma.
inline LogicSpec toy(const std::string& name, const std::vector<std::string>& atoms) {
  LogicSpec L;
  L.name = name;
  L.signature.name = name;
  L.signature.has_top = true;
  L.engine = EngineKind::Explicit;
  ExplicitConsequence rel;
  for (const auto& a : atoms) rel.universe.push_back(Formula::atom(a));
  rel.universe.push_back(Formula::constant(ConstKind::Top));
  std::sort(rel.universe.begin(), rel.universe.end());
  // all subsets
  const std::size_t n = rel.universe.size();
  for (std::size_t bits = 0; bits < (1ull << n); ++bits) {
    std::set<Formula> premises;
    for (std::size_t i = 0; i < n; ++i)
      if ((bits >> i) & 1u) premises.insert(rel.universe[i]);
    for (const auto& f : rel.universe)
      if (f.kind() == FormulaKind::Const || premises.count(f)) rel.holds.insert({premises, f});
  }
  L.explicit_rel = std::move(rel);
  return L;
}

}  // namespace trex::fixtures
