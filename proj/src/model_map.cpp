#include "trex/model_map.hpp"

namespace trex {

namespace {

MatrixModel wpl_to_cpl(const BivaluationModel& m) {
  MatrixModel out;
  for (const auto& [f, v] : m.assignment)
    if (f.kind() == FormulaKind::Atom || f.kind() == FormulaKind::IndexedAtom)
      out.valuation[f.text()] = v ? 1 : 0;
  return out;
}

BivaluationModel cpl_to_wpl(const ModelMap& map, const MatrixModel& m) {
  for (const auto& g : map.guard) {
    MatrixModel probe = m;
    if (!matrix_designated(map.target, probe, g)) throw GuardViolation(g);
  }
  BivaluationModel out;
  out.domain.assign(map.closure.begin(), map.closure.end());
  for (const auto& f : map.closure) {
    std::vector<Formula> one = {f};
    Formula key = indexed_atom(map.index_base, one);
    auto it = m.valuation.find(key.text());
    if (it == m.valuation.end())
      throw Error("model map " + map.name + ": input lacks " + key.text());
    out.assignment[f] = it->second != 0;
  }
  return out;
}

MatrixModel epstein(const ModelMap& map, const RelatednessModel& m, const FormulaSet& context) {
  MatrixModel out;
  for (const auto& [atom, v] : m.valuation) out.valuation[atom] = v ? 1 : 0;
  FormulaSet indexed;
  for (const auto& f : context) collect_indexed_atoms(f, indexed);
  for (const auto& ia : indexed) {
    if (ia.symbol() != map.index_base)
      throw Error("model map " + map.name + ": unexpected indexed atom " + ia.text());
    auto parts = split_indexed_key(ia.key());
    if (parts.size() != 2)
      throw Error("model map " + map.name + ": malformed telltale key " + ia.key());
    Formula left = parse(parts[0], map.source.signature);
    Formula right = parse(parts[1], map.source.signature);
    bool related = false;
    for (const auto& a : plain_atoms(left)) {
      for (const auto& b : plain_atoms(right))
        if (m.are_related(a, b)) {
          related = true;
          break;
        }
      if (related) break;
    }
    out.valuation[ia.text()] = related ? 1 : 0;
  }
  return out;
}

KripkeModel kuijer(const ModelMap& map, const KripkeModel& m, const FormulaSet& context) {
  KripkeModel out;
  out.world_count = m.world_count;
  out.point = m.point;
  out.access.assign(m.world_count, std::vector<bool>(m.world_count, false));
  FormulaSet indexed;
  for (const auto& f : context) collect_indexed_atoms(f, indexed);
  for (const auto& ia : indexed) {
    if (ia.symbol() != map.index_base)
      throw Error("model map " + map.name + ": unexpected indexed atom " + ia.text());
    Formula phi = parse(ia.key(), map.source.signature);
    std::vector<bool> worlds(m.world_count, false);
    for (int w = 0; w < m.world_count; ++w) worlds[w] = kripke_forces(map.source, m, w, phi);
    out.valuation[ia.text()] = std::move(worlds);
  }
  return out;
}

MatrixModel trivial_collapse(const FormulaSet& context) {
  MatrixModel out;
  for (const auto& key : atom_keys(context)) out.valuation[key] = 0;
  return out;
}

}  // namespace

Model apply_model_map(const ModelMap& map, const Model& m, const FormulaSet& context) {
  switch (map.transform) {
    case ModelMap::Transform::WplToCpl:
      return wpl_to_cpl(std::get<BivaluationModel>(m));
    case ModelMap::Transform::CplToWpl:
      return cpl_to_wpl(map, std::get<MatrixModel>(m));
    case ModelMap::Transform::EpsteinRelatedness:
      return epstein(map, std::get<RelatednessModel>(m), context);
    case ModelMap::Transform::KuijerWorlds:
      return kuijer(map, std::get<KripkeModel>(m), context);
    case ModelMap::Transform::TrivialCollapse:
      return trivial_collapse(context);
  }
  throw Error("unreachable");
}

}  // namespace trex
