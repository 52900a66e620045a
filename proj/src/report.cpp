#include "trex/report.hpp"

#include <fstream>

namespace trex {

namespace {

Json bool_matrix(const std::vector<std::vector<bool>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<bool>> matrix_from(const Json& j) {
  std::vector<std::vector<bool>> out;
  for (const auto& row : j) {
    std::vector<bool> r;
    for (const auto& cell : row) r.push_back(cell.get<int>() != 0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Json to_json(const Model& m) {
  Json out;
  if (const auto* mm = std::get_if<MatrixModel>(&m)) {
    out["kind"] = "valuation";
    Json v = Json::object();
    for (const auto& [atom, value] : mm->valuation) v[atom] = value;
    out["valuation"] = std::move(v);
  } else if (const auto* km = std::get_if<KripkeModel>(&m)) {
    out["kind"] = "kripke";
    out["worlds"] = km->world_count;
    out["access"] = bool_matrix(km->access);
    Json v = Json::object();
    for (const auto& [atom, col] : km->valuation) {
      Json worlds = Json::array();
      for (int w = 0; w < km->world_count; ++w)
        if (col[w]) worlds.push_back(w);
      v[atom] = std::move(worlds);
    }
    out["valuation"] = std::move(v);
    out["point"] = km->point;
  } else if (const auto* bm = std::get_if<BivaluationModel>(&m)) {
    out["kind"] = "bivaluation";
    Json a = Json::object();
    for (const auto& [f, value] : bm->assignment) a[f.text()] = value;
    out["assignment"] = std::move(a);
  } else if (const auto* rm = std::get_if<RelatednessModel>(&m)) {
    out["kind"] = "relatedness";
    Json v = Json::object();
    for (const auto& [atom, value] : rm->valuation) v[atom] = value;
    out["valuation"] = std::move(v);
    Json rel = Json::array();
    for (const auto& [a, b] : rm->related)
      if (a <= b) rel.push_back(Json::array({a, b}));
    out["related"] = std::move(rel);
  } else if (const auto* fs = std::get_if<FOStructure>(&m)) {
    out["kind"] = "structure";
    out["domain"] = fs->domain_size;
    Json u = Json::object();
    for (const auto& [pred, ext] : fs->unary) {
      Json elems = Json::array();
      for (int d = 0; d < fs->domain_size; ++d)
        if (ext[d]) elems.push_back(d);
      u[pred] = std::move(elems);
    }
    out["unary"] = std::move(u);
    out["relation"] = bool_matrix(fs->relation);
  }
  return out;
}

Model model_from_json(const Json& j) {
  const std::string kind = j.at("kind");
  if (kind == "valuation") {
    MatrixModel m;
    for (const auto& [atom, value] : j.at("valuation").items()) m.valuation[atom] = value;
    return m;
  }
  if (kind == "kripke") {
    KripkeModel m;
    m.world_count = j.at("worlds");
    m.access = matrix_from(j.at("access"));
    m.point = j.at("point");
    for (const auto& [atom, worlds] : j.at("valuation").items()) {
      std::vector<bool> col(m.world_count, false);
      for (const auto& w : worlds) col[w.get<int>()] = true;
      m.valuation[atom] = std::move(col);
    }
    return m;
  }
  if (kind == "relatedness") {
    RelatednessModel m;
    for (const auto& [atom, value] : j.at("valuation").items()) m.valuation[atom] = value;
    for (const auto& pair : j.at("related")) {
      m.related.insert({pair[0], pair[1]});
      m.related.insert({pair[1], pair[0]});
    }
    return m;
  }
  throw Error("cannot replay a model of kind " + kind);
}

Json to_json(const Witness& w) {
  Json out;
  Json fs = Json::object();
  for (const auto& [role, text] : w.formulas) fs[role] = text;
  out["formulas"] = std::move(fs);
  if (w.model) out["model"] = to_json(*w.model);
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

Json to_json(const CheckEntry& e) {
  Json out;
  out["property"] = e.property;
  out["verdict"] = to_string(e.status);
  Json bounds = Json::object();
  for (const auto& [k, v] : e.bounds) bounds[k] = v;
  out["bounds"] = std::move(bounds);
  Json ws = Json::array();
  for (const auto& w : e.witnesses) ws.push_back(to_json(w));
  out["witnesses"] = std::move(ws);
  out["provenance"] = e.provenance;
  if (!e.note.empty()) out["note"] = e.note;
  if (!e.flags.empty()) {
    Json fl = Json::object();
    for (const auto& [k, v] : e.flags) fl[k] = v;
    out["flags"] = std::move(fl);
  }
  out["elapsed_ms"] = e.elapsed_ms;
  return out;
}

Json to_json(const Registry& r) {
  Json out;
  out["nodes"] = r.nodes;
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    Json je;
    je["translation"] = e.translation;
    je["source"] = e.source_node;
    je["target"] = e.target_node;
    je["gate_gg"] = e.gg_pass ? "pass" : "fail";
    je["provenance"] = e.provenance;
    Json reports = Json::object();
    for (const auto& [name, entry] : e.reports) reports[name] = to_json(entry);
    je["reports"] = std::move(reports);
    edges.push_back(std::move(je));
  }
  out["edges"] = std::move(edges);
  Json rel = Json::array();
  for (const auto& [a, b] : r.relation) rel.push_back(Json::array({a, b}));
  out["preorder"] = std::move(rel);
  return out;
}

namespace {

Json report_header(const std::string& suite, const Bounds& bounds) {
  Json out;
  out["schema_version"] = 1;
  out["suite"] = suite;
  Json jb = Json::object();
  for (const auto& [k, v] : bounds.as_map()) jb[k] = v;
  out["bounds"] = std::move(jb);
  return out;
}

}  // namespace

Json make_report(const std::string& suite, const Bounds& bounds,
                 const std::vector<CheckEntry>& entries) {
  Json out = report_header(suite, bounds);
  Json checks = Json::array();
  bool all = true;
  for (const auto& e : entries) {
    checks.push_back(to_json(e));
    all = all && (e.holds() || e.status == VerdictStatus::Skipped);
  }
  out["checks"] = std::move(checks);
  out["all_expected"] = all;
  return out;
}

Json make_report(const std::string& suite, const Bounds& bounds,
                 const std::vector<CheckEntry>& entries, const Registry& registry) {
  Json out = make_report(suite, bounds, entries);
  out["registry"] = to_json(registry);
  return out;
}

void strip_elapsed(Json& j) {
  if (j.is_object()) {
    if (j.contains("elapsed_ms")) j["elapsed_ms"] = 0;
    for (auto& [k, v] : j.items()) strip_elapsed(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_elapsed(v);
  }
}

void write_report(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report to " + path);
  out << report.dump(2) << "\n";
}

}  // namespace trex
