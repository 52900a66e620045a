#include "trex/verify.hpp"

#include <algorithm>
#include <chrono>

#include "trex/parallel.hpp"

namespace trex {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

const char* kAtomNames[] = {"p", "q", "r", "s"};

std::vector<Formula> bounded_formulas(const LogicSpec& L, int atoms, int max_nodes) {
  if (L.engine == EngineKind::Explicit) return L.explicit_rel->universe;
  std::vector<Formula> as;
  for (int i = 0; i < atoms && i < 4; ++i) as.push_back(Formula::atom(kAtomNames[i]));
  return enumerate_formulas(L.signature, as, max_nodes);
}

FormulaSet atom_context(int atoms) {
  FormulaSet out;
  for (int i = 0; i < atoms && i < 4; ++i) out.insert(Formula::atom(kAtomNames[i]));
  return out;
}

// subsets of the pool with at most `cap` members, ordered by (size, mask)
std::vector<FormulaSet> premise_subsets(const FormulaSet& pool, int cap) {
  std::vector<Formula> members(pool.begin(), pool.end());
  const std::size_t n = members.size();
  if (n > 16) throw Error("premise pool too large");
  std::vector<std::pair<int, std::uint32_t>> masks;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    int pc = __builtin_popcount(m);
    if (pc <= cap) masks.emplace_back(pc, m);
  }
  std::sort(masks.begin(), masks.end());
  std::vector<FormulaSet> out;
  out.reserve(masks.size());
  for (const auto& [pc, m] : masks) {
    FormulaSet s;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1u) s.insert(members[i]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string join_texts(const FormulaSet& fs) {
  std::string out;
  for (const auto& f : fs) {
    if (!out.empty()) out += " ; ";
    out += f.text();
  }
  return out;
}

void store_premises(Witness& w, const FormulaSet& premises) {
  int i = 0;
  for (const auto& f : premises) w.formulas["premise " + std::to_string(i++)] = f.text();
}

Formula substitute_atoms(const Formula& f, const std::map<std::string, Formula>& sub) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      auto it = sub.find(f.symbol());
      return it == sub.end() ? f : it->second;
    }
    case FormulaKind::Apply: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& op : f.operands()) ops.push_back(substitute_atoms(op, sub));
      return Formula::apply(f.symbol(), std::move(ops));
    }
    case FormulaKind::Quant:
      return Formula::quant(f.quant_kind(), f.quant_var(), substitute_atoms(f.quant_body(), sub));
    default:
      return f;
  }
}

bool models_equal(const Model& a, const Model& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ma = std::get_if<MatrixModel>(&a))
    return ma->valuation == std::get<MatrixModel>(b).valuation;
  if (const auto* ka = std::get_if<KripkeModel>(&a)) {
    const auto& kb = std::get<KripkeModel>(b);
    return ka->world_count == kb.world_count && ka->access == kb.access &&
           ka->valuation == kb.valuation && ka->point == kb.point;
  }
  if (const auto* ba = std::get_if<BivaluationModel>(&a)) {
    const auto& bb = std::get<BivaluationModel>(b);
    return ba->domain == bb.domain && ba->assignment == bb.assignment;
  }
  if (const auto* ra = std::get_if<RelatednessModel>(&a)) {
    const auto& rb = std::get<RelatednessModel>(b);
    return ra->valuation == rb.valuation && ra->related == rb.related;
  }
  if (const auto* fa = std::get_if<FOStructure>(&a)) {
    const auto& fb = std::get<FOStructure>(b);
    return fa->domain_size == fb.domain_size && fa->unary == fb.unary &&
           fa->relation == fb.relation;
  }
  return false;
}

}  // namespace

std::map<std::string, long long> Bounds::as_map() const {
  return {
      {"max_nodes", max_nodes},
      {"max_atoms", max_atoms},
      {"max_model_size", max_model_size},
      {"max_premises", max_premises},
      {"dt_premises", dt_premises},
      {"dt_nodes", dt_nodes},
      {"template_bound", template_bound},
      {"pt_nodes", pt_nodes},
      {"pt_template_nodes", pt_template_nodes},
      {"target_nodes", target_nodes},
      {"compose_nodes", compose_nodes},
  };
}

Bounds Bounds::from_flags(const std::map<std::string, long long>& kv) {
  Bounds b;
  auto set = [&](const char* key, int& field) {
    auto it = kv.find(key);
    if (it != kv.end()) field = static_cast<int>(it->second);
  };
  set("max_nodes", b.max_nodes);
  set("max_atoms", b.max_atoms);
  set("max_model_size", b.max_model_size);
  set("max_premises", b.max_premises);
  set("dt_premises", b.dt_premises);
  set("dt_nodes", b.dt_nodes);
  set("template_bound", b.template_bound);
  set("pt_nodes", b.pt_nodes);
  set("pt_template_nodes", b.pt_template_nodes);
  set("target_nodes", b.target_nodes);
  set("compose_nodes", b.compose_nodes);
  for (const auto& [k, v] : kv)
    if (b.as_map().find(k) == b.as_map().end()) throw Error("unknown bound " + k);
  return b;
}

FormulaSet default_dt_pool(const LogicSpec& logic) {
  if (logic.engine == EngineKind::Explicit)
    return FormulaSet(logic.explicit_rel->universe.begin(), logic.explicit_rel->universe.end());
  FormulaSet out;
  for (const char* text : {"p", "q", "(not p)", "(-> p q)", "(-> p (-> p q))"}) {
    try {
      out.insert(parse(text, logic.signature));
    } catch (const ParseError&) {
    }
  }
  return out;
}

// --- truth preservation -------------------------------------------------------------

CheckEntry verify_truth_preservation(const ClauseSystem& t, const ModelMap* map, const Bounds& b) {
  if (!map)
    throw Error("truth preservation of " + t.name + " requires a model map");
  Timer timer;
  CheckEntry e;
  e.property = "truth-preservation " + t.name + " via " + map->name;
  e.bounds = {{"max_nodes", b.max_nodes},
              {"max_atoms", b.max_atoms},
              {"max_model_size", b.max_model_size}};

  const bool forward = map->direction == ModelMap::Direction::SourceToTarget;
  const LogicSpec& consumed = map->consumes();
  const LogicSpec& produced = map->produces();

  auto pool = bounded_formulas(t.source, b.max_atoms, b.max_nodes);
  std::vector<Formula> images;
  images.reserve(pool.size());
  for (const auto& f : pool) images.push_back(apply_translation(t, f));

  long long scanned = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Formula& phi = pool[i];
    const Formula& img = images[i];
    FormulaSet ctx;
    if (consumed.engine == EngineKind::Bivaluation) {
      ctx.insert(phi);
      ctx.insert(img);
    } else {
      ctx = atom_context(b.max_atoms);
      ctx.insert(forward ? phi : img);
    }
    auto space = enumerate_models(consumed, ctx, b.max_model_size);
    scanned += static_cast<long long>(space.size());
    auto mismatch = [&](std::size_t mi) {
      Model m = space.at(mi);
      if (forward) {
        bool lhs = satisfies(consumed, m, phi);
        FormulaSet img_ctx{img};
        Model mapped = apply_model_map(*map, m, img_ctx);
        return lhs != satisfies(produced, mapped, img);
      }
      bool lhs = satisfies(consumed, m, img);
      FormulaSet phi_ctx{phi};
      Model mapped = apply_model_map(*map, m, phi_ctx);
      return lhs != satisfies(produced, mapped, phi);
    };
    auto hit = first_index(space.size(), mismatch);
    if (hit) {
      e.status = VerdictStatus::Refuted;
      Witness w;
      w.formulas["phi"] = phi.text();
      w.formulas["image"] = img.text();
      w.model = space.at(*hit);
      e.witnesses.push_back(std::move(w));
      break;
    }
  }
  e.bounds["models_scanned"] = scanned;
  if (e.status != VerdictStatus::Refuted)
    e.status = consumed.exact_engine() ? VerdictStatus::ValidExact : VerdictStatus::ValidBounded;
  e.elapsed_ms = timer.ms();
  return e;
}

// --- theoremhood / conservativity -----------------------------------------------------

namespace {

void collect_free_variables(const Formula& f, std::set<std::string>& bound,
                            std::set<std::string>& free) {
  switch (f.kind()) {
    case FormulaKind::Pred:
      for (const auto& v : f.pred_vars())
        if (!bound.count(v)) free.insert(v);
      return;
    case FormulaKind::Quant: {
      bool fresh = bound.insert(f.quant_var()).second;
      collect_free_variables(f.quant_body(), bound, free);
      if (fresh) bound.erase(f.quant_var());
      return;
    }
    default:
      for (const auto& op : f.operands()) collect_free_variables(op, bound, free);
  }
}

// validity of an open first-order formula means validity of its universal
// closure
Formula universal_closure(const Formula& f) {
  std::set<std::string> bound, free;
  collect_free_variables(f, bound, free);
  Formula out = f;
  for (auto it = free.rbegin(); it != free.rend(); ++it)
    out = Formula::quant(QuantKind::Forall, *it, out);
  return out;
}

}  // namespace

CheckEntry verify_theoremhood(const ClauseSystem& t, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "theoremhood " + t.name;
  e.bounds = {{"max_nodes", b.max_nodes},
              {"max_atoms", b.max_atoms},
              {"max_model_size", b.max_model_size}};

  auto pool = bounded_formulas(t.source, b.max_atoms, b.max_nodes);
  std::vector<Formula> images;
  images.reserve(pool.size());
  for (const auto& f : pool) images.push_back(universal_closure(apply_translation(t, f)));

  auto mismatch = [&](std::size_t i) {
    bool src = validity(t.source, pool[i], b.max_model_size).holds();
    bool tgt = validity(t.target, images[i], b.max_model_size).holds();
    return src != tgt;
  };
  auto hit = first_index(pool.size(), mismatch);
  e.bounds["formulas"] = static_cast<long long>(pool.size());
  if (hit) {
    e.status = VerdictStatus::Refuted;
    Witness w;
    w.formulas["phi"] = pool[*hit].text();
    w.formulas["image"] = images[*hit].text();
    bool src = validity(t.source, pool[*hit], b.max_model_size).holds();
    w.note = src ? "valid in the source, image refuted" : "image valid, source refuted";
    auto refuted = validity(src ? t.target : t.source, src ? images[*hit] : pool[*hit],
                            b.max_model_size);
    w.model = refuted.witness_model;
    e.witnesses.push_back(std::move(w));
  } else {
    e.status = (t.source.exact_engine() && t.target.exact_engine()) ? VerdictStatus::ValidExact
                                                                    : VerdictStatus::ValidBounded;
  }
  e.elapsed_ms = timer.ms();
  return e;
}

CheckEntry verify_conservativity(const ClauseSystem& t, const FormulaSet& premise_pool,
                                 const Bounds& b) {
  if (t.source.consequence_mode != ConsequenceMode::Full)
    throw Error("conservativity requires full consequence in " + t.source.name);
  Timer timer;
  CheckEntry e;
  e.property = "conservativity " + t.name;
  e.bounds = {{"max_nodes", b.max_nodes},
              {"max_premises", b.max_premises},
              {"pool", static_cast<long long>(premise_pool.size())}};

  auto subsets = premise_subsets(premise_pool, b.max_premises);
  auto conclusions = bounded_formulas(t.source, b.max_atoms, b.max_nodes);
  std::vector<FormulaSet> image_subsets;
  image_subsets.reserve(subsets.size());
  for (const auto& g : subsets) image_subsets.push_back(apply_translation(t, g));
  std::vector<Formula> image_conclusions;
  image_conclusions.reserve(conclusions.size());
  for (const auto& c : conclusions) image_conclusions.push_back(apply_translation(t, c));

  const std::size_t nf = conclusions.size();
  auto mismatch = [&](std::size_t flat) {
    std::size_t si = flat / nf, ci = flat % nf;
    bool src = consequence(t.source, subsets[si], conclusions[ci], b.max_model_size).holds();
    bool tgt =
        consequence(t.target, image_subsets[si], image_conclusions[ci], b.max_model_size).holds();
    return src != tgt;
  };
  auto hit = first_index(subsets.size() * nf, mismatch);
  e.bounds["instances"] = static_cast<long long>(subsets.size() * nf);
  if (hit) {
    std::size_t si = *hit / nf, ci = *hit % nf;
    e.status = VerdictStatus::Refuted;
    Witness w;
    store_premises(w, subsets[si]);
    w.formulas["conclusion"] = conclusions[ci].text();
    w.note = "image side: " + join_texts(image_subsets[si]) + " |- " +
             image_conclusions[ci].text();
    e.witnesses.push_back(std::move(w));
  } else {
    e.status = (t.source.exact_engine() && t.target.exact_engine()) ? VerdictStatus::ValidExact
                                                                    : VerdictStatus::ValidBounded;
  }
  e.elapsed_ms = timer.ms();
  return e;
}

// --- gv sub-logic ------------------------------------------------------------------------

CheckEntry verify_gv_sublogic(const GvWitness& w, const Bounds& b) {
  (void)b;
  Timer timer;
  const ClauseSystem& t = *w.translation;
  CheckEntry e;
  e.property = "gv-sublogic " + t.name;

  auto source_space = enumerate_models(t.source, w.source_context, w.source_bound);
  auto target_space = enumerate_models(t.target, w.target_context, w.target_bound);
  e.bounds = {{"source_models", static_cast<long long>(source_space.size())},
              {"target_models", static_cast<long long>(target_space.size())}};

  std::vector<std::size_t> theta_models;
  for (std::size_t i = 0; i < target_space.size(); ++i) {
    Model m = target_space.at(i);
    bool ok = true;
    for (const auto& g : w.theta)
      if (!satisfies(t.target, m, g)) {
        ok = false;
        break;
      }
    if (ok) theta_models.push_back(i);
  }
  e.bounds["theta_models"] = static_cast<long long>(theta_models.size());

  // (a) bounded surjectivity onto the source models
  for (std::size_t si = 0; si < source_space.size(); ++si) {
    Model ms = source_space.at(si);
    bool hit = false;
    for (std::size_t ti : theta_models) {
      Model mapped = apply_model_map(w.map, target_space.at(ti), w.source_context);
      if (models_equal(mapped, ms)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      e.status = VerdictStatus::Refuted;
      Witness wit;
      wit.note = "source model not reached through the guard";
      wit.model = ms;
      e.witnesses.push_back(std::move(wit));
      e.elapsed_ms = timer.ms();
      return e;
    }
  }

  // (b) satisfaction transfer on guarded models
  std::vector<Formula> pool(w.source_pool.begin(), w.source_pool.end());
  std::vector<Formula> images;
  images.reserve(pool.size());
  for (const auto& f : pool) images.push_back(apply_translation(t, f));
  for (std::size_t ti : theta_models) {
    Model mt = target_space.at(ti);
    Model mapped = apply_model_map(w.map, mt, w.source_context);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (satisfies(t.target, mt, images[i]) != satisfies(t.source, mapped, pool[i])) {
        e.status = VerdictStatus::Refuted;
        Witness wit;
        wit.formulas["phi"] = pool[i].text();
        wit.formulas["image"] = images[i].text();
        wit.model = mt;
        e.witnesses.push_back(std::move(wit));
        e.elapsed_ms = timer.ms();
        return e;
      }
    }
  }

  e.status = (t.source.exact_engine() && t.target.exact_engine()) ? VerdictStatus::ValidExact
                                                                  : VerdictStatus::ValidBounded;
  e.elapsed_ms = timer.ms();
  return e;
}

GvWitness make_gv_witness(const Catalog& cat, const Counterexample& ce, const Bounds& b) {
  GvWitness w;
  w.translation = &cat.translation(ce.translation);
  w.map = cat.model_map(ce.map);
  const ClauseSystem& t = *w.translation;
  w.source_bound = b.max_model_size;
  w.target_bound = b.max_model_size;

  bool dynamic_delta =
      std::any_of(ce.theta.begin(), ce.theta.end(), [](const std::string& s) { return s == "@delta"; });
  if (dynamic_delta) {
    // a representative closure covering all clause shapes
    FormulaSet seed;
    for (const char* s : {"(not (not p))", "(and p q)", "(or p q)", "(-> p q)"})
      seed.insert(parse(s, t.source.signature));
    FormulaSet closure = subformula_closure(seed);
    w.theta = mossakowski_delta(closure, t.target.signature, w.map.index_base);
    w.map.closure = closure;
    w.map.guard = w.theta;
    w.source_pool = closure;
    w.source_context = closure;
    w.target_context = w.theta;
    for (const auto& f : closure) {
      std::vector<Formula> one = {f};
      w.target_context.insert(indexed_atom(w.map.index_base, one));
    }
    return w;
  }

  for (const auto& s : ce.theta) w.theta.insert(parse(s, t.target.signature));
  auto pool = bounded_formulas(t.source, b.max_atoms, std::min(b.max_nodes, 4));
  w.source_pool = FormulaSet(pool.begin(), pool.end());
  w.source_context = atom_context(b.max_atoms);
  w.target_context = w.theta;
  for (const auto& f : w.source_pool) w.target_context.insert(apply_translation(t, f));
  return w;
}

// --- deduction theorems ---------------------------------------------------------------

namespace {

struct DtGrid {
  std::vector<FormulaSet> gammas;
  std::vector<Formula> formulas;
  std::size_t size() const { return gammas.size() * formulas.size() * formulas.size(); }
  void split(std::size_t flat, std::size_t* g, std::size_t* a, std::size_t* c) const {
    const std::size_t nf = formulas.size();
    *c = flat % nf;
    *a = (flat / nf) % nf;
    *g = flat / (nf * nf);
  }
};

DtGrid dt_grid(const LogicSpec& L, const FormulaSet& pool, const Bounds& b) {
  DtGrid grid;
  grid.gammas = premise_subsets(pool, b.dt_premises);
  grid.formulas = bounded_formulas(L, b.max_atoms, b.dt_nodes);
  return grid;
}

// Designation/forcing bitmasks over one fixed model space; instance grids
// then run on pure bit operations instead of one model sweep per call.
// Only matrix and kripke engines qualify (their spaces do not depend on
// the formula's closure).
class SatCache {
 public:
  SatCache(const LogicSpec& L, const Bounds& b) : logic_(L) {
    if (L.engine != EngineKind::Matrix && L.engine != EngineKind::Kripke) return;
    space_ = enumerate_models(L, atom_context(b.max_atoms), b.max_model_size);
    words_ = (space_.size() + 63) / 64;
    fast_ = true;
  }

  bool usable(const std::vector<Formula>& formulas) const {
    if (!fast_) return false;
    std::set<std::string> slots(space_.atom_slots().begin(), space_.atom_slots().end());
    for (const auto& f : formulas)
      for (const auto& key : atom_keys(f))
        if (!slots.count(key)) return false;
    return true;
  }

  // masks for a batch of formulas, computed in parallel; the result is
  // indexed like the input
  std::vector<std::vector<std::uint64_t>> masks(const std::vector<Formula>& formulas) const {
    std::vector<std::vector<std::uint64_t>> out(formulas.size());
    const auto count = static_cast<std::ptrdiff_t>(formulas.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = one_mask(formulas[i]);
    return out;
  }

  std::vector<std::uint64_t> one_mask(const Formula& f) const {
    std::vector<std::uint64_t> m(words_, 0);
    if (logic_.engine == EngineKind::Matrix) {
      MatrixEvaluator ev(logic_, f, space_.atom_slots());
      std::array<int, 16> digits;
      const std::size_t k = space_.atom_slots().size();
      for (std::size_t i = 0; i < space_.size(); ++i) {
        space_.matrix_digits_at(i, std::span<int>(digits.data(), k));
        if (ev.designated(std::span<const int>(digits.data(), k))) m[i >> 6] |= 1ull << (i & 63);
      }
    } else {
      KripkeEvaluator ev(logic_, f, space_.atom_slots());
      for (std::size_t i = 0; i < space_.size(); ++i)
        if (ev.at_point(space_.kripke_at(i))) m[i >> 6] |= 1ull << (i & 63);
    }
    return m;
  }

  std::vector<std::uint64_t> all_models_mask() const {
    std::vector<std::uint64_t> m(words_, 0);
    for (std::size_t i = 0; i < space_.size(); ++i) m[i >> 6] |= 1ull << (i & 63);
    return m;
  }

  static bool entails(const std::vector<const std::vector<std::uint64_t>*>& premises,
                      const std::vector<std::uint64_t>& conclusion) {
    const std::size_t words = conclusion.size();
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t p = ~0ull;
      for (const auto* pm : premises) p &= (*pm)[w];
      if (p & ~conclusion[w]) return false;
    }
    return true;
  }

 private:
  const LogicSpec& logic_;
  ModelSpace space_;
  std::size_t words_ = 0;
  bool fast_ = false;
};

// Bit-mask backed deduction-theorem grid: gamma masks, formula masks and
// one conclusion-mask table provided by the caller per instance family.
struct DtMasks {
  std::vector<std::vector<std::uint64_t>> gamma;    // per premise subset
  std::vector<std::vector<std::uint64_t>> formula;  // per grid formula

  static std::optional<DtMasks> build(const SatCache& cache, const DtGrid& grid) {
    std::vector<Formula> all;
    for (const auto& g : grid.gammas)
      for (const auto& f : g) all.push_back(f);
    for (const auto& f : grid.formulas) all.push_back(f);
    if (!cache.usable(all)) return std::nullopt;
    DtMasks dm;
    dm.formula = cache.masks(grid.formulas);
    dm.gamma.reserve(grid.gammas.size());
    for (const auto& g : grid.gammas) {
      std::vector<Formula> members(g.begin(), g.end());
      auto ms = cache.masks(members);
      auto acc = cache.all_models_mask();  // empty premise set
      for (const auto& m : ms)
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= m[w];
      dm.gamma.push_back(std::move(acc));
    }
    return dm;
  }
};

}  // namespace

CheckEntry verify_standard_dt(const LogicSpec& logic, const FormulaSet& pool, const Bounds& b) {
  if (!logic.signature.has_connective("->"))
    throw Error("standard deduction theorem: no conditional designated in " + logic.name);
  Timer timer;
  CheckEntry e;
  e.property = "standard-dt " + logic.name;
  auto grid = dt_grid(logic, pool, b);
  e.bounds = {{"instances", static_cast<long long>(grid.size())},
              {"dt_nodes", b.dt_nodes},
              {"dt_premises", b.dt_premises},
              {"max_model_size", b.max_model_size}};

  SatCache cache(logic, b);
  auto masks = DtMasks::build(cache, grid);
  std::vector<std::vector<std::uint64_t>> arrow_masks;
  if (masks) {
    const std::size_t nf = grid.formulas.size();
    std::vector<Formula> arrows;
    arrows.reserve(nf * nf);
    for (const auto& a : grid.formulas)
      for (const auto& c : grid.formulas) arrows.push_back(Formula::apply("->", {a, c}));
    arrow_masks = cache.masks(arrows);
  }
  auto fails = [&](std::size_t flat) {
    std::size_t g, a, c;
    grid.split(flat, &g, &a, &c);
    if (masks) {
      bool lhs = SatCache::entails({&masks->gamma[g], &masks->formula[a]}, masks->formula[c]);
      bool rhs = SatCache::entails({&masks->gamma[g]}, arrow_masks[a * grid.formulas.size() + c]);
      return lhs != rhs;
    }
    FormulaSet with = grid.gammas[g];
    with.insert(grid.formulas[a]);
    Formula arrow = Formula::apply("->", {grid.formulas[a], grid.formulas[c]});
    bool lhs = consequence(logic, with, grid.formulas[c], b.max_model_size).holds();
    bool rhs = consequence(logic, grid.gammas[g], arrow, b.max_model_size).holds();
    return lhs != rhs;
  };
  auto hit = first_index(grid.size(), fails);
  if (hit) {
    std::size_t g, a, c;
    grid.split(*hit, &g, &a, &c);
    e.status = VerdictStatus::Refuted;
    Witness w;
    store_premises(w, grid.gammas[g]);
    w.formulas["phi_n"] = grid.formulas[a].text();
    w.formulas["psi"] = grid.formulas[c].text();
    FormulaSet with = grid.gammas[g];
    with.insert(grid.formulas[a]);
    Formula arrow = Formula::apply("->", {grid.formulas[a], grid.formulas[c]});
    if (consequence(logic, with, grid.formulas[c], b.max_model_size).holds()) {
      w.note = "premises entail psi but the conditional is not derivable";
      auto refuted = consequence(logic, grid.gammas[g], arrow, b.max_model_size);
      w.model = refuted.witness_model;
      w.formulas["conclusion"] = arrow.text();
    } else {
      w.note = "conditional derivable but detachment fails";
      auto refuted = consequence(logic, with, grid.formulas[c], b.max_model_size);
      w.model = refuted.witness_model;
      w.formulas["conclusion"] = grid.formulas[c].text();
    }
    e.witnesses.push_back(std::move(w));
  } else {
    e.status = logic.exact_engine() ? VerdictStatus::ValidExact : VerdictStatus::ValidBounded;
  }
  e.elapsed_ms = timer.ms();
  return e;
}

CheckEntry search_general_dt(const LogicSpec& logic, const FormulaSet& pool, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "general-dt-search " + logic.name;
  auto grid = dt_grid(logic, pool, b);

  std::vector<Formula> candidates;
  if (logic.engine != EngineKind::Explicit) {
    std::vector<Formula> phs = {Formula::atom("#1"), Formula::atom("#2")};
    for (const auto& tpl : enumerate_formulas(logic.signature, phs, b.template_bound)) {
      auto atoms = plain_atoms(tpl);
      if (atoms.count("#1") && atoms.count("#2")) candidates.push_back(tpl);
    }
  }
  e.bounds = {{"templates", static_cast<long long>(candidates.size())},
              {"template_bound", b.template_bound},
              {"instances", static_cast<long long>(grid.size())}};

  SatCache cache(logic, b);
  auto masks = DtMasks::build(cache, grid);

  for (const auto& alpha : candidates) {
    Template tpl{alpha, 2};
    std::vector<std::vector<std::uint64_t>> inst_masks;
    if (masks) {
      const std::size_t nf = grid.formulas.size();
      std::vector<Formula> insts;
      insts.reserve(nf * nf);
      for (const auto& a : grid.formulas)
        for (const auto& c : grid.formulas) {
          std::vector<Formula> args = {a, c};
          insts.push_back(substitute(tpl, args));
        }
      inst_masks = cache.masks(insts);
    }
    auto fails = [&](std::size_t flat) {
      std::size_t g, a, c;
      grid.split(flat, &g, &a, &c);
      if (masks) {
        bool lhs = SatCache::entails({&masks->gamma[g], &masks->formula[a]}, masks->formula[c]);
        bool rhs =
            SatCache::entails({&masks->gamma[g]}, inst_masks[a * grid.formulas.size() + c]);
        return lhs != rhs;
      }
      FormulaSet with = grid.gammas[g];
      with.insert(grid.formulas[a]);
      std::vector<Formula> args = {grid.formulas[a], grid.formulas[c]};
      Formula inst = substitute(tpl, args);
      bool lhs = consequence(logic, with, grid.formulas[c], b.max_model_size).holds();
      bool rhs = consequence(logic, grid.gammas[g], inst, b.max_model_size).holds();
      return lhs != rhs;
    };
    if (!first_index(grid.size(), fails)) {
      e.status = logic.exact_engine() ? VerdictStatus::ValidExact : VerdictStatus::ValidBounded;
      Witness w;
      w.formulas["alpha"] = alpha.text();
      e.witnesses.push_back(std::move(w));
      e.elapsed_ms = timer.ms();
      return e;
    }
  }
  e.status = VerdictStatus::Failed;
  e.note = "exhausted: no template survives the bounded instances";
  e.elapsed_ms = timer.ms();
  return e;
}

CheckEntry verify_dt_preservation(const ClauseSystem& t, const Reports& reports,
                                  const FormulaSet& pool, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "dt-preservation " + t.name;

  auto skip = [&](const std::string& reason) {
    e.status = VerdictStatus::Skipped;
    e.note = reason;
    e.elapsed_ms = timer.ms();
    return e;
  };

  auto shape = classify_shape(t);
  if (!shape.gr_conditional_compositional)
    return skip("translation is not compositional for the conditional");
  auto dt = reports.find("standard-dt-source");
  if (dt == reports.end() || !dt->second.holds())
    return skip("source not verified for the standard deduction theorem");
  auto bf_c = reports.find("conservativity");
  auto bf_t = reports.find("theoremhood");
  bool bf = (bf_c != reports.end() && bf_c->second.holds()) ||
            (bf_t != reports.end() && bf_t->second.holds());
  if (!bf) return skip("translation not verified back-and-forth");

  const Clause* arrow = t.translators.at(t.main).find_clause("->");
  if (!arrow) return skip("source has no conditional clause");
  Template alpha = arrow->body;

  auto grid = dt_grid(t.source, pool, b);
  e.bounds = {{"instances", static_cast<long long>(grid.size())},
              {"max_model_size", b.max_model_size}};
  std::vector<FormulaSet> image_gammas;
  for (const auto& g : grid.gammas) image_gammas.push_back(apply_translation(t, g));
  std::vector<Formula> image_formulas;
  for (const auto& f : grid.formulas) image_formulas.push_back(apply_translation(t, f));

  // the image grid, checked in the target logic
  DtGrid igrid;
  igrid.gammas = image_gammas;
  igrid.formulas = image_formulas;
  SatCache cache(t.target, b);
  auto masks = DtMasks::build(cache, igrid);
  std::vector<std::vector<std::uint64_t>> inst_masks;
  if (masks) {
    const std::size_t nf = image_formulas.size();
    std::vector<Formula> insts;
    insts.reserve(nf * nf);
    for (const auto& ia : image_formulas)
      for (const auto& ic : image_formulas) {
        std::vector<Formula> args = {ia, ic};
        insts.push_back(substitute(alpha, args));
      }
    inst_masks = cache.masks(insts);
  }

  auto fails = [&](std::size_t flat) {
    std::size_t g, a, c;
    grid.split(flat, &g, &a, &c);
    if (masks) {
      bool lhs = SatCache::entails({&masks->gamma[g], &masks->formula[a]}, masks->formula[c]);
      bool rhs =
          SatCache::entails({&masks->gamma[g]}, inst_masks[a * image_formulas.size() + c]);
      return lhs != rhs;
    }
    FormulaSet with = image_gammas[g];
    with.insert(image_formulas[a]);
    std::vector<Formula> args = {image_formulas[a], image_formulas[c]};
    Formula inst = substitute(alpha, args);
    bool lhs = consequence(t.target, with, image_formulas[c], b.max_model_size).holds();
    bool rhs = consequence(t.target, image_gammas[g], inst, b.max_model_size).holds();
    return lhs != rhs;
  };
  auto hit = first_index(grid.size(), fails);
  if (hit) {
    std::size_t g, a, c;
    grid.split(*hit, &g, &a, &c);
    e.status = VerdictStatus::Refuted;
    Witness w;
    store_premises(w, image_gammas[g]);
    w.formulas["phi"] = image_formulas[a].text();
    w.formulas["psi"] = image_formulas[c].text();
    e.witnesses.push_back(std::move(w));
  } else {
    e.status = t.target.exact_engine() ? VerdictStatus::ValidExact : VerdictStatus::ValidBounded;
    Witness w;
    w.formulas["alpha"] = alpha.body.text();
    w.note = "image general deduction theorem with the instantiated conditional template";
    e.witnesses.push_back(std::move(w));
  }
  e.elapsed_ms = timer.ms();
  return e;
}

// --- proof-theoretic connectives ----------------------------------------------------------

namespace {

struct PtContext {
  const LogicSpec& L;
  std::vector<Formula> universe;
  std::vector<FormulaSet> gammas;
  int model_bound;

  bool derives(const FormulaSet& premises, const Formula& conclusion) const {
    return consequence(L, premises, conclusion, model_bound).holds();
  }
};

// the defining biconditional of a role at one instance, for a given
// candidate formula standing in for the connective application
bool pt_instance_holds(const PtContext& ctx, PtRole role, const Formula& candidate,
                       const std::vector<Formula>& args, const FormulaSet& gamma,
                       const Formula* falsum) {
  switch (role) {
    case PtRole::Falsum: {
      FormulaSet prem{candidate};
      for (const auto& phi : ctx.universe)
        if (!ctx.derives(prem, phi)) return false;
      return true;
    }
    case PtRole::Conjunction: {
      bool lhs = ctx.derives(gamma, candidate);
      bool rhs = ctx.derives(gamma, args[0]) && ctx.derives(gamma, args[1]);
      return lhs == rhs;
    }
    case PtRole::Disjunction: {
      for (const auto& chi : ctx.universe) {
        FormulaSet with_d = gamma;
        with_d.insert(candidate);
        FormulaSet with_a = gamma;
        with_a.insert(args[0]);
        FormulaSet with_b = gamma;
        with_b.insert(args[1]);
        bool lhs = ctx.derives(with_d, chi);
        bool rhs = ctx.derives(with_a, chi) && ctx.derives(with_b, chi);
        if (lhs != rhs) return false;
      }
      return true;
    }
    case PtRole::Implication: {
      FormulaSet with = gamma;
      with.insert(args[0]);
      return ctx.derives(gamma, candidate) == ctx.derives(with, args[1]);
    }
    case PtRole::Negation: {
      FormulaSet with = gamma;
      with.insert(args[0]);
      bool lhs = ctx.derives(with, *falsum);
      return ctx.derives(gamma, candidate) == lhs;
    }
  }
  return false;
}

int pt_arity(PtRole role) {
  switch (role) {
    case PtRole::Falsum: return 0;
    case PtRole::Negation: return 1;
    default: return 2;
  }
}

std::string pt_role_name(PtRole role) {
  switch (role) {
    case PtRole::Falsum: return "falsum";
    case PtRole::Conjunction: return "conjunction";
    case PtRole::Disjunction: return "disjunction";
    case PtRole::Implication: return "implication";
    case PtRole::Negation: return "negation";
  }
  return "?";
}

// all argument tuples over the universe
std::vector<std::vector<Formula>> pt_tuples(const std::vector<Formula>& universe, int arity) {
  std::vector<std::vector<Formula>> out;
  if (arity == 0) {
    out.push_back({});
    return out;
  }
  if (arity == 1) {
    for (const auto& a : universe) out.push_back({a});
    return out;
  }
  for (const auto& a : universe)
    for (const auto& b : universe) out.push_back({a, b});
  return out;
}

std::optional<Formula> pt_strict_falsum(const PtContext& ctx) {
  for (const auto& cand : ctx.universe) {
    bool ok = true;
    for (const auto& phi : ctx.universe)
      if (!ctx.derives(FormulaSet{cand}, phi)) {
        ok = false;
        break;
      }
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace

CheckEntry verify_pt_connective(const LogicSpec& logic, PtRole role, PtMode mode, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "pt-connective " + pt_role_name(role) + " " + logic.name + " " +
               (mode == PtMode::StrictTemplate ? "strict" : "relaxed");

  PtContext ctx{logic, bounded_formulas(logic, b.max_atoms, b.pt_nodes), {}, b.max_model_size};
  FormulaSet pool_set(ctx.universe.begin(), ctx.universe.end());
  if (pool_set.size() > 6) {
    FormulaSet cut;
    auto it = pool_set.begin();
    for (int i = 0; i < 6; ++i) cut.insert(*it++);
    pool_set = std::move(cut);
  }
  ctx.gammas = premise_subsets(pool_set, b.dt_premises);
  e.bounds = {{"universe", static_cast<long long>(ctx.universe.size())},
              {"gammas", static_cast<long long>(ctx.gammas.size())},
              {"pt_nodes", b.pt_nodes}};

  const int arity = pt_arity(role);
  std::optional<Formula> falsum;
  if (role == PtRole::Negation) {
    falsum = pt_strict_falsum(ctx);
    if (!falsum) {
      e.status = VerdictStatus::Failed;
      e.note = "no falsum available for the negation condition";
      e.elapsed_ms = timer.ms();
      return e;
    }
    e.flags["falsum_found"] = true;
  }

  if (role == PtRole::Falsum || mode == PtMode::StrictTemplate) {
    // one template for all instances
    std::vector<Formula> candidates;
    if (role == PtRole::Falsum) {
      candidates = ctx.universe;
    } else {
      std::vector<Formula> phs;
      for (int i = 1; i <= arity; ++i) phs.push_back(Formula::atom("#" + std::to_string(i)));
      if (logic.engine == EngineKind::Explicit) {
        // no connectives: the template alphabet is placeholders and constants
        candidates = enumerate_formulas(logic.signature, phs, 1);
      } else {
        candidates = enumerate_formulas(logic.signature, phs, b.pt_template_nodes);
      }
    }
    e.bounds["candidates"] = static_cast<long long>(candidates.size());
    auto tuples = pt_tuples(ctx.universe, arity);
    for (const auto& cand : candidates) {
      Template tpl{cand, arity};
      bool ok = true;
      for (const auto& args : tuples) {
        Formula inst = role == PtRole::Falsum ? cand : substitute(tpl, args);
        for (const auto& gamma : ctx.gammas) {
          if (!pt_instance_holds(ctx, role, inst, args, gamma, falsum ? &*falsum : nullptr)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        if (role == PtRole::Falsum) break;  // instance-independent
      }
      if (ok) {
        e.status = VerdictStatus::Passed;
        Witness w;
        w.formulas["delta"] = cand.text();
        e.witnesses.push_back(std::move(w));
        e.flags["present"] = true;
        e.elapsed_ms = timer.ms();
        return e;
      }
    }
    e.status = VerdictStatus::Failed;
    e.flags["present"] = false;
    e.note = "no template satisfies the defining biconditional at bounds";
    e.elapsed_ms = timer.ms();
    return e;
  }

  // relaxed: per-instance witnesses, stable under every atom substitution
  std::set<std::string> atom_names;
  for (const auto& f : ctx.universe) {
    auto as = plain_atoms(f);
    atom_names.insert(as.begin(), as.end());
  }
  std::vector<std::string> atoms(atom_names.begin(), atom_names.end());
  double subst_count = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) subst_count *= ctx.universe.size();
  if (subst_count > 4096) throw Error("relaxed connective checks need a small universe");
  std::vector<std::map<std::string, Formula>> substitutions;
  {
    std::vector<std::size_t> idx(atoms.size(), 0);
    while (true) {
      std::map<std::string, Formula> sub;
      for (std::size_t i = 0; i < atoms.size(); ++i) sub[atoms[i]] = ctx.universe[idx[i]];
      substitutions.push_back(std::move(sub));
      std::size_t i = 0;
      for (; i < atoms.size(); ++i) {
        if (++idx[i] < ctx.universe.size()) break;
        idx[i] = 0;
      }
      if (i == atoms.size()) break;
      if (atoms.empty()) break;
    }
  }
  e.bounds["substitutions"] = static_cast<long long>(substitutions.size());

  auto valid_witness = [&](const Formula& gamma_w, const std::vector<Formula>& args) {
    for (const auto& g : ctx.gammas)
      if (!pt_instance_holds(ctx, role, gamma_w, args, g, falsum ? &*falsum : nullptr))
        return false;
    return true;
  };

  auto tuples = pt_tuples(ctx.universe, arity);
  for (const auto& args : tuples) {
    bool found = false;
    for (const auto& gamma_w : ctx.universe) {
      if (!valid_witness(gamma_w, args)) continue;
      bool stable = true;
      for (const auto& sub : substitutions) {
        std::vector<Formula> sub_args;
        for (const auto& a : args) sub_args.push_back(substitute_atoms(a, sub));
        if (!valid_witness(substitute_atoms(gamma_w, sub), sub_args)) {
          stable = false;
          break;
        }
      }
      if (stable) {
        found = true;
        break;
      }
    }
    if (!found) {
      e.status = VerdictStatus::Failed;
      e.flags["present"] = false;
      Witness w;
      for (std::size_t i = 0; i < args.size(); ++i)
        w.formulas["arg " + std::to_string(i)] = args[i].text();
      w.note = "no substitution-stable witness for this instance";
      e.witnesses.push_back(std::move(w));
      e.elapsed_ms = timer.ms();
      return e;
    }
  }
  e.status = VerdictStatus::Passed;
  e.flags["present"] = true;
  e.elapsed_ms = timer.ms();
  return e;
}

// --- triviality ------------------------------------------------------------------------

CheckEntry verify_triviality(const LogicSpec& logic, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "triviality " + logic.name;
  auto pool = bounded_formulas(logic, b.max_atoms, std::min(b.max_nodes, 4));
  e.bounds = {{"formulas", static_cast<long long>(pool.size())}};
  const std::size_t n = pool.size();
  auto nontrivial = [&](std::size_t flat) {
    const Formula& phi = pool[flat / n];
    const Formula& psi = pool[flat % n];
    return !consequence(logic, FormulaSet{phi}, psi, b.max_model_size).holds();
  };
  auto hit = first_index(n * n, nontrivial);
  e.status = logic.exact_engine() ? VerdictStatus::ValidExact : VerdictStatus::ValidBounded;
  if (hit) {
    e.flags["trivial"] = false;
    Witness w;
    w.formulas["premise 0"] = pool[*hit / n].text();
    w.formulas["conclusion"] = pool[*hit % n].text();
    auto refuted = consequence(logic, FormulaSet{pool[*hit / n]}, pool[*hit % n], b.max_model_size);
    w.model = refuted.witness_model;
    e.witnesses.push_back(std::move(w));
  } else {
    e.flags["trivial"] = true;
  }
  e.elapsed_ms = timer.ms();
  return e;
}

// --- bounded single-class expressiveness ---------------------------------------------------

CheckEntry verify_ec_bounded(const LogicSpec& l1, const LogicSpec& l2, const Bounds& b) {
  Timer timer;
  CheckEntry e;
  e.property = "ec-bounded " + l1.name + " into " + l2.name;

  const bool kripke_space =
      l1.engine == EngineKind::Kripke || l2.engine == EngineKind::Kripke;
  if (!kripke_space) {
    if (l1.engine != EngineKind::Matrix || l2.engine != EngineKind::Matrix ||
        l1.matrix->value_names != l2.matrix->value_names ||
        l1.matrix->designated != l2.matrix->designated)
      throw Error("ec comparison needs a shared model enumeration");
  } else {
    auto two_valued = [](const LogicSpec& L) {
      return L.engine == EngineKind::Kripke ? L.frame == FrameClass::K
                                            : L.matrix->value_count() == 2;
    };
    if (!two_valued(l1) || !two_valued(l2))
      throw Error("ec comparison needs a shared model enumeration");
  }

  auto f1 = bounded_formulas(l1, b.max_atoms, b.max_nodes);
  auto f2 = bounded_formulas(l2, b.max_atoms, b.target_nodes);
  e.bounds = {{"source_formulas", static_cast<long long>(f1.size())},
              {"target_formulas", static_cast<long long>(f2.size())},
              {"target_nodes", b.target_nodes}};

  auto ctx = atom_context(b.max_atoms);
  std::map<std::vector<bool>, Formula> modsets;
  std::vector<std::vector<bool>> unmatched_sets;

  if (!kripke_space) {
    auto space = enumerate_models(l1, ctx, 1);
    auto modset = [&](const LogicSpec& L, const Formula& f) {
      MatrixEvaluator ev(L, f, space.atom_slots());
      std::vector<bool> out(space.size());
      std::vector<int> digits(space.atom_slots().size());
      for (std::size_t i = 0; i < space.size(); ++i) {
        space.matrix_digits_at(i, digits);
        out[i] = ev.designated(digits);
      }
      return out;
    };
    for (const auto& g : f2) {
      auto ms = modset(l2, g);
      modsets.emplace(std::move(ms), g);
    }
    for (const auto& f : f1) {
      auto ms = modset(l1, f);
      if (!modsets.count(ms)) {
        Witness w;
        w.formulas["unmatched"] = f.text();
        e.witnesses.push_back(std::move(w));
        if (e.witnesses.size() >= 5) break;
      }
    }
    e.status = e.witnesses.empty() ? VerdictStatus::ValidExact : VerdictStatus::Refuted;
  } else {
    LogicSpec shared;
    shared.name = "shared";
    shared.engine = EngineKind::Kripke;
    shared.frame = FrameClass::K;
    auto space = enumerate_models(shared, ctx, std::min(b.max_model_size, 2));
    auto modset = [&](const Formula& f) {
      KripkeEvaluator ev(shared, f, space.atom_slots());
      std::vector<bool> out(space.size());
      for (std::size_t i = 0; i < space.size(); ++i) {
        PackedKripke m = space.kripke_at(i);
        out[i] = ev.at_point(m);
      }
      return out;
    };
    for (const auto& g : f2) modsets.emplace(modset(g), g);
    for (const auto& f : f1) {
      if (!modsets.count(modset(f))) {
        Witness w;
        w.formulas["unmatched"] = f.text();
        e.witnesses.push_back(std::move(w));
        if (e.witnesses.size() >= 5) break;
      }
    }
    e.status = e.witnesses.empty() ? VerdictStatus::ValidBounded : VerdictStatus::Refuted;
  }
  e.flags["holds"] = e.witnesses.empty();
  e.elapsed_ms = timer.ms();
  return e;
}

// --- gates -----------------------------------------------------------------------------

CheckEntry gate_expressiveness_g(const ClauseSystem& t, const ModelMap* map,
                                 const Reports& reports) {
  CheckEntry e;
  e.property = "gate-expressiveness-g " + t.name;
  std::vector<std::string> reasons;
  if (!map) {
    reasons.push_back("no model map");
  } else if (!map->model_based) {
    reasons.push_back("model map is not model based");
  }
  auto shape = classify_shape(t);
  if (shape.opaque) reasons.push_back("not finitely generated (opaque whole-formula rule)");
  auto tp = reports.find("truth-preservation");
  if (tp == reports.end() || !tp->second.holds())
    reasons.push_back("truth preservation not verified");
  if (reasons.empty()) {
    e.status = VerdictStatus::Passed;
  } else {
    e.status = VerdictStatus::Failed;
    for (std::size_t i = 0; i < reasons.size(); ++i)
      e.note += (i ? "; " : "") + reasons[i];
  }
  e.flags["model_based"] = map && map->model_based;
  e.flags["finitely_generated"] = !shape.opaque;
  return e;
}

CheckEntry gate_expressiveness_gg(const ClauseSystem& t, const Reports& reports) {
  CheckEntry e;
  e.property = "gate-expressiveness-gg " + t.name;
  std::vector<std::string> reasons;
  auto shape = classify_shape(t);

  auto bf_c = reports.find("conservativity");
  auto bf_t = reports.find("theoremhood");
  bool bf = (bf_c != reports.end() && bf_c->second.holds()) ||
            (bf_t != reports.end() && bf_t->second.holds());
  if (!bf) reasons.push_back("not verified back-and-forth at bounds");
  if (!shape.general_recursive) reasons.push_back("not general-recursive");
  if (t.declares_model_map_dependency) reasons.push_back("declares a model-map dependency");
  auto dt = reports.find("standard-dt-source");
  if (dt != reports.end() && dt->second.holds() && !shape.gr_conditional_compositional)
    reasons.push_back("source has the standard deduction theorem but the conditional clause is not compositional");
  if (t.source.decidable == Decidable::No && t.target.decidable == Decidable::Yes)
    reasons.push_back("undecidable source cannot embed into a decidable target");

  if (reasons.empty()) {
    e.status = VerdictStatus::Passed;
  } else {
    e.status = VerdictStatus::Failed;
    for (std::size_t i = 0; i < reasons.size(); ++i)
      e.note += (i ? "; " : "") + reasons[i];
  }
  e.flags["general_recursive"] = shape.general_recursive;
  e.flags["context_family"] = shape.context_family;
  return e;
}

// --- corpus ----------------------------------------------------------------------------

CheckEntry run_corpus(const Catalog& cat, const std::vector<std::string>& image_translations,
                      int world_bound, const Bounds& b) {
  (void)b;
  Timer timer;
  CheckEntry e;
  e.property = "kripke-corpus";
  e.bounds = {{"entries", static_cast<long long>(cat.corpus().size())},
              {"world_bound", world_bound}};
  long long images_checked = 0;

  auto fail = [&](const std::string& what, const std::string& formula, const std::string& note) {
    Witness w;
    w.formulas[what] = formula;
    w.note = note;
    e.witnesses.push_back(std::move(w));
  };

  for (const auto& entry : cat.corpus()) {
    const LogicSpec& L = cat.logic(entry.logic);
    Formula f = parse(entry.formula, L.signature);
    auto v = validity(L, f, world_bound);
    if (entry.expected_valid != v.holds()) {
      fail("formula", entry.formula, entry.logic + ": expected " +
                                         std::string(entry.expected_valid ? "valid" : "refuted"));
      continue;
    }
    if (!entry.expected_valid && L.engine == EngineKind::Kripke) {
      const auto& km = std::get<KripkeModel>(*v.witness_model);
      if (km.world_count > 3)
        fail("formula", entry.formula, entry.logic + ": countermodel larger than 3 worlds");
    }
  }

  for (const auto& name : image_translations) {
    const ClauseSystem& t = cat.translation(name);
    for (const auto& entry : cat.corpus()) {
      if (cat.logic(entry.logic).node() != t.source.node()) continue;
      Formula f;
      try {
        f = parse(entry.formula, t.source.signature);
      } catch (const ParseError&) {
        continue;  // outside the translation's fragment
      }
      Formula img = apply_translation(t, f);
      bool img_valid = validity(t.target, img, world_bound).holds();
      ++images_checked;
      if (img_valid != entry.expected_valid)
        fail("formula", entry.formula,
             name + ": image status diverges (" + img.text() + ")");
    }
  }
  e.bounds["images_checked"] = images_checked;
  e.status = e.witnesses.empty() ? VerdictStatus::Passed : VerdictStatus::Failed;
  e.elapsed_ms = timer.ms();
  return e;
}

// --- registry ---------------------------------------------------------------------------

bool bounded_surjectivity(const ClauseSystem& t, const Bounds& b) {
  auto targets = bounded_formulas(t.target, b.max_atoms, 3);
  auto sources = bounded_formulas(t.source, b.max_atoms, 5);
  FormulaSet images;
  for (const auto& f : sources) images.insert(apply_translation(t, f));
  for (const auto& g : targets)
    if (!images.count(g)) return false;
  return true;
}

namespace {

}  // namespace

const ModelMap* find_map_for(const Catalog& cat, const ClauseSystem& t) {
  for (const auto& name : cat.map_names()) {
    const ModelMap& m = cat.model_map(name);
    if (m.source.name == t.source.name && m.target.name == t.target.name) return &m;
  }
  return nullptr;
}

Reports edge_reports(const ClauseSystem& t, const Catalog& cat, const Bounds& b) {
  Reports reports;
  reports.emplace("theoremhood", verify_theoremhood(t, b));
  if (t.source.consequence_mode == ConsequenceMode::Full &&
      t.target.consequence_mode == ConsequenceMode::Full && t.source.exact_engine() &&
      t.target.exact_engine()) {
    FormulaSet pool;
    for (const char* s : {"p", "q", "(not p)", "(-> p q)"}) {
      try {
        pool.insert(parse(s, t.source.signature));
      } catch (const ParseError&) {
      }
    }
    reports.emplace("conservativity", verify_conservativity(t, pool, b));
  }
  try {
    reports.emplace("standard-dt-source",
                    verify_standard_dt(t.source, default_dt_pool(t.source), b));
  } catch (const Error&) {
    // no conditional in the source signature
  }
  const ModelMap* map = find_map_for(cat, t);
  if (map && map->transform != ModelMap::Transform::CplToWpl) {
    Bounds small = b;
    small.max_nodes = std::min(b.max_nodes, 4);
    small.max_model_size = std::min(b.max_model_size, 2);
    reports.emplace("truth-preservation", verify_truth_preservation(t, map, small));
  }
  reports.emplace("gate-g", gate_expressiveness_g(t, map, reports));
  reports.emplace("gate-gg", gate_expressiveness_gg(t, reports));
  return reports;
}

Registry make_registry(const Catalog& cat, const std::vector<std::string>& nodes, const Bounds& b) {
  Registry reg;
  reg.nodes = nodes;
  std::set<std::string> node_set(nodes.begin(), nodes.end());
  for (const auto& name : cat.translation_names()) {
    const ClauseSystem& t = cat.translation(name);
    if (t.fragment) continue;  // partial coverage cannot be theoremhood-swept
    if (!node_set.count(t.source.node()) || !node_set.count(t.target.node())) continue;
    RegistryEdge edge;
    edge.translation = name;
    edge.source_node = t.source.node();
    edge.target_node = t.target.node();
    edge.system = t;
    edge.reports = edge_reports(t, cat, b);
    edge.gg_pass = edge.reports.at("gate-gg").holds();
    reg.edges.push_back(std::move(edge));
  }
  for (const auto& n : nodes) reg.relation.insert({n, n});
  return reg;
}

Registry build_preorder(Registry reg, const Bounds& b) {
  for (const auto& e : reg.edges)
    if (e.gg_pass) reg.relation.insert({e.source_node, e.target_node});

  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t n = reg.edges.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const RegistryEdge& e1 = reg.edges[i];
        const RegistryEdge& e2 = reg.edges[j];
        if (!e1.gg_pass || !e2.gg_pass) continue;
        if (e1.system.target.name != e2.system.source.name) continue;
        auto pair = std::make_pair(e1.source_node, e2.target_node);
        if (reg.relation.count(pair)) continue;
        ClauseSystem fused;
        CompositionMode mode = CompositionMode::Weakened;
        try {
          if (bounded_surjectivity(e1.system, b)) mode = CompositionMode::Surjective;
          fused = compose_translations(e1.system, e2.system, mode);
        } catch (const Error&) {
          continue;
        }
        Bounds small = b;
        small.max_nodes = b.compose_nodes;
        Reports reports;
        reports.emplace("theoremhood", verify_theoremhood(fused, small));
        try {
          reports.emplace("standard-dt-source",
                          verify_standard_dt(fused.source, default_dt_pool(fused.source), small));
        } catch (const Error&) {
        }
        CheckEntry gg = gate_expressiveness_gg(fused, reports);
        if (!gg.holds()) continue;
        RegistryEdge edge;
        edge.translation = fused.name;
        edge.source_node = e1.source_node;
        edge.target_node = e2.target_node;
        edge.system = fused;
        edge.reports = std::move(reports);
        edge.reports.emplace("gate-gg", std::move(gg));
        edge.gg_pass = true;
        edge.provenance =
            mode == CompositionMode::Surjective ? "composed-surjective" : "composed-weakened";
        reg.relation.insert(pair);
        reg.edges.push_back(std::move(edge));
        changed = true;
      }
    }
  }
  return reg;
}

bool witness_replays(const LogicSpec& logic, const Witness& w) {
  if (!w.model) return false;
  auto conclusion = w.formulas.find("conclusion");
  if (conclusion == w.formulas.end()) return false;
  for (const auto& [role, text] : w.formulas) {
    if (role.rfind("premise", 0) != 0) continue;
    if (!satisfies(logic, *w.model, parse(text, logic.signature))) return false;
  }
  return !satisfies(logic, *w.model, parse(conclusion->second, logic.signature));
}

}  // namespace trex
