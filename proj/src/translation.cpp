#include "trex/translation.hpp"

#include <algorithm>
#include <functional>

namespace trex {

std::string Clause::key_text() const {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ' ';
    out += key[i];
  }
  return out;
}

const Clause* Translator::find_clause(const std::string& key_text) const {
  for (const auto& c : clauses)
    if (c.key_text() == key_text) return &c;
  return nullptr;
}

// --- invariants -----------------------------------------------------------------

void ClauseSystem::check() const {
  if (is_opaque()) {
    if (opaque->kind == OpaqueRule::Kind::ConstFormula && !opaque->constant)
      throw Error("translation " + name + ": const rule without a formula");
    return;
  }
  if (!translators.count(main)) throw Error("translation " + name + ": missing main translator " + main);
  for (const auto& [id, tr] : translators) {
    for (const auto& c : tr.clauses) {
      if (c.key.empty()) throw Error("translation " + name + ": empty clause key");
      const std::string& last = c.key.back();
      int arity = 0;
      if (last == "top" || last == "bot" || last == "forall" || last == "exists") {
        arity = (last == "forall" || last == "exists") ? 1 : 0;
        if (c.key.size() != 1)
          throw Error("translation " + name + ": composite key ending in " + last);
      } else {
        auto a = source.signature.arity_of(last);
        if (!a) throw Error("translation " + name + ": clause for unknown connective " + last);
        arity = *a;
      }
      for (std::size_t i = 0; i + 1 < c.key.size(); ++i) {
        auto a = source.signature.arity_of(c.key[i]);
        if (!a || *a != 1)
          throw Error("translation " + name + ": composite key prefix " + c.key[i] +
                      " must be unary");
      }
      if (static_cast<int>(c.plan.size()) != c.body.placeholder_count)
        throw Error("translation " + name + ": clause " + c.key_text() +
                    " leaves placeholders unbound");
      if (!c.ranges.empty() && static_cast<int>(c.ranges.size()) != arity)
        throw Error("translation " + name + ": clause " + c.key_text() + " range count mismatch");
      for (const auto& step : c.plan) {
        if (step.kind == PlanStep::Kind::Via) {
          if (!translators.count(step.translator))
            throw Error("translation " + name + ": clause " + c.key_text() +
                        " routes through unknown translator " + step.translator);
          if (step.operand < 0 || step.operand >= arity)
            throw Error("translation " + name + ": clause " + c.key_text() +
                        " operand index out of range");
          if (step.shift_context && !context)
            throw Error("translation " + name + ": context shift without a context family");
        } else {
          if (step.index_base.empty())
            throw Error("translation " + name + ": index step without a base");
          for (int t : step.index_tuple)
            if (t < 0 || t >= arity)
              throw Error("translation " + name + ": index tuple out of range");
        }
      }
    }
  }
  if (!fragment) {
    for (const auto& conn : source.signature.connectives)
      for (const auto& [id, tr] : translators)
        if (!tr.find_clause(conn.symbol))
          throw Error("translation " + name + ": translator " + id + " has no clause for " +
                      conn.symbol);
  }
}

// --- application -----------------------------------------------------------------

namespace {

struct Applier {
  const ClauseSystem& cs;

  const Translator& translator(const std::string& id) const {
    auto it = cs.translators.find(id);
    if (it == cs.translators.end())
      throw Error("translation " + cs.name + ": unknown translator " + id);
    return it->second;
  }

  std::string token(int ctx) const {
    if (!cs.context) return "";
    return cs.context->tokens[ctx % cs.context->tokens.size()];
  }

  // Longest-first composite-key match. On success *ops_out points at the
  // node whose operands the clause consumes.
  const Clause* match(const Translator& tr, const Formula& f, const Formula** spine_end) const {
    const Clause* best = nullptr;
    for (const auto& c : tr.clauses) {
      if (best && c.key.size() <= best->key.size()) continue;
      const Formula* cur = &f;
      bool ok = true;
      for (std::size_t i = 0; i < c.key.size(); ++i) {
        if (cur->kind() != FormulaKind::Apply || cur->symbol() != c.key[i]) {
          ok = false;
          break;
        }
        if (i + 1 < c.key.size()) {
          if (cur->operands().size() != 1) {
            ok = false;
            break;
          }
          cur = &cur->operands()[0];
        }
      }
      if (ok) {
        best = &c;
        *spine_end = cur;
      }
    }
    return best;
  }

  Formula apply_atom_rule(const AtomRule& rule, const Formula& f, int ctx) const {
    switch (rule.kind) {
      case AtomRule::Kind::Identity:
        return f;
      case AtomRule::Kind::Template: {
        std::vector<Formula> arg = {f};
        return substitute(*rule.body, arg);
      }
      case AtomRule::Kind::Indexed: {
        std::vector<Formula> arg = {f};
        return indexed_atom(rule.base, arg);
      }
      case AtomRule::Kind::PredLift: {
        if (f.kind() != FormulaKind::Atom)
          throw Error("translation " + cs.name + ": cannot lift " + f.text() + " to a predicate");
        return Formula::pred(predicate_name_for_atom(f.symbol()), {token(ctx)});
      }
    }
    throw Error("unreachable");
  }

  Formula instantiate(const Translator& owner, const Clause& c,
                      const std::vector<Formula>& operands, int ctx,
                      const std::string& quant_var) const {
    for (std::size_t i = 0; i < c.ranges.size() && i < operands.size(); ++i)
      if (c.ranges[i] == OperandRange::AtomOnly && operands[i].kind() != FormulaKind::Atom)
        throw Error("translation " + cs.name + ": clause " + c.key_text() +
                    " applies to atomic operands only, got " + operands[i].text());
    std::vector<Formula> args;
    args.reserve(c.plan.size());
    for (const auto& step : c.plan) {
      if (step.kind == PlanStep::Kind::Via) {
        int next_ctx = step.shift_context ? 1 - ctx : ctx;
        args.push_back(translate(step.translator, operands[step.operand], next_ctx));
      } else {
        std::vector<Formula> tuple;
        for (int t : step.index_tuple) tuple.push_back(operands[t]);
        args.push_back(indexed_atom(step.index_base, tuple));
      }
    }
    Formula body = c.body.body;
    std::map<std::string, std::string> renaming;
    if (cs.context) {
      renaming["@cur"] = token(ctx);
      renaming["@next"] = token(1 - ctx);
    }
    if (!quant_var.empty()) renaming["@v"] = quant_var;
    if (!renaming.empty()) body = rename_variables(body, renaming);
    (void)owner;
    return substitute(Template{body, c.body.placeholder_count}, args);
  }

  Formula translate(const std::string& tid, const Formula& f, int ctx) const {
    const Translator& tr = translator(tid);
    switch (f.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::IndexedAtom:
        return apply_atom_rule(tr.atom, f, ctx);
      case FormulaKind::Const: {
        const char* key = f.const_kind() == ConstKind::Top ? "top" : "bot";
        if (const Clause* c = tr.find_clause(key)) return instantiate(tr, *c, {}, ctx, "");
        bool ok = f.const_kind() == ConstKind::Top ? cs.target.signature.has_top
                                                   : cs.target.signature.has_bot;
        if (!ok)
          throw Error("translation " + cs.name + ": target lacks constant " + f.text());
        return f;
      }
      case FormulaKind::Pred: {
        const AtomRule* rule = tr.pred ? &*tr.pred : nullptr;
        if (!rule) return f;  // literal
        if (rule->kind == AtomRule::Kind::Identity) return f;
        if (rule->kind == AtomRule::Kind::Template) {
          std::vector<Formula> arg = {f};
          return substitute(*rule->body, arg);
        }
        throw Error("translation " + cs.name + ": unsupported predicate rule");
      }
      case FormulaKind::Quant: {
        const char* key = f.quant_kind() == QuantKind::Forall ? "forall" : "exists";
        if (const Clause* c = tr.find_clause(key))
          return instantiate(tr, *c, {f.quant_body()}, ctx, f.quant_var());
        return Formula::quant(f.quant_kind(), f.quant_var(),
                              translate(tid, f.quant_body(), ctx));
      }
      case FormulaKind::Apply: {
        const Formula* spine_end = nullptr;
        const Clause* c = match(tr, f, &spine_end);
        if (!c)
          throw Error("translation " + cs.name + ": no clause for connective " + f.symbol() +
                      " in translator " + tid);
        return instantiate(tr, *c, spine_end->operands(), ctx, "");
      }
    }
    throw Error("unreachable");
  }
};

Formula nth_validity(const ClauseSystem& cs, std::size_t rank) {
  const auto& rule = *cs.opaque;
  std::vector<Formula> atoms;
  for (const auto& a : rule.enum_atoms) atoms.push_back(Formula::atom(a));
  for (int bound = 3; bound <= 12; ++bound) {
    std::size_t seen = 0;
    for (const auto& g : enumerate_formulas(cs.target.signature, atoms, bound)) {
      if (!validity(cs.target, g, 1).holds()) continue;
      if (seen == rank) return g;
      ++seen;
    }
  }
  throw Error("translation " + cs.name + ": validity enumeration exhausted");
}

Formula apply_opaque(const ClauseSystem& cs, const Formula& f) {
  const auto& rule = *cs.opaque;
  switch (rule.kind) {
    case OpaqueRule::Kind::DoubleNegation:
      return Formula::apply("not", {Formula::apply("not", {f})});
    case OpaqueRule::Kind::IndexAtom: {
      std::vector<Formula> arg = {f};
      return indexed_atom(rule.base, arg);
    }
    case OpaqueRule::Kind::ConstFormula:
      return *rule.constant;
    case OpaqueRule::Kind::EnumValidities: {
      std::vector<Formula> atoms;
      for (const auto& a : rule.enum_atoms) atoms.push_back(Formula::atom(a));
      int bound = std::max(rule.enum_max_nodes, f.node_count());
      auto universe = enumerate_formulas(cs.source.signature, atoms, bound);
      auto it = std::find(universe.begin(), universe.end(), f);
      if (it == universe.end())
        throw Error("translation " + cs.name + ": " + f.text() +
                    " is outside the enumerated fragment");
      return nth_validity(cs, static_cast<std::size_t>(it - universe.begin()));
    }
  }
  throw Error("unreachable");
}

}  // namespace

Formula apply_translation(const ClauseSystem& cs, const Formula& f) {
  if (cs.is_opaque()) return apply_opaque(cs, f);
  return Applier{cs}.translate(cs.main, f, 0);
}

FormulaSet apply_translation(const ClauseSystem& cs, const FormulaSet& fs) {
  FormulaSet out;
  for (const auto& f : fs) out.insert(apply_translation(cs, f));
  return out;
}

// --- classification -----------------------------------------------------------------

namespace {

bool template_has_parameters(const Formula& body) {
  if (body.kind() == FormulaKind::Atom) return !is_placeholder(body);
  if (body.kind() == FormulaKind::IndexedAtom) return true;
  for (const auto& op : body.operands())
    if (template_has_parameters(op)) return true;
  return false;
}

bool clause_is_literal(const std::string& owner, const Clause& c) {
  if (c.key.size() != 1) return false;
  if (c.body.body.kind() != FormulaKind::Apply || c.body.body.symbol() != c.key[0]) return false;
  const auto& ops = c.body.body.operands();
  if (ops.size() != c.plan.size()) return false;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    int idx = 0;
    if (!is_placeholder(ops[i], &idx) || idx != static_cast<int>(i) + 1) return false;
    const auto& step = c.plan[i];
    if (step.kind != PlanStep::Kind::Via || step.translator != owner ||
        step.operand != static_cast<int>(i) || step.shift_context)
      return false;
  }
  return true;
}

}  // namespace

ShapeClass classify_shape(const ClauseSystem& cs) {
  ShapeClass out;
  out.opaque = cs.is_opaque();
  out.general_recursive = !out.opaque;
  out.context_family = cs.context.has_value();
  out.fragment = cs.fragment;
  if (out.opaque) return out;

  out.single_translator = cs.translators.size() == 1 && !cs.context;
  out.fixed_templates_only = true;
  out.parameter_free = true;
  out.atom_identity = true;

  for (const auto& [id, tr] : cs.translators) {
    if (tr.atom.kind == AtomRule::Kind::Indexed) out.fixed_templates_only = false;
    if (tr.atom.kind != AtomRule::Kind::Identity) out.atom_identity = false;
    if (tr.atom.kind == AtomRule::Kind::Template && template_has_parameters(tr.atom.body->body))
      out.parameter_free = false;
    for (const auto& c : tr.clauses) {
      if (c.key.size() > 1) out.composite_keys = true;
      if (template_has_parameters(c.body.body)) out.parameter_free = false;
      for (const auto& step : c.plan)
        if (step.kind == PlanStep::Kind::Index) out.fixed_templates_only = false;
      if (clause_is_literal(id, c)) out.literal_connectives.insert(c.key[0]);
    }
  }

  // compositional for the conditional: the main ->-clause is a fixed
  // template whose placeholders are all filled by the main translator
  if (!cs.source.signature.has_connective("->")) {
    out.gr_conditional_compositional = true;
  } else {
    const Translator& main = cs.translators.at(cs.main);
    if (const Clause* c = main.find_clause("->")) {
      bool ok = true;
      for (const auto& step : c->plan)
        if (step.kind != PlanStep::Kind::Via || step.translator != cs.main) ok = false;
      out.gr_conditional_compositional = ok;
    }
  }
  return out;
}

// --- composition ----------------------------------------------------------------------

namespace {

struct Fuser {
  const ClauseSystem& t1;
  const ClauseSystem& t2;
  ClauseSystem out;
  std::vector<std::pair<std::string, std::string>> worklist;
  std::set<std::pair<std::string, std::string>> enqueued;

  static std::string fused_id(const std::string& a, const std::string& b) { return a + "*" + b; }

  void require(const std::string& a, const std::string& b) {
    if (enqueued.insert({a, b}).second) worklist.emplace_back(a, b);
  }

  const Translator& tr2(const std::string& id) const { return t2.translators.at(id); }

  // Rewrites a t1-side target template under t2's translator `j`.
  // `hole` maps (placeholder index, current t2 translator) to the fused
  // formula standing in that position.
  Formula walk(const std::string& j, const Formula& g,
               const std::function<Formula(int, const std::string&)>& hole) {
    int ph = 0;
    if (is_placeholder(g, &ph)) return hole(ph, j);
    switch (g.kind()) {
      case FormulaKind::Atom:
      case FormulaKind::IndexedAtom: {
        const AtomRule& rule = tr2(j).atom;
        switch (rule.kind) {
          case AtomRule::Kind::Identity:
            return g;
          case AtomRule::Kind::Template: {
            std::vector<Formula> arg = {g};
            return substitute(*rule.body, arg);
          }
          case AtomRule::Kind::Indexed: {
            std::vector<Formula> arg = {g};
            return indexed_atom(rule.base, arg);
          }
          default:
            throw Error("compose: predicate-lifting atom rules are not fusable");
        }
      }
      case FormulaKind::Const: {
        const char* key = g.const_kind() == ConstKind::Top ? "top" : "bot";
        if (const Clause* c = tr2(j).find_clause(key)) {
          if (!c->plan.empty()) throw Error("compose: constant clause with operands");
          return c->body.body;
        }
        return g;
      }
      case FormulaKind::Pred: {
        const auto& pr = tr2(j).pred;
        if (!pr || pr->kind == AtomRule::Kind::Identity) return g;
        if (pr->kind == AtomRule::Kind::Template) {
          std::vector<Formula> arg = {g};
          return substitute(*pr->body, arg);
        }
        throw Error("compose: unsupported predicate rule");
      }
      case FormulaKind::Quant: {
        const char* key = g.quant_kind() == QuantKind::Forall ? "forall" : "exists";
        if (const Clause* c = tr2(j).find_clause(key)) {
          if (c->plan.size() != 1 || c->plan[0].kind != PlanStep::Kind::Via)
            throw Error("compose: unsupported quantifier clause");
          std::vector<Formula> args = {walk(c->plan[0].translator, g.quant_body(), hole)};
          Formula body = rename_variables(c->body.body, {{"@v", g.quant_var()}});
          return substitute(Template{body, 1}, args);
        }
        return Formula::quant(g.quant_kind(), g.quant_var(), walk(j, g.quant_body(), hole));
      }
      case FormulaKind::Apply: {
        const Clause* c = tr2(j).find_clause(g.symbol());
        if (!c) throw Error("compose: no clause for " + g.symbol() + " in " + t2.name);
        for (auto r : c->ranges)
          if (r == OperandRange::AtomOnly)
            throw Error("compose: atom-only operand ranges are not fusable");
        std::vector<Formula> args;
        for (const auto& step : c->plan) {
          if (step.kind != PlanStep::Kind::Via)
            throw Error("compose: indexing auxiliaries in the outer system are not fusable");
          args.push_back(walk(step.translator, g.operands()[step.operand], hole));
        }
        return substitute(c->body, args);
      }
    }
    throw Error("unreachable");
  }

  Translator fuse_pair(const std::string& i1, const std::string& i2) {
    const Translator& a = t1.translators.at(i1);
    Translator f;
    f.id = fused_id(i1, i2);

    // atom rule
    switch (a.atom.kind) {
      case AtomRule::Kind::Identity:
        f.atom = tr2(i2).atom;
        break;
      case AtomRule::Kind::Template: {
        auto hole = std::function<Formula(int, const std::string&)>(
            [&](int ph, const std::string& j) -> Formula {
              if (ph != 1) throw Error("compose: atom rule placeholder out of range");
              Formula p = Formula::atom("#1");
              const AtomRule& rule = tr2(j).atom;
              if (rule.kind == AtomRule::Kind::Identity) return p;
              if (rule.kind == AtomRule::Kind::Template) {
                std::vector<Formula> arg = {p};
                return substitute(*rule.body, arg);
              }
              throw Error("compose: atom rules of this shape are not fusable");
            });
        f.atom.kind = AtomRule::Kind::Template;
        f.atom.body = Template::over(walk(i2, a.atom.body->body, hole), 1);
        break;
      }
      default:
        throw Error("compose: atom rules of this shape are not fusable");
    }
    if (a.pred) {
      if (a.pred->kind == AtomRule::Kind::Identity) {
        f.pred = tr2(i2).pred;
      } else if (a.pred->kind == AtomRule::Kind::Template) {
        auto hole = std::function<Formula(int, const std::string&)>(
            [&](int ph, const std::string& j) -> Formula {
              if (ph != 1) throw Error("compose: predicate rule placeholder out of range");
              Formula p = Formula::atom("#1");
              const auto& rule = tr2(j).pred;
              if (!rule || rule->kind == AtomRule::Kind::Identity) return p;
              if (rule->kind == AtomRule::Kind::Template) {
                std::vector<Formula> arg = {p};
                return substitute(*rule->body, arg);
              }
              throw Error("compose: predicate rules of this shape are not fusable");
            });
        AtomRule fused;
        fused.kind = AtomRule::Kind::Template;
        fused.body = Template::over(walk(i2, a.pred->body->body, hole), 1);
        f.pred = std::move(fused);
      } else {
        throw Error("compose: predicate rules of this shape are not fusable");
      }
    }

    for (const auto& c : a.clauses) {
      Clause fc;
      fc.key = c.key;
      fc.ranges = c.ranges;
      auto hole = std::function<Formula(int, const std::string&)>(
          [&](int ph, const std::string& j) -> Formula {
            const PlanStep& step = c.plan.at(ph - 1);
            PlanStep fs;
            if (step.kind == PlanStep::Kind::Via) {
              fs.kind = PlanStep::Kind::Via;
              fs.translator = fused_id(step.translator, j);
              fs.operand = step.operand;
              require(step.translator, j);
              fc.plan.push_back(fs);
              return Formula::atom("#" + std::to_string(fc.plan.size()));
            }
            // indexing in the inner system: keep the step, wrap the fresh
            // atom with the outer atom rule
            fc.plan.push_back(step);
            Formula p = Formula::atom("#" + std::to_string(fc.plan.size()));
            const AtomRule& rule = tr2(j).atom;
            if (rule.kind == AtomRule::Kind::Identity) return p;
            if (rule.kind == AtomRule::Kind::Template) {
              std::vector<Formula> arg = {p};
              return substitute(*rule.body, arg);
            }
            throw Error("compose: indexed placeholders need a plain outer atom rule");
          });
      Formula body = walk(i2, c.body.body, hole);
      fc.body = Template::over(body, static_cast<int>(fc.plan.size()));
      f.clauses.push_back(std::move(fc));
    }
    return f;
  }

  ClauseSystem run(CompositionMode mode) {
    out.name = t2.name + "_after_" + t1.name;
    out.description = "composition of " + t1.name + " then " + t2.name;
    out.source = t1.source;
    out.target = t2.target;
    out.main = fused_id(t1.main, t2.main);
    out.declares_model_map_dependency =
        t1.declares_model_map_dependency || t2.declares_model_map_dependency;
    out.fragment = t1.fragment || t2.fragment;
    out.composition_mode = mode == CompositionMode::Surjective ? "surjective" : "weakened";
    require(t1.main, t2.main);
    while (!worklist.empty()) {
      auto [a, b] = worklist.back();
      worklist.pop_back();
      if (out.translators.count(fused_id(a, b))) continue;
      out.translators.emplace(fused_id(a, b), Translator{});  // placeholder to stop cycles
      out.translators[fused_id(a, b)] = fuse_pair(a, b);
    }
    out.check();
    return out;
  }
};

}  // namespace

ClauseSystem compose_translations(const ClauseSystem& t1, const ClauseSystem& t2,
                                  CompositionMode mode) {
  if (t1.target.name != t2.source.name)
    throw Error("compose: signature mismatch, " + t1.name + " targets " + t1.target.name +
                " but " + t2.name + " starts from " + t2.source.name);
  if (t1.is_opaque() || t2.is_opaque()) throw Error("compose: opaque translations do not fuse");
  if (t1.context || t2.context)
    throw Error("compose: context families are not fusable");
  for (const auto& [id, tr] : t2.translators)
    for (const auto& c : tr.clauses)
      if (c.key.size() > 1) throw Error("compose: composite keys in the outer system");
  return Fuser{t1, t2}.run(mode);
}

ClauseSystem make_identity_translation(const std::string& name, const LogicSpec& source,
                                       const LogicSpec& target) {
  for (const auto& c : source.signature.connectives) {
    auto a = target.signature.arity_of(c.symbol);
    if (!a || *a != c.arity)
      throw Error("identity translation " + name + ": target lacks " + c.symbol);
  }
  ClauseSystem cs;
  cs.name = name;
  cs.description = "literal embedding of " + source.name + " into " + target.name;
  cs.source = source;
  cs.target = target;
  cs.main = "T";
  Translator t;
  t.id = "T";
  for (const auto& c : source.signature.connectives) {
    Clause cl;
    cl.key = {c.symbol};
    std::vector<Formula> phs;
    for (int i = 1; i <= c.arity; ++i) {
      phs.push_back(Formula::atom("#" + std::to_string(i)));
      PlanStep step;
      step.kind = PlanStep::Kind::Via;
      step.translator = "T";
      step.operand = i - 1;
      cl.plan.push_back(step);
    }
    cl.body = Template::over(Formula::apply(c.symbol, phs), c.arity);
    t.clauses.push_back(std::move(cl));
  }
  cs.translators.emplace("T", std::move(t));
  cs.check();
  return cs;
}

}  // namespace trex
