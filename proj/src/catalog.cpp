#include "trex/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace trex {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find("//");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string rest_after(const std::vector<std::string>& toks, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    if (i > from) out += ' ';
    out += toks[i];
  }
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    return std::stoi(s);
  } catch (...) {
    throw Error("catalog: bad " + what + ": " + s);
  }
}

}  // namespace

struct CatalogParser {
  Catalog& cat;
  std::string origin;
  bool shipped;
  std::vector<std::string> lines;
  std::size_t ln = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("catalog " + origin + ":" + std::to_string(ln) + ": " + msg);
  }

  bool next(std::vector<std::string>& toks) {
    while (ln < lines.size()) {
      toks = tokens_of(strip_comment(lines[ln]));
      ++ln;
      if (!toks.empty()) return true;
    }
    return false;
  }

  void claim(const std::string& kind, const std::string& name) {
    auto it = cat.shipped_.find(name);
    if (it != cat.shipped_.end() && !shipped)
      fail("entry " + name + " is shipped and cannot be overridden");
    if (shipped) cat.shipped_[name] = kind;
  }

  const LogicSpec& logic(const std::string& name) const {
    auto it = cat.logics_.find(name);
    if (it == cat.logics_.end()) fail("unknown logic " + name);
    return it->second;
  }

  void run(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& head = toks[0];
      if (head == "logic") parse_logic(toks);
      else if (head == "translation") parse_translation(toks);
      else if (head == "map") parse_map(toks);
      else if (head == "counterexample") parse_counterexample(toks);
      else if (head == "corpus") parse_corpus();
      else fail("unknown directive " + head);
    }
  }

  // --- logic blocks ------------------------------------------------------------

  void parse_logic(const std::vector<std::string>& header) {
    if (header.size() != 2) fail("logic blocks need exactly a name");
    LogicSpec L;
    L.name = header[1];
    L.signature.name = header[1];
    std::vector<std::pair<std::vector<std::string>, std::string>> axioms;  // premises |- concl
    std::vector<std::string> universe_tokens;

    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& key = toks[0];
      if (key == "end") break;
      if (key == "engine") {
        const std::string& e = toks.at(1);
        if (e == "matrix") {
          L.engine = EngineKind::Matrix;
          L.matrix = MatrixSemantics{};
        } else if (e == "kripke") {
          L.engine = EngineKind::Kripke;
          if (toks.size() < 4 || toks[2] != "frame") fail("kripke engine needs a frame class");
          const std::string& f = toks[3];
          if (f == "K") L.frame = FrameClass::K;
          else if (f == "S4") L.frame = FrameClass::S4;
          else if (f == "Grz") L.frame = FrameClass::GrzDesk;
          else if (f == "IPL") L.frame = FrameClass::Ipl;
          else fail("unknown frame class " + f);
        } else if (e == "bivaluation") {
          L.engine = EngineKind::Bivaluation;
          if (toks.size() < 4 || toks[2] != "constraint") fail("bivaluation engine needs a constraint");
          L.bivaluation_constraint = toks[3];
        } else if (e == "relatedness") {
          L.engine = EngineKind::Relatedness;
        } else if (e == "fo") {
          L.engine = EngineKind::FOFinite;
        } else if (e == "explicit") {
          L.engine = EngineKind::Explicit;
          L.explicit_rel = ExplicitConsequence{};
        } else {
          fail("unknown engine " + e);
        }
      } else if (key == "signature") {
        std::string rest = rest_after(toks, 1);
        std::istringstream in(rest);
        std::string part;
        while (std::getline(in, part, ',')) {
          auto pt = tokens_of(part);
          if (pt.size() != 2) fail("signature entries are 'symbol arity'");
          L.signature.connectives.push_back({pt[0], to_int(pt[1], "arity")});
        }
      } else if (key == "constants") {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i] == "top") L.signature.has_top = true;
          else if (toks[i] == "bot") L.signature.has_bot = true;
          else fail("unknown constant " + toks[i]);
        }
      } else if (key == "atoms") {
        L.signature.atom_prefix = toks.at(1);
      } else if (key == "falsum-atom") {
        L.signature.bot_is_atom = true;
      } else if (key == "fo-part") {
        FoPart fo;
        std::size_t i = 1;
        if (toks.at(i) != "preds") fail("fo-part starts with preds");
        ++i;
        while (i < toks.size() && toks[i] != "rel") {
          std::string name = toks[i];
          if (!name.empty() && name.back() == ',') name.pop_back();
          std::string ar = toks.at(i + 1);
          if (!ar.empty() && ar.back() == ',') ar.pop_back();
          fo.predicates.emplace_back(name, to_int(ar, "pred arity"));
          i += 2;
        }
        if (i < toks.size() && toks[i] == "rel") {
          fo.relation_symbol = toks.at(i + 1);
          i += 2;
        }
        if (i < toks.size() && toks[i] == "vars") {
          fo.variables.clear();
          for (++i; i < toks.size(); ++i) fo.variables.push_back(toks[i]);
        }
        L.signature.fo = std::move(fo);
      } else if (key == "values") {
        for (std::size_t i = 1; i < toks.size(); ++i) L.matrix->value_names.push_back(toks[i]);
        L.matrix->designated.assign(L.matrix->value_names.size(), false);
      } else if (key == "designated") {
        for (std::size_t i = 1; i < toks.size(); ++i) L.matrix->designated[value_index(L, toks[i])] = true;
      } else if (key == "table") {
        const std::string& sym = toks.at(1);
        if (toks.at(2) != ":") fail("table syntax: table SYM : cells");
        std::vector<int> cells;
        for (std::size_t i = 3; i < toks.size(); ++i) {
          if (toks[i] == "/") continue;
          cells.push_back(value_index(L, toks[i]));
        }
        L.matrix->tables[sym] = std::move(cells);
      } else if (key == "const-values") {
        // top and bot interpretations in a matrix
        L.matrix->top_value = L.signature.has_top ? value_index(L, toks.at(1)) : -1;
        if (toks.size() > 2) L.matrix->bot_value = value_index(L, toks.at(2));
      } else if (key == "universe") {
        for (std::size_t i = 1; i < toks.size(); ++i) universe_tokens.push_back(toks[i]);
      } else if (key == "axiom") {
        std::vector<std::string> premises;
        std::string conclusion;
        bool seen = false;
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i] == "|-") {
            seen = true;
            continue;
          }
          if (seen) conclusion = toks[i];
          else premises.push_back(toks[i]);
        }
        if (!seen || conclusion.empty()) fail("axiom syntax: axiom [premises] |- conclusion");
        axioms.emplace_back(premises, conclusion);
      } else if (key == "decidable") {
        const std::string& d = toks.at(1);
        L.decidable = d == "yes" ? Decidable::Yes : d == "no" ? Decidable::No : Decidable::Unknown;
      } else if (key == "consequence") {
        L.consequence_mode = toks.at(1) == "theoremhood-only" ? ConsequenceMode::TheoremhoodOnly
                                                              : ConsequenceMode::Full;
      } else if (key == "node") {
        L.registry_node = toks.at(1);
      } else {
        fail("unknown logic directive " + key);
      }
    }

    if (L.engine == EngineKind::Explicit) finalize_explicit(L, universe_tokens, axioms);
    L.check();
    claim("logic", L.name);
    cat.logics_[L.name] = std::move(L);
  }

  static int value_index(const LogicSpec& L, const std::string& name) {
    const auto& names = L.matrix->value_names;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw Error("catalog: unknown truth value " + name + " in " + L.name);
  }

  void finalize_explicit(LogicSpec& L, const std::vector<std::string>& universe,
                         const std::vector<std::pair<std::vector<std::string>, std::string>>& axioms) {
    auto& rel = *L.explicit_rel;
    for (const auto& t : universe) rel.universe.push_back(parse(t, L.signature));
    std::sort(rel.universe.begin(), rel.universe.end());
    std::vector<std::pair<std::set<Formula>, Formula>> ax;
    for (const auto& [ps, c] : axioms) {
      std::set<Formula> prem;
      for (const auto& p : ps) prem.insert(parse(p, L.signature));
      ax.emplace_back(std::move(prem), parse(c, L.signature));
    }
    // reflexive monotone closure over the finite universe
    const std::size_t n = rel.universe.size();
    if (n > 16) fail("explicit universe too large");
    for (std::size_t bits = 0; bits < (1ull << n); ++bits) {
      std::set<Formula> gamma;
      for (std::size_t i = 0; i < n; ++i)
        if ((bits >> i) & 1u) gamma.insert(rel.universe[i]);
      std::set<Formula> closure = gamma;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& [prem, concl] : ax) {
          if (closure.count(concl)) continue;
          if (std::includes(closure.begin(), closure.end(), prem.begin(), prem.end())) {
            closure.insert(concl);
            grew = true;
          }
        }
      }
      for (const auto& f : closure) rel.holds.insert({gamma, f});
    }
  }

  // --- translation blocks ---------------------------------------------------------

  void parse_translation(const std::vector<std::string>& header) {
    if (header.size() != 2) fail("translation blocks need exactly a name");
    ClauseSystem cs;
    cs.name = header[1];
    ShapeExpectation shape{cs.name, {}};

    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& key = toks[0];
      if (key == "end") break;
      if (key == "from") {
        if (toks.size() != 4 || toks[2] != "to") fail("syntax: from SRC to TGT");
        cs.source = logic(toks[1]);
        cs.target = logic(toks[3]);
      } else if (key == "main") {
        cs.main = toks.at(1);
      } else if (key == "desc") {
        cs.description = rest_after(toks, 1);
      } else if (key == "declares-model-maps") {
        cs.declares_model_map_dependency = true;
      } else if (key == "fragment") {
        cs.fragment = true;
      } else if (key == "context") {
        ContextFamily fam;
        fam.tokens.clear();
        for (std::size_t i = 1; i < toks.size(); ++i) fam.tokens.push_back(toks[i]);
        if (fam.tokens.size() != 2) fail("context families use exactly two tokens");
        cs.context = std::move(fam);
      } else if (key == "opaque") {
        OpaqueRule r;
        const std::string& kind = toks.at(1);
        if (kind == "dneg") {
          r.kind = OpaqueRule::Kind::DoubleNegation;
        } else if (kind == "index") {
          r.kind = OpaqueRule::Kind::IndexAtom;
          r.base = toks.at(2);
        } else if (kind == "const") {
          r.kind = OpaqueRule::Kind::ConstFormula;
          r.constant = parse(rest_after(toks, 2), cs.target.signature);
        } else if (kind == "enum") {
          r.kind = OpaqueRule::Kind::EnumValidities;
          r.enum_atoms.clear();
          std::size_t i = 2;
          while (i < toks.size() && toks[i] != "max") r.enum_atoms.push_back(toks[i++]);
          if (i + 1 < toks.size()) r.enum_max_nodes = to_int(toks[i + 1], "enum bound");
        } else {
          fail("unknown opaque rule " + kind);
        }
        cs.opaque = std::move(r);
      } else if (key == "translator") {
        parse_translator(cs, toks.at(1));
      } else if (key == "expect-shape") {
        for (std::size_t i = 1; i < toks.size(); ++i) shape.expected.push_back(toks[i]);
      } else if (key == "expect-gate") {
        GateExpectation ge;
        ge.translation = cs.name;
        ge.gate = toks.at(1);
        ge.expect_pass = toks.at(2) == "pass";
        cat.gates_.push_back(std::move(ge));
      } else {
        fail("unknown translation directive " + key);
      }
    }
    cs.check();
    claim("translation", cs.name);
    if (!shape.expected.empty()) cat.shapes_.push_back(std::move(shape));
    cat.translations_[cs.name] = std::move(cs);
  }

  void parse_translator(ClauseSystem& cs, const std::string& id) {
    Translator tr;
    tr.id = id;
    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& key = toks[0];
      if (key == "end") break;
      if (key == "atom" || key == "pred") {
        AtomRule rule;
        const std::string& kind = toks.at(1);
        if (kind == "identity") rule.kind = AtomRule::Kind::Identity;
        else if (kind == "template") {
          rule.kind = AtomRule::Kind::Template;
          rule.body = Template::parse(rest_after(toks, 2), cs.target.signature, 1);
        } else if (kind == "indexed") {
          rule.kind = AtomRule::Kind::Indexed;
          rule.base = toks.at(2);
        } else if (kind == "pred-lift") {
          rule.kind = AtomRule::Kind::PredLift;
        } else {
          fail("unknown atom rule " + kind);
        }
        if (key == "atom") tr.atom = std::move(rule);
        else tr.pred = std::move(rule);
      } else if (key == "clause") {
        tr.clauses.push_back(parse_clause(cs, toks));
      } else {
        fail("unknown translator directive " + key);
      }
    }
    cs.translators.emplace(id, std::move(tr));
  }

  Clause parse_clause(const ClauseSystem& cs, const std::vector<std::string>& toks) {
    // clause KEY... [!atoms] => TEMPLATE | bind | bind ...
    Clause c;
    std::size_t i = 1;
    bool atoms_only = false;
    for (; i < toks.size() && toks[i] != "=>"; ++i) {
      if (toks[i] == "!atoms") atoms_only = true;
      else c.key.push_back(toks[i]);
    }
    if (i == toks.size()) fail("clause without =>");
    std::string rest = rest_after(toks, i + 1);
    std::vector<std::string> parts;
    {
      std::istringstream in(rest);
      std::string part;
      while (std::getline(in, part, '|')) parts.push_back(part);
    }
    if (parts.empty()) fail("clause without a template");
    for (std::size_t b = 1; b < parts.size(); ++b) {
      auto bt = tokens_of(parts[b]);
      if (bt.empty()) fail("empty clause binding");
      PlanStep step;
      if (bt[0] == "via") {
        step.kind = PlanStep::Kind::Via;
        step.translator = bt.at(1);
        step.operand = to_int(bt.at(2), "operand index");
        if (bt.size() > 3 && bt[3] == "shift") step.shift_context = true;
      } else if (bt[0] == "idx") {
        step.kind = PlanStep::Kind::Index;
        step.index_base = bt.at(1);
        for (std::size_t k = 2; k < bt.size(); ++k)
          step.index_tuple.push_back(to_int(bt[k], "index operand"));
      } else {
        fail("unknown binding " + bt[0]);
      }
      c.plan.push_back(std::move(step));
    }
    c.body = Template::parse(parts[0], cs.target.signature, static_cast<int>(c.plan.size()));
    if (atoms_only) {
      int arity = 1;
      const std::string& last = c.key.back();
      if (auto a = cs.source.signature.arity_of(last)) arity = *a;
      c.ranges.assign(arity, OperandRange::AtomOnly);
    }
    return c;
  }

  // --- model maps -------------------------------------------------------------------

  void parse_map(const std::vector<std::string>& header) {
    if (header.size() != 2) fail("map blocks need exactly a name");
    ModelMap m;
    m.name = header[1];
    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& key = toks[0];
      if (key == "end") break;
      if (key == "from") {
        if (toks.size() != 4 || toks[2] != "to") fail("syntax: from SRC to TGT");
        m.source = logic(toks[1]);
        m.target = logic(toks[3]);
      } else if (key == "direction") {
        m.direction = toks.at(1) == "forward" ? ModelMap::Direction::SourceToTarget
                                              : ModelMap::Direction::TargetToSource;
      } else if (key == "transform") {
        const std::string& t = toks.at(1);
        if (t == "wpl-to-cpl") m.transform = ModelMap::Transform::WplToCpl;
        else if (t == "cpl-to-wpl") m.transform = ModelMap::Transform::CplToWpl;
        else if (t == "epstein") m.transform = ModelMap::Transform::EpsteinRelatedness;
        else if (t == "kuijer") m.transform = ModelMap::Transform::KuijerWorlds;
        else if (t == "trivial") m.transform = ModelMap::Transform::TrivialCollapse;
        else fail("unknown transform " + t);
      } else if (key == "base") {
        m.index_base = toks.at(1);
      } else if (key == "model-based") {
        m.model_based = true;
      } else {
        fail("unknown map directive " + key);
      }
    }
    claim("map", m.name);
    cat.maps_[m.name] = std::move(m);
  }

  // --- counterexamples ----------------------------------------------------------------

  void parse_counterexample(const std::vector<std::string>& header) {
    if (header.size() != 2) fail("counterexample blocks need exactly a name");
    Counterexample ce;
    ce.name = header[1];
    std::vector<std::string> toks;
    while (next(toks)) {
      const std::string& key = toks[0];
      if (key == "end") break;
      if (key == "kind") ce.kind = toks.at(1);
      else if (key == "translation") ce.translation = toks.at(1);
      else if (key == "map") ce.map = toks.at(1);
      else if (key == "theta") ce.theta.push_back(rest_after(toks, 1));
      else if (key == "expect") ce.expected[toks.at(1)] = toks.at(2) == "pass";
      else if (key == "note") ce.note = rest_after(toks, 1);
      else fail("unknown counterexample directive " + key);
    }
    claim("counterexample", ce.name);
    cat.counterexamples_.push_back(std::move(ce));
  }

  // --- corpus --------------------------------------------------------------------------

  void parse_corpus() {
    std::vector<std::string> toks;
    while (next(toks)) {
      if (toks[0] == "end") break;
      if (toks.size() < 3) fail("corpus entries are: LOGIC valid|invalid FORMULA");
      CorpusEntry e;
      e.logic = toks[0];
      e.expected_valid = toks[1] == "valid";
      e.formula = rest_after(toks, 2);
      if (!cat.logics_.count(e.logic)) fail("corpus entry for unknown logic " + e.logic);
      // reject unparsable entries immediately
      parse(e.formula, cat.logics_.at(e.logic).signature);
      cat.corpus_.push_back(std::move(e));
    }
  }
};

Catalog Catalog::builtin() {
  Catalog cat;
  CatalogParser p{cat, "builtin", true};
  p.run(builtin_catalog_text());
  return cat;
}

void Catalog::merge_text(const std::string& text, const std::string& origin) {
  CatalogParser p{*this, origin, false};
  p.run(text);
}

void Catalog::merge_user_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str(), path);
}

const LogicSpec& Catalog::logic(const std::string& name) const {
  auto it = logics_.find(name);
  if (it == logics_.end()) throw Error("unknown logic " + name);
  return it->second;
}

const ClauseSystem& Catalog::translation(const std::string& name) const {
  auto it = translations_.find(name);
  if (it == translations_.end()) throw Error("unknown translation " + name);
  return it->second;
}

const ModelMap& Catalog::model_map(const std::string& name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw Error("unknown model map " + name);
  return it->second;
}

std::vector<std::string> Catalog::logic_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : logics_) out.push_back(k);
  return out;
}

std::vector<std::string> Catalog::translation_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : translations_) out.push_back(k);
  return out;
}

std::vector<std::string> Catalog::map_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : maps_) out.push_back(k);
  return out;
}

FormulaSet mossakowski_delta(const FormulaSet& closure, const SignatureSpec& target_sig,
                             const std::string& base) {
  if (subformula_closure(closure) != closure)
    throw Error("encoding set requires a subformula-closed input");
  auto tag = [&](const Formula& f) {
    std::vector<Formula> one = {f};
    return indexed_atom(base, one);
  };
  FormulaSet out;
  for (const auto& f : closure) {
    if (f.kind() != FormulaKind::Apply) continue;
    const auto& sym = f.symbol();
    if (sym == "and" || sym == "or" || sym == "->") {
      Formula rhs = Formula::apply(sym, {tag(f.operands()[0]), tag(f.operands()[1])});
      out.insert(Formula::apply("<->", {tag(f), rhs}));
    } else if (sym == "not") {
      out.insert(Formula::apply("->", {tag(f.operands()[0]), Formula::apply("not", {tag(f)})}));
    } else {
      throw Error("encoding set: unsupported connective " + sym);
    }
  }
  (void)target_sig;
  return out;
}

}  // namespace trex
