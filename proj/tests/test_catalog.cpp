#include "doctest.h"
#include "trex/catalog.hpp"

#include <functional>

using namespace trex;

namespace {

const Catalog& cat() {
  static Catalog c = Catalog::builtin();
  return c;
}

std::string image(const std::string& translation, const std::string& text) {
  const auto& cs = cat().translation(translation);
  return apply_translation(cs, parse(text, cs.source.signature)).text();
}

}  // namespace

TEST_CASE("builtin logics load with the right engines") {
  CHECK(cat().logic("WPL").engine == EngineKind::Bivaluation);
  CHECK(cat().logic("WPL").bivaluation_constraint == "wpl-half-negation");
  CHECK(cat().logic("R").engine == EngineKind::Relatedness);
  CHECK(cat().logic("AtomOnly").engine == EngineKind::Kripke);
  CHECK(cat().logic("AtomOnly").signature.connectives.empty());
  CHECK(cat().logic("Trivial").matrix->value_count() == 1);
  CHECK(cat().logic("L3").matrix->value_count() == 3);
  CHECK(cat().logic("ToyPT").engine == EngineKind::Explicit);
  CHECK(cat().logic("Grz").frame == FrameClass::GrzDesk);
  CHECK(cat().logic("IPL").frame == FrameClass::Ipl);
  // fragments point at their parent registry node
  CHECK(cat().logic("CPL_not_imp").node() == "CPL");
  CHECK(cat().logic("Grz_frag").node() == "Grz");
  CHECK(cat().logic("CPL").node() == "CPL");
}

TEST_CASE("catalog translation images match the published clauses") {
  CHECK(image("Tl", "(not p)") == "(-> p (not p))");
  CHECK(image("Tg", "(not p)") == "(box (not (box p)))");
  CHECK(image("Tg", "(or p (not p))") == "(or (box p) (box (not (box p))))");
  CHECK(image("TE", "(-> p q)") == "(and (-> p q) d{p,q})");
  CHECK(image("Tm1", "(and p q)") == "(or (and (or p bot) (or q bot)) bot)");
  CHECK(image("DemriGore", "(box p)") == "(box (-> (box (-> p (box p))) p))");
  CHECK(image("Tbh", "(not (box p))") == "(not (box p))");
  CHECK(image("Tbh", "(box p)") == "(box (-> (box p) p))");
  CHECK(image("Tx", "(box p)") == "(forall y (-> (R x y) (P y)))");
  CHECK(image("Tx", "(box (dia p))") == "(forall y (-> (R x y) (exists x (and (R y x) (P x)))))");
  CHECK(image("Tc", "(or p q)") == "(not (and (not (not (not p))) (not (not (not q)))))");
  CHECK(image("Tc", "(exists x (P x))") == "(not (forall x (not (not (not (P x))))))");
  CHECK(image("Ts", "(forall x (P x))") == "(box (forall x (box (P x))))");
  CHECK(image("MossT", "(not p)") == "(-> p (not p))");
  CHECK(image("Glivenko", "p") == "(not (not p))");
  CHECK(image("Tprime", "(not r)") == "p{(not r)}");
  CHECK(image("Tt", "(box p)") == "p{(box p)}");
  CHECK(image("TrivialConst", "(and p q)") == "(or p (not p))");
}

TEST_CASE("enumeration-indexed validities are injective and valid") {
  const auto& cs = cat().translation("TrivialEnum");
  std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
  auto sources = enumerate_formulas(cs.source.signature, atoms, 4);
  const auto& cpl = cat().logic("CPL");
  std::set<std::string> images;
  for (const auto& f : sources) {
    Formula img = apply_translation(cs, f);
    CHECK(validity(cpl, img, 1).holds());
    CHECK(images.insert(img.text()).second);  // injective
  }
}

TEST_CASE("encoding set generator") {
  const auto& wpl = cat().logic("WPL");

  auto c1 = subformula_closure(parse("(not r)", wpl.signature));
  auto d1 = mossakowski_delta(c1, cat().logic("CPL").signature);
  REQUIRE(d1.size() == 1);
  CHECK(d1.begin()->text() == "(-> p{r} (not p{(not r)}))");

  auto c2 = subformula_closure(parse("(and p q)", wpl.signature));
  auto d2 = mossakowski_delta(c2, cat().logic("CPL").signature);
  REQUIRE(d2.size() == 1);
  CHECK(d2.begin()->text() == "(<-> p{(and p q)} (and p{p} p{q}))");

  CHECK(mossakowski_delta({}, cat().logic("CPL").signature).empty());

  FormulaSet not_closed{parse("(and p q)", wpl.signature)};
  CHECK_THROWS_AS(mossakowski_delta(not_closed, cat().logic("CPL").signature), Error);
}

TEST_CASE("declared shape expectations match computed classification") {
  using Pred = std::function<bool(const ShapeClass&)>;
  std::map<std::string, Pred> preds = {
      {"compositional", [](const ShapeClass& s) { return s.compositional(); }},
      {"not-compositional", [](const ShapeClass& s) { return !s.compositional(); }},
      {"definitional", [](const ShapeClass& s) { return s.definitional_shape(); }},
      {"grammatical", [](const ShapeClass& s) { return s.grammatical_shape(); }},
      {"parameter-free", [](const ShapeClass& s) { return s.parameter_free; }},
      {"not-parameter-free", [](const ShapeClass& s) { return !s.parameter_free; }},
      {"gr", [](const ShapeClass& s) { return s.general_recursive; }},
      {"grc", [](const ShapeClass& s) { return s.gr_conditional_compositional; }},
      {"not-grc", [](const ShapeClass& s) { return !s.gr_conditional_compositional; }},
      {"opaque", [](const ShapeClass& s) { return s.opaque; }},
      {"context-family", [](const ShapeClass& s) { return s.context_family; }},
      {"composite-keys", [](const ShapeClass& s) { return s.composite_keys; }},
      {"two-translators", [](const ShapeClass& s) { return !s.single_translator; }},
  };
  REQUIRE_FALSE(cat().shape_expectations().empty());
  for (const auto& exp : cat().shape_expectations()) {
    auto shape = classify_shape(cat().translation(exp.translation));
    for (const auto& token : exp.expected) {
      auto it = preds.find(token);
      REQUIRE_MESSAGE(it != preds.end(), "unknown expectation token " << token);
      CHECK_MESSAGE(it->second(shape), exp.translation << " should be " << token);
    }
  }
}

TEST_CASE("corpus entries are well-formed and plentiful") {
  CHECK(cat().corpus().size() >= 10);
  std::set<std::string> logics;
  for (const auto& e : cat().corpus()) {
    logics.insert(e.logic);
    CHECK_NOTHROW(parse(e.formula, cat().logic(e.logic).signature));
  }
  for (const char* l : {"IPL", "S4", "Grz", "K"}) CHECK(logics.count(l));
}

TEST_CASE("counterexamples ship with expected gate outcomes") {
  REQUIRE(cat().counterexamples().size() == 4);
  for (const auto& ce : cat().counterexamples()) {
    CHECK(cat().has_translation(ce.translation));
    if (!ce.map.empty()) CHECK_NOTHROW(cat().model_map(ce.map));
    CHECK(ce.expected.count("gg"));
    CHECK_FALSE(ce.expected.at("gg"));  // all four are rejected
  }
}

TEST_CASE("user catalogs merge by name, shipped entries are immutable") {
  Catalog c = Catalog::builtin();
  c.merge_text(R"(
logic UserCPL
  engine matrix
  signature not 1, and 2
  values 0 1
  designated 1
  table not : 1 0
  table and : 0 0 / 0 1
end

translation UserId
  from UserCPL to CPL
  main T
  translator T
    atom identity
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
  end
end
)",
               "user");
  CHECK(c.has_logic("UserCPL"));
  CHECK(apply_translation(c.translation("UserId"), parse("(not p)", c.logic("UserCPL").signature))
            .text() == "(not p)");

  CHECK_THROWS_AS(c.merge_text("logic CPL\nengine matrix\nsignature not 1\nvalues 0 1\n"
                               "designated 1\ntable not : 1 0\nend\n",
                               "user2"),
                  Error);
}

TEST_CASE("model maps resolve and carry flags") {
  CHECK(cat().model_map("fE").model_based);
  CHECK(cat().model_map("fE").direction == ModelMap::Direction::SourceToTarget);
  CHECK(cat().model_map("fPrime").direction == ModelMap::Direction::TargetToSource);
  CHECK(cat().model_map("fWpl").transform == ModelMap::Transform::WplToCpl);
  CHECK(cat().model_map("fT").transform == ModelMap::Transform::KuijerWorlds);
}

TEST_CASE("model map transforms work on catalog logics") {
  // keep the valuation, reinterpret classically: a model with p false and
  // (not p) false classically makes (not p) true
  ModelMap f = cat().model_map("fWpl");
  const auto& wpl = cat().logic("WPL");
  BivaluationModel bm;
  Formula p = parse("p", wpl.signature);
  Formula np = parse("(not p)", wpl.signature);
  bm.domain = {p, np};
  bm.assignment[p] = false;
  bm.assignment[np] = false;
  Model out = apply_model_map(f, bm, {});
  const auto& cm = std::get<MatrixModel>(out);
  CHECK(cm.valuation.at("p") == 0);
  CHECK(matrix_designated(cat().logic("CPL_conn"), cm, np));

  // telltale valuation from the lifted relation
  ModelMap fe = cat().model_map("fE");
  RelatednessModel rm;
  rm.valuation = {{"p", true}, {"q", false}};
  rm.related = {{"p", "p"}, {"q", "q"}};
  FormulaSet ctx{parse("(and (-> p q) d{p,q})", cat().logic("CPL").signature)};
  auto fem = std::get<MatrixModel>(apply_model_map(fe, rm, ctx));
  CHECK(fem.valuation.at("d{p,q}") == 0);
  CHECK(fem.valuation.at("p") == 1);

  // closure assignment read off telltales, guarded by the encoding set
  ModelMap fp = cat().model_map("fPrime");
  Formula r = parse("r", wpl.signature);
  Formula nr = parse("(not r)", wpl.signature);
  fp.closure = {r, nr};
  fp.guard = mossakowski_delta(fp.closure, cat().logic("CPL").signature);
  MatrixModel good;
  good.valuation = {{"p{r}", 1}, {"p{(not r)}", 0}};
  auto wm = std::get<BivaluationModel>(apply_model_map(fp, good, {}));
  CHECK(wm.assignment.at(r) == true);
  CHECK(wm.assignment.at(nr) == false);
  MatrixModel bad;
  bad.valuation = {{"p{r}", 1}, {"p{(not r)}", 1}};
  CHECK_THROWS_AS(apply_model_map(fp, bad, {}), GuardViolation);

  // worlds survive, formulas become telltale atoms valued by forcing
  ModelMap ft = cat().model_map("fT");
  KripkeModel km;
  km.world_count = 2;
  km.access = {{false, true}, {false, false}};
  km.valuation["p"] = {false, true};
  km.point = 0;
  FormulaSet kctx{Formula::indexed("p", "(box p)")};
  auto am = std::get<KripkeModel>(apply_model_map(ft, km, kctx));
  CHECK(am.valuation.at("p{(box p)}") == std::vector<bool>{true, true});
}
