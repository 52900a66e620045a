#include "doctest.h"
#include "translation_fixtures.hpp"
#include "trex/translation.hpp"

using namespace trex;

namespace {

std::string image(const ClauseSystem& cs, const std::string& text) {
  return apply_translation(cs, parse(text, cs.source.signature)).text();
}

}  // namespace

TEST_CASE("apply_translation: Wojcicki clauses") {
  auto tl = fixtures::tl();
  CHECK(image(tl, "(not p)") == "(-> p (not p))");
  CHECK(image(tl, "(-> p q)") == "(-> p (-> p q))");
  CHECK(image(tl, "p") == "p");
}

TEST_CASE("apply_translation: Godel clauses") {
  auto tg = fixtures::tg();
  CHECK(image(tg, "(or p (not p))") == "(or (box p) (box (not (box p))))");
  CHECK(image(tg, "(-> p q)") == "(box (-> (box p) (box q)))");
}

TEST_CASE("apply_translation: Epstein clauses produce telltale atoms") {
  auto te = fixtures::te();
  CHECK(image(te, "(-> p q)") == "(and (-> p q) d{p,q})");
  CHECK(image(te, "(-> p p)") == "(and (-> p p) d{p,p})");
  CHECK(image(te, "(not (and p q))") == "(not (and p q))");
  // nested arrows index the untranslated source operands
  CHECK(image(te, "(-> (-> p q) p)") == "(and (-> (and (-> p q) d{p,q}) p) d{(-> p q),p})");
}

TEST_CASE("apply_translation: Demri-Gore mutual recursion") {
  auto t = fixtures::tpm();
  CHECK(image(t, "(box p)") == "(box (-> (box (-> p (box p))) p))");
  CHECK(image(t, "(not (box p))") == "(not (box p))");
}

TEST_CASE("apply_translation: opaque rules") {
  auto tp = fixtures::tprime();
  CHECK(image(tp, "(not r)") == "p{(not r)}");
  CHECK(image(tp, "(and p q)") == "p{(and p q)}");
  auto gl = fixtures::glivenko();
  CHECK(image(gl, "(or p (not p))") == "(not (not (or p (not p))))");
}

TEST_CASE("apply_translation: uncovered connective raises") {
  auto te = fixtures::te();
  ClauseSystem frag = te;
  frag.fragment = true;
  frag.translators.at("T").clauses.pop_back();  // drop the and-clause
  Formula f = parse("(and p q)", frag.source.signature);
  CHECK_THROWS_AS(apply_translation(frag, f), Error);
}

TEST_CASE("operand ranges restrict clause application") {
  auto s4 = fixtures::s4();
  auto k = fixtures::k();
  ClauseSystem bh;
  bh.name = "Tbh";
  bh.source = k;
  bh.target = k;
  bh.main = "T";
  bh.fragment = true;
  Translator t;
  t.id = "T";
  t.clauses.push_back(fixtures::clause({"not", "box"}, "(not (box #1))", k.signature,
                                       {fixtures::via("T", 0)}, {OperandRange::AtomOnly}));
  t.clauses.push_back(fixtures::clause({"box"}, "(box (-> (box #1) #2))", k.signature,
                                       {fixtures::via("T", 0), fixtures::via("T", 0)},
                                       {OperandRange::AtomOnly}));
  bh.translators.emplace("T", std::move(t));
  bh.check();

  CHECK(apply_translation(bh, parse("(not (box p))", k.signature)).text() == "(not (box p))");
  CHECK(apply_translation(bh, parse("(box p)", k.signature)).text() == "(box (-> (box p) p))");
  CHECK_THROWS_AS(apply_translation(bh, parse("(box (and p q))", k.signature)), Error);
  (void)s4;
}

TEST_CASE("classify_shape: compositional translations") {
  auto shape = classify_shape(fixtures::tg());
  CHECK(shape.compositional());
  CHECK(shape.parameter_free);
  CHECK_FALSE(shape.atom_identity);
  CHECK(shape.general_recursive);
  CHECK(shape.gr_conditional_compositional);
  CHECK_FALSE(shape.definitional_shape());
  CHECK(shape.literal_connectives == std::set<std::string>{"and", "or"});

  auto tl_shape = classify_shape(fixtures::tl());
  CHECK(tl_shape.compositional());
  CHECK(tl_shape.atom_identity);
  CHECK(tl_shape.definitional_shape());
}

TEST_CASE("classify_shape: Epstein is general-recursive but not GR^C") {
  auto shape = classify_shape(fixtures::te());
  CHECK(shape.general_recursive);
  CHECK_FALSE(shape.gr_conditional_compositional);  // the arrow clause indexes
  CHECK_FALSE(shape.fixed_templates_only);
  CHECK_FALSE(shape.compositional());
}

TEST_CASE("classify_shape: opaque and multi-translator systems") {
  auto tp = classify_shape(fixtures::tprime());
  CHECK(tp.opaque);
  CHECK_FALSE(tp.general_recursive);

  auto pm = classify_shape(fixtures::tpm());
  CHECK(pm.general_recursive);
  CHECK_FALSE(pm.single_translator);
  CHECK_FALSE(pm.compositional());
  CHECK_FALSE(pm.gr_conditional_compositional);  // arrow routes through minus
  CHECK(pm.literal_connectives.count("and"));
}

TEST_CASE("compose_translations: fused system equals sequential application") {
  auto tc = fixtures::tc();
  auto tg = fixtures::tg();
  auto fused = compose_translations(tc, tg, CompositionMode::Weakened);
  CHECK(fused.composition_mode == "weakened");
  CHECK(fused.source.name == "CPL_std");
  CHECK(fused.target.name == "S4");

  Formula p = parse("p", tc.source.signature);
  CHECK(apply_translation(fused, p).text() == "(box (not (box (not (box p)))))");

  std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
  for (const auto& f : enumerate_formulas(tc.source.signature, atoms, 7)) {
    Formula seq = apply_translation(tg, apply_translation(tc, f));
    Formula one = apply_translation(fused, f);
    REQUIRE(one == seq);
  }
}

TEST_CASE("compose_translations: identity then Tl is Tl clause-for-clause") {
  auto tl = fixtures::tl();
  auto id = make_identity_translation("Id", fixtures::cpl_not_imp(), fixtures::cpl_not_imp());
  auto fused = compose_translations(id, tl, CompositionMode::Surjective);
  REQUIRE(fused.translators.size() == 1);
  const auto& ft = fused.translators.begin()->second;
  const auto& ot = tl.translators.at("T");
  REQUIRE(ft.clauses.size() == ot.clauses.size());
  for (const auto& oc : ot.clauses) {
    const Clause* fc = ft.find_clause(oc.key_text());
    REQUIRE(fc != nullptr);
    CHECK(fc->body.body == oc.body.body);
    REQUIRE(fc->plan.size() == oc.plan.size());
    for (std::size_t i = 0; i < oc.plan.size(); ++i) {
      CHECK(fc->plan[i].kind == oc.plan[i].kind);
      CHECK(fc->plan[i].operand == oc.plan[i].operand);
    }
  }
}

TEST_CASE("compose_translations: signature mismatch and opaque inputs") {
  auto tl = fixtures::tl();
  auto tg = fixtures::tg();
  CHECK_THROWS_AS(compose_translations(tl, tg, CompositionMode::Weakened), Error);
  auto gl = fixtures::glivenko();
  CHECK_THROWS_AS(compose_translations(gl, tg, CompositionMode::Weakened), Error);
}

TEST_CASE("compose_translations: indexing auxiliaries") {
  // the identity after TE keeps TE's index steps intact
  auto te = fixtures::te();
  auto id = make_identity_translation("IdCPL", fixtures::cpl(), fixtures::cpl());
  auto fused = compose_translations(te, id, CompositionMode::Weakened);
  Formula f = parse("(-> p q)", fused.source.signature);
  CHECK(apply_translation(fused, f).text() == "(and (-> p q) d{p,q})");

  // indexing in the outer system cannot be fused: the keys would have to
  // mention unresolved placeholders
  auto idr = make_identity_translation("IdR", fixtures::relatedness(), fixtures::relatedness());
  CHECK_THROWS_AS(compose_translations(idr, te, CompositionMode::Weakened), Error);
}

TEST_CASE("structural recursion keeps distinct-subformula growth linear") {
  // |closure(T(f))| <= C * |f| with C the largest template size of the system
  struct Case {
    ClauseSystem cs;
    int cap;
  };
  std::vector<Case> cases;
  cases.push_back({fixtures::tl(), 6});
  cases.push_back({fixtures::tg(), 6});
  cases.push_back({fixtures::te(), 7});
  for (const auto& [cs, cap] : cases) {
    std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
    for (const auto& f : enumerate_formulas(cs.source.signature, atoms, 8)) {
      auto img = apply_translation(cs, f);
      auto closure = subformula_closure(img);
      CHECK(static_cast<int>(closure.size()) <= cap * f.node_count());
    }
  }
}

TEST_CASE("invariant checks reject ill-formed systems") {
  auto tl = fixtures::tl();
  ClauseSystem broken = tl;
  broken.translators.at("T").clauses[0].plan.clear();  // unbound placeholder
  CHECK_THROWS_AS(broken.check(), Error);

  ClauseSystem uncovered = tl;
  uncovered.translators.at("T").clauses.pop_back();
  CHECK_THROWS_AS(uncovered.check(), Error);
  uncovered.fragment = true;
  CHECK_NOTHROW(uncovered.check());
}
