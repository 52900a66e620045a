#include "doctest.h"
#include "logic_fixtures.hpp"
#include "trex/semantics.hpp"

#include <algorithm>
#include <set>

using namespace trex;

namespace {

// Independent oracle for the Lukasiewicz operations, taken from the
// standard arithmetic definitions over {0, 1/2, 1} scaled to {0, 1, 2}.
int lk_not(int x) { return 2 - x; }
int lk_imp(int x, int y) { return std::min(2, 2 - x + y); }

KripkeModel two_chain_ipl(bool p_at_root, bool p_at_top) {
  KripkeModel m;
  m.world_count = 2;
  m.access = {{true, true}, {false, true}};
  m.valuation["p"] = {p_at_root, p_at_top};
  m.point = 0;
  return m;
}

}  // namespace

TEST_CASE("enumerate_models: matrix valuations are exhaustive") {
  auto cpl = fixtures::cpl();
  FormulaSet ctx{parse("p", cpl.signature), parse("q", cpl.signature)};
  auto space = enumerate_models(cpl, ctx, 1);
  CHECK(space.size() == 4);

  auto l3 = fixtures::l3();
  auto space3 = enumerate_models(l3, FormulaSet{parse("p", l3.signature)}, 1);
  CHECK(space3.size() == 3);
}

TEST_CASE("enumerate_models: WPL assignments on the closure of (not p)") {
  auto wpl = fixtures::wpl();
  Formula np = parse("(not p)", wpl.signature);
  auto space = enumerate_models(wpl, FormulaSet{np}, 1);

  // independent oracle: brute-force all 4 assignments over {p, (not p)},
  // keep those where truth of p forces falsity of (not p)
  std::set<std::pair<bool, bool>> expected;
  for (int pv = 0; pv <= 1; ++pv)
    for (int nv = 0; nv <= 1; ++nv)
      if (!(pv == 1 && nv == 1)) expected.insert({pv == 1, nv == 1});
  REQUIRE(expected.size() == 3);

  std::set<std::pair<bool, bool>> got;
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto m = std::get<BivaluationModel>(space.at(i));
    got.insert({m.assignment.at(parse("p", wpl.signature)), m.assignment.at(np)});
  }
  CHECK(got == expected);
}

TEST_CASE("matrix evaluation against the Lukasiewicz arithmetic oracle") {
  auto l3 = fixtures::l3();
  Formula p = parse("p", l3.signature);
  Formula q = parse("q", l3.signature);

  for (int pv = 0; pv < 3; ++pv)
    for (int qv = 0; qv < 3; ++qv) {
      MatrixModel m;
      m.valuation = {{"p", pv}, {"q", qv}};
      CHECK(matrix_value(l3, m, parse("(not p)", l3.signature)) == lk_not(pv));
      CHECK(matrix_value(l3, m, parse("(-> p q)", l3.signature)) == lk_imp(pv, qv));
      CHECK(matrix_value(l3, m, parse("(-> p (not p))", l3.signature)) == lk_imp(pv, lk_not(pv)));
    }

  // v(p) = 1/2 designates p -> not p
  MatrixModel half;
  half.valuation = {{"p", 1}};
  CHECK(matrix_value(l3, half, parse("(-> p (not p))", l3.signature)) == 2);
  CHECK(matrix_designated(l3, half, parse("(-> p (not p))", l3.signature)));
}

TEST_CASE("relatedness: arrow fails without a related pair") {
  auto r = fixtures::relatedness();
  RelatednessModel m;
  m.valuation = {{"p", false}, {"q", false}};
  m.related = {{"p", "p"}, {"q", "q"}};  // reflexive only
  // material implication holds (antecedent false) but R(p, q) fails
  CHECK_FALSE(relatedness_value(m, parse("(-> p q)", r.signature)));

  RelatednessModel m2 = m;
  m2.related.insert({"p", "q"});
  m2.related.insert({"q", "p"});
  CHECK(relatedness_value(m2, parse("(-> p q)", r.signature)));

  // lifted relation through shared atoms: reflexivity makes p -> p related
  CHECK(relatedness_value(m, parse("(-> p p)", r.signature)));
  CHECK(relatedness_value(m, parse("(-> (and p q) p)", r.signature)));
}

TEST_CASE("IPL forcing on the two-world chain") {
  auto ipl = fixtures::ipl();
  auto m = two_chain_ipl(false, true);
  Formula lem = parse("(or p (not p))", ipl.signature);
  CHECK_FALSE(kripke_forces(ipl, m, 0, lem));
  CHECK(kripke_forces(ipl, m, 1, lem));
  // persistence of compound formulas along access
  Formula notp = parse("(not p)", ipl.signature);
  CHECK_FALSE(kripke_forces(ipl, m, 0, notp));
}

TEST_CASE("consequence: classical excluded middle is exact") {
  auto cpl = fixtures::cpl();
  auto v = validity(cpl, parse("(or p (not p))", cpl.signature), 1);
  CHECK(v.status == VerdictStatus::ValidExact);
  CHECK_FALSE(v.witness_model.has_value());
}

TEST_CASE("consequence: Lukasiewicz contraction failure with canonical witness") {
  auto l3 = fixtures::l3();
  FormulaSet prem{parse("(-> p (-> p q))", l3.signature)};
  auto v = consequence(l3, prem, parse("(-> p q)", l3.signature), 1);
  REQUIRE(v.status == VerdictStatus::Refuted);
  REQUIRE(v.witness_model.has_value());
  auto m = std::get<MatrixModel>(*v.witness_model);
  CHECK(m.valuation.at("p") == 1);  // 1/2
  CHECK(m.valuation.at("q") == 0);
}

TEST_CASE("consequence: S4 refutes box p or box not p with a two-world model") {
  auto s4 = fixtures::s4();
  auto v = validity(s4, parse("(or (box p) (box (not p)))", s4.signature), 3);
  REQUIRE(v.status == VerdictStatus::Refuted);
  auto m = std::get<KripkeModel>(*v.witness_model);
  CHECK(m.world_count == 2);
  // witness frame is reflexive and transitive
  for (int w = 0; w < 2; ++w) CHECK(m.access[w][w]);
}

TEST_CASE("consequence: explicit toy logics") {
  auto toy = fixtures::toy("ToyPT", {"p"});
  toy.check();
  Formula p = Formula::atom("p");
  Formula top = Formula::constant(ConstKind::Top);
  CHECK(consequence(toy, FormulaSet{p}, p, 1).status == VerdictStatus::ValidExact);
  CHECK(consequence(toy, {}, top, 1).status == VerdictStatus::ValidExact);
  CHECK(consequence(toy, {}, p, 1).status == VerdictStatus::Refuted);
  CHECK(consequence(toy, FormulaSet{top}, p, 1).status == VerdictStatus::Refuted);
}

TEST_CASE("fol_evaluate: Tarskian clauses on a small structure") {
  SignatureSpec sig;
  sig.name = "FOL";
  sig.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  sig.fo = FoPart{{{"P", 1}}, "R", {"x", "y"}};

  FOStructure s;
  s.domain_size = 2;
  s.relation = {{false, true}, {false, false}};
  s.unary["P"] = {false, true};

  Formula all = parse("(forall y (-> (R x y) (P y)))", sig);
  CHECK(fol_evaluate(s, all, {{"x", 0}}));
  CHECK(fol_evaluate(s, all, {{"x", 1}}));  // vacuous
  Formula ex = parse("(exists y (and (R x y) (P y)))", sig);
  CHECK_FALSE(fol_evaluate(s, ex, {{"x", 1}}));
  CHECK(fol_evaluate(s, ex, {{"x", 0}}));
  CHECK_THROWS_AS(fol_evaluate(s, all, {}), Error);
}

TEST_CASE("kripke_to_structure") {
  KripkeModel one;
  one.world_count = 1;
  one.access = {{true}};
  one.valuation["p"] = {true};
  auto s1 = kripke_to_structure(one);
  CHECK(s1.domain_size == 1);
  CHECK(s1.relation[0][0]);
  CHECK(s1.unary.at("P") == std::vector<bool>{true});

  KripkeModel chain;
  chain.world_count = 2;
  chain.access = {{false, true}, {false, false}};
  chain.valuation["p"] = {false, false};
  auto s2 = kripke_to_structure(chain);
  CHECK(s2.relation[0][1]);
  CHECK_FALSE(s2.relation[1][0]);
  CHECK(s2.unary.at("P") == std::vector<bool>{false, false});
}

TEST_CASE("matrix: compiled evaluator agrees with the recursive reference") {
  auto cpl = fixtures::cpl();
  std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
  auto formulas = enumerate_formulas(cpl.signature, atoms, 5);
  FormulaSet ctx{atoms.begin(), atoms.end()};
  auto space = enumerate_models(cpl, ctx, 1);
  for (const auto& f : formulas) {
    MatrixEvaluator ev(cpl, f, space.atom_slots());
    for (std::size_t i = 0; i < space.size(); ++i) {
      std::vector<int> digits(space.atom_slots().size());
      space.matrix_digits_at(i, digits);
      auto m = std::get<MatrixModel>(space.at(i));
      CHECK(ev.value(digits) == matrix_value(cpl, m, f));
    }
  }
}

TEST_CASE("kripke: packed evaluator agrees with the recursive reference") {
  for (auto logic : {fixtures::s4(), fixtures::k(), fixtures::ipl()}) {
    std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
    bool modal = logic.signature.has_connective("box");
    auto formulas = enumerate_formulas(logic.signature, atoms, 4);
    FormulaSet ctx{atoms.begin(), atoms.end()};
    auto space = enumerate_models(logic, ctx, 2);
    // sample the space at a fixed stride to keep the product small
    std::size_t stride = std::max<std::size_t>(1, space.size() / 257);
    for (const auto& f : formulas) {
      if (!modal && (f.text().find("box") != std::string::npos)) continue;
      KripkeEvaluator ev(logic, f, space.atom_slots());
      for (std::size_t i = 0; i < space.size(); i += stride) {
        PackedKripke p = space.kripke_at(i);
        auto m = std::get<KripkeModel>(space.at(i));
        CHECK(ev.at_point(p) == kripke_forces(logic, m, m.point, f));
      }
    }
  }
}

TEST_CASE("fo: compiled evaluator agrees with fol_evaluate") {
  SignatureSpec sig;
  sig.name = "FOL";
  sig.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  sig.fo = FoPart{{{"P", 1}, {"Q", 1}}, "R", {"x", "y"}};

  std::vector<std::string> vars = {"x", "y"};
  std::vector<std::string> unary = {"P", "Q"};
  std::vector<Formula> fos = {
      parse("(forall y (-> (R x y) (P y)))", sig),
      parse("(exists y (and (R x y) (forall x (-> (R y x) (Q x)))))", sig),
      parse("(-> (P x) (exists y (R x y)))", sig),
  };

  auto k = fixtures::k();
  FormulaSet ctx{Formula::atom("p"), Formula::atom("q")};
  auto space = enumerate_models(k, ctx, 2);
  std::size_t stride = std::max<std::size_t>(1, space.size() / 101);
  for (const auto& f : fos) {
    FoEvaluator ev(f, vars, unary);
    for (std::size_t i = 0; i < space.size(); i += stride) {
      PackedKripke p = space.kripke_at(i);
      auto m = std::get<KripkeModel>(space.at(i));
      auto s = kripke_to_structure(m);
      PackedFO pf = structure_from_packed_kripke(p);
      for (int x = 0; x < p.n; ++x) {
        std::vector<int> vals = {x, 0};
        CHECK(ev.eval(pf, vals) == fol_evaluate(s, f, {{"x", x}, {"y", 0}}));
      }
    }
  }
}

TEST_CASE("IPL model spaces only hold persistent valuations") {
  auto ipl = fixtures::ipl();
  FormulaSet ctx{Formula::atom("p"), Formula::atom("q")};
  auto space = enumerate_models(ipl, ctx, 3);
  std::size_t stride = std::max<std::size_t>(1, space.size() / 401);
  for (std::size_t i = 0; i < space.size(); i += stride) {
    auto m = std::get<KripkeModel>(space.at(i));
    for (const auto& [atom, col] : m.valuation)
      for (int w = 0; w < m.world_count; ++w)
        for (int v = 0; v < m.world_count; ++v)
          if (m.access[w][v] && col[w]) CHECK(col[v]);
    // frames are posets
    for (int w = 0; w < m.world_count; ++w) CHECK(m.access[w][w]);
  }
}

TEST_CASE("kripke model space ordering puts smaller models first") {
  auto s4 = fixtures::s4();
  FormulaSet ctx{Formula::atom("p")};
  auto space = enumerate_models(s4, ctx, 3);
  int last_n = 0;
  std::size_t stride = std::max<std::size_t>(1, space.size() / 200);
  for (std::size_t i = 0; i < space.size(); i += stride) {
    auto m = std::get<KripkeModel>(space.at(i));
    CHECK(m.world_count >= last_n);
    last_n = std::max(last_n, m.world_count);
  }
}

TEST_CASE("explicit consequence invariants are enforced") {
  ExplicitConsequence bad;
  bad.universe = {Formula::atom("p")};
  CHECK_THROWS_AS(bad.check(), Error);  // not reflexive

  auto toy = fixtures::toy("ToyPQT", {"p", "q"});
  CHECK_NOTHROW(toy.check());
  const auto& rel = *toy.explicit_rel;
  CHECK(rel.derives({Formula::atom("p")}, Formula::atom("p")));
  CHECK_FALSE(rel.derives({Formula::atom("p")}, Formula::atom("q")));
}

TEST_CASE("bivaluation lookups outside the domain are errors") {
  auto wpl = fixtures::wpl();
  Formula np = parse("(not p)", wpl.signature);
  auto space = enumerate_models(wpl, FormulaSet{np}, 1);
  auto m = std::get<BivaluationModel>(space.at(0));
  CHECK_THROWS_AS(satisfies(wpl, m, parse("(and p p)", wpl.signature)), Error);
}
