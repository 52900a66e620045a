#include "doctest.h"
#include "trex/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace trex;

namespace {

SignatureSpec cpl_sig() {
  SignatureSpec s;
  s.name = "CPL";
  s.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}, {"<->", 2}};
  s.has_top = true;
  s.has_bot = true;
  return s;
}

SignatureSpec s4_sig() {
  SignatureSpec s;
  s.name = "S4";
  s.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}, {"box", 1}, {"dia", 1}};
  return s;
}

SignatureSpec fol_sig() {
  SignatureSpec s;
  s.name = "FOL";
  s.connectives = {{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}};
  s.fo = FoPart{{{"P", 1}, {"Q", 1}}, "R", {"x", "y"}};
  return s;
}

// Independent recursive count of formulas with <= max_nodes nodes: plain
// size-indexed dynamic programming over the signature, written without
// reference to the enumerator.
long long count_formulas(const std::vector<std::pair<std::string, int>>& connectives,
                         int leaf_count, int max_nodes) {
  std::vector<long long> exact(max_nodes + 1, 0);
  exact[1] = leaf_count;
  for (int n = 2; n <= max_nodes; ++n) {
    for (const auto& [sym, arity] : connectives) {
      // sum over all arity-tuples of positive sizes summing to n-1
      std::vector<long long> ways(n, 0);  // ways[s]: tuples of current length with total s
      ways[0] = 1;
      for (int k = 0; k < arity; ++k) {
        std::vector<long long> next(n, 0);
        for (int s = 0; s < n; ++s) {
          if (!ways[s]) continue;
          for (int add = 1; s + add < n; ++add) next[s + add] += ways[s] * exact[add];
        }
        ways = std::move(next);
      }
      exact[n] += ways[n - 1];
    }
  }
  long long total = 0;
  for (int n = 1; n <= max_nodes; ++n) total += exact[n];
  return total;
}

}  // namespace

TEST_CASE("parse: basic prefix forms") {
  auto sig = cpl_sig();
  Formula f = parse("(-> p q)", sig);
  CHECK(f.kind() == FormulaKind::Apply);
  CHECK(f.symbol() == "->");
  CHECK(f.operands().size() == 2);
  CHECK(f.operands()[0].text() == "p");
  CHECK(f.operands()[1].text() == "q");

  auto s4 = s4_sig();
  Formula g = parse("(not (box p))", s4);
  CHECK(g.symbol() == "not");
  CHECK(g.operands()[0].symbol() == "box");
  CHECK(g.operands()[0].operands()[0].text() == "p");

  Formula h = parse("(and (-> p q) d{p,q})", sig);
  CHECK(h.symbol() == "and");
  CHECK(h.operands()[1].kind() == FormulaKind::IndexedAtom);
  CHECK(h.operands()[1].symbol() == "d");
  CHECK(h.operands()[1].key() == "p,q");
}

TEST_CASE("parse: errors carry positions") {
  auto sig = cpl_sig();
  CHECK_THROWS_AS(parse("(-> p", sig), ParseError);
  CHECK_THROWS_AS(parse("(nope p q)", sig), ParseError);
  CHECK_THROWS_AS(parse("(not p q)", sig), ParseError);   // arity mismatch
  CHECK_THROWS_AS(parse("(-> p q) r", sig), ParseError);  // trailing input
  CHECK_THROWS_AS(parse("(forall x p)", sig), ParseError);
  try {
    parse("(and p (nope q))", sig);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
}

TEST_CASE("render: canonical text round-trips") {
  auto sig = cpl_sig();
  CHECK(parse("(not p)", sig).text() == "(not p)");
  CHECK(Formula::indexed("d", "p,q").text() == "d{p,q}");

  auto fol = fol_sig();
  Formula f = Formula::quant(
      QuantKind::Forall, "y",
      Formula::apply("->", {Formula::pred("R", {"x", "y"}), Formula::pred("P", {"y"})}));
  CHECK(f.text() == "(forall y (-> (R x y) (P y)))");
  CHECK(parse(f.text(), fol) == f);
}

TEST_CASE("parse tolerates extra whitespace, render normalizes") {
  auto sig = cpl_sig();
  Formula f = parse("  (and   p\n (not q) )", sig);
  CHECK(f.text() == "(and p (not q))");
  CHECK(parse(f.text(), sig) == f);
}

TEST_CASE("substitute: placeholder replacement") {
  auto sig = cpl_sig();
  Formula p = Formula::atom("p");
  Formula q = Formula::atom("q");

  Template t1 = Template::parse("(and #1 #2)", sig);
  CHECK(t1.placeholder_count == 2);
  std::vector<Formula> args = {p, parse("(not q)", sig)};
  CHECK(substitute(t1, args).text() == "(and p (not q))");

  Template t2 = Template::parse("(-> #1 (-> #1 #2))", sig);
  std::vector<Formula> pq = {p, q};
  CHECK(substitute(t2, pq).text() == "(-> p (-> p q))");

  auto s4 = s4_sig();
  Template t3 = Template::parse("(box (-> #1 #2))", s4);
  CHECK(substitute(t3, pq).text() == "(box (-> p q))");

  std::vector<Formula> one = {p};
  CHECK_THROWS_AS(substitute(t1, one), Error);
}

TEST_CASE("subformula_closure: immediate subformulas, canonical order") {
  auto sig = cpl_sig();
  FormulaSet s1{parse("(-> p q)", sig)};
  auto c1 = subformula_closure(s1);
  CHECK(c1 == FormulaSet{parse("(-> p q)", sig), parse("p", sig), parse("q", sig)});

  auto c2 = subformula_closure(parse("(not (not p))", sig));
  CHECK(c2 == FormulaSet{parse("(not (not p))", sig), parse("(not p)", sig), parse("p", sig)});

  CHECK(subformula_closure(FormulaSet{}).empty());

  // canonical order: size, then text
  std::vector<Formula> in_order(c2.begin(), c2.end());
  CHECK(in_order.front().text() == "p");
  CHECK(in_order.back().text() == "(not (not p))");
}

TEST_CASE("enumerate_formulas: order and exact counts") {
  SignatureSpec neg_only;
  neg_only.name = "neg";
  neg_only.connectives = {{"not", 1}};

  auto stream = enumerate_formulas(neg_only, {Formula::atom("p")}, 2);
  REQUIRE(stream.size() == 2);
  CHECK(stream[0].text() == "p");
  CHECK(stream[1].text() == "(not p)");

  // unary towers: p, (not p), (not (not p))
  auto towers = enumerate_formulas(neg_only, {Formula::atom("p")}, 3);
  CHECK(towers.size() == count_formulas({{"not", 1}}, 1, 3));
  CHECK(towers.size() == 3);

  SignatureSpec na;
  na.name = "na";
  na.connectives = {{"not", 1}, {"and", 2}};
  auto fs = enumerate_formulas(na, {Formula::atom("p"), Formula::atom("q")}, 3);
  CHECK(fs.size() == count_formulas({{"not", 1}, {"and", 2}}, 2, 3));
  CHECK(fs.size() == 10);
}

TEST_CASE("enumerate_formulas: no duplicates, exhaustive, canonical order") {
  auto sig = cpl_sig();
  std::vector<Formula> atoms = {Formula::atom("p"), Formula::atom("q")};
  auto all = enumerate_formulas(sig, atoms, 5);

  std::set<std::string> seen;
  for (const auto& f : all) CHECK(seen.insert(f.text()).second);

  // exhaustive: matches the independent recursive count (+2 constants)
  long long expected =
      count_formulas({{"not", 1}, {"and", 2}, {"or", 2}, {"->", 2}, {"<->", 2}}, 4, 5);
  CHECK(static_cast<long long>(all.size()) == expected);

  for (std::size_t i = 1; i < all.size(); ++i) {
    bool ordered = all[i - 1].node_count() < all[i].node_count() ||
                   (all[i - 1].node_count() == all[i].node_count() &&
                    all[i - 1].text() < all[i].text());
    CHECK(ordered);
  }
}

TEST_CASE("parse/render identity over enumerated formulas") {
  auto sig = s4_sig();
  auto all = enumerate_formulas(sig, {Formula::atom("p"), Formula::atom("q")}, 5);
  for (const auto& f : all) {
    CHECK(parse(f.text(), sig) == f);
    CHECK(parse(f.text(), sig).node_count() == f.node_count());
  }
}

TEST_CASE("indexed_atom: canonical keys and injectivity") {
  auto sig = cpl_sig();
  Formula p = parse("p", sig);
  Formula q = parse("q", sig);

  std::vector<Formula> pq = {p, q};
  CHECK(indexed_atom("d", pq).text() == "d{p,q}");

  std::vector<Formula> nr = {parse("(not r)", sig)};
  CHECK(indexed_atom("p", nr).text() == "p{(not r)}");

  std::vector<Formula> qp = {q, p};
  CHECK(indexed_atom("d", pq) == indexed_atom("d", pq));
  CHECK(indexed_atom("d", pq) != indexed_atom("d", qp));

  // injectivity over all pairs from a closure
  auto closure = subformula_closure(FormulaSet{
      parse("(and (or p q) (not (-> p (and q r))))", sig), parse("(not (not p))", sig)});
  REQUIRE(closure.size() <= 20);
  std::vector<Formula> elems(closure.begin(), closure.end());
  std::map<std::string, std::pair<const Formula*, const Formula*>> keys;
  for (const auto& a : elems)
    for (const auto& b : elems) {
      std::vector<Formula> ops = {a, b};
      auto ia = indexed_atom("d", ops);
      auto [it, inserted] = keys.emplace(ia.text(), std::make_pair(&a, &b));
      if (!inserted) CHECK((*it->second.first == a && *it->second.second == b));
    }
}

TEST_CASE("indexed atoms with nested keys round-trip") {
  auto sig = cpl_sig();
  std::vector<Formula> inner = {parse("p", sig), parse("q", sig)};
  Formula d = indexed_atom("d", inner);
  std::vector<Formula> outer = {d, parse("(not r)", sig)};
  Formula e = indexed_atom("e", outer);
  CHECK(e.text() == "e{d{p,q},(not r)}");
  CHECK(parse(e.text(), sig) == e);
  auto parts = split_indexed_key(e.key());
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == "d{p,q}");
  CHECK(parts[1] == "(not r)");
}

TEST_CASE("signature invariants") {
  SignatureSpec bad;
  bad.name = "bad";
  bad.connectives = {{"not", 1}, {"not", 2}};
  CHECK_THROWS_AS(bad.check(), Error);

  SignatureSpec zero;
  zero.name = "zero";
  zero.connectives = {{"f", 0}};
  CHECK_THROWS_AS(zero.check(), Error);

  CHECK_NOTHROW(cpl_sig().check());
  CHECK_NOTHROW(fol_sig().check());
}

TEST_CASE("rename_variables touches only variable positions") {
  auto fol = fol_sig();
  Formula f = parse("(forall y (-> (R x y) (P y)))", fol);
  Formula g = rename_variables(f, {{"x", "y"}, {"y", "x"}});
  CHECK(g.text() == "(forall x (-> (R y x) (P x)))");
}
