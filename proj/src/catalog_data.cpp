#include "trex/catalog.hpp"

namespace trex {

// The shipped catalog. Same format as user catalog files; see README.
const char* builtin_catalog_text() {
  return R"CAT(
// ---------------------------------------------------------------- logics

logic CPL
  engine matrix
  signature not 1, and 2, or 2, -> 2, <-> 2
  constants top bot
  values 0 1
  designated 1
  table not : 1 0
  table and : 0 0 / 0 1
  table or  : 0 1 / 1 1
  table ->  : 1 1 / 0 1
  table <-> : 1 0 / 0 1
  const-values 1 0
end

logic CPL_not_and
  engine matrix
  signature not 1, and 2
  values 0 1
  designated 1
  table not : 1 0
  table and : 0 0 / 0 1
  node CPL
end

logic CPL_not_or
  engine matrix
  signature not 1, or 2
  values 0 1
  designated 1
  table not : 1 0
  table or : 0 1 / 1 1
  node CPL
end

logic CPL_imp
  engine matrix
  signature -> 2
  values 0 1
  designated 1
  table -> : 1 1 / 0 1
  node CPL
end

logic CPL_not_imp
  engine matrix
  signature not 1, -> 2
  values 0 1
  designated 1
  table not : 1 0
  table ->  : 1 1 / 0 1
  node CPL
end

// the standard connective set; carries a syntactic first-order part so the
// Gentzen clauses can be written out in full
logic CPL_std
  engine matrix
  signature not 1, and 2, or 2, -> 2
  constants top bot
  fo-part preds P 1, Q 1 rel R vars x y
  values 0 1
  designated 1
  table not : 1 0
  table and : 0 0 / 0 1
  table or  : 0 1 / 1 1
  table ->  : 1 1 / 0 1
  const-values 1 0
  node CPL
end

logic CPL_conn
  engine matrix
  signature not 1, and 2, or 2, -> 2
  values 0 1
  designated 1
  table not : 1 0
  table and : 0 0 / 0 1
  table or  : 0 1 / 1 1
  table ->  : 1 1 / 0 1
  node CPL
end

logic L3
  engine matrix
  signature not 1, -> 2
  values 0 1/2 1
  designated 1
  table not : 1 1/2 0
  table ->  : 1 1 1 / 1/2 1 1 / 0 1/2 1
end

logic WPL
  engine bivaluation constraint wpl-half-negation
  signature not 1, and 2, or 2, -> 2
  consequence theoremhood-only
end

logic R
  engine relatedness
  signature not 1, and 2, -> 2
end

logic K
  engine kripke frame K
  signature not 1, and 2, or 2, -> 2, box 1, dia 1
  constants top bot
end

logic S4
  engine kripke frame S4
  signature not 1, and 2, or 2, -> 2, box 1, dia 1
  constants top bot
  fo-part preds P 1, Q 1 rel R vars x y
end

logic Grz
  engine kripke frame Grz
  signature not 1, and 2, or 2, -> 2, box 1, dia 1
  constants top bot
end

logic Grz_frag
  engine kripke frame Grz
  signature not 1, and 2, -> 2, box 1
  node Grz
end

logic IPL
  engine kripke frame IPL
  signature not 1, and 2, or 2, -> 2
  constants top bot
  fo-part preds P 1, Q 1 rel R vars x y
end

logic IPL_pos
  engine kripke frame IPL
  signature and 2, or 2, -> 2
  constants bot
  node IPL
end

// Johansson-style semantics: falsum is the unconstrained persistent atom
// "bot", so ex falso is not validated
logic Minimal
  engine kripke frame IPL
  signature and 2, or 2, -> 2
  falsum-atom
end

logic AtomOnly
  engine kripke frame K
  signature
end

logic Trivial
  engine matrix
  signature not 1, and 2, or 2, -> 2, <-> 2
  constants top bot
  values t
  designated t
  table not : t
  table and : t
  table or  : t
  table ->  : t
  table <-> : t
  const-values t t
end

logic Trivial_small
  engine matrix
  signature not 1, and 2
  values t
  designated t
  table not : t
  table and : t
  node Trivial
end

logic ToyPT
  engine explicit
  constants top
  universe p top
  axiom |- top
end

logic ToyPQT
  engine explicit
  constants top
  universe p q top
  axiom |- top
end

logic FOL
  engine fo
  signature not 1, and 2, or 2, -> 2
  constants top bot
  fo-part preds P 1, Q 1 rel R vars x y
  decidable unknown
end

// ----------------------------------------------------------- translations

translation Tl
  desc Wojcicki, classical {not,->} into three-valued Lukasiewicz
  from CPL_not_imp to L3
  main T
  translator T
    atom identity
    clause not => (-> #1 (not #1)) | via T 0
    clause ->  => (-> #1 (-> #1 #2)) | via T 0 | via T 1
  end
  expect-shape compositional definitional grc
  expect-gate gg pass
end

translation Tc
  desc Gentzen, classical into intuitionistic logic; the negation clause is
  desc literal because not is primitive here
  from CPL_std to IPL
  main T
  translator T
    atom template (not (not #1))
    pred template (not (not #1))
    clause or  => (not (and (not #1) (not #2))) | via T 0 | via T 1
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
    clause ->  => (-> #1 #2) | via T 0 | via T 1
    clause exists => (not (forall @v (not #1))) | via T 0
  end
  expect-shape compositional parameter-free grc
  expect-gate gg pass
end

translation MossT
  desc classical into the half-negation logic
  from CPL_conn to WPL
  main T
  translator T
    atom identity
    clause not => (-> #1 (not #1)) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
    clause ->  => (-> #1 #2) | via T 0 | via T 1
  end
  expect-shape compositional definitional grc
  expect-gate gg pass
end

translation Tg
  desc Godel, intuitionistic logic into S4
  from IPL to S4
  main T
  translator T
    atom template (box #1)
    clause not => (box (not #1)) | via T 0
    clause ->  => (box (-> #1 #2)) | via T 0 | via T 1
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
  end
  expect-shape compositional parameter-free grc
  expect-gate gg pass
end

translation Ts
  desc Godel, first-order flavor with boxed predicates and quantifier clause
  from IPL to S4
  main T
  translator T
    atom template (box #1)
    pred template (box #1)
    clause not => (box (not #1)) | via T 0
    clause ->  => (box (-> #1 #2)) | via T 0 | via T 1
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
    clause forall => (box (forall @v #1)) | via T 0
  end
  expect-shape compositional parameter-free grc
end

translation Tm1
  desc Prawitz-Malmnas, intuitionistic into minimal logic; falsum becomes
  desc the plain atom bot of the target
  from IPL_pos to Minimal
  main T
  translator T
    atom template (or #1 bot)
    clause and => (or (and #1 #2) bot) | via T 0 | via T 1
    clause or  => (or (or #1 #2) bot) | via T 0 | via T 1
    clause ->  => (or (-> #1 #2) bot) | via T 0 | via T 1
    clause bot => bot
  end
  expect-shape compositional not-parameter-free grc
  expect-gate gg pass
end

translation DemriGore
  desc Grz into S4 through two mutually recursive translators
  from Grz_frag to S4
  main plus
  translator plus
    atom identity
    clause box => (box (-> (box (-> #1 (box #2))) #3)) | via plus 0 | via minus 0 | via plus 0
    clause not => (not #1) | via minus 0
    clause ->  => (-> #1 #2) | via minus 0 | via plus 1
    clause and => (and #1 #2) | via plus 0 | via plus 1
  end
  translator minus
    atom identity
    clause box => (box #1) | via minus 0
    clause not => (not #1) | via plus 0
    clause ->  => (-> #1 #2) | via plus 0 | via minus 1
    clause and => (and #1 #2) | via minus 0 | via minus 1
  end
  expect-shape gr not-compositional not-grc two-translators
  // under the desk (local) consequence Grz satisfies the plain deduction
  // theorem, so the conditional clause would have to be compositional
  expect-gate gg fail
end

translation Tx
  desc standard translation of modal logic into two-variable first-order logic
  from K to FOL
  main T
  context x y
  translator T
    atom pred-lift
    clause box => (forall @next (-> (R @cur @next) #1)) | via T 0 shift
    clause dia => (exists @next (and (R @cur @next) #1)) | via T 0 shift
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
    clause ->  => (-> #1 #2) | via T 0 | via T 1
  end
  expect-shape gr context-family not-compositional grc
  expect-gate gg pass
end

translation TE
  desc Epstein, relatedness logic into classical logic with telltale atoms
  from R to CPL
  main T
  declares-model-maps
  translator T
    atom identity
    clause ->  => (and (-> #1 #2) #3) | via T 0 | via T 1 | idx d 0 1
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
  end
  expect-shape gr not-grc not-compositional
  expect-gate g pass
  expect-gate gg fail
end

translation Tbh
  desc Balbiani-Herzig fragment; boxes translate by context
  from K to K
  main T
  fragment
  translator T
    atom identity
    clause not box !atoms => (not (box #1)) | via T 0
    clause box !atoms => (box (-> (box #1) #2)) | via T 0 | via T 0
  end
  expect-shape gr composite-keys not-compositional
end

translation Tprime
  desc every formula onto its own propositional telltale
  from WPL to CPL
  declares-model-maps
  opaque index p
  expect-shape opaque
  expect-gate gg fail
end

translation Glivenko
  desc double negation in front of the whole formula
  from CPL_std to IPL
  opaque dneg
  expect-shape opaque
  expect-gate gg fail
end

translation Tt
  desc Kuijer, possible-world formulas onto bare telltale atoms
  from K to AtomOnly
  declares-model-maps
  opaque index p
  expect-shape opaque
  expect-gate gg fail
end

translation TrivialConst
  desc everything onto one fixed validity
  from Trivial to CPL
  opaque const (or p (not p))
  expect-shape opaque
  expect-gate gg fail
end

translation TrivialEnum
  desc injective variant, the i-th formula onto the i-th validity
  from Trivial_small to CPL
  opaque enum p q max 7
  expect-shape opaque
  expect-gate gg fail
end

translation IdNaFull
  desc sublanguage inclusion of {not,and} into full classical logic
  from CPL_not_and to CPL
  main T
  translator T
    atom identity
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
  end
  expect-shape compositional definitional grc
  expect-gate gg pass
end

translation IdTrivial
  desc literal identity into the trivial logic; fails back-and-forth
  from CPL to Trivial
  main T
  translator T
    atom identity
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
    clause ->  => (-> #1 #2) | via T 0 | via T 1
    clause <-> => (<-> #1 #2) | via T 0 | via T 1
  end
  expect-shape compositional definitional grc
  expect-gate gg fail
end

translation IdTrivialTrivial
  desc identity on the trivial logic
  from Trivial to Trivial
  main T
  translator T
    atom identity
    clause not => (not #1) | via T 0
    clause and => (and #1 #2) | via T 0 | via T 1
    clause or  => (or #1 #2) | via T 0 | via T 1
    clause ->  => (-> #1 #2) | via T 0 | via T 1
    clause <-> => (<-> #1 #2) | via T 0 | via T 1
  end
  expect-gate gg pass
end

// ------------------------------------------------------------- model maps

map fWpl
  from CPL_conn to WPL
  direction backward
  transform wpl-to-cpl
  model-based
end

map fPrime
  from WPL to CPL
  direction backward
  transform cpl-to-wpl
  base p
  model-based
end

map fE
  from R to CPL
  direction forward
  transform epstein
  base d
  model-based
end

map fT
  from K to AtomOnly
  direction forward
  transform kuijer
  base p
  model-based
end

map fTrivial
  from Trivial to CPL
  direction backward
  transform trivial
  model-based
end

// --------------------------------------------------------- counterexamples

counterexample trivial-sublogic
  kind gv
  translation TrivialConst
  map fTrivial
  theta (or p (not p))
  expect gv pass
  expect gg fail
  note one fixed validity absorbs the whole trivial logic
end

counterexample injective-variant
  kind gv
  translation TrivialEnum
  map fTrivial
  theta (or p (not p))
  expect gv pass
  expect gg fail
  note injectivity does not help, validities are plentiful
end

counterexample kuijer-trivial
  kind truth-preservation
  translation Tt
  map fT
  expect truth-preservation pass
  expect g fail
  expect gg fail
  note truth preservation alone is almost free
end

counterexample wpl-into-cpl
  kind gv
  translation Tprime
  map fPrime
  theta @delta
  expect gv pass
  expect gg fail
  note the encoding set smuggles the source semantics into the telltales
end

// ----------------------------------------------------------------- corpus

corpus
  CPL valid (or p (not p))
  CPL valid (-> (not (not p)) p)
  CPL valid (-> (-> (-> p q) p) p)
  CPL invalid p
  CPL invalid (-> p q)
  IPL invalid (or p (not p))
  IPL invalid (-> (not (not p)) p)
  IPL invalid (-> (-> (-> p q) p) p)
  IPL valid (-> p (not (not p)))
  IPL valid (-> (and p q) p)
  IPL valid (-> bot p)
  S4 valid (-> (box p) p)
  S4 valid (-> (box p) (box (box p)))
  S4 valid (-> (box (-> p q)) (-> (box p) (box q)))
  S4 invalid (or (box p) (box (not p)))
  S4 invalid (-> (box (-> (box (-> p (box p))) p)) p)
  S4 invalid (-> p (box (dia p)))
  Grz valid (-> (box (-> (box (-> p (box p))) p)) p)
  Grz valid (-> (box p) p)
  Grz invalid (or (box p) (box (not p)))
  K valid (-> (box (-> p q)) (-> (box p) (box q)))
  K valid (box top)
  K invalid (-> (box p) p)
  K invalid (-> (box p) (dia p))
end
)CAT";
}

}  // namespace trex
