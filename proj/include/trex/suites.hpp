#pragma once

// Named verification suites shared by the command line tool and the
// acceptance harness. Each suite runs its checkers, records whether every
// expected outcome was met, and hands back the entries for the report.

#include <optional>

#include "trex/verify.hpp"

namespace trex {

struct SuiteResult {
  std::string name;
  std::vector<CheckEntry> entries;
  std::optional<Registry> registry;
  bool all_expected = true;
  std::vector<std::string> failures;  // human-readable expectation misses

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      all_expected = false;
      failures.push_back(what);
    }
  }
};

// checks of one catalog translation, judged against its declared gate
// expectations (all entries must hold when none are declared)
SuiteResult run_edge_suite(const Catalog& cat, const std::string& translation, const Bounds& b);

// the four over-generation reproductions plus the Epstein gate pair
SuiteResult run_counterexample_suite(const Catalog& cat, const Bounds& b);

// deduction theorems: classical exact, Lukasiewicz refuted with its
// witness family, the general template recovered by search
SuiteResult run_dt_suite(const Catalog& cat, const Bounds& b);

// presence and volatility of the proof-theoretic implication in the toys
SuiteResult run_connective_suite(const Catalog& cat, const Bounds& b);

// corpus statuses and translation-image consistency
SuiteResult run_corpus_suite(const Catalog& cat, int world_bound, const Bounds& b);

// registry over the catalog logics with the derived preorder
SuiteResult run_preorder_suite(const Catalog& cat, const Bounds& b);

// everything above, in a fixed order
SuiteResult run_full_suite(const Catalog& cat, const Bounds& b);

// classification flags of a system as a report entry
CheckEntry classification_entry(const ClauseSystem& t);

const std::vector<std::string>& preorder_nodes();

}  // namespace trex
