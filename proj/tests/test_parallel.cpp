#include "doctest.h"
#include "trex/parallel.hpp"

#include <random>
#include <vector>

using namespace trex;

TEST_CASE("first_index: parallel equals the serial reference") {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 1 + rng() % 200000;
    double density = (round % 5 == 0) ? 0.0 : 1.0 / (1 << (rng() % 12));
    std::vector<char> hits(n, 0);
    std::bernoulli_distribution coin(density);
    for (auto& h : hits) h = coin(rng) ? 1 : 0;
    auto pred = [&](std::size_t i) { return hits[i] != 0; };
    auto serial = first_index_serial(n, pred);
    auto parallel = first_index(n, pred, ExecMode::Parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("first_index: schedule independence across worker counts") {
  const std::size_t n = 300000;
  std::vector<char> hits(n, 0);
  hits[131071] = 1;
  hits[131072] = 1;
  hits[299999] = 1;
  auto pred = [&](std::size_t i) { return hits[i] != 0; };
  int saved = worker_count();
  std::vector<std::optional<std::size_t>> results;
  for (int workers : {1, 2, 3, 8}) {
    set_worker_count(workers);
    results.push_back(first_index(n, pred, ExecMode::Parallel));
  }
  set_worker_count(saved);
  for (const auto& r : results) CHECK(r == std::optional<std::size_t>(131071));
}

TEST_CASE("first_index: empty and miss cases") {
  auto never = [](std::size_t) { return false; };
  CHECK(first_index(0, never) == std::nullopt);
  CHECK(first_index(100000, never) == std::nullopt);
  auto always = [](std::size_t) { return true; };
  CHECK(first_index(100000, always) == std::optional<std::size_t>(0));
}

TEST_CASE("count_indices agrees between modes") {
  const std::size_t n = 100000;
  auto pred = [](std::size_t i) { return i % 7 == 3; };
  CHECK(count_indices(n, pred, ExecMode::Serial) == count_indices(n, pred, ExecMode::Parallel));
}
