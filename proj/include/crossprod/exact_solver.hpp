#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crossprod/graph.hpp"

namespace crossprod {

// One crossing per pair of independent edges (edge indices, first < second).
// edge_orders[e] gives the partners of e in the order met walking from
// edge(e).u to edge(e).v; present exactly for edges crossed at least twice.
struct CrossingConfig {
  std::vector<std::pair<int, int>> pairs;
  std::map<int, std::vector<int>> edge_orders;

  std::size_t size() const { return pairs.size(); }
  friend bool operator==(const CrossingConfig&, const CrossingConfig&) = default;
  friend auto operator<=>(const CrossingConfig&, const CrossingConfig&) = default;
};

// Throws GraphError when a pair is adjacent, repeated, or edge_orders does
// not match the pairs.
void validate_config(const Graph& g, const CrossingConfig& c);

// Crossing vertex of pairs[k] is g.order()+k.
Graph build_planarization(const Graph& g, const CrossingConfig& c);

struct ExactBudget {
  std::uint64_t max_configs = 10'000'000;
  double max_seconds = 300.0;
  unsigned threads = 1;
  // Skip levels below |E| - 3|V| + 6 (planar edge bound after removing one
  // edge per crossing). Off by default.
  bool euler_skip = false;
};

enum class Decision { yes, no, budget_exhausted };
const char* to_string(Decision d);

struct DecideResult {
  Decision decision = Decision::no;
  std::optional<CrossingConfig> certificate;
  std::uint64_t configs_tested = 0;
  double seconds = 0.0;
};

DecideResult decide_cr_at_most(const Graph& g, int k, const ExactBudget& budget = {});

struct ExactResult {
  bool exact = false;      // false: only cr >= k is known
  int k = 0;
  bool budget_exhausted = false;
  std::optional<CrossingConfig> certificate;
  std::uint64_t configs_tested = 0;
  double seconds = 0.0;
};

ExactResult compute_crossing_number_exact(const Graph& g, int k_max, const ExactBudget& budget = {});

// Independent edge pairs in lexicographic order.
std::vector<std::pair<int, int>> independent_pairs(const Graph& g);

}  // namespace crossprod
