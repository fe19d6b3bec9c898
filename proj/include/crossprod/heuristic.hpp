#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossprod/graph.hpp"
#include "json.hpp"

namespace crossprod {

// Dummy vertex sitting where base edges e1 < e2 cross; pos1/pos2 count the
// crossings met before it walking each edge from edge.u to edge.v.
struct DummyEntry {
  int dummy = 0;
  int e1 = 0, e2 = 0;
  int pos1 = 0, pos2 = 0;
  friend bool operator==(const DummyEntry&, const DummyEntry&) = default;
};

// Base vertices keep their ids in the planarization; dummies follow.
struct DrawingWitness {
  Graph base;
  int k = 0;
  Graph planarization;
  std::vector<DummyEntry> dummy_map;
};

struct HeuristicOptions {
  int restarts = 500;
  std::uint64_t seed = 0;
  // Stop after the first restart (in index order) reaching this count.
  std::optional<int> stop_at;
  int improvement_sweeps = 3;
  unsigned threads = 1;
};

DrawingWitness heuristic_minimize(const Graph& g, const HeuristicOptions& opt);
inline DrawingWitness heuristic_minimize(const Graph& g, int restarts, std::uint64_t seed) {
  HeuristicOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return heuristic_minimize(g, o);
}

enum class WitnessFault { none, nonplanar, vertex_count, bad_dummy_map, contraction_mismatch, dummy_degree };
const char* to_string(WitnessFault f);

struct WitnessCheck {
  bool ok = false;
  WitnessFault fault = WitnessFault::none;
  std::string detail;
  explicit operator bool() const { return ok; }
};

WitnessCheck verify_witness(const DrawingWitness& w);

nlohmann::ordered_json witness_to_json(const DrawingWitness& w);
DrawingWitness witness_from_json(const nlohmann::ordered_json& j);

// Counter-based generator: value i of stream (seed, stream).
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace crossprod
