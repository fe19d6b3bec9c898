#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossprod/atlas.hpp"
#include "crossprod/graph.hpp"
#include "crossprod/quasipoly.hpp"
#include "crossprod/results_db.hpp"
#include "json.hpp"

namespace crossprod {

// Upper bound known outside the db: a verified construction (formula) or a
// heuristic witness (point values).
struct UpperExtra {
  std::string graph_key;
  Partner partner = Partner::path;
  std::string kind;  // "generator" or "heuristic"
  std::optional<QuasiPoly2> formula;
  std::vector<std::pair<int, std::int64_t>> points;
  std::string note;
};

struct BoundSource {
  std::string kind;        // "db", "generator", "heuristic", "trivial"
  std::string via;         // atlas key of the sub/supergraph carrying the value
  std::string row;         // db row label, or the extra's note
  std::string citation;
  std::vector<int> mapping;  // containment witness, query vertex -> via vertex or back
  std::optional<QuasiPoly2> formula;
  std::vector<std::pair<int, std::int64_t>> points;

  std::optional<std::int64_t> value_at(int n) const;
};

struct BoundReport {
  std::string graph_key;  // empty when the query is not an atlas graph
  Partner partner = Partner::path;
  std::vector<BoundSource> lower_sources, upper_sources;

  // Tail behaviour: past tail_from the winning source per parity is fixed.
  std::int64_t tail_from = 1;
  std::optional<QuasiPoly2> lower_tail, upper_tail;
  std::pair<int, int> lower_best{-1, -1}, upper_best{-1, -1};  // source index per parity (even, odd)

  bool exact = false;
  std::int64_t n0 = 0;     // exact on [n0, inf) when exact
  QuasiPoly2 formula;      // the common value there
  // n below n0 (or anywhere, when not exact) where the bounds meet.
  std::vector<std::pair<int, std::int64_t>> exact_points;

  std::optional<std::int64_t> lower_at(int n) const;
  std::optional<std::int64_t> upper_at(int n) const;
  std::string verdict() const;  // "exact 4n for n >= 6" or "gap"
  std::string proof_sketch() const;
  nlohmann::ordered_json to_json() const;
};

// Sources are scanned in atlas key order, so ties and provenance are stable.
BoundReport infer_bounds(const Graph& g, Partner partner, const ResultsDb& db, const Atlas& atlas,
                         const std::vector<UpperExtra>& extras = {}, const std::string& graph_key = {});
BoundReport infer_bounds(const std::string& key, Partner partner, const ResultsDb& db, const Atlas& atlas,
                         const std::vector<UpperExtra>& extras = {});

struct RederiveCheck {
  std::string family;  // "6.90/cycle"
  std::string expected;
  std::string observed;
  bool pass = false;
  BoundReport report;
};

// Withholds the new rows, then re-derives each of them from the table rows
// and the supplied generator bounds.
std::vector<RederiveCheck> rederive_new_results(const ResultsDb& db, const Atlas& atlas,
                                                   const std::vector<UpperExtra>& generator_bounds);

}  // namespace crossprod
