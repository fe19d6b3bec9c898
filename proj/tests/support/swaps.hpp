#pragma once

// Atlas swap mutations for the consistency checks: every pair of 6-vertex
// entries named in a stated containment is exchanged, and the swap must be
// noticed by at least one detector.

#include <set>
#include <string>
#include <vector>

#include "crossprod/atlas.hpp"
#include "crossprod/families.hpp"
#include "crossprod/harness.hpp"

namespace swaps {

using namespace crossprod;

struct Outcome {
  AtlasKey a, b;
  bool relations = false;  // a containment or structure check fails
  bool templates = false;  // a family graph no longer matches its template
  bool db = false;         // a db row contradicts a drawing of the swapped graph
  bool detected() const { return relations || templates || db; }
  std::string name() const { return a.str() + "-" + b.str(); }
};

inline std::vector<AtlasKey> relation_keys() {
  std::set<AtlasKey> keys;
  for (const auto& r : stated_relations())
    for (auto [s, t] : r.pairs)
      for (AtlasKey k : {s, t})
        if (k.vertex_count == 6) keys.insert(k);
  return {keys.begin(), keys.end()};
}

// Rows of a or b only; the db detectors are only run when the cheap ones are blind.
inline ResultsDb rows_of(const ResultsDb& db, AtlasKey a, AtlasKey b) {
  ResultsDb out;
  for (const auto& r : db.rows)
    if (r.graph_key == a.str() || r.graph_key == b.str()) out.rows.push_back(r);
  return out;
}

inline Outcome probe(const Atlas& atlas, const ResultsDb& db, AtlasKey a, AtlasKey b, std::uint64_t seed = 1) {
  Outcome o{a, b};
  Atlas s = atlas.with_swapped(a, b);
  o.relations = !validate_atlas_relations(s).ok();
  for (const auto& t : check_family_templates(s)) o.templates |= !t.ok;
  if (o.relations || o.templates) return o;
  RunConfig cfg;
  cfg.seed = seed;
  Report rep;
  check_db_rows(s, rows_of(db, a, b), cfg, rep);
  o.db = rep.failures() > 0;
  return o;
}

inline std::vector<Outcome> probe_all(const Atlas& atlas, const ResultsDb& db) {
  auto keys = relation_keys();
  std::vector<Outcome> out;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) out.push_back(probe(atlas, db, keys[i], keys[j]));
  return out;
}

}  // namespace swaps
