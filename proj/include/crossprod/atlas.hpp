#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossprod/graph.hpp"

namespace crossprod {

struct AtlasKey {
  int vertex_count = 0;
  int index = 0;

  std::string str() const { return std::to_string(vertex_count) + "." + std::to_string(index); }
  static std::optional<AtlasKey> parse(const std::string& s);
  friend bool operator==(const AtlasKey&, const AtlasKey&) = default;
  friend auto operator<=>(const AtlasKey&, const AtlasKey&) = default;
};

struct AtlasEntry {
  int vertex_count = 0;
  int harary_index = 0;
  Graph graph;
  AtlasKey key() const { return {vertex_count, harary_index}; }
};

class AtlasError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Atlas {
 public:
  Atlas() = default;
  explicit Atlas(std::vector<AtlasEntry> entries);

  const std::vector<AtlasEntry>& entries() const { return entries_; }
  const AtlasEntry* find(AtlasKey key) const;
  // Throws AtlasError when absent.
  const Graph& graph(AtlasKey key) const;
  const Graph& graph(const std::string& key) const;
  bool contains(AtlasKey key) const { return find(key) != nullptr; }

  // Copy with the graphs of a and b exchanged (mutation testing).
  Atlas with_swapped(AtlasKey a, AtlasKey b) const;
  Atlas restricted_to(int vertex_count) const;

 private:
  std::vector<AtlasEntry> entries_;
  std::map<AtlasKey, std::size_t> pos_;
};

// Every index the db rows, constructions and relations refer to.
const std::vector<AtlasKey>& required_atlas_keys();

// Lines "<k>.<i> <graph6>", '#' starts a comment. Errors name the line.
Atlas load_atlas(std::istream& in, bool require_complete = true);
Atlas load_atlas_file(const std::string& path, bool require_complete = true);

// One containment stated in the proofs, possibly a chain a ⊆ b ⊆ c, or a
// sandwich a ⊆ {b1..bk} ⊆ c. Expanded into pairwise checks.
struct StatedRelation {
  std::string label;
  std::vector<std::pair<AtlasKey, AtlasKey>> pairs;
};

const std::vector<StatedRelation>& stated_relations();

enum class CheckStatus { pass, fail, missing };
const char* to_string(CheckStatus s);

struct PairCheck {
  AtlasKey sub, sup;
  CheckStatus status = CheckStatus::missing;
  std::vector<int> mapping;  // when pass
};

struct RelationCheck {
  std::string label;
  CheckStatus status = CheckStatus::pass;
  std::vector<PairCheck> pairs;
};

struct StructureCheck {
  std::string what;
  bool ok = true;
};

struct AtlasReport {
  std::vector<RelationCheck> relations;
  // Order, edge-count block and pairwise non-isomorphism checks.
  std::vector<StructureCheck> structure;
  bool relations_ok() const;
  bool structure_ok() const;
  bool ok() const { return relations_ok() && structure_ok(); }
};

// Number of graphs on six vertices with m edges, m = 0..15. Harary lists the
// 156 graphs by edge count, so an index fixes the edge count.
int six_vertex_edge_count_for_index(int harary_index);
int four_vertex_edge_count_for_index(int harary_index);

AtlasReport validate_atlas_relations(const Atlas& atlas);

}  // namespace crossprod
