#include "crossprod/atlas.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "crossprod/graph6.hpp"
#include "crossprod/subgraph.hpp"

namespace crossprod {

std::optional<AtlasKey> AtlasKey::parse(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) return std::nullopt;
  try {
    std::size_t a = 0, b = 0;
    int k = std::stoi(s.substr(0, dot), &a);
    int i = std::stoi(s.substr(dot + 1), &b);
    if (a != dot || b != s.size() - dot - 1 || k <= 0 || i <= 0) return std::nullopt;
    return AtlasKey{k, i};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Atlas::Atlas(std::vector<AtlasEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const AtlasEntry& a, const AtlasEntry& b) { return a.key() < b.key(); });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!pos_.emplace(entries_[i].key(), i).second)
      throw AtlasError("duplicate atlas key " + entries_[i].key().str());
  }
}

const AtlasEntry* Atlas::find(AtlasKey key) const {
  auto it = pos_.find(key);
  return it == pos_.end() ? nullptr : &entries_[it->second];
}

const Graph& Atlas::graph(AtlasKey key) const {
  const AtlasEntry* e = find(key);
  if (!e) throw AtlasError("atlas has no entry " + key.str());
  return e->graph;
}

const Graph& Atlas::graph(const std::string& key) const {
  auto k = AtlasKey::parse(key);
  if (!k) throw AtlasError("malformed atlas key '" + key + "'");
  return graph(*k);
}

Atlas Atlas::with_swapped(AtlasKey a, AtlasKey b) const {
  auto copy = entries_;
  auto ia = pos_.at(a), ib = pos_.at(b);
  std::swap(copy[ia].graph, copy[ib].graph);
  copy[ia].graph.set_name("G" + a.str());
  copy[ib].graph.set_name("G" + b.str());
  return Atlas(std::move(copy));
}

Atlas Atlas::restricted_to(int vertex_count) const {
  std::vector<AtlasEntry> keep;
  for (const auto& e : entries_)
    if (e.vertex_count == vertex_count) keep.push_back(e);
  return Atlas(std::move(keep));
}

const std::vector<AtlasKey>& required_atlas_keys() {
  static const std::vector<AtlasKey> keys = [] {
    std::vector<AtlasKey> k;
    for (int i = 1; i <= 6; ++i) k.push_back({4, i});
    for (int i : {25,  26,  27,  28,  29,  31,  40,  41,  42,  43,  44,  45,  46,  47,  48,  49,  51,
                  53,  54,  59,  60,  61,  62,  63,  64,  65,  66,  67,  70,  72,  73,  74,  75,  77,
                  78,  79,  80,  83,  84,  85,  86,  89,  90,  92,  93,  94,  98,  103, 104, 109, 110,
                  111, 113, 118, 119, 120, 121, 124, 125, 130, 137, 146, 152, 154, 155, 156})
      k.push_back({6, i});
    return k;
  }();
  return keys;
}

Atlas load_atlas(std::istream& in, bool require_complete) {
  std::vector<AtlasEntry> entries;
  std::map<AtlasKey, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key_text, g6, extra;
    if (!(ls >> key_text)) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    if (!(ls >> g6)) throw AtlasError(where + "missing graph6 field");
    if (ls >> extra) throw AtlasError(where + "unexpected field '" + extra + "'");
    auto key = AtlasKey::parse(key_text);
    if (!key || (key->vertex_count != 4 && key->vertex_count != 6))
      throw AtlasError(where + "bad key '" + key_text + "'");
    if (auto [it, fresh] = seen.emplace(*key, lineno); !fresh)
      throw AtlasError(where + "duplicate key " + key->str() + " (first on line " + std::to_string(it->second) + ")");
    Graph g;
    try {
      g = parse_graph6(g6);
    } catch (const Graph6Error& e) {
      throw AtlasError(where + "graph6 error for " + key->str() + ": " + e.what());
    }
    if (g.order() != key->vertex_count)
      throw AtlasError(where + key->str() + " has " + std::to_string(g.order()) + " vertices");
    g.set_name("G" + key->str());
    entries.push_back({key->vertex_count, key->index, std::move(g)});
  }
  if (entries.empty()) throw AtlasError("atlas is empty (atlas incomplete)");
  Atlas atlas(std::move(entries));
  if (require_complete) {
    std::vector<std::string> missing;
    for (auto k : required_atlas_keys())
      if (!atlas.contains(k)) missing.push_back(k.str());
    if (!missing.empty()) {
      std::string msg = "atlas incomplete, missing";
      for (auto& m : missing) msg += " " + m;
      throw AtlasError(msg);
    }
  }
  return atlas;
}

Atlas load_atlas_file(const std::string& path, bool require_complete) {
  std::ifstream in(path);
  if (!in) throw AtlasError("cannot open atlas file " + path);
  return load_atlas(in, require_complete);
}

const std::vector<StatedRelation>& stated_relations() {
  static const std::vector<StatedRelation> rels = [] {
    auto k6 = [](int i) { return AtlasKey{6, i}; };
    std::vector<StatedRelation> r;
    StatedRelation sandwich{"6.40 <= {6.59,6.60,6.83,6.90} <= 6.113", {}};
    for (int mid : {59, 60, 83, 90}) {
      sandwich.pairs.push_back({k6(40), k6(mid)});
      sandwich.pairs.push_back({k6(mid), k6(113)});
    }
    r.push_back(sandwich);
    auto single = [&](AtlasKey a, AtlasKey b) {
      r.push_back({a.str() + " <= " + b.str(), {{a, b}}});
    };
    single(k6(41), k6(66));
    single(k6(66), k6(98));
    single(k6(41), k6(70));
    single(k6(70), k6(98));
    single(k6(42), k6(63));
    single(k6(47), k6(64));
    single(k6(49), k6(75));
    single(k6(53), k6(77));
    single(k6(67), k6(92));
    single(k6(84), k6(110));
    single(k6(121), k6(137));
    single(k6(27), k6(62));
    single(k6(93), k6(121));
    single(k6(46), k6(60));
    single(AtlasKey{4, 3}, k6(46));
    return r;
  }();
  return rels;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::missing: return "entry missing";
  }
  return "?";
}

bool AtlasReport::relations_ok() const {
  return std::all_of(relations.begin(), relations.end(),
                     [](const RelationCheck& r) { return r.status == CheckStatus::pass; });
}

bool AtlasReport::structure_ok() const {
  return std::all_of(structure.begin(), structure.end(), [](const StructureCheck& s) { return s.ok; });
}

namespace {

int index_to_edges(int index, const std::vector<int>& counts) {
  int first = 1;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (index < first + counts[m]) return static_cast<int>(m);
    first += counts[m];
  }
  return -1;
}

}  // namespace

int six_vertex_edge_count_for_index(int harary_index) {
  static const std::vector<int> counts{1, 1, 2, 5, 9, 15, 21, 24, 24, 21, 15, 9, 5, 2, 1, 1};
  return index_to_edges(harary_index, counts);
}

int four_vertex_edge_count_for_index(int harary_index) {
  // Connected graphs on four vertices only, in the order of the 4-vertex table.
  static const std::vector<int> edges{3, 3, 4, 4, 5, 6};
  if (harary_index < 1 || harary_index > 6) return -1;
  return edges[harary_index - 1];
}

AtlasReport validate_atlas_relations(const Atlas& atlas) {
  AtlasReport rep;
  for (const auto& rel : stated_relations()) {
    RelationCheck rc{rel.label, CheckStatus::pass, {}};
    for (auto [a, b] : rel.pairs) {
      PairCheck pc{a, b, CheckStatus::missing, {}};
      const AtlasEntry* ea = atlas.find(a);
      const AtlasEntry* eb = atlas.find(b);
      if (ea && eb) {
        auto phi = find_subgraph_mapping(ea->graph, eb->graph);
        pc.status = phi ? CheckStatus::pass : CheckStatus::fail;
        if (phi) pc.mapping = *phi;
      }
      if (pc.status == CheckStatus::fail)
        rc.status = CheckStatus::fail;
      else if (pc.status == CheckStatus::missing && rc.status == CheckStatus::pass)
        rc.status = CheckStatus::missing;
      rc.pairs.push_back(std::move(pc));
    }
    rep.relations.push_back(std::move(rc));
  }

  for (const auto& e : atlas.entries()) {
    int want = e.vertex_count == 6 ? six_vertex_edge_count_for_index(e.harary_index)
                                   : four_vertex_edge_count_for_index(e.harary_index);
    int have = static_cast<int>(e.graph.edge_count());
    rep.structure.push_back({e.key().str() + " has " + std::to_string(have) + " edges, index block expects " +
                                 std::to_string(want),
                             want == have});
  }
  const auto& es = atlas.entries();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (es[i].vertex_count != es[j].vertex_count) continue;
      if (is_isomorphic(es[i].graph, es[j].graph))
        rep.structure.push_back({es[i].key().str() + " and " + es[j].key().str() + " are isomorphic", false});
    }
  return rep;
}

}  // namespace crossprod
