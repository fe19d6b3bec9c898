#include "crossprod/heuristic.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <thread>

#include "crossprod/graph6.hpp"
#include "crossprod/planarity.hpp"

namespace crossprod {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}
  std::uint64_t next() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * counter_++); }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return r % bound;
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Planarization under construction: chains[e] walks base edge e through its
// crossing vertices; empty while e is not inserted.
struct State {
  const Graph* g = nullptr;
  int vertices = 0;
  std::vector<std::vector<int>> chains;

  int crossings() const { return vertices - g->order(); }
};

std::optional<Graph> build_graph(const State& s) {
  std::vector<std::pair<int, int>> es;
  for (const auto& c : s.chains)
    for (std::size_t i = 0; i + 1 < c.size(); ++i) es.emplace_back(std::min(c[i], c[i + 1]), std::max(c[i], c[i + 1]));
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) return std::nullopt;
  return Graph(s.vertices, es);
}

// Routes base edge e through the dual of one embedding of the current
// planarization. Returns false if the planarization cannot be embedded as a
// connected graph.
bool insert_edge(State& s, int e) {
  auto h = build_graph(s);
  if (!h || !h->is_connected()) return false;
  auto pr = test_planarity(*h);
  if (!pr.planar) return false;
  const int u = s.g->edge(e).u, v = s.g->edge(e).v;
  auto faces = faces_of(*h, pr.embedding);
  const std::size_t m = h->edge_count();
  std::vector<int> dart_face(2 * m);
  auto dart_id = [&](int a, int b) { return 2 * h->edge_index(a, b) + (a < b ? 0 : 1); };
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (auto [a, b] : faces[f]) dart_face[dart_id(a, b)] = static_cast<int>(f);

  std::vector<char> is_target(faces.size(), 0);
  for (int w : h->neighbors(v)) is_target[dart_face[dart_id(v, w)]] = 1;
  std::vector<int> parent(faces.size(), -2), via(faces.size(), -1);
  std::queue<int> q;
  for (int w : h->neighbors(u)) {
    int f = dart_face[dart_id(u, w)];
    if (parent[f] == -2) {
      parent[f] = -1;
      q.push(f);
    }
  }
  int hit = -1;
  while (!q.empty() && hit < 0) {
    int f = q.front();
    q.pop();
    if (is_target[f]) {
      hit = f;
      break;
    }
    for (auto [a, b] : faces[f]) {
      int g2 = dart_face[dart_id(b, a)];
      if (g2 == f || parent[g2] != -2) continue;
      parent[g2] = f;
      via[g2] = h->edge_index(a, b);
      q.push(g2);
    }
  }
  if (hit < 0) return false;
  std::vector<int> crossed;
  for (int f = hit; parent[f] >= 0; f = parent[f]) crossed.push_back(via[f]);
  std::reverse(crossed.begin(), crossed.end());

  // owner chain of every planarization edge
  std::map<std::pair<int, int>, int> owner;
  for (std::size_t c = 0; c < s.chains.size(); ++c)
    for (std::size_t i = 0; i + 1 < s.chains[c].size(); ++i)
      owner[{std::min(s.chains[c][i], s.chains[c][i + 1]), std::max(s.chains[c][i], s.chains[c][i + 1])}] =
          static_cast<int>(c);

  std::vector<int> route{u};
  for (int idx : crossed) {
    const Edge& he = h->edge(idx);
    auto& chain = s.chains[owner.at({he.u, he.v})];
    int d = s.vertices++;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if ((chain[i] == he.u && chain[i + 1] == he.v) || (chain[i] == he.v && chain[i + 1] == he.u)) {
        chain.insert(chain.begin() + static_cast<long>(i) + 1, d);
        break;
      }
    route.push_back(d);
  }
  route.push_back(v);
  s.chains[e] = std::move(route);
  return true;
}

// Takes edge e out, smoothing its crossing vertices on the other chains.
void remove_edge(State& s, int e) {
  const int n = s.g->order();
  std::vector<int> dummies(s.chains[e].begin() + 1, s.chains[e].end() - 1);
  s.chains[e].clear();
  std::vector<char> gone(s.vertices, 0);
  for (int d : dummies) gone[d] = 1;
  for (auto& c : s.chains) c.erase(std::remove_if(c.begin(), c.end(), [&](int x) { return gone[x]; }), c.end());
  std::vector<int> remap(s.vertices, -1);
  int next = n;
  for (int x = 0; x < s.vertices; ++x) remap[x] = x < n ? x : (gone[x] ? -1 : next++);
  for (auto& c : s.chains)
    for (int& x : c) x = remap[x];
  s.vertices = next;
}

State single_run(const Graph& g, Rng& rng, int sweeps) {
  State s;
  s.g = &g;
  s.vertices = g.order();
  s.chains.assign(g.edge_count(), {});
  std::vector<int> order(g.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order);

  std::vector<std::pair<int, int>> kept;
  std::vector<int> rest;
  for (int e : order) {
    kept.emplace_back(g.edge(e).u, g.edge(e).v);
    if (is_planar(Graph(g.order(), kept))) {
      s.chains[e] = {g.edge(e).u, g.edge(e).v};
    } else {
      kept.pop_back();
      rest.push_back(e);
    }
  }
  for (int e : rest)
    if (!insert_edge(s, e)) throw GraphError("edge insertion failed");

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (s.chains[e].size() <= 2) continue;
      State saved = s;
      remove_edge(s, static_cast<int>(e));
      if (!insert_edge(s, static_cast<int>(e)) || s.crossings() >= saved.crossings()) {
        s = std::move(saved);
      } else {
        improved = true;
      }
    }
    if (!improved) break;
  }
  return s;
}

DrawingWitness witness_of(const Graph& g, const State& s) {
  DrawingWitness w;
  w.base = g;
  w.k = s.crossings();
  w.planarization = *build_graph(s);
  const int n = g.order();
  std::vector<DummyEntry> map(w.k);
  std::vector<int> seen(w.k, 0);
  for (std::size_t e = 0; e < s.chains.size(); ++e) {
    const auto& c = s.chains[e];
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
      auto& d = map[c[i] - n];
      d.dummy = c[i];
      if (seen[c[i] - n]++ == 0) {
        d.e1 = static_cast<int>(e);
        d.pos1 = static_cast<int>(i) - 1;
      } else {
        d.e2 = static_cast<int>(e);
        d.pos2 = static_cast<int>(i) - 1;
      }
    }
  }
  w.dummy_map = std::move(map);
  return w;
}

DrawingWitness minimize_connected(const Graph& g, const HeuristicOptions& opt) {
  if (is_planar(g)) {
    State s;
    s.g = &g;
    s.vertices = g.order();
    for (const auto& e : g.edges()) s.chains.push_back({e.u, e.v});
    return witness_of(g, s);
  }
  const int restarts = std::max(1, opt.restarts);
  const unsigned nt = std::max(1u, opt.threads);
  std::optional<State> best;
  for (int base = 0; base < restarts; base += static_cast<int>(nt)) {
    int count = std::min<int>(static_cast<int>(nt), restarts - base);
    std::vector<State> runs(count);
    auto job = [&](int i) {
      Rng rng(opt.seed, static_cast<std::uint64_t>(base + i));
      runs[i] = single_run(g, rng, opt.improvement_sweeps);
    };
    if (count == 1) {
      job(0);
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < count; ++i) pool.emplace_back(job, i);
      for (auto& t : pool) t.join();
    }
    bool stop = false;
    for (auto& r : runs) {
      if (!best || r.crossings() < best->crossings()) best = std::move(r);
      if (opt.stop_at && best->crossings() <= *opt.stop_at) {
        stop = true;
        break;
      }
    }
    if (stop) break;
  }
  best->g = &g;
  return witness_of(g, *best);
}

}  // namespace

DrawingWitness heuristic_minimize(const Graph& g, const HeuristicOptions& opt) {
  auto comps = g.components();
  if (comps.size() <= 1) return minimize_connected(g, opt);

  // per component, then glued with dummies renumbered after all base vertices
  State total;
  total.g = &g;
  total.vertices = g.order();
  total.chains.assign(g.edge_count(), {});
  for (const auto& comp : comps) {
    Graph sub = g.induced(comp);
    DrawingWitness w = minimize_connected(sub, opt);
    const int sn = sub.order();
    const int offset = total.vertices - sn;
    auto lift = [&](int x) { return x < sn ? comp[x] : x + offset; };
    std::vector<std::vector<int>> chains(sub.edge_count());
    for (std::size_t e = 0; e < sub.edge_count(); ++e) chains[e].push_back(sub.edge(e).u);
    std::vector<DummyEntry> dm = w.dummy_map;
    std::vector<std::vector<std::pair<int, int>>> along(sub.edge_count());
    for (const auto& d : dm) {
      along[d.e1].emplace_back(d.pos1, d.dummy);
      along[d.e2].emplace_back(d.pos2, d.dummy);
    }
    for (std::size_t e = 0; e < sub.edge_count(); ++e) {
      std::sort(along[e].begin(), along[e].end());
      std::vector<int> c{lift(sub.edge(e).u)};
      for (auto [p, d] : along[e]) c.push_back(lift(d));
      c.push_back(lift(sub.edge(e).v));
      int ge = g.edge_index(comp[sub.edge(e).u], comp[sub.edge(e).v]);
      total.chains[ge] = std::move(c);
    }
    total.vertices += w.k;
  }
  return witness_of(g, total);
}

const char* to_string(WitnessFault f) {
  switch (f) {
    case WitnessFault::none: return "ok";
    case WitnessFault::nonplanar: return "planarization is not planar";
    case WitnessFault::vertex_count: return "vertex count differs from base order plus k";
    case WitnessFault::bad_dummy_map: return "dummy map malformed";
    case WitnessFault::contraction_mismatch: return "contracting dummies does not give the base graph";
    case WitnessFault::dummy_degree: return "dummy vertex without degree 4";
  }
  return "?";
}

WitnessCheck verify_witness(const DrawingWitness& w) {
  auto fail = [](WitnessFault f, std::string detail) { return WitnessCheck{false, f, std::move(detail)}; };
  const Graph& b = w.base;
  const Graph& p = w.planarization;
  if (!test_planarity(p).planar) return fail(WitnessFault::nonplanar, "");
  if (w.k < 0 || p.order() != b.order() + w.k)
    return fail(WitnessFault::vertex_count,
                std::to_string(p.order()) + " != " + std::to_string(b.order()) + " + " + std::to_string(w.k));
  if (static_cast<int>(w.dummy_map.size()) != w.k)
    return fail(WitnessFault::bad_dummy_map, "dummy map has " + std::to_string(w.dummy_map.size()) + " entries");

  const int n = b.order();
  const int m = static_cast<int>(b.edge_count());
  std::vector<char> seen(w.k, 0);
  std::vector<std::vector<std::pair<int, int>>> along(m);
  for (const auto& d : w.dummy_map) {
    if (d.dummy < n || d.dummy >= n + w.k || seen[d.dummy - n]++)
      return fail(WitnessFault::bad_dummy_map, "dummy id " + std::to_string(d.dummy));
    if (d.e1 < 0 || d.e2 < 0 || d.e1 >= m || d.e2 >= m || d.e1 == d.e2)
      return fail(WitnessFault::bad_dummy_map, "edge pair of dummy " + std::to_string(d.dummy));
    along[d.e1].emplace_back(d.pos1, d.dummy);
    along[d.e2].emplace_back(d.pos2, d.dummy);
  }
  std::vector<std::pair<int, int>> rebuilt;
  for (int e = 0; e < m; ++e) {
    auto& l = along[e];
    std::sort(l.begin(), l.end());
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i].first != static_cast<int>(i))
        return fail(WitnessFault::bad_dummy_map, "positions on edge " + std::to_string(e) + " are not 0..c-1");
    int prev = b.edge(e).u;
    for (auto [pos, d] : l) {
      rebuilt.emplace_back(std::min(prev, d), std::max(prev, d));
      prev = d;
    }
    rebuilt.emplace_back(std::min(prev, b.edge(e).v), std::max(prev, b.edge(e).v));
  }
  std::sort(rebuilt.begin(), rebuilt.end());
  std::vector<std::pair<int, int>> actual;
  for (const auto& e : p.edges()) actual.emplace_back(e.u, e.v);
  if (rebuilt != actual)
    return fail(WitnessFault::contraction_mismatch, std::to_string(actual.size()) + " planarization edges, " +
                                                        std::to_string(rebuilt.size()) + " expected from chains");
  for (int d = n; d < n + w.k; ++d)
    if (p.degree(d) != 4) return fail(WitnessFault::dummy_degree, "vertex " + std::to_string(d));
  return WitnessCheck{true, WitnessFault::none, {}};
}

nlohmann::ordered_json witness_to_json(const DrawingWitness& w) {
  nlohmann::ordered_json j;
  j["base"] = encode_graph6_any(w.base);
  j["k"] = w.k;
  j["planarization"] = encode_graph6_any(w.planarization);
  j["dummy_map"] = nlohmann::ordered_json::array();
  for (const auto& d : w.dummy_map) j["dummy_map"].push_back({d.dummy, d.e1, d.e2, d.pos1, d.pos2});
  return j;
}

DrawingWitness witness_from_json(const nlohmann::ordered_json& j) {
  DrawingWitness w;
  w.base = parse_graph6(j.at("base").get<std::string>());
  w.k = j.at("k").get<int>();
  w.planarization = parse_graph6(j.at("planarization").get<std::string>());
  for (const auto& row : j.at("dummy_map")) {
    if (!row.is_array() || row.size() != 5) throw std::invalid_argument("dummy_map rows need five integers");
    w.dummy_map.push_back(
        {row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>(), row[4].get<int>()});
  }
  return w;
}

}  // namespace crossprod
