#include "crossprod/graph.hpp"

#include <algorithm>
#include <numeric>

namespace crossprod {

Graph::Graph(int order, std::string name) : name_(std::move(name)) {
  if (order < 0) throw GraphError("negative order");
  order_ = order;
  adj_.assign(order, {});
}

Graph::Graph(int order, const std::vector<std::pair<int, int>>& edges, std::string name)
    : name_(std::move(name)) {
  if (order < 0) throw GraphError("negative order");
  order_ = order;
  build(edges);
}

void Graph::build(std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= order_ || v >= order_)
      throw GraphError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw GraphError("multi-edge");
  edges_.clear();
  edges_.reserve(edges.size());
  adj_.assign(order_, {});
  for (auto [u, v] : edges) {
    edges_.push_back({u, v});
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= order_ || v >= order_) return false;
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  Edge key{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> comp(order_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < order_; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (int y : adj_[x])
        if (comp[y] < 0) {
          comp[y] = comp[s];
          stack.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool Graph::is_connected() const { return order_ <= 1 || components().size() == 1; }

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(order_);
  for (int v = 0; v < order_; ++v) d[v] = degree(v);
  std::sort(d.rbegin(), d.rend());
  return d;
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != order_) throw GraphError("permutation size mismatch");
  std::vector<std::pair<int, int>> es;
  es.reserve(edges_.size());
  for (auto e : edges_) es.emplace_back(perm[e.u], perm[e.v]);
  return Graph(order_, es, name_);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(order_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> es;
  for (auto e : edges_)
    if (pos[e.u] >= 0 && pos[e.v] >= 0) es.emplace_back(pos[e.u], pos[e.v]);
  return Graph(static_cast<int>(vertices.size()), es);
}

Graph Graph::without_edge(std::size_t index) const {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (i != index) es.emplace_back(edges_[i].u, edges_[i].v);
  return Graph(order_, es, name_);
}

Graph Graph::with_edge(int u, int v) const {
  std::vector<std::pair<int, int>> es;
  for (auto e : edges_) es.emplace_back(e.u, e.v);
  es.emplace_back(u, v);
  return Graph(order_, es, name_);
}

std::optional<ElementaryKind> parse_elementary_kind(const std::string& s) {
  if (s == "path") return ElementaryKind::path;
  if (s == "cycle") return ElementaryKind::cycle;
  if (s == "star") return ElementaryKind::star;
  if (s == "complete") return ElementaryKind::complete;
  if (s == "complete_bipartite") return ElementaryKind::complete_bipartite;
  return std::nullopt;
}

Graph build_elementary(ElementaryKind kind, int n, std::optional<int> m) {
  if (n <= 0) throw GraphError("n must be positive");
  std::vector<std::pair<int, int>> es;
  switch (kind) {
    case ElementaryKind::path:
      for (int i = 0; i < n; ++i) es.emplace_back(i, i + 1);
      return Graph(n + 1, es, "P" + std::to_string(n));
    case ElementaryKind::cycle:
      if (n < 3) throw GraphError("cycle needs n >= 3");
      for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
      return Graph(n, es, "C" + std::to_string(n));
    case ElementaryKind::star:
      for (int i = 1; i <= n; ++i) es.emplace_back(0, i);
      return Graph(n + 1, es, "S" + std::to_string(n));
    case ElementaryKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
      return Graph(n, es, "K" + std::to_string(n));
    case ElementaryKind::complete_bipartite: {
      if (!m || *m <= 0) throw GraphError("complete_bipartite needs positive m");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < *m; ++j) es.emplace_back(i, n + j);
      return Graph(n + *m, es, "K" + std::to_string(n) + "," + std::to_string(*m));
    }
  }
  throw GraphError("unknown kind");
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.order() == 0 || h.order() == 0) throw GraphError("product of empty graph");
  const int nh = h.order();
  std::vector<std::pair<int, int>> es;
  es.reserve(g.order() * h.edge_count() + nh * g.edge_count());
  for (int i = 0; i < g.order(); ++i)
    for (auto e : h.edges()) es.emplace_back(i * nh + e.u, i * nh + e.v);
  for (int j = 0; j < nh; ++j)
    for (auto e : g.edges()) es.emplace_back(e.u * nh + j, e.v * nh + j);
  std::string name;
  if (!g.name().empty() && !h.name().empty()) name = g.name() + "x" + h.name();
  return Graph(g.order() * nh, es, name);
}

}  // namespace crossprod
