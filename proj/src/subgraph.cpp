#include "crossprod/subgraph.hpp"

#include <algorithm>

namespace crossprod {

namespace {

class Matcher {
 public:
  Matcher(const Graph& g, const Graph& h) : g_(g), h_(h) {
    // Visit pattern vertices so that each one (after the first of its
    // component) already has a matched neighbour; high degree first.
    std::vector<char> placed(g.order(), 0);
    while (static_cast<int>(order_.size()) < g.order()) {
      int best = -1;
      for (int v = 0; v < g.order(); ++v) {
        if (placed[v]) continue;
        if (best < 0 || score(v, placed) > score(best, placed)) best = v;
      }
      placed[best] = 1;
      order_.push_back(best);
    }
    phi_.assign(g.order(), -1);
    used_.assign(h.order(), 0);
  }

  bool run() { return extend(0); }
  const std::vector<int>& mapping() const { return phi_; }

 private:
  std::pair<int, int> score(int v, const std::vector<char>& placed) const {
    int linked = 0;
    for (int w : g_.neighbors(v)) linked += placed[w];
    return {linked, g_.degree(v)};
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int u = order_[depth];
    int anchor = -1;
    for (int w : g_.neighbors(u))
      if (phi_[w] >= 0) {
        anchor = w;
        break;
      }
    auto try_image = [&](int x) {
      if (used_[x] || h_.degree(x) < g_.degree(u)) return false;
      for (int w : g_.neighbors(u))
        if (phi_[w] >= 0 && !h_.has_edge(x, phi_[w])) return false;
      phi_[u] = x;
      used_[x] = 1;
      if (extend(depth + 1)) return true;
      phi_[u] = -1;
      used_[x] = 0;
      return false;
    };
    if (anchor >= 0) {
      for (int x : h_.neighbors(phi_[anchor]))
        if (try_image(x)) return true;
    } else {
      for (int x = 0; x < h_.order(); ++x)
        if (try_image(x)) return true;
    }
    return false;
  }

  const Graph& g_;
  const Graph& h_;
  std::vector<int> order_;
  std::vector<int> phi_;
  std::vector<char> used_;
};

}  // namespace

std::optional<std::vector<int>> find_subgraph_mapping(const Graph& g, const Graph& h) {
  if (g.order() > h.order() || g.edge_count() > h.edge_count()) return std::nullopt;
  auto dg = g.degree_sequence(), dh = h.degree_sequence();
  for (std::size_t i = 0; i < dg.size(); ++i)
    if (dg[i] > dh[i]) return std::nullopt;
  Matcher m(g, h);
  if (!m.run()) return std::nullopt;
  return m.mapping();
}

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (g.degree_sequence() != h.degree_sequence()) return std::nullopt;
  return find_subgraph_mapping(g, h);
}

bool check_mapping(const Graph& g, const Graph& h, const std::vector<int>& phi) {
  if (static_cast<int>(phi.size()) != g.order()) return false;
  std::vector<char> seen(h.order(), 0);
  for (int x : phi) {
    if (x < 0 || x >= h.order() || seen[x]) return false;
    seen[x] = 1;
  }
  for (auto e : g.edges())
    if (!h.has_edge(phi[e.u], phi[e.v])) return false;
  return true;
}

}  // namespace crossprod
