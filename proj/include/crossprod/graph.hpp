#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crossprod {

struct Edge {
  int u = 0;
  int v = 0;  // u < v always
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Simple undirected graph on vertices 0..order-1. Edges are kept sorted, so
// edge indices are canonical for a given edge set.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order, std::string name = {});
  Graph(int order, const std::vector<std::pair<int, int>>& edges, std::string name = {});

  int order() const { return order_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  // Index of edge {u,v} in edges(), or -1.
  int edge_index(int u, int v) const;

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool is_connected() const;
  std::vector<int> degree_sequence() const;  // non-increasing
  // Vertex sets of connected components, each sorted.
  std::vector<std::vector<int>> components() const;
  // Graph with vertex v renamed perm[v].
  Graph relabeled(const std::vector<int>& perm) const;
  Graph induced(const std::vector<int>& vertices) const;
  Graph without_edge(std::size_t index) const;
  Graph with_edge(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order_ == b.order_ && a.edges_ == b.edges_;
  }

 private:
  void build(std::vector<std::pair<int, int>> edges);

  int order_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::string name_;
};

enum class ElementaryKind { path, cycle, star, complete, complete_bipartite };

std::optional<ElementaryKind> parse_elementary_kind(const std::string& s);

// Path and star on n+1 vertices, cycle on n vertices.
Graph build_elementary(ElementaryKind kind, int n, std::optional<int> m = std::nullopt);

// Vertex (i,j) with i in g and j in h becomes i*|V(h)| + j.
Graph cartesian_product(const Graph& g, const Graph& h);

}  // namespace crossprod
