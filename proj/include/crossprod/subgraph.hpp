#pragma once

#include <optional>
#include <vector>

#include "crossprod/graph.hpp"

namespace crossprod {

// Non-induced containment: injective phi with every edge of g sent to an edge
// of h. Returns phi (indexed by vertices of g) when it exists.
std::optional<std::vector<int>> find_subgraph_mapping(const Graph& g, const Graph& h);

inline bool is_subgraph_of(const Graph& g, const Graph& h) {
  return find_subgraph_mapping(g, h).has_value();
}

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h);

inline bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

// True iff phi is injective and maps every edge of g onto an edge of h.
bool check_mapping(const Graph& g, const Graph& h, const std::vector<int>& phi);

}  // namespace crossprod
