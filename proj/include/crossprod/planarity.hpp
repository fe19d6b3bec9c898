#pragma once

#include <utility>
#include <vector>

#include "crossprod/graph.hpp"

namespace crossprod {

// rotation[v] lists the neighbours of v in cyclic order. For a simple graph a
// neighbour identifies the incident edge.
struct Embedding {
  std::vector<std::vector<int>> rotation;
};

struct PlanarityResult {
  bool planar = false;
  Embedding embedding;  // filled when planar
};

PlanarityResult test_planarity(const Graph& g);
bool is_planar(const Graph& g);

using Dart = std::pair<int, int>;
using Face = std::vector<Dart>;

// Faces traced by: after dart (u,v) comes (v,w), w the successor of u in
// rotation[v]. Requires connected g; throws GraphError otherwise.
std::vector<Face> faces_of(const Graph& g, const Embedding& e);

// Rotation lists exactly the incident edges, each once.
bool embedding_matches(const Graph& g, const Embedding& e);

// |V| - |E| + |F| == 1 + #components, checked per component via faces_of.
bool satisfies_euler(const Graph& g, const Embedding& e);

}  // namespace crossprod
