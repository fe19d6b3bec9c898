#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "crossprod/graph.hpp"

namespace crossprod {

class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Accepts an optional ">>graph6<<" header and one trailing newline. Both the
// one-byte and the long size forms are understood.
Graph parse_graph6(std::string_view text);

// Single-byte size field only; throws GraphError for order > 62.
std::string encode_graph6(const Graph& g);

// Same encoding, but switches to the '~' long size form above 62 vertices.
// Used for planarizations, which outgrow the single-byte form.
std::string encode_graph6_any(const Graph& g);

}  // namespace crossprod
