#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossprod/graph.hpp"
#include "json.hpp"

namespace crossprod {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point pt(const Rational& x, const Rational& y) { return {x, y}; }

// edge_paths[i] belongs to graph.edge(i) and runs from edge(i).u to edge(i).v.
struct PolylineDrawing {
  Graph graph;
  std::vector<Point> vertex_points;
  std::vector<std::vector<Point>> edge_paths;
};

class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, int edge_a = -1, int seg_a = -1, int edge_b = -1, int seg_b = -1)
      : std::runtime_error(what), edge_a(edge_a), seg_a(seg_a), edge_b(edge_b), seg_b(seg_b) {}
  int edge_a, seg_a, edge_b, seg_b;
};

struct Crossing {
  int edge_a = 0, seg_a = 0;
  int edge_b = 0, seg_b = 0;
  Rational t_a, t_b;  // position inside the segment, in (0,1)
  Point at;
};

struct CrossingAnalysis {
  std::vector<Crossing> crossings;       // distinct edges, edge_a < edge_b
  std::vector<Crossing> self_crossings;  // edge_a == edge_b, seg_a < seg_b
};

// Structural checks (path endpoints, no zero-length segment, no coincident
// vertices). Throws DegeneracyError.
void validate_structure(const PolylineDrawing& d);

// Full exact analysis; throws DegeneracyError on any general-position
// violation instead of perturbing.
CrossingAnalysis analyze_drawing(const PolylineDrawing& d);

std::size_t count_crossings(const PolylineDrawing& d);

struct GoodDrawingReport {
  bool no_self_intersection = true;
  bool no_adjacent_crossing = true;
  bool no_double_crossing = true;
  bool good() const { return no_self_intersection && no_adjacent_crossing && no_double_crossing; }
};

GoodDrawingReport check_good_drawing(const PolylineDrawing& d);
GoodDrawingReport check_good_drawing(const PolylineDrawing& d, const CrossingAnalysis& a);

struct Planarization {
  Graph graph;
  // crossing_vertex[k] is vertex graph.order()-count+k; it sits on these two
  // original edges.
  std::vector<std::pair<int, int>> crossed_edges;
  // Per original edge: vertices along it from edge.u to edge.v.
  std::vector<std::vector<int>> chains;
};

// Requires a good drawing; throws DegeneracyError otherwise.
Planarization planarize_drawing(const PolylineDrawing& d);
Planarization planarize_drawing(const PolylineDrawing& d, const CrossingAnalysis& a);

std::string drawing_to_svg(const PolylineDrawing& d);
void export_svg(const PolylineDrawing& d, const std::string& path);

nlohmann::ordered_json drawing_to_json(const PolylineDrawing& d);
PolylineDrawing drawing_from_json(const nlohmann::ordered_json& j);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace crossprod
