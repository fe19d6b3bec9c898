#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossprod/atlas.hpp"
#include "crossprod/drawing.hpp"
#include "crossprod/quasipoly.hpp"
#include "crossprod/results_db.hpp"

namespace crossprod {

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FamilySpec {
  AtlasKey atlas_id;
  Partner partner = Partner::path;
  int min_n = 1;
  QuasiPoly2 target_formula;

  std::string id() const;  // "6.63/cycle"
};

// Column layout of a cycle family. Levels index spine_order; a chord joins two
// levels and bulges to one side of the spine.
struct TileChord {
  int lo = 0, hi = 0;  // levels, lo < hi
  bool right = true;
};

struct TileSpec {
  std::vector<int> spine_order;  // template vertex at each level
  std::vector<TileChord> chords;
};

const std::vector<FamilySpec>& list_supported_families();
// Throws FamilyError for anything outside the supported list.
const FamilySpec& find_family(const std::string& atlas_key, Partner partner);

// Fixed labelling of the small graph the layout is written against. The atlas
// graph is matched onto it by an isomorphism at generation time.
Graph family_template(const FamilySpec& spec);
std::optional<TileSpec> family_tile(const FamilySpec& spec);

// Each family's atlas graph against the graph its layout is built from. Catches atlas
// swaps the containment relations cannot see (6.64 and 6.67 sit in the same
// relations up to renaming).
std::vector<StructureCheck> check_family_templates(const Atlas& atlas);

// Drawing of atlas_graph x partner(n) in cartesian_product numbering. Throws
// FamilyError when n < min_n or when the atlas graph does not match the
// template (which doubles as an atlas check).
PolylineDrawing generate_family_drawing(const FamilySpec& spec, int n, const Atlas& atlas);
PolylineDrawing generate_family_drawing(const FamilySpec& spec, int n, const Graph& atlas_graph);

// P_n, C_n or S_n: path and star on n+1 vertices, cycle on n.
Graph partner_graph(Partner p, int n);

// Partner vertex (copy index) of a product vertex; the atlas graph has six vertices.
inline int product_copy(int vertex, int partner_order) { return vertex % partner_order; }

}  // namespace crossprod
