#include "crossprod/families.hpp"

#include <algorithm>
#include <map>

#include "crossprod/subgraph.hpp"

namespace crossprod {

std::string FamilySpec::id() const { return atlas_id.str() + "/" + to_string(partner); }

namespace {

using R = Rational;

QuasiPoly2 basis(std::int64_t c1, std::int64_t cn, std::int64_t cfl, std::int64_t cprod, int min_n) {
  FloorBasis b;
  b.c1 = c1;
  b.cn = cn;
  b.cfl = cfl;
  b.cprod = cprod;
  return QuasiPoly2::from_basis(b, min_n);
}

std::vector<FamilySpec> make_families() {
  auto spec = [](int idx, Partner p, int min_n, QuasiPoly2 f) {
    return FamilySpec{AtlasKey{6, idx}, p, min_n, std::move(f)};
  };
  return {
      spec(110, Partner::path, 1, basis(-1, 3, 0, 0, 1)),
      spec(137, Partner::path, 1, basis(0, 4, 0, 0, 1)),
      spec(63, Partner::cycle, 3, basis(0, 2, 0, 0, 3)),
      spec(64, Partner::cycle, 3, basis(0, 2, 0, 0, 3)),
      spec(75, Partner::cycle, 3, basis(0, 2, 0, 0, 3)),
      spec(77, Partner::cycle, 3, basis(0, 2, 0, 0, 3)),
      spec(92, Partner::cycle, 3, basis(0, 3, 0, 0, 3)),
      spec(98, Partner::cycle, 3, basis(0, 3, 0, 0, 3)),
      spec(62, Partner::star, 1, basis(0, 0, 2, 5, 1)),
      spec(121, Partner::star, 1, basis(0, 4, 0, 6, 1)),
  };
}

std::vector<std::pair<int, int>> path6() { return {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}; }
std::vector<std::pair<int, int>> cycle6() {
  auto e = path6();
  e.emplace_back(5, 0);
  return e;
}

// Template vertex y sits at level y for the cycle tiles.
TileSpec tile(std::vector<TileChord> chords) { return TileSpec{{0, 1, 2, 3, 4, 5}, std::move(chords)}; }

// ---------------------------------------------------------------------------
// Layout bookkeeping in template labels. Vertex (t, j) is template vertex t in
// copy j of the partner graph.

class Layout {
 public:
  explicit Layout(int copies) : copies_(copies), points_(6 * copies) {}

  void place(int t, int j, Point p) { points_[id(t, j)] = std::move(p); }
  const Point& at(int t, int j) const { return points_[id(t, j)]; }

  // Bends strictly between the two endpoints.
  void route(int t1, int j1, int t2, int j2, std::vector<Point> bends = {}) {
    int a = id(t1, j1), b = id(t2, j2);
    if (a > b) {
      std::swap(a, b);
      std::reverse(bends.begin(), bends.end());
    }
    if (!paths_.emplace(std::make_pair(a, b), std::move(bends)).second)
      throw FamilyError("layout routes an edge twice");
  }

  // Re-expressed in the product numbering of atlas_graph x partner through
  // phi (template vertex -> atlas vertex).
  PolylineDrawing realize(const Graph& product, const std::vector<int>& phi) const {
    std::vector<int> to_template(6);
    for (int t = 0; t < 6; ++t) to_template[phi[t]] = t;
    auto templ = [&](int v) { return id(to_template[v / copies_], v % copies_); };

    PolylineDrawing d;
    d.graph = product;
    d.vertex_points.resize(product.order());
    for (int v = 0; v < product.order(); ++v) d.vertex_points[v] = points_[templ(v)];
    for (const auto& e : product.edges()) {
      int a = templ(e.u), b = templ(e.v);
      bool flip = a > b;
      auto it = paths_.find({std::min(a, b), std::max(a, b)});
      if (it == paths_.end()) throw FamilyError("product edge missing from the layout");
      std::vector<Point> path{points_[a]};
      if (flip)
        path.insert(path.end(), it->second.rbegin(), it->second.rend());
      else
        path.insert(path.end(), it->second.begin(), it->second.end());
      path.push_back(points_[b]);
      d.edge_paths.push_back(std::move(path));
    }
    if (paths_.size() != product.edge_count()) throw FamilyError("layout routes edges the product lacks");
    return d;
  }

 private:
  int id(int t, int j) const { return t * copies_ + j; }
  int copies_;
  std::vector<Point> points_;
  std::map<std::pair<int, int>, std::vector<Point>> paths_;
};

// ---------------------------------------------------------------------------
// Nested squares. Angle th in [-1, 7) walks the unit square counterclockwise
// from (1,-1); corners sit at odd th. Point (th, r) is r times that.

Point square_polar(R th, const R& r) {
  while (th >= 7) th -= 8;
  while (th < -1) th += 8;
  if (th < 1) return {r, r * th};
  if (th < 3) return {r * (2 - th), r};
  if (th < 5) return {-r, r * (4 - th)};
  return {r * (th - 6), -r};
}

// Corner bends of an arc at radius r from a to b (either direction).
std::vector<Point> corners(const R& a, const R& b, const R& r) {
  std::vector<Point> out;
  R lo = a < b ? a : b, hi = a < b ? b : a;
  BigInt num = boost::multiprecision::numerator(lo), den = boost::multiprecision::denominator(lo);
  BigInt q = num / den;
  if (q * den > num) --q;  // floor for negative lo
  long long k = q.convert_to<long long>();
  if (k % 2 == 0) ++k;
  for (; R(k) < hi; k += 2)
    if (R(k) > lo) out.push_back(square_polar(R(k), r));
  if (b < a) std::reverse(out.begin(), out.end());
  return out;
}

void append(std::vector<Point>& a, const std::vector<Point>& b) { a.insert(a.end(), b.begin(), b.end()); }

// Cycle families: copy j is a column of six levels along the ray at angle
// th_j, level y at radius 4(y+1). The cycle edges run around each square.
// A chord leaves its column by a short diagonal and crosses exactly one cycle
// edge, the one at the level it skips.
Layout cycle_layout(const TileSpec& tile, int n) {
  Layout L(n);
  const R step = R(8) / n, delta = R(1, 4 * n);
  auto theta = [&](int j) { return R(16 * j + 1, 2 * n); };
  auto radius = [](int y) { return R(4 * (y + 1)); };
  for (int j = 0; j < n; ++j)
    for (int y = 0; y < 6; ++y) L.place(tile.spine_order[y], j, square_polar(theta(j), radius(y)));
  for (int j = 0; j < n; ++j) {
    R th = theta(j);
    for (int y = 0; y + 1 < 6; ++y) L.route(tile.spine_order[y], j, tile.spine_order[y + 1], j);
    for (int y = 0; y < 6; ++y)
      L.route(tile.spine_order[y], j, tile.spine_order[y], (j + 1) % n, corners(th, th + step, radius(y)));
    for (const auto& c : tile.chords) {
      R side = c.right ? R(th + delta) : R(th - delta);
      L.route(tile.spine_order[c.hi], j, tile.spine_order[c.lo], j,
              {square_polar(side, radius(c.hi) - 1), square_polar(side, radius(c.lo) + 1)});
    }
  }
  return L;
}

// Path families: copy j is a hexagon on square j+1; rungs are radial. A chord
// hugs its square from just inside (-1) or just outside (+1), passing one
// hexagon position, so it meets the rung there unless it faces an empty side.
struct RingChord {
  int from, to;
  int dir;     // +1 counterclockwise
  int offset;  // +1 outside, -1 inside
};

Layout path_layout(int n, const std::vector<RingChord>& inner_rings, const std::vector<RingChord>& last_ring) {
  const int copies = n + 1;
  Layout L(copies);
  const R delta(1, 48), step(4, 3);
  auto theta = [](int p) { return R(16 * p + 1, 12); };
  auto radius = [](int j) { return R(4 * (j + 1)); };
  for (int j = 0; j < copies; ++j)
    for (int p = 0; p < 6; ++p) L.place(p, j, square_polar(theta(p), radius(j)));
  for (int j = 0; j < copies; ++j) {
    R r = radius(j);
    for (int p = 0; p < 6; ++p) {
      L.route(p, j, (p + 1) % 6, j, corners(theta(p), theta(p) + step, r));
      if (j + 1 < copies) L.route(p, j, p, j + 1);
    }
    for (const auto& c : (j + 1 == copies ? last_ring : inner_rings)) {
      int hops = ((c.to - c.from) * c.dir % 6 + 6) % 6;
      R a = theta(c.from), b = a + c.dir * hops * step;
      R a1 = a + c.dir * delta, b1 = b - c.dir * delta, rr = r + c.offset;
      std::vector<Point> bends{square_polar(a1, rr)};
      append(bends, corners(a1, b1, rr));
      bends.push_back(square_polar(b1, rr));
      L.route(c.from, j, c.to, j, bends);
    }
  }
  return L;
}

// Star families. Copy 0 is the centre on the y axis; leaves 1..fl(n/2) go left
// at distance 4i, the rest go right. mirror() maps side-local coordinates,
// where x grows away from the centre, to the plane.
struct StarSides {
  int left, right;
  explicit StarSides(int n) : left(n / 2), right(n - n / 2) {}
  // (side sign, position from the centre) of leaf copy j >= 1.
  std::pair<int, int> where(int j) const { return j <= left ? std::make_pair(-1, j) : std::make_pair(1, j - left); }
};

Point mirror(int s, const R& x, const R& y) { return {s * x, y}; }

// G62: spine 0..5 with chords 3-0 and 3-1. Each leaf is a column at the
// centre's heights; its star edges arc over (levels 2..5) or under (0, 1) the
// nearer columns. On the left the centre's chord 3-1 fences level 2 and its
// chord 3-0 loops around the whole left group.
Layout star62_layout(int n) {
  StarSides sides(n);
  Layout L(n + 1);
  const int far = std::max(sides.left, sides.right) + 1;
  auto y = [](int l) { return R(4 * l); };
  for (int l = 0; l < 6; ++l) L.place(l, 0, {R(0), y(l)});
  for (int l = 0; l + 1 < 6; ++l) L.route(l, 0, l + 1, 0);
  L.route(3, 0, 1, 0, {{R(-1, 2), R(8)}});
  const R xl = 4 * std::max(sides.left, 1) + 3;
  L.route(3, 0, 0, 0, {{R(-1), R(31, 2)}, {-xl, R(31, 2)}, {-xl, R(-3)}, {R(-1), R(-3)}});

  for (int j = 1; j <= n; ++j) {
    auto [s, i] = sides.where(j);
    const R x = 4 * i, t(i, far);
    for (int l = 0; l < 6; ++l) L.place(l, j, mirror(s, x, y(l)));
    for (int l = 0; l + 1 < 6; ++l) L.route(l, j, l + 1, j);
    L.route(3, j, 0, j, {mirror(s, x + R(3, 2), R(6))});
    L.route(3, j, 1, j, {mirror(s, x + R(3, 4), R(8))});
    const R h[6] = {-1 - t, -t, 12 + t, 13 + t, 17 + 2 * t, 21 + t};
    for (int l = 0; l < 6; ++l) L.route(l, 0, l, j, {mirror(s, R(1), h[l]), mirror(s, x - 1, h[l])});
  }
  return L;
}

// G121: spine 0..5 at heights 7,6,5,2,1,0 with chords 1-3 and 0-4 on the left,
// 2-4 and 1-5 on the right. Leaves are small boxes at height 7/2 joined to the
// spine by straight lines; a box is small enough that the lines towards any
// farther box clear it.
Layout star121_layout(int n) {
  StarSides sides(n);
  Layout L(n + 1);
  const R height[6] = {7, 6, 5, 2, 1, 0};
  for (int t = 0; t < 6; ++t) L.place(t, 0, {R(0), height[t]});
  for (int t = 0; t + 1 < 6; ++t) L.route(t, 0, t + 1, 0);
  const R xr = 4 * std::max(sides.right, 1) + 2, xl = 4 * std::max(sides.left, 1) + 2;
  L.route(2, 0, 4, 0, {{R(1, 2), R(3)}});
  L.route(1, 0, 5, 0, {{R(1), R(13, 2)}, {xr, R(13, 2)}, {xr, R(-1)}, {R(1), R(-1)}});
  L.route(1, 0, 3, 0, {{R(-1, 2), R(4)}});
  L.route(0, 0, 4, 0, {{R(-1), R(15, 2)}, {-xl, R(15, 2)}, {-xl, R(-1)}, {R(-1), R(-1)}});

  // Box shape: upper row 2,1,0 and lower row 3,4,5, deeper vertices farther out.
  const R box[6][2] = {{1, R(1, 2)}, {R(1, 2), R(2, 5)}, {0, R(3, 10)},
                       {0, R(-3, 10)}, {R(1, 2), R(-2, 5)}, {1, R(-1, 2)}};
  const int per_side = std::max(sides.left, sides.right);
  for (int j = 1; j <= n; ++j) {
    auto [s, i] = sides.where(j);
    const R x = 4 * i, scale(1, per_side + 1);
    for (int t = 0; t < 6; ++t) L.place(t, j, mirror(s, x + scale * box[t][0], R(7, 2) + scale * box[t][1]));
    for (int t = 0; t + 1 < 6; ++t) L.route(t, j, t + 1, j);
    L.route(1, j, 3, j);
    L.route(2, j, 4, j);
    L.route(1, j, 5, j);
    L.route(0, j, 4, j);
    for (int t = 0; t < 6; ++t) L.route(t, 0, t, j);
  }
  return L;
}

}  // namespace

Graph partner_graph(Partner p, int n) {
  switch (p) {
    case Partner::path: return build_elementary(ElementaryKind::path, n);
    case Partner::cycle: return build_elementary(ElementaryKind::cycle, n);
    case Partner::star: return build_elementary(ElementaryKind::star, n);
  }
  throw FamilyError("unknown partner");
}

const std::vector<FamilySpec>& list_supported_families() {
  static const std::vector<FamilySpec> all = make_families();
  return all;
}

const FamilySpec& find_family(const std::string& atlas_key, Partner partner) {
  for (const auto& f : list_supported_families())
    if (f.atlas_id.str() == atlas_key && f.partner == partner) return f;
  throw FamilyError("no construction for " + atlas_key + "/" + to_string(partner));
}

std::optional<TileSpec> family_tile(const FamilySpec& spec) {
  if (spec.partner != Partner::cycle) return std::nullopt;
  switch (spec.atlas_id.index) {
    case 63: return tile({{1, 3, true}, {0, 2, false}});
    case 64: return tile({{2, 4, false}, {0, 2, false}});
    case 75: return tile({{2, 4, true}, {1, 3, false}});
    case 77: return tile({{3, 5, true}, {0, 2, true}});
    case 92: return tile({{3, 5, true}, {1, 3, true}, {0, 2, false}});
    case 98: return tile({{2, 4, true}, {0, 2, true}, {1, 3, false}});
  }
  throw FamilyError("no tile for " + spec.id());
}

Graph family_template(const FamilySpec& spec) {
  if (auto t = family_tile(spec)) {
    auto es = path6();
    for (const auto& c : t->chords) es.emplace_back(t->spine_order[c.lo], t->spine_order[c.hi]);
    return Graph(6, es);
  }
  std::vector<std::pair<int, int>> es;
  switch (spec.atlas_id.index) {
    case 110:
      es = cycle6();
      es.insert(es.end(), {{0, 2}, {0, 4}, {1, 5}});
      break;
    case 137:
      es = cycle6();
      es.insert(es.end(), {{0, 2}, {0, 4}, {1, 3}, {3, 5}});
      break;
    case 62:
      es = path6();
      es.insert(es.end(), {{0, 3}, {1, 3}});
      break;
    case 121:
      es = path6();
      es.insert(es.end(), {{1, 3}, {2, 4}, {1, 5}, {0, 4}});
      break;
    default: throw FamilyError("no template for " + spec.id());
  }
  return Graph(6, es);
}

std::vector<StructureCheck> check_family_templates(const Atlas& atlas) {
  std::vector<StructureCheck> out;
  for (const auto& f : list_supported_families()) {
    const AtlasEntry* e = atlas.find(f.atlas_id);
    if (!e) {
      out.push_back({f.id() + ": atlas entry missing", false});
      continue;
    }
    bool ok = is_isomorphic(family_template(f), e->graph);
    out.push_back({f.id() + (ok ? ": atlas graph matches its template" : ": atlas graph differs from its template"), ok});
  }
  return out;
}

PolylineDrawing generate_family_drawing(const FamilySpec& spec, int n, const Atlas& atlas) {
  const Graph* g = nullptr;
  try {
    g = &atlas.graph(spec.atlas_id);
  } catch (const AtlasError& e) {
    throw FamilyError(e.what());
  }
  return generate_family_drawing(spec, n, *g);
}

PolylineDrawing generate_family_drawing(const FamilySpec& spec, int n, const Graph& atlas_graph) {
  if (n < spec.min_n)
    throw FamilyError(spec.id() + " needs n >= " + std::to_string(spec.min_n) + ", got " + std::to_string(n));
  Graph templ = family_template(spec);
  auto phi = find_isomorphism(templ, atlas_graph);
  if (!phi) throw FamilyError("atlas graph " + spec.atlas_id.str() + " does not match the " + spec.id() + " layout");

  std::optional<Layout> L;
  if (auto t = family_tile(spec)) {
    L = cycle_layout(*t, n);
  } else if (spec.atlas_id.index == 110) {
    // Inner rings tuck 0-2 and 0-4 inside and 1-5 outside; the last ring flips
    // all three so they face the empty outside.
    L = path_layout(n, {{0, 2, 1, -1}, {0, 4, -1, -1}, {1, 5, -1, 1}},
                    {{0, 2, 1, 1}, {0, 4, -1, 1}, {1, 5, -1, -1}});
  } else if (spec.atlas_id.index == 137) {
    std::vector<RingChord> ring{{0, 2, 1, 1}, {0, 4, -1, 1}, {3, 1, -1, -1}, {3, 5, 1, -1}};
    L = path_layout(n, ring, ring);
  } else if (spec.atlas_id.index == 62) {
    L = star62_layout(n);
  } else if (spec.atlas_id.index == 121) {
    L = star121_layout(n);
  } else {
    throw FamilyError("no construction for " + spec.id());
  }
  return L->realize(cartesian_product(atlas_graph, partner_graph(spec.partner, n)), *phi);
}

}  // namespace crossprod
