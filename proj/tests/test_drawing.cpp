#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "crossprod/drawing.hpp"
#include "crossprod/families.hpp"
#include "crossprod/harness.hpp"
#include "crossprod/planarity.hpp"
#include "crossprod/subgraph.hpp"

using namespace crossprod;

namespace {

const Atlas& atlas() {
  static Atlas a = load_atlas_file(default_atlas_path());
  return a;
}

PolylineDrawing straight(const Graph& g, const std::vector<Point>& pts) {
  PolylineDrawing d{g, pts, {}};
  for (const auto& e : g.edges()) d.edge_paths.push_back({pts[e.u], pts[e.v]});
  return d;
}

PolylineDrawing family(const char* key, Partner p, int n) {
  return generate_family_drawing(find_family(key, p), n, atlas());
}

// K5 with one crossing: K4 with d inside triangle abc, e below ab joined to d
// straight through ab and to c around the outside.
PolylineDrawing k5_one_crossing() {
  Graph k5 = build_elementary(ElementaryKind::complete, 5);
  std::vector<Point> pts{pt(0, 0), pt(4, 0), pt(1, 4), pt(2, 1), pt(2, -2)};
  PolylineDrawing d = straight(k5, pts);
  int ce = k5.edge_index(2, 4);
  d.edge_paths[ce] = {pts[2], pt(6, 5), pt(6, -2), pts[4]};
  return d;
}

int count_of(const std::string& hay, const std::string& needle) {
  int c = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++c;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Crossings, XConfiguration) {
  Graph g(4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  auto d = straight(g, {pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)});
  EXPECT_EQ(count_crossings(d), 1u);
  auto a = analyze_drawing(d);
  ASSERT_EQ(a.crossings.size(), 1u);
  EXPECT_EQ(a.crossings[0].at, pt(1, 1));
  EXPECT_EQ(a.crossings[0].t_a, Rational(1, 2));
}

TEST(Crossings, ConvexC4IsPlane) {
  auto d = straight(build_elementary(ElementaryKind::cycle, 4), {pt(0, 0), pt(3, 0), pt(3, 2), pt(0, 2)});
  EXPECT_EQ(count_crossings(d), 0u);
}

TEST(Crossings, SharedEndpointsAreNotCrossings) {
  auto d = straight(build_elementary(ElementaryKind::star, 3), {pt(0, 0), pt(1, 0), pt(0, 1), pt(-1, -1)});
  EXPECT_EQ(count_crossings(d), 0u);
}

TEST(Crossings, Family63CycleAt5) { EXPECT_EQ(count_crossings(family("6.63", Partner::cycle, 5)), 10u); }

TEST(Crossings, ConvexK5HasFive) {
  Graph k5 = build_elementary(ElementaryKind::complete, 5);
  auto d = straight(k5, {pt(0, 3), pt(3, 1), pt(2, -3), pt(-2, -3), pt(-3, 1)});
  EXPECT_EQ(count_crossings(d), 5u);
  EXPECT_EQ(count_crossings(k5_one_crossing()), 1u);
}

TEST(Degeneracy, VertexOnSegmentInterior) {
  Graph g(3, std::vector<std::pair<int, int>>{{0, 1}});
  auto d = straight(g, {pt(0, 0), pt(2, 0), pt(1, 0)});
  EXPECT_THROW(count_crossings(d), DegeneracyError);
}

TEST(Degeneracy, CollinearOverlapNamesSegments) {
  Graph g(4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  auto d = straight(g, {pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)});
  try {
    count_crossings(d);
    FAIL() << "expected a degeneracy error";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(std::min(e.edge_a, e.edge_b), 0);
    EXPECT_EQ(std::max(e.edge_a, e.edge_b), 1);
    EXPECT_EQ(e.seg_a, 0);
    EXPECT_EQ(e.seg_b, 0);
  }
}

TEST(Degeneracy, TriplePoint) {
  Graph g(6, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}});
  auto d = straight(g, {pt(-1, 0), pt(1, 0), pt(0, -1), pt(0, 1), pt(-1, -1), pt(1, 1)});
  EXPECT_THROW(count_crossings(d), DegeneracyError);
}

TEST(Degeneracy, BadPathsRejected) {
  Graph g(2, std::vector<std::pair<int, int>>{{0, 1}});
  PolylineDrawing d{g, {pt(0, 0), pt(1, 0)}, {{pt(0, 0), pt(0, 0), pt(1, 0)}}};
  EXPECT_THROW(validate_structure(d), DegeneracyError);
  d.edge_paths = {{pt(0, 0), pt(2, 0)}};
  EXPECT_THROW(validate_structure(d), DegeneracyError);
  d.edge_paths = {{pt(0, 0)}};
  EXPECT_THROW(validate_structure(d), DegeneracyError);
}

TEST(GoodDrawing, FamilyDrawingIsGood) { EXPECT_TRUE(check_good_drawing(family("6.63", Partner::cycle, 4)).good()); }

TEST(GoodDrawing, SelfCrossingEdge) {
  Graph g(2, std::vector<std::pair<int, int>>{{0, 1}});
  PolylineDrawing d{g, {pt(0, 0), pt(6, 0)}, {{pt(0, 0), pt(4, 0), pt(4, 2), pt(2, -2), pt(6, 0)}}};
  auto r = check_good_drawing(d);
  EXPECT_FALSE(r.no_self_intersection);
  EXPECT_TRUE(r.no_adjacent_crossing);
  EXPECT_TRUE(r.no_double_crossing);
  EXPECT_FALSE(r.good());
}

TEST(GoodDrawing, AdjacentEdgesCrossing) {
  Graph g(3, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  PolylineDrawing d{g, {pt(0, 0), pt(4, 0), pt(4, 2)}, {}};
  d.edge_paths.push_back({pt(0, 0), pt(4, 0)});
  d.edge_paths.push_back({pt(0, 0), pt(2, -1), pt(3, 1), pt(4, 2)});
  auto r = check_good_drawing(d);
  EXPECT_TRUE(r.no_self_intersection);
  EXPECT_FALSE(r.no_adjacent_crossing);
  EXPECT_THROW(planarize_drawing(d), DegeneracyError);
}

TEST(GoodDrawing, DoubleCrossing) {
  Graph g(4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  PolylineDrawing d{g, {pt(0, 0), pt(10, 0), pt(2, 1), pt(5, 1)}, {}};
  d.edge_paths.push_back({pt(0, 0), pt(10, 0)});
  d.edge_paths.push_back({pt(2, 1), pt(3, -1), pt(5, 1)});
  EXPECT_EQ(count_crossings(d), 2u);
  auto r = check_good_drawing(d);
  EXPECT_FALSE(r.no_double_crossing);
  EXPECT_TRUE(r.no_adjacent_crossing);
}

TEST(Planarize, NoCrossingsGivesSameGraph) {
  auto d = straight(build_elementary(ElementaryKind::cycle, 4), {pt(0, 0), pt(3, 0), pt(3, 2), pt(0, 2)});
  auto p = planarize_drawing(d);
  EXPECT_TRUE(is_isomorphic(p.graph, d.graph));
}

TEST(Planarize, K5OneCrossing) {
  auto p = planarize_drawing(k5_one_crossing());
  EXPECT_EQ(p.graph.order(), 6);
  EXPECT_EQ(p.graph.edge_count(), 12u);
  EXPECT_EQ(p.graph.degree(5), 4);
  auto r = test_planarity(p.graph);
  ASSERT_TRUE(r.planar);
  EXPECT_EQ(faces_of(p.graph, r.embedding).size(), 8u);
  ASSERT_EQ(p.crossed_edges.size(), 1u);
  Graph k5 = build_elementary(ElementaryKind::complete, 5);
  auto [e1, e2] = p.crossed_edges[0];
  EXPECT_EQ(std::min(e1, e2), k5.edge_index(0, 1));
  EXPECT_EQ(std::max(e1, e2), k5.edge_index(3, 4));
}

TEST(Planarize, Family92CycleAt3) {
  auto d = family("6.92", Partner::cycle, 3);
  auto p = planarize_drawing(d);
  EXPECT_EQ(p.graph.order() - d.graph.order(), 9);
  EXPECT_TRUE(is_planar(p.graph));
}

TEST(Planarize, ChainsFollowEdges) {
  auto d = family("6.77", Partner::cycle, 4);
  auto p = planarize_drawing(d);
  ASSERT_EQ(p.chains.size(), d.graph.edge_count());
  std::size_t dummy_slots = 0;
  for (std::size_t i = 0; i < p.chains.size(); ++i) {
    const auto& ch = p.chains[i];
    ASSERT_EQ(ch.front(), d.graph.edge(i).u);
    ASSERT_EQ(ch.back(), d.graph.edge(i).v);
    for (std::size_t k = 0; k + 1 < ch.size(); ++k) ASSERT_TRUE(p.graph.has_edge(ch[k], ch[k + 1]));
    dummy_slots += ch.size() - 2;
  }
  EXPECT_EQ(dummy_slots, 2 * count_crossings(d));
}

// Every family drawing at small n: count = added vertices, planarized graph planar.
TEST(Planarize, CountMatchesAddedVertices) {
  for (const auto& f : list_supported_families())
    for (int n = f.min_n; n <= f.min_n + 3; ++n) {
      auto d = generate_family_drawing(f, n, atlas());
      auto a = analyze_drawing(d);
      auto p = planarize_drawing(d, a);
      ASSERT_EQ(static_cast<std::size_t>(p.graph.order() - d.graph.order()), a.crossings.size()) << f.id() << n;
      ASSERT_TRUE(test_planarity(p.graph).planar) << f.id() << " n=" << n;
    }
}

TEST(Properties, AffineInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4);
  auto d0 = family("6.63", Partner::cycle, 5);
  auto d1 = family("6.62", Partner::star, 4);
  for (int trial = 0; trial < 12; ++trial) {
    Rational a, b, c, dd;
    do {
      a = Rational(coef(rng), den(rng));
      b = Rational(coef(rng), den(rng));
      c = Rational(coef(rng), den(rng));
      dd = Rational(coef(rng), den(rng));
    } while (a * dd - b * c <= 0);
    Rational ex(coef(rng), den(rng)), ey(coef(rng), den(rng));
    auto map = [&](const Point& p) { return Point{a * p.x + b * p.y + ex, c * p.x + dd * p.y + ey}; };
    for (const auto* src : {&d0, &d1}) {
      PolylineDrawing m = *src;
      for (auto& p : m.vertex_points) p = map(p);
      for (auto& path : m.edge_paths)
        for (auto& p : path) p = map(p);
      ASSERT_EQ(count_crossings(m), count_crossings(*src));
    }
  }
}

// Brute-force oracle with integer orientation tests (coordinates are k/6).
TEST(Properties, SegmentPredicateMatchesOrientationOracle) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> dens(0, 2);
  const int den_of[] = {1, 2, 3};
  Graph g(4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  int crossings = 0, degenerate = 0, disjoint = 0;
  for (int it = 0; it < 10000; ++it) {
    long long X[4], Y[4];
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i) {
      int dx = den_of[dens(rng)], dy = den_of[dens(rng)];
      // small numerators keep degeneracies frequent
      int nx = num(rng) / 3 * dx, ny = num(rng) / 3 * dy;
      if (it % 2) nx = num(rng), ny = num(rng);
      X[i] = 6LL * nx / dx;
      Y[i] = 6LL * ny / dy;
      pts.push_back(pt(Rational(nx, dx), Rational(ny, dy)));
    }
    auto orient = [&](int a, int b, int c) {
      long long v = (X[b] - X[a]) * (Y[c] - Y[a]) - (Y[b] - Y[a]) * (X[c] - X[a]);
      return (v > 0) - (v < 0);
    };
    auto on_seg = [&](int a, int b, int c) {
      return orient(a, b, c) == 0 && std::min(X[a], X[b]) <= X[c] && X[c] <= std::max(X[a], X[b]) &&
             std::min(Y[a], Y[b]) <= Y[c] && Y[c] <= std::max(Y[a], Y[b]);
    };
    bool coincide = false;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) coincide |= X[i] == X[j] && Y[i] == Y[j];
    int expect;  // -1 degenerate
    if (coincide || on_seg(0, 1, 2) || on_seg(0, 1, 3) || on_seg(2, 3, 0) || on_seg(2, 3, 1))
      expect = -1;
    else if (orient(0, 1, 2) * orient(0, 1, 3) < 0 && orient(2, 3, 0) * orient(2, 3, 1) < 0)
      expect = 1;
    else
      expect = 0;
    auto d = straight(g, pts);
    int got;
    try {
      got = static_cast<int>(count_crossings(d));
    } catch (const DegeneracyError&) {
      got = -1;
    }
    ASSERT_EQ(got, expect) << "case " << it;
    crossings += expect == 1;
    degenerate += expect == -1;
    disjoint += expect == 0;
  }
  EXPECT_GT(crossings, 500);
  EXPECT_GT(degenerate, 100);
  EXPECT_GT(disjoint, 500);
}

TEST(Svg, TriangleElements) {
  auto d = straight(build_elementary(ElementaryKind::cycle, 3), {pt(0, 0), pt(4, 0), pt(Rational(1, 3), 3)});
  std::string s = drawing_to_svg(d);
  EXPECT_EQ(count_of(s, "<polyline"), 3);
  EXPECT_EQ(count_of(s, "<circle"), 3);
  // x = 1/3 shifted by the unit margin
  EXPECT_NE(s.find("cx=\"1.333333\""), std::string::npos);
  EXPECT_NE(s.find("version=\"1.1\""), std::string::npos);
}

TEST(Svg, DeterministicFiles) {
  auto dir = std::filesystem::temp_directory_path() / "crossprod_svg_test";
  std::filesystem::create_directories(dir);
  auto d = family("6.110", Partner::path, 2);
  export_svg(d, (dir / "a.svg").string());
  export_svg(d, (dir / "b.svg").string());
  std::string a = slurp((dir / "a.svg").string()), b = slurp((dir / "b.svg").string());
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(count_of(a, "<circle"), 6 * 3);
  std::filesystem::remove_all(dir);
}

TEST(Json, DrawingRoundTrip) {
  auto d = family("6.121", Partner::star, 3);
  auto back = drawing_from_json(drawing_to_json(d));
  EXPECT_EQ(back.graph, d.graph);
  EXPECT_EQ(back.vertex_points, d.vertex_points);
  EXPECT_EQ(back.edge_paths, d.edge_paths);
  EXPECT_EQ(rational_from_string("3/-6"), Rational(-1, 2));
  EXPECT_EQ(rational_to_string(Rational(-7, 3)), "-7/3");
}
