#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "crossprod/families.hpp"
#include "crossprod/harness.hpp"
#include "crossprod/planarity.hpp"
#include "crossprod/subgraph.hpp"
#include "support/oracles.hpp"

using namespace crossprod;

namespace {

const Atlas& atlas() {
  static Atlas a = load_atlas_file(default_atlas_path());
  return a;
}

std::size_t crossings_of(const char* key, Partner p, int n) {
  return count_crossings(generate_family_drawing(find_family(key, p), n, atlas()));
}

// The formulas written out with explicit floors.
std::int64_t closed_form(const std::string& id, std::int64_t n) {
  std::int64_t h = n / 2, h1 = (n - 1) / 2;
  if (id == "6.110/path") return 3 * n - 1;
  if (id == "6.137/path") return 4 * n;
  if (id == "6.63/cycle" || id == "6.64/cycle" || id == "6.75/cycle" || id == "6.77/cycle") return 2 * n;
  if (id == "6.92/cycle" || id == "6.98/cycle") return 3 * n;
  if (id == "6.62/star") return 5 * h * h1 + 2 * h;
  if (id == "6.121/star") return 6 * h * h1 + 4 * n;
  return -1;
}

}  // namespace

TEST(Families, Examples) {
  EXPECT_EQ(crossings_of("6.63", Partner::cycle, 4), 8u);
  EXPECT_EQ(crossings_of("6.110", Partner::path, 1), 2u);
  EXPECT_EQ(crossings_of("6.62", Partner::star, 4), 14u);
  EXPECT_EQ(crossings_of("6.121", Partner::star, 3), 18u);
}

TEST(Families, SupportedList) {
  const auto& fs = list_supported_families();
  EXPECT_EQ(fs.size(), 10u);
  std::vector<std::string> ids;
  for (const auto& f : fs) ids.push_back(f.id());
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<std::string>{"6.110/path", "6.121/star", "6.137/path", "6.62/star", "6.63/cycle",
                                           "6.64/cycle", "6.75/cycle", "6.77/cycle", "6.92/cycle", "6.98/cycle"}));
  EXPECT_NO_THROW(find_family("6.98", Partner::cycle));
  EXPECT_THROW(find_family("6.59", Partner::cycle), FamilyError);
  EXPECT_THROW(find_family("6.63", Partner::path), FamilyError);
  for (const auto& f : fs) EXPECT_EQ(f.min_n, f.partner == Partner::cycle ? 3 : 1) << f.id();
}

TEST(Families, FormulasMatchExplicitFloors) {
  for (const auto& f : list_supported_families())
    for (std::int64_t n = f.min_n; n <= 100; ++n)
      ASSERT_EQ(eval_formula(f.target_formula, n), closed_form(f.id(), n)) << f.id() << " n=" << n;
}

TEST(Families, RangeErrors) {
  const auto& f = find_family("6.63", Partner::cycle);
  EXPECT_THROW(generate_family_drawing(f, 2, atlas()), FamilyError);
  EXPECT_THROW(generate_family_drawing(find_family("6.62", Partner::star), 0, atlas()), FamilyError);
}

TEST(Families, AtlasMismatchIsAnError) {
  const auto& f = find_family("6.63", Partner::cycle);
  EXPECT_THROW(generate_family_drawing(f, 4, atlas().graph("6.64")), FamilyError);
  EXPECT_THROW(generate_family_drawing(f, 4, atlas().with_swapped({6, 63}, {6, 64})), FamilyError);
}

// Count, goodness and planarization over the whole range.
TEST(Families, AllFamiliesUpTo30) {
  for (const auto& f : list_supported_families()) {
    const Graph& g = atlas().graph(f.atlas_id);
    for (int n = f.min_n; n <= 30; ++n) {
      PolylineDrawing d = generate_family_drawing(f, n, atlas());
      ASSERT_EQ(d.graph, cartesian_product(g, partner_graph(f.partner, n))) << f.id() << " n=" << n;
      CrossingAnalysis a = analyze_drawing(d);
      ASSERT_EQ(static_cast<std::int64_t>(a.crossings.size()), closed_form(f.id(), n)) << f.id() << " n=" << n;
      ASSERT_TRUE(check_good_drawing(d, a).good()) << f.id() << " n=" << n;
      ASSERT_TRUE(is_planar(planarize_drawing(d, a).graph)) << f.id() << " n=" << n;
    }
  }
}

// Each copy of the small graph carries the same number of crossings.
TEST(Families, CycleTilesAreRegular) {
  for (const auto& f : list_supported_families()) {
    if (f.partner != Partner::cycle) continue;
    for (int n = 3; n <= 12; ++n) {
      PolylineDrawing d = generate_family_drawing(f, n, atlas());
      std::vector<int> per(n, 0);
      for (const auto& c : analyze_drawing(d).crossings)
        for (int e : {c.edge_a, c.edge_b}) {
          const Edge& ed = d.graph.edge(e);
          if (product_copy(ed.u, n) == product_copy(ed.v, n)) ++per[product_copy(ed.u, n)];
        }
      std::int64_t each = closed_form(f.id(), n) / n;
      for (int j = 0; j < n; ++j) ASSERT_EQ(per[j], each) << f.id() << " n=" << n << " copy " << j;
    }
  }
}

TEST(Families, TilesReproduceTemplates) {
  int tiles = 0;
  for (const auto& f : list_supported_families()) {
    auto t = family_tile(f);
    if (f.partner != Partner::cycle) {
      EXPECT_FALSE(t) << f.id();
      continue;
    }
    ASSERT_TRUE(t) << f.id();
    ++tiles;
    std::vector<int> perm = t->spine_order;
    std::sort(perm.begin(), perm.end());
    ASSERT_EQ(perm, (std::vector<int>{0, 1, 2, 3, 4, 5}));
    std::vector<std::pair<int, int>> es;
    for (int l = 0; l + 1 < 6; ++l) es.push_back({t->spine_order[l], t->spine_order[l + 1]});
    for (const auto& c : t->chords) {
      ASSERT_LT(c.lo, c.hi);
      es.push_back({t->spine_order[c.lo], t->spine_order[c.hi]});
    }
    EXPECT_EQ(Graph(6, es), family_template(f)) << f.id();
    EXPECT_TRUE(is_isomorphic(family_template(f), atlas().graph(f.atlas_id))) << f.id();
  }
  EXPECT_EQ(tiles, 6);
}

TEST(Families, RelabeledAtlasGraphStillWorks) {
  std::mt19937_64 rng(21);
  for (const auto& f : list_supported_families()) {
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph g = atlas().graph(f.atlas_id).relabeled(perm);
    int n = f.min_n + 2;
    PolylineDrawing d = generate_family_drawing(f, n, g);
    EXPECT_EQ(d.graph, cartesian_product(g, partner_graph(f.partner, n)));
    EXPECT_EQ(static_cast<std::int64_t>(count_crossings(d)), closed_form(f.id(), n)) << f.id();
  }
}

TEST(Families, PartnerConventions) {
  EXPECT_EQ(partner_graph(Partner::path, 3).order(), 4);
  EXPECT_EQ(partner_graph(Partner::cycle, 3).order(), 3);
  EXPECT_EQ(partner_graph(Partner::star, 3).order(), 4);
  EXPECT_EQ(partner_graph(Partner::star, 3).degree(0), 3);
}
