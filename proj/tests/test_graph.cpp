#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "crossprod/atlas.hpp"
#include "crossprod/families.hpp"
#include "crossprod/graph.hpp"
#include "crossprod/graph6.hpp"
#include "crossprod/harness.hpp"
#include "crossprod/subgraph.hpp"
#include "support/oracles.hpp"

using namespace crossprod;

namespace {

Graph complete(int n) { return build_elementary(ElementaryKind::complete, n); }

const Atlas& atlas() {
  static Atlas a = load_atlas_file(default_atlas_path());
  return a;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(Graph, RejectsLoopsMultiEdgesAndBadEndpoints) {
  using E = std::vector<std::pair<int, int>>;
  EXPECT_THROW(Graph(3, E{{0, 0}}), GraphError);
  EXPECT_THROW(Graph(3, E{{0, 1}, {1, 0}}), GraphError);
  EXPECT_THROW(Graph(3, E{{0, 3}}), GraphError);
  Graph g(3, {{2, 0}, {1, 0}});
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (Edge{0, 2}));
}

TEST(Elementary, SizeConventions) {
  Graph p = build_elementary(ElementaryKind::path, 3);
  EXPECT_EQ(p.order(), 4);
  EXPECT_EQ(p, Graph(4, {{0, 1}, {1, 2}, {2, 3}}));

  Graph c = build_elementary(ElementaryKind::cycle, 3);
  EXPECT_EQ(c.order(), 3);
  EXPECT_EQ(c.edge_count(), 3u);

  Graph s = build_elementary(ElementaryKind::star, 3);
  EXPECT_EQ(s.order(), 4);
  EXPECT_EQ(s.edge_count(), 3u);
  EXPECT_EQ(s.degree(0), 3);

  Graph k33 = build_elementary(ElementaryKind::complete_bipartite, 3, 3);
  EXPECT_EQ(k33.order(), 6);
  EXPECT_EQ(k33.edge_count(), 9u);
  EXPECT_THROW(build_elementary(ElementaryKind::cycle, 2), GraphError);
}

TEST(Product, P3BoxP4) {
  Graph g = cartesian_product(build_elementary(ElementaryKind::path, 3), build_elementary(ElementaryKind::path, 4));
  EXPECT_EQ(g.order(), 20);
  EXPECT_EQ(g.edge_count(), 31u);
}

TEST(Product, RowMajorFlattening) {
  Graph g = build_elementary(ElementaryKind::path, 1);
  Graph h = build_elementary(ElementaryKind::cycle, 3);
  Graph p = cartesian_product(g, h);
  // (1,2) is 1*3+2
  EXPECT_TRUE(p.has_edge(2, 5));
  EXPECT_TRUE(p.has_edge(3, 5));
  EXPECT_FALSE(p.has_edge(2, 4));
}

TEST(Product, IdentityAndCommutativity) {
  Graph k1(1);
  for (const auto& e : atlas().entries()) {
    EXPECT_TRUE(is_isomorphic(cartesian_product(k1, e.graph), e.graph)) << e.key().str();
  }
  Graph a = atlas().graph("6.63"), b = build_elementary(ElementaryKind::star, 3);
  EXPECT_TRUE(is_isomorphic(cartesian_product(a, b), cartesian_product(b, a)));
}

TEST(Product, EdgeCountIdentity) {
  std::vector<Graph> gs;
  for (int n = 1; n <= 5; ++n) {
    gs.push_back(build_elementary(ElementaryKind::path, n));
    gs.push_back(build_elementary(ElementaryKind::star, n));
    if (n >= 3) gs.push_back(build_elementary(ElementaryKind::cycle, n));
    gs.push_back(complete(n));
  }
  for (const auto& e : atlas().entries()) gs.push_back(e.graph);
  for (const auto& g : gs)
    for (const auto& h : gs) {
      Graph p = cartesian_product(g, h);
      ASSERT_EQ(p.order(), g.order() * h.order());
      ASSERT_EQ(p.edge_count(), g.order() * h.edge_count() + h.order() * g.edge_count());
    }
}

TEST(Graph6, KnownStrings) {
  EXPECT_EQ(parse_graph6("C~"), complete(4));
  EXPECT_EQ(parse_graph6("D~{"), complete(5));
  Graph k1 = parse_graph6("@");
  EXPECT_EQ(k1.order(), 1);
  EXPECT_EQ(k1.edge_count(), 0u);
  EXPECT_EQ(encode_graph6(complete(4)), "C~");
  EXPECT_EQ(encode_graph6(Graph(1)), "@");
  EXPECT_EQ(parse_graph6(">>graph6<<C~\n"), complete(4));
}

TEST(Graph6, ErrorsCarryOffsets) {
  EXPECT_THROW(parse_graph6(""), Graph6Error);
  try {
    parse_graph6("C~~");
    FAIL();
  } catch (const Graph6Error& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  try {
    parse_graph6("D~");
    FAIL();
  } catch (const Graph6Error& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(parse_graph6("C\x10"), Graph6Error);
}

TEST(Graph6, RoundTripRandom) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    int n = 1 + static_cast<int>(rng() % 10);
    Graph g = oracle::random_graph(n, std::uniform_real_distribution<>(0, 1)(rng), rng);
    ASSERT_EQ(parse_graph6(encode_graph6(g)), g) << encode_graph6(g);
  }
}

TEST(Graph6, RoundTripAllOrdersUpTo62) {
  std::mt19937_64 rng(99);
  for (int n = 0; n <= 62; ++n) {
    Graph g = oracle::random_graph(n, 0.3, rng);
    std::string s = encode_graph6(g);
    ASSERT_EQ(parse_graph6(s), g) << n;
    ASSERT_EQ(s, encode_graph6_any(g));
  }
  Graph big = oracle::random_graph(100, 0.05, rng);
  EXPECT_THROW(encode_graph6(big), GraphError);
  EXPECT_EQ(parse_graph6(encode_graph6_any(big)), big);
}

TEST(Subgraph, Examples) {
  EXPECT_TRUE(is_subgraph_of(atlas().graph("6.42"), atlas().graph("6.63")));
  EXPECT_TRUE(is_subgraph_of(atlas().graph("6.40"), atlas().graph("6.59")));
  EXPECT_TRUE(is_subgraph_of(build_elementary(ElementaryKind::path, 2), build_elementary(ElementaryKind::cycle, 3)));
  EXPECT_FALSE(is_subgraph_of(complete(4), build_elementary(ElementaryKind::cycle, 4)));
}

TEST(Subgraph, MappingsCheckDirectly) {
  const auto& es = atlas().entries();
  for (const auto& a : es)
    for (const auto& b : es) {
      if (a.vertex_count != b.vertex_count) continue;
      auto phi = find_subgraph_mapping(a.graph, b.graph);
      if (phi) ASSERT_TRUE(check_mapping(a.graph, b.graph, *phi)) << a.key().str() << " in " << b.key().str();
    }
}

TEST(Subgraph, ReflexiveAndTransitiveOnAtlas) {
  std::vector<const AtlasEntry*> six;
  for (const auto& e : atlas().entries())
    if (e.vertex_count == 6) six.push_back(&e);
  const std::size_t k = six.size();
  std::vector<std::vector<char>> rel(k, std::vector<char>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rel[i][j] = is_subgraph_of(six[i]->graph, six[j]->graph);
  for (std::size_t i = 0; i < k; ++i) EXPECT_TRUE(rel[i][i]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (rel[i][j] && rel[j][l]) ASSERT_TRUE(rel[i][l]);
}

TEST(Isomorphism, Examples) {
  std::mt19937_64 rng(5);
  Graph c4 = build_elementary(ElementaryKind::cycle, 4);
  EXPECT_TRUE(is_isomorphic(c4, c4.relabeled(random_perm(4, rng))));
  EXPECT_FALSE(is_isomorphic(complete(4), c4));
  EXPECT_FALSE(is_isomorphic(build_elementary(ElementaryKind::star, 3), build_elementary(ElementaryKind::path, 3)));
}

TEST(Isomorphism, EquivalenceOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    int n = 4 + static_cast<int>(rng() % 5);
    Graph a = oracle::random_graph(n, 0.5, rng);
    Graph b = a.relabeled(random_perm(n, rng));
    Graph c = b.relabeled(random_perm(n, rng));
    ASSERT_TRUE(is_isomorphic(a, a));
    auto phi = find_isomorphism(a, b);
    ASSERT_TRUE(phi);
    ASSERT_TRUE(check_mapping(a, b, *phi));
    ASSERT_TRUE(is_isomorphic(b, a));
    ASSERT_TRUE(is_isomorphic(a, c));
    Graph d = oracle::random_graph(n, 0.5, rng);
    // symmetric verdict either way
    ASSERT_EQ(is_isomorphic(a, d), is_isomorphic(d, a));
  }
}

TEST(Atlas, K4Entry) {
  std::istringstream in("4.6 C~\n");
  Atlas a = load_atlas(in, false);
  ASSERT_EQ(a.entries().size(), 1u);
  EXPECT_EQ(a.entries()[0].vertex_count, 4);
  EXPECT_EQ(a.entries()[0].harary_index, 6);
  EXPECT_EQ(a.entries()[0].graph, complete(4));
  EXPECT_EQ(atlas().graph("4.6"), complete(4));
}

TEST(Atlas, MissingEntryIsNamed) {
  std::ifstream f(default_atlas_path());
  std::ostringstream kept;
  std::string line;
  while (std::getline(f, line))
    if (line.rfind("6.113 ", 0) != 0) kept << line << "\n";
  std::istringstream in(kept.str());
  try {
    load_atlas(in);
    FAIL() << "expected an error";
  } catch (const AtlasError& e) {
    EXPECT_NE(std::string(e.what()).find("6.113"), std::string::npos) << e.what();
  }
}

TEST(Atlas, EmptyFileRejected) {
  std::istringstream in("# nothing\n");
  EXPECT_THROW(load_atlas(in), AtlasError);
}

TEST(Atlas, MalformedLinesRejected) {
  std::istringstream dup("4.6 C~\n4.6 C~\n");
  EXPECT_THROW(load_atlas(dup, false), AtlasError);
  std::istringstream order("4.6 D~{\n");
  EXPECT_THROW(load_atlas(order, false), AtlasError);
  std::istringstream key("x.6 C~\n");
  EXPECT_THROW(load_atlas(key, false), AtlasError);
}

TEST(Atlas, EdgeCountsFollowIndexBlocks) {
  for (const auto& e : atlas().entries()) {
    int want = e.vertex_count == 6 ? six_vertex_edge_count_for_index(e.harary_index)
                                   : four_vertex_edge_count_for_index(e.harary_index);
    EXPECT_EQ(static_cast<int>(e.graph.edge_count()), want) << e.key().str();
  }
}

TEST(AtlasRelations, AllPass) {
  AtlasReport r = validate_atlas_relations(atlas());
  EXPECT_EQ(r.relations.size(), 16u);
  for (const auto& rel : r.relations) EXPECT_EQ(rel.status, CheckStatus::pass) << rel.label;
  for (const auto& s : r.structure) EXPECT_TRUE(s.ok) << s.what;
  EXPECT_TRUE(r.ok());
}

TEST(AtlasRelations, SwapDetected) {
  AtlasReport r = validate_atlas_relations(atlas().with_swapped({6, 63}, {6, 64}));
  EXPECT_FALSE(r.ok());
}

// Relations and structure catch every swap of relation entries except five
// pairs that play symmetric roles in the relations. The full pipeline (templates
// and db values) covers those; see the harness tests.
TEST(AtlasRelations, SwapsOfRelationEntries) {
  std::vector<AtlasKey> used;
  for (const auto& rel : stated_relations())
    for (const auto& [a, b] : rel.pairs)
      for (AtlasKey k : {a, b})
        if (k.vertex_count == 6 && std::find(used.begin(), used.end(), k) == used.end()) used.push_back(k);
  std::sort(used.begin(), used.end());
  std::vector<std::string> blind;
  for (std::size_t i = 0; i < used.size(); ++i)
    for (std::size_t j = i + 1; j < used.size(); ++j)
      if (validate_atlas_relations(atlas().with_swapped(used[i], used[j])).ok())
        blind.push_back(used[i].str() + "-" + used[j].str());
  EXPECT_EQ(blind, (std::vector<std::string>{"6.64-6.67", "6.66-6.70", "6.67-6.77", "6.83-6.90", "6.84-6.98"}));
}

TEST(AtlasTemplates, TemplatesCatchThreeBlindSwaps) {
  for (auto [a, b] : {std::pair{64, 67}, {67, 77}, {84, 98}}) {
    auto t = check_family_templates(atlas().with_swapped({6, a}, {6, b}));
    EXPECT_TRUE(std::any_of(t.begin(), t.end(), [](const StructureCheck& c) { return !c.ok; })) << a << " " << b;
  }
}

TEST(AtlasTemplates, ShippedAtlasMatchesTemplates) {
  for (const auto& t : check_family_templates(atlas())) EXPECT_TRUE(t.ok) << t.what;
}

TEST(AtlasRelations, FourVertexOnlyReportsMissing) {
  AtlasReport r = validate_atlas_relations(atlas().restricted_to(4));
  int six_pairs = 0;
  for (const auto& rel : r.relations)
    for (const auto& p : rel.pairs)
      if (p.sub.vertex_count == 6 || p.sup.vertex_count == 6) {
        ++six_pairs;
        EXPECT_EQ(p.status, CheckStatus::missing) << rel.label;
      }
  EXPECT_GT(six_pairs, 0);
  EXPECT_FALSE(r.ok());
}
