#include "crossprod/exact_solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "crossprod/planarity.hpp"

namespace crossprod {

namespace {

using Clock = std::chrono::steady_clock;

bool adjacent(const Edge& a, const Edge& b) { return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v; }

// Partners of each edge, in pair order.
std::map<int, std::vector<int>> partners_of(const std::vector<std::pair<int, int>>& pairs) {
  std::map<int, std::vector<int>> m;
  for (auto [a, b] : pairs) {
    m[a].push_back(b);
    m[b].push_back(a);
  }
  return m;
}

std::vector<std::pair<int, int>> planarization_edges(const Graph& g, const CrossingConfig& c) {
  const int n = g.order();
  std::map<std::pair<int, int>, int> dummy;
  for (std::size_t k = 0; k < c.pairs.size(); ++k) dummy[c.pairs[k]] = n + static_cast<int>(k);
  auto dummy_for = [&](int a, int b) { return dummy.at({std::min(a, b), std::max(a, b)}); };
  auto partners = partners_of(c.pairs);
  std::vector<std::pair<int, int>> es;
  es.reserve(g.edge_count() + 2 * c.pairs.size());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    int ei = static_cast<int>(e);
    int prev = g.edge(e).u;
    auto it = partners.find(ei);
    if (it != partners.end()) {
      const std::vector<int>* order = &it->second;
      if (order->size() > 1) order = &c.edge_orders.at(ei);
      for (int f : *order) {
        int d = dummy_for(ei, f);
        es.emplace_back(prev, d);
        prev = d;
      }
    }
    es.emplace_back(prev, g.edge(e).v);
  }
  return es;
}

struct Shared {
  const Graph& g;
  const std::vector<std::pair<int, int>>& pairs;
  const ExactBudget& budget;
  Clock::time_point deadline;
  std::atomic<std::uint64_t> configs{0};
  std::atomic<bool> exhausted{false};
};

// Tests every edge-order variant of one pair set, in lexicographic order.
std::optional<CrossingConfig> try_pair_set(Shared& s, const std::vector<std::pair<int, int>>& chosen) {
  CrossingConfig c;
  c.pairs = chosen;
  auto partners = partners_of(chosen);
  std::vector<int> multi;
  for (auto& [e, ps] : partners)
    if (ps.size() > 1) {
      std::sort(ps.begin(), ps.end());
      c.edge_orders[e] = ps;
      multi.push_back(e);
    }
  while (true) {
    std::uint64_t seen = ++s.configs;
    if (seen > s.budget.max_configs) {
      s.exhausted = true;
      return std::nullopt;
    }
    if ((seen & 255) == 0 && Clock::now() > s.deadline) {
      s.exhausted = true;
      return std::nullopt;
    }
    Graph p(s.g.order() + static_cast<int>(chosen.size()), planarization_edges(s.g, c));
    if (is_planar(p)) return c;
    // odometer, last multiply crossed edge fastest
    int i = static_cast<int>(multi.size()) - 1;
    for (; i >= 0; --i) {
      auto& ord = c.edge_orders[multi[i]];
      if (std::next_permutation(ord.begin(), ord.end())) break;
    }
    if (i < 0) return std::nullopt;
  }
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

struct LevelOutcome {
  std::optional<CrossingConfig> found;
  bool exhausted = false;
};

LevelOutcome search_level(Shared& s, int level) {
  const int np = static_cast<int>(s.pairs.size());
  LevelOutcome out;
  if (level > np) return out;

  // Combinations are handed out in numbered blocks; the lowest block with a
  // hit holds the lexicographically least certificate.
  constexpr std::size_t block_size = 64;
  std::mutex mu;
  std::vector<int> cursor(level);
  for (int i = 0; i < level; ++i) cursor[i] = i;
  bool more = true;
  std::int64_t next_block = 0;
  std::atomic<std::int64_t> best_block{INT64_MAX};
  std::map<std::int64_t, CrossingConfig> hits;

  auto take = [&](std::vector<std::vector<int>>& combos) -> std::int64_t {
    std::lock_guard<std::mutex> lock(mu);
    combos.clear();
    while (more && combos.size() < block_size) {
      combos.push_back(cursor);
      more = level > 0 && next_combination(cursor, np);
      if (level == 0) more = false;
    }
    return combos.empty() ? -1 : next_block++;
  };

  auto worker = [&] {
    std::vector<std::vector<int>> combos;
    std::vector<std::pair<int, int>> chosen;
    while (true) {
      std::int64_t id = take(combos);
      if (id < 0 || id > best_block.load() || s.exhausted) return;
      for (const auto& comb : combos) {
        chosen.clear();
        for (int i : comb) chosen.push_back(s.pairs[i]);
        auto hit = try_pair_set(s, chosen);
        if (s.exhausted) return;
        if (hit) {
          std::lock_guard<std::mutex> lock(mu);
          hits.emplace(id, *hit);
          std::int64_t cur = best_block.load();
          while (id < cur && !best_block.compare_exchange_weak(cur, id)) {
          }
          break;
        }
      }
    }
  };

  unsigned nt = std::max(1u, s.budget.threads);
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!hits.empty()) {
    out.found = hits.begin()->second;
    return out;
  }
  out.exhausted = s.exhausted;
  return out;
}

}  // namespace

const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

std::vector<std::pair<int, int>> independent_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  const int m = static_cast<int>(g.edge_count());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!adjacent(g.edge(a), g.edge(b))) out.emplace_back(a, b);
  return out;
}

void validate_config(const Graph& g, const CrossingConfig& c) {
  const int m = static_cast<int>(g.edge_count());
  auto sorted = c.pairs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw GraphError("config repeats a pair");
  for (auto [a, b] : c.pairs) {
    if (a < 0 || b < 0 || a >= m || b >= m || a >= b) throw GraphError("config pair out of range or unordered");
    if (adjacent(g.edge(a), g.edge(b)))
      throw GraphError("config crosses adjacent edges " + std::to_string(a) + " and " + std::to_string(b));
  }
  auto partners = partners_of(c.pairs);
  for (const auto& [e, ps] : partners) {
    if (ps.size() < 2) {
      if (c.edge_orders.count(e)) throw GraphError("edge_orders lists a singly crossed edge");
      continue;
    }
    auto it = c.edge_orders.find(e);
    if (it == c.edge_orders.end()) throw GraphError("edge_orders misses edge " + std::to_string(e));
    auto a = it->second, b = ps;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw GraphError("edge_orders for edge " + std::to_string(e) + " does not match its pairs");
  }
  for (const auto& [e, ord] : c.edge_orders) {
    (void)ord;
    if (!partners.count(e)) throw GraphError("edge_orders lists an uncrossed edge");
  }
}

Graph build_planarization(const Graph& g, const CrossingConfig& c) {
  validate_config(g, c);
  return Graph(g.order() + static_cast<int>(c.pairs.size()), planarization_edges(g, c));
}

DecideResult decide_cr_at_most(const Graph& g, int k, const ExactBudget& budget) {
  auto start = Clock::now();
  auto pairs = independent_pairs(g);
  Shared s{g, pairs, budget,
           start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.max_seconds))};
  DecideResult r;
  int first = 0;
  if (budget.euler_skip && g.order() >= 3)
    first = std::max<long>(0, static_cast<long>(g.edge_count()) - 3L * g.order() + 6);
  for (int level = first; level <= k; ++level) {
    auto out = search_level(s, level);
    if (out.found) {
      r.decision = Decision::yes;
      r.certificate = std::move(out.found);
      break;
    }
    if (out.exhausted) {
      r.decision = Decision::budget_exhausted;
      break;
    }
  }
  r.configs_tested = std::min<std::uint64_t>(s.configs.load(), budget.max_configs);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

ExactResult compute_crossing_number_exact(const Graph& g, int k_max, const ExactBudget& budget) {
  auto start = Clock::now();
  auto pairs = independent_pairs(g);
  Shared s{g, pairs, budget,
           start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.max_seconds))};
  ExactResult r;
  int first = 0;
  if (budget.euler_skip && g.order() >= 3)
    first = std::max<long>(0, static_cast<long>(g.edge_count()) - 3L * g.order() + 6);
  r.k = k_max + 1;
  for (int level = first; level <= k_max; ++level) {
    auto out = search_level(s, level);
    if (out.found) {
      r.exact = true;
      r.k = level;
      r.certificate = std::move(out.found);
      break;
    }
    if (out.exhausted) {
      r.k = level;
      r.budget_exhausted = true;
      break;
    }
  }
  r.configs_tested = std::min<std::uint64_t>(s.configs.load(), budget.max_configs);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace crossprod
