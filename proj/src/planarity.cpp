#include "crossprod/planarity.hpp"

#include <algorithm>
#include <climits>

namespace crossprod {

namespace {

// Left-right planarity test (Brandes' formulation of de Fraysseix and
// Rosenstiehl's criterion). Recursions are unrolled so deep DFS trees of large
// planarizations cannot overflow the stack.
class LeftRight {
 public:
  explicit LeftRight(const Graph& g) : g_(g), n_(g.order()), m_(static_cast<int>(g.edge_count())) {}

  bool run(Embedding* out) {
    if (n_ > 2 && m_ > 3 * n_ - 6) return false;
    height_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
    tail_.assign(m_, -1);
    head_.assign(m_, -1);
    lowpt_.assign(m_, 0);
    lowpt2_.assign(m_, 0);
    nesting_.assign(m_, 0);
    ref_.assign(m_, -1);
    side_.assign(m_, 1);
    lowpt_edge_.assign(m_, -1);
    stack_bottom_.assign(m_, -1);
    out_.assign(n_, {});
    inc_.assign(n_, {});
    for (int i = 0; i < m_; ++i) {
      inc_[g_.edge(i).u].push_back({g_.edge(i).v, i});
      inc_[g_.edge(i).v].push_back({g_.edge(i).u, i});
    }
    for (int v = 0; v < n_; ++v)
      if (height_[v] < 0) {
        height_[v] = 0;
        roots_.push_back(v);
        orient(v);
      }
    ordered_.assign(n_, {});
    for (int v = 0; v < n_; ++v) ordered_[v] = sorted_out(v);
    for (int r : roots_)
      if (!test(r)) return false;
    if (!out) return true;
    for (int e = 0; e < m_; ++e) nesting_[e] *= sign(e);
    for (int v = 0; v < n_; ++v) ordered_[v] = sorted_out(v);
    embed(out);
    return true;
  }

 private:
  struct Interval {
    int low = -1, high = -1;
    bool empty() const { return low < 0 && high < 0; }
  };
  struct Pair {
    Interval l, r;
    int id = -1;
  };

  int new_id() { return next_id_++; }
  int top_id() const { return s_.empty() ? -1 : s_.back().id; }
  bool conflicting(const Interval& i, int b) const { return !i.empty() && lowpt_[i.high] > lowpt_[b]; }
  int lowest(const Pair& p) const {
    if (p.l.empty() && p.r.empty()) return INT_MAX;
    if (p.l.empty()) return lowpt_[p.r.low];
    if (p.r.empty()) return lowpt_[p.l.low];
    return std::min(lowpt_[p.l.low], lowpt_[p.r.low]);
  }

  std::vector<int> sorted_out(int v) const {
    std::vector<int> r = out_[v];
    std::stable_sort(r.begin(), r.end(), [&](int a, int b) { return nesting_[a] < nesting_[b]; });
    return r;
  }

  void finish_orient(int v, int e) {
    nesting_[e] = 2 * lowpt_[e];
    if (lowpt2_[e] < height_[v]) nesting_[e] += 1;  // chordal
    int p = parent_edge_[v];
    if (p < 0) return;
    if (lowpt_[e] < lowpt_[p]) {
      lowpt2_[p] = std::min(lowpt_[p], lowpt2_[e]);
      lowpt_[p] = lowpt_[e];
    } else if (lowpt_[e] > lowpt_[p]) {
      lowpt2_[p] = std::min(lowpt2_[p], lowpt_[e]);
    } else {
      lowpt2_[p] = std::min(lowpt2_[p], lowpt2_[e]);
    }
  }

  struct Frame {
    int v;
    std::size_t i = 0;
    bool back = false;  // returning from the tree edge at i
  };

  void orient(int root) {
    std::vector<Frame> st{{root}};
    while (!st.empty()) {
      std::size_t fi = st.size() - 1;
      int v = st[fi].v;
      if (st[fi].back) {
        finish_orient(v, inc_[v][st[fi].i].second);
        st[fi].back = false;
        ++st[fi].i;
        continue;
      }
      if (st[fi].i == inc_[v].size()) {
        st.pop_back();
        continue;
      }
      auto [w, e] = inc_[v][st[fi].i];
      if (tail_[e] >= 0) {
        ++st[fi].i;
        continue;
      }
      tail_[e] = v;
      head_[e] = w;
      out_[v].push_back(e);
      lowpt_[e] = lowpt2_[e] = height_[v];
      if (height_[w] < 0) {
        parent_edge_[w] = e;
        height_[w] = height_[v] + 1;
        st[fi].back = true;
        st.push_back({w});
      } else {
        lowpt_[e] = height_[w];
        finish_orient(v, e);
        ++st[fi].i;
      }
    }
  }

  bool test(int root) {
    std::vector<Frame> st{{root}};
    while (!st.empty()) {
      std::size_t fi = st.size() - 1;
      int v = st[fi].v;
      int e = parent_edge_[v];
      if (st[fi].i == ordered_[v].size()) {
        if (e >= 0) remove_back_edges(e);
        st.pop_back();
        continue;
      }
      int ei = ordered_[v][st[fi].i];
      int w = head_[ei];
      if (!st[fi].back) {
        stack_bottom_[ei] = top_id();
        if (ei == parent_edge_[w]) {
          st[fi].back = true;
          st.push_back({w});
          continue;
        }
        lowpt_edge_[ei] = ei;
        s_.push_back({Interval{}, Interval{ei, ei}, new_id()});
      }
      st[fi].back = false;
      if (lowpt_[ei] < height_[v]) {
        if (st[fi].i == 0)
          lowpt_edge_[e] = lowpt_edge_[ei];
        else if (!add_constraints(ei, e))
          return false;
      }
      ++st[fi].i;
    }
    return true;
  }

  bool add_constraints(int ei, int e) {
    Pair p{Interval{}, Interval{}, new_id()};
    do {
      Pair q = s_.back();
      s_.pop_back();
      if (!q.l.empty()) std::swap(q.l, q.r);
      if (!q.l.empty()) return false;
      if (lowpt_[q.r.low] > lowpt_[e]) {
        if (p.r.empty())
          p.r = q.r;
        else
          ref_[p.r.low] = q.r.high;
        p.r.low = q.r.low;
      } else {
        ref_[q.r.low] = lowpt_edge_[e];
      }
    } while (top_id() != stack_bottom_[ei]);
    while (!s_.empty() && (conflicting(s_.back().l, ei) || conflicting(s_.back().r, ei))) {
      Pair q = s_.back();
      s_.pop_back();
      if (conflicting(q.r, ei)) std::swap(q.l, q.r);
      if (conflicting(q.r, ei)) return false;
      if (p.r.low >= 0) ref_[p.r.low] = q.r.high;
      if (q.r.low >= 0) p.r.low = q.r.low;
      if (p.l.empty())
        p.l = q.l;
      else
        ref_[p.l.low] = q.l.high;
      p.l.low = q.l.low;
    }
    if (!(p.l.empty() && p.r.empty())) s_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    int u = tail_[e];
    while (!s_.empty() && lowest(s_.back()) == height_[u]) {
      if (s_.back().l.low >= 0) side_[s_.back().l.low] = -1;
      s_.pop_back();
    }
    if (!s_.empty()) {
      Pair p = s_.back();
      s_.pop_back();
      while (p.l.high >= 0 && head_[p.l.high] == u) p.l.high = ref_[p.l.high];
      if (p.l.high < 0 && p.l.low >= 0) {
        ref_[p.l.low] = p.r.low;
        side_[p.l.low] = -1;
        p.l.low = -1;
      }
      while (p.r.high >= 0 && head_[p.r.high] == u) p.r.high = ref_[p.r.high];
      if (p.r.high < 0 && p.r.low >= 0) {
        ref_[p.r.low] = p.l.low;
        side_[p.r.low] = -1;
        p.r.low = -1;
      }
      s_.push_back(p);
    }
    if (lowpt_[e] < height_[u] && !s_.empty()) {
      int hl = s_.back().l.high, hr = s_.back().r.high;
      ref_[e] = (hl >= 0 && (hr < 0 || lowpt_[hl] > lowpt_[hr])) ? hl : hr;
    }
  }

  int sign(int e) {
    std::vector<int> chain;
    for (int x = e; ref_[x] >= 0; x = ref_[x]) chain.push_back(x);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      side_[*it] *= side_[ref_[*it]];
      ref_[*it] = -1;
    }
    return side_[e];
  }

  // Half edge of edge e at vertex v.
  int half(int v, int e) const { return 2 * e + (g_.edge(e).u == v ? 0 : 1); }
  int other(int h) const {
    const Edge& ed = g_.edge(h / 2);
    return (h % 2 == 0) ? ed.v : ed.u;
  }

  void insert_cw(int v, int e, int ref_e) {
    int h = half(v, e);
    if (ref_e < 0) {
      cw_[h] = ccw_[h] = h;
      first_[v] = h;
      return;
    }
    int r = half(v, ref_e);
    int after = cw_[r];
    cw_[r] = h;
    ccw_[h] = r;
    cw_[h] = after;
    ccw_[after] = h;
  }
  void insert_ccw(int v, int e, int ref_e) {
    if (ref_e < 0) {
      insert_cw(v, e, -1);
      return;
    }
    int r = half(v, ref_e);
    insert_cw(v, e, ccw_[r] / 2);
    if (first_[v] == r) first_[v] = half(v, e);
  }
  void insert_first(int v, int e) {
    insert_ccw(v, e, first_[v] < 0 ? -1 : first_[v] / 2);
  }

  void embed(Embedding* out) {
    cw_.assign(2 * m_, -1);
    ccw_.assign(2 * m_, -1);
    first_.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
      int prev = -1;
      for (int e : ordered_[v]) {
        insert_cw(v, e, prev);
        prev = e;
      }
    }
    std::vector<int> left_ref(n_, -1), right_ref(n_, -1);
    for (int root : roots_) {
      std::vector<Frame> st{{root}};
      while (!st.empty()) {
        std::size_t fi = st.size() - 1;
        int v = st[fi].v;
        if (st[fi].i == ordered_[v].size()) {
          st.pop_back();
          continue;
        }
        int ei = ordered_[v][st[fi].i++];
        int w = head_[ei];
        if (ei == parent_edge_[w]) {
          insert_first(w, ei);
          left_ref[v] = right_ref[v] = ei;
          st.push_back({w});
        } else if (side_[ei] == 1) {
          insert_cw(w, ei, right_ref[w]);
        } else {
          insert_ccw(w, ei, left_ref[w]);
          left_ref[w] = ei;
        }
      }
    }
    out->rotation.assign(n_, {});
    for (int v = 0; v < n_; ++v) {
      if (first_[v] < 0) continue;
      int h = first_[v];
      do {
        out->rotation[v].push_back(other(h));
        h = cw_[h];
      } while (h != first_[v]);
    }
  }

  const Graph& g_;
  int n_, m_;
  std::vector<int> height_, parent_edge_, tail_, head_, lowpt_, lowpt2_, nesting_, ref_, side_, lowpt_edge_,
      stack_bottom_;
  std::vector<std::vector<int>> out_, ordered_;
  std::vector<std::vector<std::pair<int, int>>> inc_;
  std::vector<int> roots_;
  std::vector<Pair> s_;
  int next_id_ = 0;
  std::vector<int> cw_, ccw_, first_;
};

}  // namespace

PlanarityResult test_planarity(const Graph& g) {
  PlanarityResult res;
  LeftRight lr(g);
  res.planar = lr.run(&res.embedding);
  if (!res.planar) res.embedding = {};
  return res;
}

bool is_planar(const Graph& g) {
  // Euler bound shortcut for simple graphs.
  if (g.order() >= 3 && static_cast<long>(g.edge_count()) > 3L * g.order() - 6) return false;
  LeftRight lr(g);
  return lr.run(nullptr);
}

bool embedding_matches(const Graph& g, const Embedding& e) {
  if (static_cast<int>(e.rotation.size()) != g.order()) return false;
  for (int v = 0; v < g.order(); ++v) {
    auto r = e.rotation[v];
    std::sort(r.begin(), r.end());
    if (r != g.neighbors(v)) return false;
  }
  return true;
}

std::vector<Face> faces_of(const Graph& g, const Embedding& e) {
  if (!g.is_connected()) throw GraphError("faces_of: graph is disconnected");
  if (!embedding_matches(g, e)) throw GraphError("faces_of: rotation does not match graph");
  std::vector<Face> faces;
  if (g.edge_count() == 0) {
    faces.push_back({});
    return faces;
  }
  auto dart_id = [&](int u, int v) {
    int idx = g.edge_index(u, v);
    return 2 * idx + (u < v ? 0 : 1);
  };
  std::vector<char> used(2 * g.edge_count(), 0);
  for (auto ed : g.edges())
    for (Dart start : {Dart{ed.u, ed.v}, Dart{ed.v, ed.u}}) {
      if (used[dart_id(start.first, start.second)]) continue;
      Face f;
      Dart d = start;
      do {
        used[dart_id(d.first, d.second)] = 1;
        f.push_back(d);
        auto [u, v] = d;
        const auto& rot = e.rotation[v];
        std::size_t i = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), u) - rot.begin());
        d = {v, rot[(i + 1) % rot.size()]};
      } while (d != start);
      faces.push_back(std::move(f));
    }
  return faces;
}

bool satisfies_euler(const Graph& g, const Embedding& e) {
  if (!embedding_matches(g, e)) return false;
  for (const auto& comp : g.components()) {
    Graph sub = g.induced(comp);
    std::vector<int> pos(g.order(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
    Embedding se;
    for (int v : comp) {
      std::vector<int> r;
      for (int w : e.rotation[v]) r.push_back(pos[w]);
      se.rotation.push_back(std::move(r));
    }
    auto faces = faces_of(sub, se);
    long chi = static_cast<long>(sub.order()) - static_cast<long>(sub.edge_count()) + static_cast<long>(faces.size());
    if (chi != 2) return false;
  }
  return true;
}

}  // namespace crossprod
