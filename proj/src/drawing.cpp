#include "crossprod/drawing.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "crossprod/graph6.hpp"

namespace crossprod {

namespace {

std::string seg_name(int e, int s) { return "edge " + std::to_string(e) + " segment " + std::to_string(s); }

template <class T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// Lattice engine: coordinates already scaled to integers of type T, products
// evaluated in W.
template <class T, class W>
class Engine {
 public:
  struct Seg {
    int edge, seg;
    T x1, y1, x2, y2;
    T xmin, xmax, ymin, ymax;
    int start_vertex;  // vertex at the start if this is the first segment, else -1
    int end_vertex;    // vertex at the end if this is the last segment, else -1
  };

  Engine(const PolylineDrawing& d, std::vector<std::vector<std::pair<T, T>>> paths,
         std::vector<std::pair<T, T>> verts)
      : d_(d), verts_(std::move(verts)) {
    for (std::size_t e = 0; e < paths.size(); ++e) {
      const auto& p = paths[e];
      for (std::size_t s = 0; s + 1 < p.size(); ++s) {
        Seg sg{static_cast<int>(e), static_cast<int>(s), p[s].first, p[s].second, p[s + 1].first, p[s + 1].second,
               std::min(p[s].first, p[s + 1].first), std::max(p[s].first, p[s + 1].first),
               std::min(p[s].second, p[s + 1].second), std::max(p[s].second, p[s + 1].second),
               s == 0 ? d.graph.edge(e).u : -1, s + 2 == p.size() ? d.graph.edge(e).v : -1};
        segs_.push_back(sg);
      }
    }
  }

  CrossingAnalysis run() {
    std::vector<std::size_t> order(segs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (segs_[a].xmin != segs_[b].xmin) return segs_[a].xmin < segs_[b].xmin;
      return a < b;
    });
    std::vector<std::size_t> active;
    for (std::size_t idx : order) {
      const Seg& s = segs_[idx];
      std::size_t keep = 0;
      for (std::size_t k = 0; k < active.size(); ++k) {
        const Seg& o = segs_[active[k]];
        if (o.xmax < s.xmin) continue;
        active[keep++] = active[k];
        if (o.ymax < s.ymin || s.ymax < o.ymin) continue;
        classify(o, s);
      }
      active.resize(keep);
      active.push_back(idx);
    }
    check_vertices();
    return std::move(out_);
  }

 private:
  W orient(const T& ax, const T& ay, const T& bx, const T& by, const T& cx, const T& cy) const {
    return W(bx - ax) * W(cy - ay) - W(by - ay) * W(cx - ax);
  }

  static bool within(const Seg& s, const T& x, const T& y) {
    return s.xmin <= x && x <= s.xmax && s.ymin <= y && y <= s.ymax;
  }

  // Vertex sitting at (x,y) if it is a path end of s, else -1.
  static int end_vertex_at(const Seg& s, const T& x, const T& y) {
    if (s.start_vertex >= 0 && s.x1 == x && s.y1 == y) return s.start_vertex;
    if (s.end_vertex >= 0 && s.x2 == x && s.y2 == y) return s.end_vertex;
    return -1;
  }

  void classify(const Seg& a0, const Seg& b0) {
    const Seg* pa = &a0;
    const Seg* pb = &b0;
    if (std::tie(pa->edge, pa->seg) > std::tie(pb->edge, pb->seg)) std::swap(pa, pb);
    const Seg& a = *pa;
    const Seg& b = *pb;

    if (a.edge == b.edge && b.seg == a.seg + 1) {
      // consecutive pieces share the bend (x2,y2) of a; reject fold-backs
      W o = orient(a.x1, a.y1, a.x2, a.y2, b.x2, b.y2);
      if (o == 0) {
        W dot = W(a.x1 - a.x2) * W(b.x2 - b.x1) + W(a.y1 - a.y2) * W(b.y2 - b.y1);
        if (dot > 0)
          throw DegeneracyError("polyline folds back on itself at " + seg_name(a.edge, a.seg) + " / " +
                                    seg_name(b.edge, b.seg),
                                a.edge, a.seg, b.edge, b.seg);
      }
      return;
    }

    W d1 = orient(b.x1, b.y1, b.x2, b.y2, a.x1, a.y1);
    W d2 = orient(b.x1, b.y1, b.x2, b.y2, a.x2, a.y2);
    W d3 = orient(a.x1, a.y1, a.x2, a.y2, b.x1, b.y1);
    W d4 = orient(a.x1, a.y1, a.x2, a.y2, b.x2, b.y2);
    int s1 = sign_of(d1), s2 = sign_of(d2), s3 = sign_of(d3), s4 = sign_of(d4);

    if (s1 * s2 < 0 && s3 * s4 < 0) {
      record(a, b, d1, d2, d3, d4);
      return;
    }

    auto degenerate = [&](const std::string& why) {
      throw DegeneracyError(why + ": " + seg_name(a.edge, a.seg) + " and " + seg_name(b.edge, b.seg), a.edge, a.seg,
                            b.edge, b.seg);
    };

    if (s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0) {
      // collinear: compare projections on the dominant axis
      bool use_x = (a.xmax - a.xmin) + (b.xmax - b.xmin) > 0;
      T alo = use_x ? a.xmin : a.ymin, ahi = use_x ? a.xmax : a.ymax;
      T blo = use_x ? b.xmin : b.ymin, bhi = use_x ? b.xmax : b.ymax;
      T lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (lo > hi) return;
      if (lo < hi) degenerate("collinear overlap");
      // single shared point
      T x, y;
      if (use_x) {
        x = lo;
        y = (a.x1 == lo) ? a.y1 : a.y2;
      } else {
        y = lo;
        x = (a.y1 == lo) ? a.x1 : a.x2;
      }
      touch(a, b, x, y, degenerate);
      return;
    }

    if (s1 == 0 && within(b, a.x1, a.y1)) return touch(a, b, a.x1, a.y1, degenerate);
    if (s2 == 0 && within(b, a.x2, a.y2)) return touch(a, b, a.x2, a.y2, degenerate);
    if (s3 == 0 && within(a, b.x1, b.y1)) return touch(a, b, b.x1, b.y1, degenerate);
    if (s4 == 0 && within(a, b.x2, b.y2)) return touch(a, b, b.x2, b.y2, degenerate);
  }

  template <class F>
  void touch(const Seg& a, const Seg& b, const T& x, const T& y, F&& degenerate) {
    if (a.edge == b.edge) degenerate("edge touches itself");
    int va = end_vertex_at(a, x, y);
    int vb = end_vertex_at(b, x, y);
    if (va >= 0 && va == vb) return;
    if (va >= 0 || vb >= 0) degenerate("vertex lies on another edge");
    degenerate("non-transversal contact");
  }

  void record(const Seg& a, const Seg& b, const W& d1, const W& d2, const W& d3, const W& d4) {
    Crossing c;
    c.edge_a = a.edge;
    c.seg_a = a.seg;
    c.edge_b = b.edge;
    c.seg_b = b.seg;
    c.t_a = ratio(to_big(d1), to_big(d1 - d2));
    c.t_b = ratio(to_big(d3), to_big(d3 - d4));
    const auto& p = d_.edge_paths[a.edge];
    const Point& p1 = p[a.seg];
    const Point& p2 = p[a.seg + 1];
    c.at = {p1.x + c.t_a * (p2.x - p1.x), p1.y + c.t_a * (p2.y - p1.y)};
    if (a.edge == b.edge)
      out_.self_crossings.push_back(std::move(c));
    else
      out_.crossings.push_back(std::move(c));
  }

  // Boost's rational rejects a negative denominator for unbounded integers.
  static Rational ratio(BigInt num, BigInt den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  }

  static BigInt to_big(const W& w) {
    if constexpr (std::is_same_v<W, BigInt>) {
      return w;
    } else {
      // __int128 to cpp_int via two 64-bit halves
      bool neg = w < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-w) : static_cast<unsigned __int128>(w);
      BigInt r = BigInt(static_cast<std::uint64_t>(u >> 64));
      r <<= 64;
      r += BigInt(static_cast<std::uint64_t>(u));
      return neg ? BigInt(-r) : r;
    }
  }

  void check_vertices() {
    // vertex points against every segment whose box contains them
    std::vector<std::size_t> vorder(verts_.size());
    for (std::size_t i = 0; i < vorder.size(); ++i) vorder[i] = i;
    std::sort(vorder.begin(), vorder.end(), [&](std::size_t a, std::size_t b) { return verts_[a] < verts_[b]; });
    for (const Seg& s : segs_) {
      auto lo = std::lower_bound(vorder.begin(), vorder.end(), s.xmin,
                                 [&](std::size_t v, const T& x) { return verts_[v].first < x; });
      for (auto it = lo; it != vorder.end() && verts_[*it].first <= s.xmax; ++it) {
        const auto& [x, y] = verts_[*it];
        if (y < s.ymin || y > s.ymax) continue;
        if (orient(s.x1, s.y1, s.x2, s.y2, x, y) != 0) continue;
        if (end_vertex_at(s, x, y) == static_cast<int>(*it)) continue;
        throw DegeneracyError("vertex " + std::to_string(*it) + " lies on " + seg_name(s.edge, s.seg), s.edge, s.seg);
      }
    }
  }

  const PolylineDrawing& d_;
  std::vector<std::pair<T, T>> verts_;
  std::vector<Seg> segs_;
  CrossingAnalysis out_;
};

BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

template <class T>
T scaled(const Rational& r, const BigInt& L) {
  BigInt v = boost::multiprecision::numerator(r) * (L / boost::multiprecision::denominator(r));
  if constexpr (std::is_same_v<T, BigInt>) {
    return v;
  } else {
    return static_cast<T>(static_cast<long long>(v));
  }
}

template <class T, class W>
CrossingAnalysis run_engine(const PolylineDrawing& d, const BigInt& L) {
  std::vector<std::vector<std::pair<T, T>>> paths(d.edge_paths.size());
  for (std::size_t e = 0; e < d.edge_paths.size(); ++e)
    for (const auto& p : d.edge_paths[e]) paths[e].emplace_back(scaled<T>(p.x, L), scaled<T>(p.y, L));
  std::vector<std::pair<T, T>> verts;
  for (const auto& p : d.vertex_points) verts.emplace_back(scaled<T>(p.x, L), scaled<T>(p.y, L));
  return Engine<T, W>(d, std::move(paths), std::move(verts)).run();
}

bool point_less(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

void validate_structure(const PolylineDrawing& d) {
  const Graph& g = d.graph;
  if (static_cast<int>(d.vertex_points.size()) != g.order())
    throw DegeneracyError("vertex_points size does not match graph order");
  if (d.edge_paths.size() != g.edge_count()) throw DegeneracyError("edge_paths size does not match edge count");
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& p = d.edge_paths[e];
    int ei = static_cast<int>(e);
    if (p.size() < 2) throw DegeneracyError("edge path with fewer than two points", ei);
    if (!(p.front() == d.vertex_points[g.edge(e).u]) || !(p.back() == d.vertex_points[g.edge(e).v]))
      throw DegeneracyError("edge path does not start and end at its vertices", ei);
    for (std::size_t s = 0; s + 1 < p.size(); ++s)
      if (p[s] == p[s + 1]) throw DegeneracyError("zero-length segment", ei, static_cast<int>(s));
  }
  std::vector<Point> vs = d.vertex_points;
  std::sort(vs.begin(), vs.end(), point_less);
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (vs[i] == vs[i + 1]) throw DegeneracyError("two vertices share a point");
}

CrossingAnalysis analyze_drawing(const PolylineDrawing& d) {
  validate_structure(d);
  BigInt L = 1;
  auto absorb = [&](const Point& p) {
    L = lcm_big(L, boost::multiprecision::denominator(p.x));
    L = lcm_big(L, boost::multiprecision::denominator(p.y));
  };
  for (const auto& p : d.vertex_points) absorb(p);
  for (const auto& path : d.edge_paths)
    for (const auto& p : path) absorb(p);
  BigInt maxabs = 0;
  auto measure = [&](const Point& p) {
    for (const Rational* r : {&p.x, &p.y}) {
      BigInt v = abs(boost::multiprecision::numerator(*r)) * (L / boost::multiprecision::denominator(*r));
      if (v > maxabs) maxabs = v;
    }
  };
  for (const auto& p : d.vertex_points) measure(p);
  for (const auto& path : d.edge_paths)
    for (const auto& p : path) measure(p);

  CrossingAnalysis a = (maxabs < (BigInt(1) << 30)) ? run_engine<std::int64_t, __int128>(d, L)
                                                    : run_engine<BigInt, BigInt>(d, L);

  // no interior point shared by three or more edge paths
  std::vector<const Crossing*> all;
  for (const auto& c : a.crossings) all.push_back(&c);
  for (const auto& c : a.self_crossings) all.push_back(&c);
  std::sort(all.begin(), all.end(), [](const Crossing* x, const Crossing* y) { return point_less(x->at, y->at); });
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    if (all[i]->at == all[i + 1]->at)
      throw DegeneracyError("three or more edges meet at one crossing point", all[i]->edge_a, all[i]->seg_a,
                            all[i + 1]->edge_b, all[i + 1]->seg_b);

  auto key = [](const Crossing& c) { return std::tie(c.edge_a, c.seg_a, c.t_a, c.edge_b, c.seg_b, c.t_b); };
  std::sort(a.crossings.begin(), a.crossings.end(), [&](const Crossing& x, const Crossing& y) { return key(x) < key(y); });
  std::sort(a.self_crossings.begin(), a.self_crossings.end(),
            [&](const Crossing& x, const Crossing& y) { return key(x) < key(y); });
  return a;
}

std::size_t count_crossings(const PolylineDrawing& d) { return analyze_drawing(d).crossings.size(); }

GoodDrawingReport check_good_drawing(const PolylineDrawing& d) { return check_good_drawing(d, analyze_drawing(d)); }

GoodDrawingReport check_good_drawing(const PolylineDrawing& d, const CrossingAnalysis& a) {
  GoodDrawingReport r;
  r.no_self_intersection = a.self_crossings.empty();
  std::map<std::pair<int, int>, int> per_pair;
  for (const auto& c : a.crossings) {
    const Edge& e = d.graph.edge(c.edge_a);
    const Edge& f = d.graph.edge(c.edge_b);
    if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) r.no_adjacent_crossing = false;
    if (++per_pair[{c.edge_a, c.edge_b}] > 1) r.no_double_crossing = false;
  }
  return r;
}

Planarization planarize_drawing(const PolylineDrawing& d) { return planarize_drawing(d, analyze_drawing(d)); }

Planarization planarize_drawing(const PolylineDrawing& d, const CrossingAnalysis& a) {
  if (!check_good_drawing(d, a).good()) throw DegeneracyError("planarize_drawing needs a good drawing");
  const Graph& g = d.graph;
  const int n = g.order();
  Planarization out;
  // (segment, parameter, crossing vertex) per edge
  std::vector<std::vector<std::tuple<int, Rational, int>>> along(g.edge_count());
  for (std::size_t k = 0; k < a.crossings.size(); ++k) {
    const auto& c = a.crossings[k];
    int v = n + static_cast<int>(k);
    along[c.edge_a].emplace_back(c.seg_a, c.t_a, v);
    along[c.edge_b].emplace_back(c.seg_b, c.t_b, v);
    out.crossed_edges.emplace_back(c.edge_a, c.edge_b);
  }
  std::vector<std::pair<int, int>> es;
  out.chains.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto& list = along[e];
    std::sort(list.begin(), list.end());
    auto& chain = out.chains[e];
    chain.push_back(g.edge(e).u);
    for (const auto& item : list) chain.push_back(std::get<2>(item));
    chain.push_back(g.edge(e).v);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) es.emplace_back(chain[i], chain[i + 1]);
  }
  out.graph = Graph(n + static_cast<int>(a.crossings.size()), es);
  return out;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream s;
  s << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) s << "/" << boost::multiprecision::denominator(r);
  return s.str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

namespace {

std::string fixed6(const Rational& r) {
  // exact rounding to 6 fractional digits, half away from zero
  BigInt scaled_num = boost::multiprecision::numerator(r) * 1000000;
  BigInt den = boost::multiprecision::denominator(r);
  bool neg = scaled_num < 0;
  if (neg) scaled_num = -scaled_num;
  BigInt q = (scaled_num * 2 + den) / (den * 2);
  BigInt whole = q / 1000000, frac = q % 1000000;
  std::ostringstream s;
  if (neg && q != 0) s << '-';
  s << whole << '.' << std::setw(6) << std::setfill('0') << frac.str();
  return s.str();
}

}  // namespace

std::string drawing_to_svg(const PolylineDrawing& d) {
  Rational minx, miny, maxx, maxy;
  bool first = true;
  auto grow = [&](const Point& p) {
    if (first) {
      minx = maxx = p.x;
      miny = maxy = p.y;
      first = false;
      return;
    }
    if (p.x < minx) minx = p.x;
    if (p.x > maxx) maxx = p.x;
    if (p.y < miny) miny = p.y;
    if (p.y > maxy) maxy = p.y;
  };
  for (const auto& p : d.vertex_points) grow(p);
  for (const auto& path : d.edge_paths)
    for (const auto& p : path) grow(p);
  if (first) minx = miny = maxx = maxy = 0;
  Rational margin = 1;
  // SVG y grows downwards; flip so larger y is drawn higher
  auto X = [&](const Rational& x) { return fixed6(x - minx + margin); };
  auto Y = [&](const Rational& y) { return fixed6(maxy - y + margin); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed6(maxx - minx + 2 * margin)
    << "\" height=\"" << fixed6(maxy - miny + 2 * margin) << "\" viewBox=\"0 0 " << fixed6(maxx - minx + 2 * margin)
    << " " << fixed6(maxy - miny + 2 * margin) << "\">\n";
  s << "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.05\">\n";
  for (std::size_t e = 0; e < d.edge_paths.size(); ++e) {
    s << "<polyline id=\"e" << e << "\" points=\"";
    for (std::size_t i = 0; i < d.edge_paths[e].size(); ++i) {
      if (i) s << ' ';
      s << X(d.edge_paths[e][i].x) << ',' << Y(d.edge_paths[e][i].y);
    }
    s << "\"/>\n";
  }
  s << "</g>\n<g fill=\"black\">\n";
  for (std::size_t v = 0; v < d.vertex_points.size(); ++v)
    s << "<circle id=\"v" << v << "\" cx=\"" << X(d.vertex_points[v].x) << "\" cy=\"" << Y(d.vertex_points[v].y)
      << "\" r=\"0.150000\"/>\n";
  s << "</g>\n</svg>\n";
  return s.str();
}

void export_svg(const PolylineDrawing& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << drawing_to_svg(d);
  if (!out) throw std::runtime_error("write failed for " + path);
}

nlohmann::ordered_json drawing_to_json(const PolylineDrawing& d) {
  nlohmann::ordered_json j;
  j["graph"] = encode_graph6_any(d.graph);
  auto pj = [](const Point& p) { return nlohmann::ordered_json::array({rational_to_string(p.x), rational_to_string(p.y)}); };
  j["vertex_points"] = nlohmann::ordered_json::array();
  for (const auto& p : d.vertex_points) j["vertex_points"].push_back(pj(p));
  j["edge_paths"] = nlohmann::ordered_json::array();
  for (const auto& path : d.edge_paths) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : path) arr.push_back(pj(p));
    j["edge_paths"].push_back(arr);
  }
  return j;
}

PolylineDrawing drawing_from_json(const nlohmann::ordered_json& j) {
  PolylineDrawing d;
  d.graph = parse_graph6(j.at("graph").get<std::string>());
  auto pt_of = [](const nlohmann::ordered_json& a) {
    return Point{rational_from_string(a.at(0).get<std::string>()), rational_from_string(a.at(1).get<std::string>())};
  };
  for (const auto& p : j.at("vertex_points")) d.vertex_points.push_back(pt_of(p));
  for (const auto& path : j.at("edge_paths")) {
    std::vector<Point> ps;
    for (const auto& p : path) ps.push_back(pt_of(p));
    d.edge_paths.push_back(std::move(ps));
  }
  return d;
}

}  // namespace crossprod
