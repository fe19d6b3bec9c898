#include "crossprod/inference.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "crossprod/subgraph.hpp"

namespace crossprod {

namespace {

std::optional<std::int64_t> point_value(const std::vector<std::pair<int, std::int64_t>>& pts, int n) {
  for (const auto& [m, v] : pts)
    if (m == n) return v;
  return std::nullopt;
}

std::string mapping_str(const std::vector<int>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(i) + "->" + std::to_string(m[i]);
  return s;
}

nlohmann::ordered_json source_json(const BoundSource& s) {
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& [n, v] : s.points) pts.push_back({n, v});
  nlohmann::ordered_json j{{"kind", s.kind}, {"via", s.via}, {"row", s.row}, {"citation", s.citation}};
  j["formula"] = s.formula ? quasipoly_to_json(*s.formula) : nlohmann::ordered_json();
  j["formula_text"] = s.formula ? s.formula->str() : "";
  j["points"] = pts;
  j["mapping"] = s.mapping;
  return j;
}

// Index of the winning formula source at n (max for lower, min for upper);
// first in scan order on ties.
int pick(const std::vector<BoundSource>& src, std::int64_t n, bool want_max) {
  int best = -1;
  QRational bv;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i].formula) continue;
    QRational v = src[i].formula->value(n);
    if (best < 0 || (want_max ? v > bv : v < bv)) {
      best = static_cast<int>(i);
      bv = v;
    }
  }
  return best;
}

std::string sketch_source(const BoundSource& s, const std::string& self, Partner p, bool lower) {
  std::ostringstream os;
  std::string X = std::string(p == Partner::path ? "P_n" : p == Partner::cycle ? "C_n" : "S_n");
  if (s.kind == "trivial") {
    os << "cr(" << self << " x " << X << ") >= 0 trivially.";
    return os.str();
  }
  std::string what = s.formula ? s.formula->str() + " for n >= " + std::to_string(s.formula->min_n()) : "";
  if (!s.points.empty()) {
    std::string pts;
    for (const auto& [n, v] : s.points) pts += (pts.empty() ? "" : ", ") + std::to_string(v) + " at n=" + std::to_string(n);
    what += (what.empty() ? "" : "; ") + pts;
  }
  if ("G" + s.via == self) {
    if (s.kind == "db")
      os << "Known: cr(" << self << " x " << X << ") = " << what;
    else
      os << "A " << s.kind << " drawing gives cr(" << self << " x " << X << ") <= " << what;
  } else if (lower) {
    os << "G" << s.via << " is a subgraph of " << self << " (" << mapping_str(s.mapping) << ") and cr(G" << s.via
       << " x " << X << ") = " << what;
  } else {
    os << self << " is a subgraph of G" << s.via << " (" << mapping_str(s.mapping) << ") and cr(G" << s.via << " x "
       << X << ") " << (s.kind == "db" ? "= " : "<= ") << what;
  }
  if (!s.citation.empty()) os << " [" << s.citation << "]";
  os << ".";
  return os.str();
}

}  // namespace

std::optional<std::int64_t> BoundSource::value_at(int n) const {
  if (auto v = point_value(points, n)) return v;
  if (formula && n >= formula->min_n()) return eval_formula(*formula, n);
  return std::nullopt;
}

std::optional<std::int64_t> BoundReport::lower_at(int n) const {
  std::optional<std::int64_t> best;
  for (const auto& s : lower_sources)
    if (auto v = s.value_at(n)) best = best ? std::max(*best, *v) : *v;
  return best;
}

std::optional<std::int64_t> BoundReport::upper_at(int n) const {
  std::optional<std::int64_t> best;
  for (const auto& s : upper_sources)
    if (auto v = s.value_at(n)) best = best ? std::min(*best, *v) : *v;
  return best;
}

std::string BoundReport::verdict() const {
  if (!exact) return "gap";
  return "exact " + formula.str() + " for n >= " + std::to_string(n0);
}

std::string BoundReport::proof_sketch() const {
  std::string self = graph_key.empty() ? "G" : "G" + graph_key;
  std::ostringstream os;
  auto side = [&](const char* title, const std::vector<BoundSource>& src, std::pair<int, int> best, bool lower) {
    os << title << ":\n";
    if (best.first < 0 && best.second < 0) {
      os << "  none\n";
      return;
    }
    os << "  " << sketch_source(src[best.first], self, partner, lower) << "\n";
    if (best.second != best.first) os << "  (odd n) " << sketch_source(src[best.second], self, partner, lower) << "\n";
  };
  side("Lower bound", lower_sources, lower_best, true);
  side("Upper bound", upper_sources, upper_best, false);
  if (exact)
    os << "Hence cr(" << self << " x " << (partner == Partner::path ? "P_n" : partner == Partner::cycle ? "C_n" : "S_n")
       << ") = " << formula.str() << " for n >= " << n0 << ".\n";
  else
    os << "The bounds do not meet on a tail; the value stays open.\n";
  for (const auto& [n, v] : exact_points) os << "Bounds meet at n = " << n << ": " << v << ".\n";
  return os.str();
}

nlohmann::ordered_json BoundReport::to_json() const {
  auto side = [&](const std::vector<BoundSource>& src, const std::optional<QuasiPoly2>& tail, std::pair<int, int> best) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& s : src) a.push_back(source_json(s));
    return nlohmann::ordered_json{{"tail", tail ? quasipoly_to_json(*tail) : nlohmann::ordered_json()},
                                  {"best_even", best.first},
                                  {"best_odd", best.second},
                                  {"sources", a}};
  };
  nlohmann::ordered_json j{{"graph", graph_key}, {"partner", to_string(partner)}};
  j["lower"] = side(lower_sources, lower_tail, lower_best);
  j["upper"] = side(upper_sources, upper_tail, upper_best);
  j["tail_from"] = tail_from;
  j["exact"] = exact;
  j["n0"] = exact ? nlohmann::ordered_json(n0) : nlohmann::ordered_json();
  j["formula"] = exact ? quasipoly_to_json(formula) : nlohmann::ordered_json();
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& [n, v] : exact_points) pts.push_back({n, v});
  j["exact_points"] = pts;
  j["verdict"] = verdict();
  return j;
}

BoundReport infer_bounds(const Graph& g, Partner partner, const ResultsDb& db, const Atlas& atlas,
                         const std::vector<UpperExtra>& extras, const std::string& graph_key) {
  if (db.rows.empty()) throw DbError("infer_bounds: empty db");
  BoundReport rep;
  rep.graph_key = graph_key;
  rep.partner = partner;
  const int pmin = partner_min_n(partner);

  BoundSource trivial;
  trivial.kind = "trivial";
  trivial.formula = QuasiPoly2::constant(0, pmin);
  rep.lower_sources.push_back(trivial);

  std::map<AtlasKey, const AtlasEntry*> ordered;
  for (const auto& e : atlas.entries()) ordered[e.key()] = &e;

  for (const auto& [key, entry] : ordered) {
    auto rows = db.find(key.str(), partner);
    if (rows.empty()) continue;
    auto down = find_subgraph_mapping(entry->graph, g);
    auto up = find_subgraph_mapping(g, entry->graph);
    for (const KnownResult* r : rows) {
      if (r->suspect) continue;
      BoundSource s;
      s.kind = "db";
      s.via = key.str();
      s.row = r->label() + " (" + r->source + ")";
      s.citation = r->citation;
      s.formula = r->formula;
      s.points = r->exceptions;
      if (down && r->kind != BoundKind::upper) {
        s.mapping = *down;
        rep.lower_sources.push_back(s);
      }
      if (up && r->kind != BoundKind::lower) {
        s.mapping = *up;
        rep.upper_sources.push_back(s);
      }
    }
  }
  for (const auto& x : extras) {
    if (x.partner != partner) continue;
    const AtlasEntry* e = nullptr;
    if (auto k = AtlasKey::parse(x.graph_key)) e = atlas.find(*k);
    if (!e) throw AtlasError("extra bound names unknown atlas key " + x.graph_key);
    auto up = find_subgraph_mapping(g, e->graph);
    if (!up) continue;
    BoundSource s;
    s.kind = x.kind;
    s.via = x.graph_key;
    s.row = x.note;
    s.formula = x.formula;
    s.points = x.points;
    s.mapping = *up;
    rep.upper_sources.push_back(s);
  }

  // Past T every pairwise order of formulas is settled on both parities.
  std::vector<const QuasiPoly2*> fs;
  std::int64_t T = pmin;
  for (const auto* side : {&rep.lower_sources, &rep.upper_sources})
    for (const auto& s : *side) {
      if (s.formula) fs.push_back(&*s.formula), T = std::max<std::int64_t>(T, s.formula->min_n());
      for (const auto& [n, v] : s.points) T = std::max<std::int64_t>(T, n + 1);
    }
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      for (int par = 0; par < 2; ++par) {
        std::array<QRational, 3> d;
        const auto& a = par ? fs[i]->odd() : fs[i]->even();
        const auto& b = par ? fs[j]->odd() : fs[j]->even();
        for (int k = 0; k < 3; ++k) d[k] = a[k] - b[k];
        T = std::max(T, sign_settles_after(d));
      }
  T += 1;
  rep.tail_from = T;
  std::int64_t te = T % 2 == 0 ? T : T + 1, to = T % 2 == 1 ? T : T + 1;

  rep.lower_best = {pick(rep.lower_sources, te, true), pick(rep.lower_sources, to, true)};
  rep.lower_tail = QuasiPoly2::splice(*rep.lower_sources[rep.lower_best.first].formula,
                                      *rep.lower_sources[rep.lower_best.second].formula, static_cast<int>(T));
  rep.upper_best = {pick(rep.upper_sources, te, false), pick(rep.upper_sources, to, false)};
  if (rep.upper_best.first >= 0)
    rep.upper_tail = QuasiPoly2::splice(*rep.upper_sources[rep.upper_best.first].formula,
                                        *rep.upper_sources[rep.upper_best.second].formula, static_cast<int>(T));

  if (rep.upper_tail && rep.lower_tail->same_function(*rep.upper_tail)) {
    // Exactness range comes from formulas only; point values are listed apart.
    auto formula_side = [](const std::vector<BoundSource>& src, std::int64_t n, bool want_max) {
      std::optional<QRational> best;
      for (const auto& s : src)
        if (s.formula && n >= s.formula->min_n()) {
          QRational v = s.formula->value(n);
          if (!best || (want_max ? v > *best : v < *best)) best = v;
        }
      return best;
    };
    std::int64_t n0 = T;
    for (std::int64_t n = T; n >= pmin; --n) {
      auto lo = formula_side(rep.lower_sources, n, true);
      auto hi = formula_side(rep.upper_sources, n, false);
      if (!lo || !hi || *lo != *hi || *lo != rep.lower_tail->value(n)) break;
      n0 = n;
    }
    for (int n = pmin; n < n0; ++n) {
      auto lo = rep.lower_at(n), hi = rep.upper_at(n);
      if (lo && hi && *lo == *hi) rep.exact_points.emplace_back(n, *lo);
    }
    rep.exact = true;
    rep.n0 = n0;
    // Prefer the basis form of a winning source for display.
    const auto& lb = rep.lower_sources[rep.lower_best.first];
    rep.formula = (rep.lower_best.first == rep.lower_best.second ? *lb.formula : *rep.lower_tail)
                      .with_min_n(static_cast<int>(n0));
  }
  if (!rep.exact)
    for (int n = pmin; n <= T; ++n) {
      auto lo = rep.lower_at(n), hi = rep.upper_at(n);
      if (lo && hi && *lo == *hi) rep.exact_points.emplace_back(n, *lo);
    }
  return rep;
}

BoundReport infer_bounds(const std::string& key, Partner partner, const ResultsDb& db, const Atlas& atlas,
                         const std::vector<UpperExtra>& extras) {
  return infer_bounds(atlas.graph(key), partner, db, atlas, extras, key);
}

std::vector<RederiveCheck> rederive_new_results(const ResultsDb& db, const Atlas& atlas,
                                                   const std::vector<UpperExtra>& generator_bounds) {
  ResultsDb prior = db.prior_only();
  std::vector<RederiveCheck> out;
  for (const auto& r : db.rows) {
    if (!r.is_new) continue;
    RederiveCheck c;
    c.family = r.label();
    c.expected = "exact " + r.formula.str() + " for n >= " + std::to_string(r.formula.min_n());
    c.report = infer_bounds(r.graph_key, r.partner, prior, atlas, generator_bounds);
    c.observed = c.report.verdict();
    c.pass = c.report.exact && c.report.formula.same_function(r.formula) && c.report.n0 == r.formula.min_n();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace crossprod
