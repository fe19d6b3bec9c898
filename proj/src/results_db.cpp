#include "crossprod/results_db.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "crossprod/atlas.hpp"

namespace crossprod {

const char* to_string(Partner p) {
  switch (p) {
    case Partner::path: return "path";
    case Partner::cycle: return "cycle";
    case Partner::star: return "star";
  }
  return "?";
}

std::optional<Partner> parse_partner(const std::string& s) {
  if (s == "path" || s == "P") return Partner::path;
  if (s == "cycle" || s == "C") return Partner::cycle;
  if (s == "star" || s == "S") return Partner::star;
  return std::nullopt;
}

int partner_min_n(Partner p) { return p == Partner::cycle ? 3 : 1; }

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
  }
  return "?";
}

std::optional<std::int64_t> KnownResult::value_at(int n) const {
  if (n < partner_min_n(partner)) return std::nullopt;
  for (const auto& [m, v] : exceptions)
    if (m == n) return v;
  if (n >= formula.min_n()) return eval_formula(formula, n);
  return std::nullopt;
}

std::string KnownResult::label() const { return graph_key + "/" + to_string(partner); }

std::vector<const KnownResult*> ResultsDb::find(const std::string& key, Partner p) const {
  std::vector<const KnownResult*> out;
  for (const auto& r : rows)
    if (r.graph_key == key && r.partner == p) out.push_back(&r);
  return out;
}

ResultsDb ResultsDb::prior_only() const {
  ResultsDb d;
  for (const auto& r : rows)
    if (!r.is_new) d.rows.push_back(r);
  return d;
}

ResultsDb ResultsDb::trusted() const {
  ResultsDb d;
  for (const auto& r : rows)
    if (!r.suspect) d.rows.push_back(r);
  return d;
}

namespace {

std::string req_string(const nlohmann::ordered_json& o, const char* k, const std::string& where) {
  if (!o.contains(k) || !o.at(k).is_string()) throw DbError(where + ": missing string field '" + k + "'");
  return o.at(k).get<std::string>();
}

KnownResult parse_row(const nlohmann::ordered_json& o, std::size_t idx) {
  std::string where = "row " + std::to_string(idx);
  if (!o.is_object()) throw DbError(where + ": not an object");
  KnownResult r;
  r.graph_key = req_string(o, "graph", where);
  if (!AtlasKey::parse(r.graph_key)) throw DbError(where + ": bad graph key '" + r.graph_key + "'");
  where += " (" + r.graph_key + ")";
  auto p = parse_partner(req_string(o, "partner", where));
  if (!p) throw DbError(where + ": bad partner");
  r.partner = *p;
  std::string kind = o.contains("kind") ? req_string(o, "kind", where) : "exact";
  if (kind == "exact")
    r.kind = BoundKind::exact;
  else if (kind == "lower")
    r.kind = BoundKind::lower;
  else if (kind == "upper")
    r.kind = BoundKind::upper;
  else
    throw DbError(where + ": bad kind '" + kind + "'");
  if (!o.contains("formula")) throw DbError(where + ": missing formula");
  try {
    r.formula = quasipoly_from_json(o.at("formula"));
  } catch (const FormulaError& e) {
    throw DbError(where + ": " + e.what());
  }
  if (r.formula.min_n() < partner_min_n(r.partner)) throw DbError(where + ": min_n below the partner's range");
  if (o.contains("exceptions")) {
    const auto& ex = o.at("exceptions");
    if (!ex.is_array()) throw DbError(where + ": exceptions must be an array");
    for (const auto& e : ex) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw DbError(where + ": exception entries are [n, value]");
      int n = e[0].get<int>();
      std::int64_t v = e[1].get<std::int64_t>();
      if (n >= r.formula.min_n() || n < partner_min_n(r.partner))
        throw DbError(where + ": exception n=" + std::to_string(n) + " outside [partner min, min_n)");
      if (v < 0) throw DbError(where + ": negative exception value");
      r.exceptions.emplace_back(n, v);
    }
    std::sort(r.exceptions.begin(), r.exceptions.end());
    for (std::size_t i = 1; i < r.exceptions.size(); ++i)
      if (r.exceptions[i].first == r.exceptions[i - 1].first) throw DbError(where + ": repeated exception n");
  }
  // counts: the formula must stay a nonnegative integer on its whole range
  auto cmp = compare_formulas(QuasiPoly2::constant(0, r.formula.min_n()), r.formula, r.formula.min_n());
  if (cmp.order != FormulaOrder::less && cmp.order != FormulaOrder::equal)
    throw DbError(where + ": formula goes negative");
  for (int n = r.formula.min_n(); n < r.formula.min_n() + 2; ++n) {
    try {
      eval_formula(r.formula, n);
    } catch (const FormulaError& e) {
      throw DbError(where + ": " + e.what());
    }
  }
  if (o.contains("citation") && !o.at("citation").is_null()) r.citation = req_string(o, "citation", where);
  if (o.contains("source") && !o.at("source").is_null()) r.source = req_string(o, "source", where);
  if (o.contains("new")) {
    if (!o.at("new").is_boolean()) throw DbError(where + ": 'new' must be boolean");
    r.is_new = o.at("new").get<bool>();
  }
  if (o.contains("suspect") && !o.at("suspect").is_null()) r.suspect = req_string(o, "suspect", where);
  return r;
}

}  // namespace

ResultsDb parse_results_db(const nlohmann::ordered_json& j) {
  const nlohmann::ordered_json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("results")) throw DbError("results db lacks 'results'");
    arr = &j.at("results");
  }
  if (!arr->is_array()) throw DbError("results db must be an array of rows");
  ResultsDb db;
  std::set<std::tuple<std::string, int, std::string>> seen;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    db.rows.push_back(parse_row((*arr)[i], i));
    const auto& r = db.rows.back();
    if (!seen.insert({r.graph_key, static_cast<int>(r.partner), r.source}).second)
      throw DbError("duplicate row " + r.label() + " from " + r.source);
  }
  if (db.rows.empty()) throw DbError("results db is empty");
  return db;
}

Manifest parse_manifest(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("row_counts") || !j.at("row_counts").is_object())
    throw DbError("manifest lacks row_counts");
  Manifest m;
  for (auto it = j.at("row_counts").begin(); it != j.at("row_counts").end(); ++it) {
    if (!it.value().is_number_integer()) throw DbError("manifest count for " + it.key() + " is not an integer");
    m.row_counts[it.key()] = it.value().get<int>();
  }
  auto get = [&](const char* k) {
    if (!j.contains(k) || !j.at(k).is_number_integer()) throw DbError(std::string("manifest lacks ") + k);
    return j.at(k).get<int>();
  };
  m.total_rows = get("total_rows");
  m.new_rows = get("new_rows");
  m.small_cycle_values = get("small_cycle_values");
  return m;
}

void check_against_manifest(const ResultsDb& db, const Manifest& m) {
  std::map<std::string, int> counts;
  int fresh = 0, small = 0;
  for (const auto& r : db.rows) {
    ++counts[r.source];
    if (!r.is_new) continue;
    ++fresh;
    if (r.partner == Partner::cycle)
      for (int n = 3; n <= 5; ++n) small += r.value_at(n).has_value();
  }
  for (const auto& [src, c] : m.row_counts) {
    int have = counts.count(src) ? counts.at(src) : 0;
    if (have != c)
      throw DbError("manifest expects " + std::to_string(c) + " rows from " + src + ", db has " + std::to_string(have));
  }
  for (const auto& [src, c] : counts)
    if (!m.row_counts.count(src)) throw DbError("db rows from " + src + " have no manifest entry");
  if (static_cast<int>(db.rows.size()) != m.total_rows)
    throw DbError("manifest expects " + std::to_string(m.total_rows) + " rows, db has " +
                  std::to_string(db.rows.size()));
  if (fresh != m.new_rows) throw DbError("manifest new_rows mismatch");
  if (small != m.small_cycle_values)
    throw DbError("manifest expects " + std::to_string(m.small_cycle_values) + " small-cycle values, db has " +
                  std::to_string(small));
}

ResultsDb load_results_db(std::istream& db_in, std::istream* manifest) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(db_in);
  } catch (const nlohmann::json::exception& e) {
    throw DbError(std::string("results db is not valid JSON: ") + e.what());
  }
  ResultsDb db = parse_results_db(j);
  if (manifest) {
    nlohmann::ordered_json mj;
    try {
      mj = nlohmann::ordered_json::parse(*manifest);
    } catch (const nlohmann::json::exception& e) {
      throw DbError(std::string("manifest is not valid JSON: ") + e.what());
    }
    check_against_manifest(db, parse_manifest(mj));
  }
  return db;
}

ResultsDb load_results_db_files(const std::string& db_path, const std::string& manifest_path) {
  std::ifstream in(db_path);
  if (!in) throw DbError("cannot open results db " + db_path);
  if (manifest_path.empty()) return load_results_db(in, nullptr);
  std::ifstream mf(manifest_path);
  if (!mf) throw DbError("cannot open manifest " + manifest_path);
  return load_results_db(in, &mf);
}

nlohmann::ordered_json results_db_to_json(const ResultsDb& db) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : db.rows) {
    nlohmann::ordered_json ex = nlohmann::ordered_json::array();
    for (const auto& [n, v] : r.exceptions) ex.push_back({n, v});
    rows.push_back({{"graph", r.graph_key},
                    {"partner", to_string(r.partner)},
                    {"kind", to_string(r.kind)},
                    {"formula", quasipoly_to_json(r.formula)},
                    {"exceptions", ex},
                    {"citation", r.citation},
                    {"source", r.source},
                    {"new", r.is_new},
                    {"suspect", r.suspect ? nlohmann::ordered_json(*r.suspect) : nlohmann::ordered_json()}});
  }
  return {{"format", "crossprod-results"}, {"version", 1}, {"results", rows}};
}

}  // namespace crossprod
