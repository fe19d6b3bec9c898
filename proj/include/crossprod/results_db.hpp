#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossprod/quasipoly.hpp"
#include "json.hpp"

namespace crossprod {

enum class Partner { path, cycle, star };
const char* to_string(Partner p);
std::optional<Partner> parse_partner(const std::string& s);
// Smallest n for which the partner graph is defined (C_n needs n >= 3).
int partner_min_n(Partner p);

enum class BoundKind { exact, lower, upper };
const char* to_string(BoundKind k);

class DbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KnownResult {
  std::string graph_key;  // atlas key, "6.40"
  Partner partner = Partner::path;
  BoundKind kind = BoundKind::exact;
  QuasiPoly2 formula;
  // Point values for n below formula.min_n, sorted by n.
  std::vector<std::pair<int, std::int64_t>> exceptions;
  std::string citation;
  std::string source;  // table1, table2, table2_cycle, table3, theorem1..5
  bool is_new = false;  // established by the reproduced constructions
  std::optional<std::string> suspect;

  std::optional<std::int64_t> value_at(int n) const;
  std::string label() const;  // "6.40/cycle"
};

struct ResultsDb {
  std::vector<KnownResult> rows;

  std::vector<const KnownResult*> find(const std::string& key, Partner p) const;
  // Rows that predate the new results.
  ResultsDb prior_only() const;
  // Suspect rows dropped.
  ResultsDb trusted() const;
};

// Manifest: {"row_counts": {source: count}, "total_rows": N, ...}.
struct Manifest {
  std::map<std::string, int> row_counts;
  int total_rows = 0;
  int new_rows = 0;
  int small_cycle_values = 0;
};

ResultsDb parse_results_db(const nlohmann::ordered_json& j);
Manifest parse_manifest(const nlohmann::ordered_json& j);
// Throws DbError naming the first mismatch.
void check_against_manifest(const ResultsDb& db, const Manifest& m);

ResultsDb load_results_db(std::istream& db, std::istream* manifest = nullptr);
ResultsDb load_results_db_files(const std::string& db_path, const std::string& manifest_path);

nlohmann::ordered_json results_db_to_json(const ResultsDb& db);

}  // namespace crossprod
