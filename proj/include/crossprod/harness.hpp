#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossprod/atlas.hpp"
#include "crossprod/families.hpp"
#include "crossprod/graph.hpp"
#include "crossprod/inference.hpp"
#include "crossprod/results_db.hpp"
#include "json.hpp"

namespace crossprod {

enum ExitCode : int { exit_ok = 0, exit_mismatch = 1, exit_input = 2, exit_budget = 3 };

std::string default_atlas_path();
std::string default_db_path();
std::string default_manifest_path();

struct RunConfig {
  std::string command;
  std::string atlas_path = default_atlas_path();
  std::string db_path = default_db_path();
  std::string manifest_path = default_manifest_path();  // empty: skip the manifest check
  int n_max = 30;
  int restarts = 500;
  std::uint64_t seed = 1;
  std::uint64_t budget_configs = 10'000'000;
  double budget_seconds = 300.0;
  // Per-instance cap for the G4 x {P3, C3, S3} sweep in verify-tables, which
  // only confirms what fits.
  double sweep_seconds = 20.0;
  unsigned threads = 1;
  bool json = false;
  std::string out_dir;  // empty: no artifact files

  nlohmann::ordered_json to_json() const;
};

// Thrown for bad input or configuration; maps to exit_input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// status: "pass", "fail", "budget" (ran out before deciding; not a mismatch)
// or "open" (a stochastic search stopped above the target; not a mismatch).
struct CheckResult {
  std::string check_id;
  std::string status;
  std::string expected;
  std::string observed;
  std::string artifact_path;
  nlohmann::ordered_json to_json() const;
};

struct Report {
  nlohmann::ordered_json config;
  std::vector<CheckResult> checks;  // sorted by check_id
  std::vector<std::string> summary;
  // Timings and other run-dependent facts; kept out of to_json so reports
  // with a fixed seed are byte-identical.
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  int failures() const;
  int exit_code() const;  // verify-tables semantics: 1 on any fail, else 0
  nlohmann::ordered_json to_json() const;
  std::string text() const;
};

// "6.63" (atlas), "K5", "K3,3", "C4", "P3", "S3", or "g6:<graph6>".
Graph parse_graph_spec(const std::string& spec, const Atlas* atlas);

struct Loaded {
  Atlas atlas;
  ResultsDb db;
};
// Throws InputError naming the file at fault.
Loaded load_inputs(const RunConfig& cfg);

// Building blocks of verify-tables; each appends checks to the report.
// n range: [family min_n, n_max].
void check_families(const Atlas& atlas, const RunConfig& cfg, Report& rep);
void check_small_cycles(const Atlas& atlas, const ResultsDb& db, const RunConfig& cfg, Report& rep);
void check_exact_sanity(const Atlas& atlas, const ResultsDb& db, const RunConfig& cfg, Report& rep);
void check_theorems(const Atlas& atlas, const ResultsDb& db, const RunConfig& cfg, Report& rep);
// Row-level db checks: generator rows against their constructions, exact and
// upper rows against a quick heuristic drawing at the smallest n, and value
// monotonicity along atlas containments.
void check_db_rows(const Atlas& atlas, const ResultsDb& db, const RunConfig& cfg, Report& rep);

// Upper-bound extras from the generators, each re-verified for min_n..n_max
// before it is handed out. Families failing verification are left out.
std::vector<UpperExtra> verified_generator_bounds(const Atlas& atlas, int n_max);

Report cmd_verify_tables(const RunConfig& cfg);

// Single queries. text is what the CLI prints without --json.
struct CommandOutput {
  int exit_code = exit_ok;
  nlohmann::ordered_json json = nlohmann::ordered_json::object();
  std::string text;
};

// graph is a graph spec; with a partner the query is graph x partner(n).
CommandOutput cmd_product(const RunConfig& cfg, const std::string& graph, Partner partner, int n);
CommandOutput cmd_cr_exact(const RunConfig& cfg, const std::string& graph, std::optional<Partner> partner, int n);
CommandOutput cmd_cr_heuristic(const RunConfig& cfg, const std::string& graph, std::optional<Partner> partner,
                               int n);
CommandOutput cmd_infer(const RunConfig& cfg, const std::string& key, Partner partner);
CommandOutput cmd_draw_family(const RunConfig& cfg, const std::string& key, Partner partner, int n,
                              const std::string& svg_path, const std::string& json_path);
CommandOutput cmd_atlas_validate(const RunConfig& cfg);

// Writes report.json (and meta.json) into cfg.out_dir when set.
void write_report(const Report& rep, const RunConfig& cfg, const std::string& name);

}  // namespace crossprod
