// crossprod: command-line front end for the crossing-number toolkit.

#include <iostream>

#include "CLI11.hpp"
#include "crossprod/harness.hpp"

using namespace crossprod;

namespace {

Partner partner_arg(const std::string& s) {
  auto p = parse_partner(s);
  if (!p) throw InputError("partner must be path, cycle or star, got '" + s + "'");
  return *p;
}

// The effective config goes to stderr in text mode and into the JSON otherwise.
int emit(const RunConfig& cfg, CommandOutput o) {
  if (cfg.json) {
    o.json["config"] = cfg.to_json();
    std::cout << o.json.dump(1) << "\n";
  } else {
    std::cerr << "config " << cfg.to_json().dump() << "\n";
    std::cout << o.text;
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossprod: drawings, crossing counts and bound inference for G x P_n, C_n, S_n"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--atlas", cfg.atlas_path, "atlas file (key graph6 per line)");
  app.add_option("--db", cfg.db_path, "results database (JSON)");
  app.add_option("--manifest", cfg.manifest_path, "manifest for the db; empty string skips the check");
  app.add_option("--n-max", cfg.n_max, "largest n for generator checks")->check(CLI::Range(1, 1000));
  app.add_option("--restarts", cfg.restarts, "heuristic restarts per instance")->check(CLI::Range(1, 1000000));
  app.add_option("--seed", cfg.seed, "heuristic seed");
  app.add_option("--budget-configs", cfg.budget_configs, "exact solver configuration budget");
  app.add_option("--budget-seconds", cfg.budget_seconds, "exact solver time budget per instance");
  app.add_option("--sweep-seconds", cfg.sweep_seconds, "time cap per instance in the verify-tables exact sweep");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--json", cfg.json, "print JSON instead of text");
  app.add_option("--out-dir", cfg.out_dir, "directory for reports and artifacts");

  auto* verify = app.add_subcommand("verify-tables", "run every verification check");

  std::string graph, partner_s;
  int n = 0;
  auto* product = app.add_subcommand("product", "build G x partner(n)");
  product->add_option("graph", graph, "atlas key, K5, K3,3, C4, P3, S3 or g6:...")->required();
  product->add_option("partner", partner_s, "path, cycle or star")->required();
  product->add_option("n", n, "partner size")->required();

  auto* exact = app.add_subcommand("cr-exact", "exact crossing number by level search");
  exact->add_option("graph", graph)->required();
  exact->add_option("partner", partner_s);
  exact->add_option("n", n);

  auto* heur = app.add_subcommand("cr-heuristic", "upper bound by planarization heuristic");
  heur->add_option("graph", graph)->required();
  heur->add_option("partner", partner_s);
  heur->add_option("n", n);

  std::string key;
  auto* infer = app.add_subcommand("infer", "bounds from the db and atlas containments");
  infer->add_option("key", key, "atlas key")->required();
  infer->add_option("partner", partner_s)->required();

  std::string svg, drawing_json;
  auto* draw = app.add_subcommand("draw-family", "generate one of the ten constructions");
  draw->add_option("key", key)->required();
  draw->add_option("partner", partner_s)->required();
  draw->add_option("n", n)->required();
  draw->add_option("--svg", svg, "write an SVG");
  draw->add_option("--drawing", drawing_json, "write the drawing as JSON");

  auto* atlas_validate = app.add_subcommand("atlas-validate", "check the containments the proofs rely on");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  try {
    auto optional_partner = [&]() -> std::optional<Partner> {
      if (partner_s.empty()) return std::nullopt;
      return partner_arg(partner_s);
    };
    if (verify->parsed()) {
      cfg.command = "verify-tables";
      Report rep = cmd_verify_tables(cfg);
      write_report(rep, cfg, "verify-tables");
      if (cfg.json)
        std::cout << rep.to_json().dump(1) << "\n";
      else {
        std::cerr << "config " << cfg.to_json().dump() << "\n";
        std::cout << rep.text();
      }
      return rep.exit_code();
    }
    if (product->parsed()) {
      cfg.command = "product";
      return emit(cfg, cmd_product(cfg, graph, partner_arg(partner_s), n));
    }
    if (exact->parsed()) {
      cfg.command = "cr-exact";
      return emit(cfg, cmd_cr_exact(cfg, graph, optional_partner(), n));
    }
    if (heur->parsed()) {
      cfg.command = "cr-heuristic";
      return emit(cfg, cmd_cr_heuristic(cfg, graph, optional_partner(), n));
    }
    if (infer->parsed()) {
      cfg.command = "infer";
      return emit(cfg, cmd_infer(cfg, key, partner_arg(partner_s)));
    }
    if (draw->parsed()) {
      cfg.command = "draw-family";
      return emit(cfg, cmd_draw_family(cfg, key, partner_arg(partner_s), n, svg, drawing_json));
    }
    if (atlas_validate->parsed()) {
      cfg.command = "atlas-validate";
      return emit(cfg, cmd_atlas_validate(cfg));
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_mismatch;
  }
  return exit_input;
}
