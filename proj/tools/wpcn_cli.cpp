// wpcn: solve, sweep and BER-report front end.
//
//   wpcn solve <config> [--scheme backscatter|no_backscatter|both] [--out file.json]
//   wpcn sweep [<spec>] [--preset fig4|fig5] [--out file.csv] [--seed N] [--grid-check]
//   wpcn ber <config> [--out file.csv] [--seed N]
//
// Exit codes: 0 success, 1 parse/validation error, 2 solver non-convergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "wpcn/config.hpp"
#include "wpcn/report.hpp"
#include "wpcn/solver.hpp"
#include "wpcn/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNonConvergence = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wpcn::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_solve(const std::string& config_path, const std::string& scheme,
              const std::string& out_path) {
  const wpcn::Config cfg = wpcn::load_config(config_path);
  if (cfg.gain_source == wpcn::GainSource::explicit_gains && cfg.topology) {
    std::cout << "note: explicit [gains] take precedence over [topology]\n";
  }
  std::vector<std::pair<std::string, wpcn::Solution>> solved;
  int status = kExitOk;
  auto attempt = [&](const std::string& name, auto&& solve) {
    try {
      solved.emplace_back(name, solve());
    } catch (const wpcn::SolverError& e) {
      std::cerr << "error: " << e.what() << '\n';
      solved.emplace_back(name, e.best());
      status = kExitNonConvergence;
    }
    wpcn::print_solution(std::cout, name, solved.back().second);
  };
  if (scheme == "backscatter" || scheme == "both") {
    attempt("backscatter", [&] {
      return wpcn::maximize_common_throughput(cfg.gains, cfg.params, cfg.policy, cfg.solver);
    });
  }
  if (scheme == "no_backscatter" || scheme == "both") {
    attempt("no_backscatter",
            [&] { return wpcn::maximize_benchmark(cfg.gains, cfg.params, cfg.solver); });
  }
  if (!out_path.empty()) write_file(out_path, wpcn::solution_json(cfg, solved) + "\n");
  return status;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& preset,
                  const std::string& out_path, std::optional<std::uint64_t> seed,
                  bool grid_check) {
  wpcn::SweepSpec spec;
  if (!preset.empty()) {
    spec = preset == "fig4" ? wpcn::fig4_preset() : wpcn::fig5_preset();
    if (!spec_path.empty()) {
      // A spec file alongside a preset only supplies the base configuration.
      const wpcn::Config cfg = wpcn::load_config(spec_path);
      spec.base.params = cfg.params;
      spec.base.policy = cfg.policy;
      spec.base.solver = cfg.solver;
    }
  } else {
    if (spec_path.empty()) throw wpcn::ConfigError("sweep needs a spec file or --preset");
    spec = wpcn::sweep_from_config(wpcn::load_config(spec_path));
  }
  if (!out_path.empty()) spec.output_path = out_path;
  if (seed) spec.seed = *seed;
  spec.grid_check = spec.grid_check || grid_check;

  const auto rows = wpcn::run_sweep(spec);
  {
    std::ofstream csv(spec.output_path, std::ios::binary);
    if (!csv) throw wpcn::ConfigError("cannot write '" + spec.output_path + "'");
    wpcn::write_sweep_csv(csv, spec, rows);
  }
  const std::string dat_path =
      std::filesystem::path(spec.output_path).replace_extension(".dat").string();
  {
    std::ofstream dat(dat_path, std::ios::binary);
    if (!dat) throw wpcn::ConfigError("cannot write '" + dat_path + "'");
    wpcn::write_sweep_gnuplot(dat, spec, rows);
  }

  int status = kExitOk;
  std::printf("%-12s %-15s %-10s %-18s %s\n", "abscissa", "scheme", "rb", "Z (bits/block)",
              "status");
  for (const auto& r : rows) {
    char rb[32] = "-";
    if (r.scheme.scheme == wpcn::Scheme::backscatter) std::snprintf(rb, sizeof rb, "%g", r.scheme.rb);
    std::printf("%-12g %-15s %-10s %-18.6f %s\n", r.abscissa,
                wpcn::to_string(r.scheme.scheme).c_str(), rb, r.solution.common_throughput,
                r.status.c_str());
    if (r.status != "ok") status = kExitNonConvergence;
  }
  std::cout << "wrote " << spec.output_path << " and " << dat_path << '\n';
  return status;
}

int run_ber(const std::string& config_path, const std::string& out_path,
            std::optional<std::uint64_t> seed) {
  wpcn::Config cfg = wpcn::load_config(config_path);
  if (seed) cfg.ber.seed = *seed;
  const auto rows = wpcn::run_ber_report(cfg);
  if (out_path.empty()) {
    wpcn::write_ber_csv(std::cout, cfg, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw wpcn::ConfigError("cannot write '" + out_path + "'");
    wpcn::write_ber_csv(out, cfg, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backscatter-assisted cooperation in a two-user WPCN: solver and experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string scheme = "backscatter";
  std::string preset;
  std::optional<std::uint64_t> seed;
  bool grid_check = false;

  auto* solve = app.add_subcommand("solve", "Solve one instance from a config file");
  solve->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  solve->add_option("--scheme", scheme, "Scheme to solve")
      ->check(CLI::IsMember({"backscatter", "no_backscatter", "both"}));
  solve->add_option("--out", out_path, "Write the solution as JSON");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("spec", config_path, "Sweep spec file")->check(CLI::ExistingFile);
  sweep->add_option("--preset", preset, "Built-in experiment")
      ->check(CLI::IsMember({"fig4", "fig5"}));
  sweep->add_option("--out", out_path, "CSV output path");
  sweep->add_option("--seed", seed, "Seed recorded with the sweep");
  sweep->add_flag("--grid-check", grid_check, "Also run the grid oracle at every point");

  auto* ber = app.add_subcommand("ber", "Compare the closed-form BER with Monte Carlo");
  ber->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  ber->add_option("--out", out_path, "CSV output path (default: stdout)");
  ber->add_option("--seed", seed, "Base seed for the Monte Carlo streams");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*solve) return run_solve(config_path, scheme, out_path);
    if (*sweep) return run_sweep_cmd(config_path, preset, out_path, seed, grid_check);
    if (*ber) return run_ber(config_path, out_path, seed);
  } catch (const wpcn::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
