// Benchmark runner: solves suite problems and writes CSV reports and
// performance-profile data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arcbip/bench.hpp"
#include "arcbip/errors.hpp"
#include "arcbip/hs_suite.hpp"
#include "arcbip/solver_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<std::string> problems;
  bool all = false;
  double tol = 0.0;
  int max_iter = 0;
  std::string config_path;
  std::string csv_path;
  std::string profile_path;
  long seed = 0;
  std::vector<std::string> variants;  // name=config-path
  std::string metric = "NI";
  int jobs = 1;
  bool quiet = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw arcbip::ConfigError("cannot write '" + path + "'");
  out << text;
}

void print_table(const std::vector<arcbip::bench::BenchReportRow>& rows) {
  std::printf("%-10s %3s %3s %4s %5s %5s %5s %-11s %-17s %9s\n", "problem", "n", "m", "NO", "NI",
              "NIF", "NIG", "Res", "status", "wall_ms");
  for (const auto& r : rows) {
    std::printf("%-10s %3d %3d %4d %5d %5ld %5ld %-11s %-17s %9.3f\n", r.name.c_str(), r.n, r.m,
                r.no, r.ni, r.nif, r.nig, arcbip::bench::format_res(r.res).c_str(),
                r.status.c_str(), r.wall_ms);
  }
}

// Builds the variants compared in the profile: the explicit --variant list,
// or the base configuration against its BFGS counterpart.
std::vector<std::pair<std::string, arcbip::SolverConfig>> profile_variants(
    const Options& opt, const arcbip::SolverConfig& base) {
  std::vector<std::pair<std::string, arcbip::SolverConfig>> out;
  if (opt.variants.empty()) {
    arcbip::SolverConfig exact = base;
    exact.force_bfgs = false;
    arcbip::SolverConfig bfgs = base;
    bfgs.force_bfgs = true;
    out.emplace_back("exact-hessian", exact);
    out.emplace_back("bfgs", bfgs);
    return out;
  }
  for (const auto& arg : opt.variants) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
      throw arcbip::ConfigError("--variant expects NAME=CONFIG_PATH, got '" + arg + "'");
    }
    out.emplace_back(arg.substr(0, eq), arcbip::load_config_file(arg.substr(eq + 1), base));
  }
  if (out.size() < 2) throw arcbip::ConfigError("--variant must be given at least twice");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark the barrier ARC solver on the built-in test problems"};
  Options opt;
  app.add_option("--problem", opt.problems, "Problem name (repeatable)");
  app.add_flag("--all", opt.all, "Run every registered problem");
  app.add_option("--tol", opt.tol, "Stopping tolerance e_t")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", opt.max_iter, "Limit on total inner iterations")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", opt.config_path, "File of 'key = value' solver settings");
  app.add_option("--csv", opt.csv_path, "Write the report as CSV");
  app.add_option("--profile", opt.profile_path, "Write performance-profile data");
  app.add_option("--seed", opt.seed,
                 "Recorded for reproducibility; solves are deterministic");
  app.add_option("--variant", opt.variants,
                 "Profile variant NAME=CONFIG_PATH (repeatable, at least two)");
  app.add_option("--metric", opt.metric, "Profile metric: NI, NIF or NIG")
      ->check(CLI::IsMember({"NI", "NIF", "NIG"}));
  app.add_option("--jobs", opt.jobs, "Concurrent solves")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opt.quiet, "Do not print the report table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::vector<arcbip::suite::SuiteEntry> entries;
  arcbip::SolverConfig config;
  try {
    if (opt.all == !opt.problems.empty()) {
      throw arcbip::ConfigError("give either --all or at least one --problem");
    }
    if (opt.all) {
      entries = arcbip::suite::all_problems();
    } else {
      for (const auto& name : opt.problems) entries.push_back(arcbip::suite::get_problem(name));
    }
    if (!opt.config_path.empty()) config = arcbip::load_config_file(opt.config_path, config);
    if (opt.tol > 0.0) config.e_t = opt.tol;
    if (opt.max_iter > 0) config.max_total_iters = opt.max_iter;
    config.validate();
  } catch (const arcbip::Error& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const auto rows = arcbip::bench::run_problems(entries, config, opt.jobs);
    if (!opt.quiet) print_table(rows);
    if (!opt.csv_path.empty()) write_file(opt.csv_path, arcbip::bench::emit_csv(rows));

    bool all_converged = true;
    for (const auto& r : rows) all_converged = all_converged && r.status == "Converged";

    if (!opt.profile_path.empty()) {
      std::vector<arcbip::bench::Variant> variants;
      for (const auto& [name, cfg] : profile_variants(opt, config)) {
        variants.push_back({name, arcbip::bench::run_problems(entries, cfg, opt.jobs)});
      }
      const auto metric = arcbip::bench::parse_metric(opt.metric);
      const auto profiles = arcbip::bench::emit_performance_profile(variants, metric);
      write_file(opt.profile_path, "# metric " + opt.metric + "\n" +
                                       arcbip::bench::format_profile(variants, profiles));
    }
    return all_converged ? kExitOk : kExitFailure;
  } catch (const arcbip::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
