#pragma once

#include <string>
#include <vector>

#include "arcbip/driver.hpp"
#include "arcbip/hs_suite.hpp"
#include "arcbip/solver_config.hpp"

namespace arcbip::bench {

struct BenchReportRow {
  std::string name;
  int n = 0;
  int m = 0;
  int no = 0;
  int ni = 0;
  long nif = 0;
  long nig = 0;
  double res = 0.0;  // E(x, y; 0) at exit
  std::string status;
  double wall_ms = 0.0;

  bool operator==(const BenchReportRow&) const = default;
};

BenchReportRow make_row(const suite::SuiteEntry& entry, const SolveResult& result,
                        double wall_ms);

BenchReportRow run_problem(const suite::SuiteEntry& entry, const SolverConfig& config);

// Solves every entry (up to `jobs` at a time) and returns rows sorted by name.
std::vector<BenchReportRow> run_problems(const std::vector<suite::SuiteEntry>& entries,
                                         const SolverConfig& config, int jobs = 1);

// Res is printed as %.4e, wall_ms as %.3f.
std::string format_res(double res);
std::string emit_csv(const std::vector<BenchReportRow>& rows);
// Inverse of emit_csv; throws ParseError on a malformed header or line.
std::vector<BenchReportRow> parse_csv(const std::string& text);

enum class Metric { NI, NIF, NIG };
Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

struct ProfilePoint {
  double tau_ratio = 1.0;
  double fraction_solved = 0.0;

  bool operator==(const ProfilePoint&) const = default;
};

struct Variant {
  std::string name;
  std::vector<BenchReportRow> rows;
};

// Dolan-More profile. Ratios are metric / best metric per problem; failed
// solves count as infinite. Each variant's profile lists one breakpoint per
// distinct finite ratio. Throws MismatchedProblemSets if fewer than two
// variants are given or their problem sets differ.
std::vector<std::vector<ProfilePoint>> emit_performance_profile(
    const std::vector<Variant>& variants, Metric metric);

// One block per variant: a "# variant <name>" line, then "tau fraction"
// lines; blocks are separated by a blank line.
std::string format_profile(const std::vector<Variant>& variants,
                           const std::vector<std::vector<ProfilePoint>>& profiles);

}  // namespace arcbip::bench
