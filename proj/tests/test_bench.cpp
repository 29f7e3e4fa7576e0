#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arcbip/bench.hpp"
#include "arcbip/errors.hpp"
#include "arcbip/solver_config.hpp"

using namespace arcbip;
using bench::BenchReportRow;
using bench::Metric;
using bench::ProfilePoint;
using bench::Variant;

namespace {

BenchReportRow row(const std::string& name, int ni, const std::string& status = "Converged") {
  BenchReportRow r;
  r.name = name;
  r.n = 2;
  r.m = 1;
  r.no = 1;
  r.ni = ni;
  r.nif = ni + 1;
  r.nig = ni + 1;
  r.res = 1e-9;
  r.status = status;
  r.wall_ms = 0.5;
  return r;
}

}  // namespace

TEST(Csv, Header) {
  const std::string text = bench::emit_csv({});
  EXPECT_EQ(text, "name,n,m,NO,NI,NIF,NIG,Res,status,wall_ms\n");
}

TEST(Csv, ResFormat) {
  EXPECT_EQ(bench::format_res(8.2592e-09), "8.2592e-09");
  EXPECT_EQ(bench::format_res(1e-9), "1.0000e-09");
}

TEST(Csv, RoundTrip) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> count(0, 500);
  std::uniform_real_distribution<double> expo(-12.0, 0.0);
  std::vector<BenchReportRow> rows;
  for (int i = 0; i < 30; ++i) {
    BenchReportRow r = row("P" + std::to_string(i), count(rng));
    r.no = count(rng);
    r.nif = count(rng);
    r.nig = count(rng);
    // Values representable exactly in the emitted precision.
    r.res = std::stod(bench::format_res(std::pow(10.0, expo(rng))));
    r.wall_ms = count(rng) / 8.0;
    r.status = i % 3 ? "Converged" : "MaxIterations";
    rows.push_back(r);
  }
  const auto parsed = bench::parse_csv(bench::emit_csv(rows));
  EXPECT_EQ(parsed, rows);
}

TEST(Csv, Malformed) {
  EXPECT_THROW(bench::parse_csv("bad header\n"), ParseError);
  EXPECT_THROW(bench::parse_csv("name,n,m,NO,NI,NIF,NIG,Res,status,wall_ms\nA,1,2\n"), ParseError);
  EXPECT_THROW(
      bench::parse_csv("name,n,m,NO,NI,NIF,NIG,Res,status,wall_ms\nA,x,1,1,1,1,1,1e-9,Converged,1\n"),
      ParseError);
}

TEST(Profile, VariantAgainstItself) {
  const std::vector<BenchReportRow> rows = {row("A", 4), row("B", 7), row("C", 1)};
  const auto p = bench::emit_performance_profile({{"x", rows}, {"y", rows}}, Metric::NI);
  for (const auto& prof : p) {
    ASSERT_EQ(prof.size(), 1u);
    EXPECT_EQ(prof[0], (ProfilePoint{1.0, 1.0}));
  }
}

TEST(Profile, HalfTheIterations) {
  const std::vector<BenchReportRow> a = {row("P1", 5), row("P2", 10), row("P3", 20)};
  const std::vector<BenchReportRow> b = {row("P1", 10), row("P2", 20), row("P3", 40)};
  const auto p = bench::emit_performance_profile({{"A", a}, {"B", b}}, Metric::NI);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (std::vector<ProfilePoint>{{1.0, 1.0}}));
  EXPECT_EQ(p[1], (std::vector<ProfilePoint>{{2.0, 1.0}}));
}

TEST(Profile, FailurePlateaus) {
  const std::vector<BenchReportRow> a = {row("P1", 5), row("P2", 10)};
  const std::vector<BenchReportRow> b = {row("P1", 5), row("P2", 10, "MaxIterations")};
  const auto p = bench::emit_performance_profile({{"A", a}, {"B", b}}, Metric::NI);
  ASSERT_EQ(p[1].size(), 1u);
  EXPECT_EQ(p[1][0], (ProfilePoint{1.0, 0.5}));
  EXPECT_EQ(p[0].back().fraction_solved, 1.0);
}

TEST(Profile, MetricSelection) {
  BenchReportRow a1 = row("P", 10), b1 = row("P", 10);
  a1.nif = 30;
  b1.nif = 10;
  const auto p = bench::emit_performance_profile({{"A", {a1}}, {"B", {b1}}}, Metric::NIF);
  EXPECT_EQ(p[0][0].tau_ratio, 3.0);
  EXPECT_EQ(p[1][0].tau_ratio, 1.0);
}

TEST(Profile, Errors) {
  const std::vector<BenchReportRow> a = {row("P1", 5)};
  const std::vector<BenchReportRow> b = {row("P2", 5)};
  EXPECT_THROW(bench::emit_performance_profile({{"A", a}}, Metric::NI), MismatchedProblemSets);
  EXPECT_THROW(bench::emit_performance_profile({{"A", a}, {"B", b}}, Metric::NI),
               MismatchedProblemSets);
  EXPECT_THROW(bench::emit_performance_profile({{"A", {row("P1", 1), row("P1", 2)}}, {"B", a}},
                                               Metric::NI),
               MismatchedProblemSets);
}

TEST(Profile, FormatBlocks) {
  const std::vector<Variant> v = {{"A", {row("P", 2)}}, {"B", {row("P", 4)}}};
  const auto p = bench::emit_performance_profile(v, Metric::NI);
  EXPECT_EQ(bench::format_profile(v, p), "# variant A\n1 1\n\n# variant B\n2 1\n");
}

TEST(Metric, Parse) {
  EXPECT_EQ(bench::parse_metric("NIG"), Metric::NIG);
  EXPECT_EQ(bench::to_string(Metric::NIF), "NIF");
  EXPECT_THROW(bench::parse_metric("time"), ConfigError);
}

TEST(RunProblems, SortedAndParallelConsistent) {
  const std::vector<suite::SuiteEntry> entries = {suite::get_problem("HS22"),
                                                  suite::get_problem("HS10"),
                                                  suite::get_problem("CB2")};
  auto serial = bench::run_problems(entries, SolverConfig{}, 1);
  auto parallel = bench::run_problems(entries, SolverConfig{}, 3);
  ASSERT_EQ(serial.size(), 3u);
  EXPECT_EQ(serial[0].name, "CB2");
  EXPECT_EQ(serial[1].name, "HS10");
  EXPECT_EQ(serial[2].name, "HS22");
  for (std::size_t i = 0; i < 3; ++i) {
    serial[i].wall_ms = parallel[i].wall_ms = 0.0;
    EXPECT_EQ(serial[i], parallel[i]);
    EXPECT_EQ(serial[i].status, "Converged");
  }
}

TEST(Config, ParseOverrides) {
  const auto c = parse_config("# comment\n e_t = 1e-6\nmax_total_iters=50\n\nforce_bfgs = true\n");
  EXPECT_EQ(c.e_t, 1e-6);
  EXPECT_EQ(c.max_total_iters, 50);
  EXPECT_TRUE(c.force_bfgs);
  EXPECT_EQ(c.eta1, SolverConfig{}.eta1);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("nonsense = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("eta1 = abc\n"), ConfigError);
  EXPECT_THROW(parse_config("eta1 = 0.95\n"), ConfigError);  // eta1 > eta2
  EXPECT_THROW(load_config_file("/nonexistent/arcbip.cfg"), ConfigError);
  EXPECT_NO_THROW(SolverConfig{}.validate());
  EXPECT_EQ(SolverConfig{}.mu_floor(), 1e-9);
}
