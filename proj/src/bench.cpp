#include "arcbip/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "arcbip/errors.hpp"

namespace arcbip::bench {
namespace {

constexpr const char* kHeader = "name,n,m,NO,NI,NIF,NIG,Res,status,wall_ms";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, int line_no) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) {
    throw ParseError("CSV line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

double metric_value(const BenchReportRow& row, Metric metric) {
  switch (metric) {
    case Metric::NI:
      return row.ni;
    case Metric::NIF:
      return static_cast<double>(row.nif);
    case Metric::NIG:
      return static_cast<double>(row.nig);
  }
  return 0.0;
}

}  // namespace

BenchReportRow make_row(const suite::SuiteEntry& entry, const SolveResult& result,
                        double wall_ms) {
  BenchReportRow row;
  row.name = entry.name;
  row.n = entry.problem.n;
  row.m = entry.problem.m;
  row.no = result.outer_iterations;
  row.ni = result.inner_iterations;
  row.nif = result.objective_evals;
  row.nig = result.gradient_evals;
  row.res = result.e_final;
  row.status = to_string(result.status);
  row.wall_ms = wall_ms;
  return row;
}

BenchReportRow run_problem(const suite::SuiteEntry& entry, const SolverConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SolveResult result = solve(entry.problem, entry.x0, config);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  return make_row(entry, result, elapsed.count());
}

std::vector<BenchReportRow> run_problems(const std::vector<suite::SuiteEntry>& entries,
                                         const SolverConfig& config, int jobs) {
  std::vector<BenchReportRow> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      rows[i] = run_problem(entries[i], config);
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(entries.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(rows.begin(), rows.end(),
            [](const BenchReportRow& a, const BenchReportRow& b) { return a.name < b.name; });
  return rows;
}

std::string format_res(double res) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", res);
  return buf;
}

std::string emit_csv(const std::vector<BenchReportRow>& rows) {
  std::ostringstream out;
  out << kHeader << '\n';
  char wall[64];
  for (const auto& r : rows) {
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    out << r.name << ',' << r.n << ',' << r.m << ',' << r.no << ',' << r.ni << ',' << r.nif
        << ',' << r.nig << ',' << format_res(r.res) << ',' << r.status << ',' << wall << '\n';
  }
  return out.str();
}

std::vector<BenchReportRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ParseError(std::string("CSV header must be '") + kHeader + "'");
  }
  std::vector<BenchReportRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw ParseError("CSV line " + std::to_string(line_no) + ": expected 10 fields");
    }
    BenchReportRow r;
    r.name = f[0];
    r.n = parse_number<int>(f[1], line_no);
    r.m = parse_number<int>(f[2], line_no);
    r.no = parse_number<int>(f[3], line_no);
    r.ni = parse_number<int>(f[4], line_no);
    r.nif = parse_number<long>(f[5], line_no);
    r.nig = parse_number<long>(f[6], line_no);
    r.res = parse_number<double>(f[7], line_no);
    r.status = f[8];
    r.wall_ms = parse_number<double>(f[9], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

Metric parse_metric(const std::string& name) {
  if (name == "NI") return Metric::NI;
  if (name == "NIF") return Metric::NIF;
  if (name == "NIG") return Metric::NIG;
  throw ConfigError("unknown metric '" + name + "' (expected NI, NIF or NIG)");
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::NI:
      return "NI";
    case Metric::NIF:
      return "NIF";
    case Metric::NIG:
      return "NIG";
  }
  return "?";
}

std::vector<std::vector<ProfilePoint>> emit_performance_profile(
    const std::vector<Variant>& variants, Metric metric) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (variants.size() < 2) {
    throw MismatchedProblemSets("performance profile needs at least two variants");
  }

  // name -> metric value per variant
  std::map<std::string, std::vector<double>> table;
  std::set<std::string> reference;
  for (const auto& row : variants.front().rows) reference.insert(row.name);
  for (std::size_t v = 0; v < variants.size(); ++v) {
    std::set<std::string> names;
    for (const auto& row : variants[v].rows) {
      if (!names.insert(row.name).second) {
        throw MismatchedProblemSets("variant '" + variants[v].name + "' lists " + row.name +
                                    " twice");
      }
      auto& values = table[row.name];
      values.resize(variants.size(), kInf);
      values[v] = row.status == "Converged" ? metric_value(row, metric) : kInf;
    }
    if (names != reference) {
      throw MismatchedProblemSets("variant '" + variants[v].name +
                                  "' covers a different problem set");
    }
  }

  const double problems = static_cast<double>(table.size());
  std::vector<std::vector<double>> ratios(variants.size());
  for (const auto& [name, values] : table) {
    const double best = *std::min_element(values.begin(), values.end());
    for (std::size_t v = 0; v < values.size(); ++v) {
      double r = kInf;
      // Counts of zero (already optimal start) are treated as one.
      if (std::isfinite(values[v])) r = std::max(values[v], 1.0) / std::max(best, 1.0);
      ratios[v].push_back(r);
    }
  }

  std::vector<std::vector<ProfilePoint>> profiles(variants.size());
  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto& r = ratios[v];
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size() && std::isfinite(r[i]); ++i) {
      if (i + 1 < r.size() && r[i + 1] == r[i]) continue;
      profiles[v].push_back({r[i], static_cast<double>(i + 1) / problems});
    }
  }
  return profiles;
}

std::string format_profile(const std::vector<Variant>& variants,
                           const std::vector<std::vector<ProfilePoint>>& profiles) {
  std::ostringstream out;
  char buf[96];
  for (std::size_t v = 0; v < variants.size() && v < profiles.size(); ++v) {
    if (v > 0) out << '\n';
    out << "# variant " << variants[v].name << '\n';
    for (const auto& p : profiles[v]) {
      std::snprintf(buf, sizeof buf, "%.6g %.6g\n", p.tau_ratio, p.fraction_solved);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace arcbip::bench
