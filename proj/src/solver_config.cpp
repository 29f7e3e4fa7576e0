#include "arcbip/solver_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "arcbip/errors.hpp"

namespace arcbip {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

struct DoubleField {
  const char* name;
  double SolverConfig::*member;
};

struct IntField {
  const char* name;
  int SolverConfig::*member;
};

constexpr DoubleField kDoubleFields[] = {
    {"eta1", &SolverConfig::eta1},         {"eta2", &SolverConfig::eta2},
    {"gamma1", &SolverConfig::gamma1},     {"gamma2", &SolverConfig::gamma2},
    {"xi", &SolverConfig::xi},             {"delta", &SolverConfig::delta},
    {"tau", &SolverConfig::tau},           {"b", &SolverConfig::b},
    {"a", &SolverConfig::a},               {"e_t", &SolverConfig::e_t},
    {"sigma0", &SolverConfig::sigma0},     {"mu0", &SolverConfig::mu0},
    {"nu1", &SolverConfig::nu1},           {"gamma_n", &SolverConfig::gamma_n},
    {"gamma_t", &SolverConfig::gamma_t},   {"sigma_min", &SolverConfig::sigma_min},
    {"mu_min", &SolverConfig::mu_min},     {"y_floor", &SolverConfig::y_floor},
    {"sigma_shrink", &SolverConfig::sigma_shrink},
};

constexpr IntField kIntFields[] = {
    {"max_inner_per_mu", &SolverConfig::max_inner_per_mu},
    {"max_total_iters", &SolverConfig::max_total_iters},
    {"max_outer_iters", &SolverConfig::max_outer_iters},
};

}  // namespace

double SolverConfig::mu_floor() const { return std::max(mu_min, e_t / 10.0); }

void SolverConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid solver config: ") + what);
  };
  require(0.0 < eta1 && eta1 <= eta2 && eta2 < 1.0, "0 < eta1 <= eta2 < 1");
  require(1.0 < gamma1 && gamma1 < gamma2, "1 < gamma1 < gamma2");
  require(0.0 < xi && xi < 1.0, "0 < xi < 1");
  require(0.0 < delta && delta < 1.0, "0 < delta < 1");
  require(0.0 < tau && tau < 1.0, "0 < tau < 1");
  require(0.0 < b && b < 1.0, "0 < b < 1");
  require(a > 0.0, "a > 0");
  require(e_t > 0.0, "e_t > 0");
  require(sigma0 > 0.0 && mu0 > 0.0 && nu1 > 0.0, "sigma0, mu0, nu1 > 0");
  require(0.0 < gamma_n && gamma_n <= 1.0, "0 < gamma_n <= 1");
  require(0.0 < gamma_t && gamma_t <= 1.0, "0 < gamma_t <= 1");
  require(sigma_min > 0.0 && sigma_min <= sigma0, "0 < sigma_min <= sigma0");
  require(0.0 < sigma_shrink && sigma_shrink <= 1.0, "0 < sigma_shrink <= 1");
  require(mu_min > 0.0, "mu_min > 0");
  require(y_floor > 0.0, "y_floor > 0");
  require(max_inner_per_mu > 0 && max_total_iters > 0 && max_outer_iters > 0,
          "iteration limits must be positive");
}

void SolverConfig::set(const std::string& key, const std::string& value) {
  for (const auto& f : kDoubleFields) {
    if (key == f.name) {
      this->*f.member = parse_double(key, value);
      return;
    }
  }
  for (const auto& f : kIntFields) {
    if (key == f.name) {
      this->*f.member = parse_int(key, value);
      return;
    }
  }
  if (key == "force_bfgs") {
    force_bfgs = parse_bool(key, value);
    return;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::string> SolverConfig::keys() {
  std::vector<std::string> out;
  for (const auto& f : kDoubleFields) out.emplace_back(f.name);
  for (const auto& f : kIntFields) out.emplace_back(f.name);
  out.emplace_back("force_bfgs");
  return out;
}

SolverConfig parse_config(const std::string& text, SolverConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    base.set(key, value);
  }
  base.validate();
  return base;
}

SolverConfig load_config_file(const std::string& path, SolverConfig base) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str(), base);
}

}  // namespace arcbip
