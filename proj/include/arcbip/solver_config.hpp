#pragma once

#include <string>
#include <vector>

namespace arcbip {

struct SolverConfig {
  double eta1 = 0.1;    // successful-step threshold
  double eta2 = 0.9;    // very-successful-step threshold
  double gamma1 = 2.0;  // sigma growth on unsuccessful steps
  double gamma2 = 5.0;
  double xi = 0.8;
  double delta = 0.3;
  double tau = 0.995;
  double b = 0.5;
  double a = 10.0;  // inner loop stops once E(x, y; mu) < a mu

  double e_t = 1e-8;
  double sigma0 = 1.0;
  double mu0 = 0.1;
  double nu1 = 1.0;

  double gamma_n = 0.9;
  double gamma_t = 0.9;

  // Very successful steps multiply sigma by sigma_shrink, floored at sigma_min.
  double sigma_shrink = 0.25;
  double sigma_min = 1e-16;
  double mu_min = 1e-12;
  double y_floor = 1e-2;

  int max_inner_per_mu = 500;
  int max_total_iters = 3000;
  int max_outer_iters = 200;

  // Drop the problem's Hessian and use damped BFGS instead.
  bool force_bfgs = false;

  // max(mu_min, e_t / 10)
  double mu_floor() const;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;

  // Assigns a field from its textual value; throws ConfigError on an unknown
  // key or an unparsable value.
  void set(const std::string& key, const std::string& value);

  static std::vector<std::string> keys();
};

// Parses "key = value" lines with '#' comments into overrides of base.
SolverConfig parse_config(const std::string& text, SolverConfig base = {});
SolverConfig load_config_file(const std::string& path, SolverConfig base = {});

}  // namespace arcbip
