#pragma once

#include <string>
#include <vector>

#include "arcbip/nlp_model.hpp"

namespace arcbip::suite {

// Reference counters as published for the method on this problem.
struct PublishedCounts {
  int no = 0;
  int ni = 0;
  int nif = 0;
  int nig = 0;
  double res = 0.0;
};

struct SuiteEntry {
  std::string name;
  NlpProblem problem;
  Vec x0;
  PublishedCounts published;
  double known_optimum = 0.0;  // literature optimal objective value
};

struct ProblemInfo {
  std::string name;
  int n = 0;
  int m = 0;
};

// Throws UnknownProblem listing the valid names.
SuiteEntry get_problem(const std::string& name);

// Alphabetical.
std::vector<ProblemInfo> list_problems();

std::vector<SuiteEntry> all_problems();

}  // namespace arcbip::suite
