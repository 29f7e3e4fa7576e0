#include "arcbip/hs_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "arcbip/errors.hpp"

// Classic inequality-constrained test problems (Hock-Schittkowski and the
// CUTEst minimax set), written as min f(x) s.t. g(x) <= 0. Equalities are
// split into two opposite inequalities; minimax problems carry the bound
// variable u as their last coordinate.

namespace arcbip::suite {
namespace {

using Hessian = std::function<Mat(const Vec&, const Vec&)>;

NlpProblem make_problem(std::string name, int n, int m, std::function<double(const Vec&)> f,
                        std::function<Vec(const Vec&)> grad, std::function<Vec(const Vec&)> g,
                        std::function<Mat(const Vec&)> jac, Hessian hess) {
  NlpProblem p;
  p.name = std::move(name);
  p.n = n;
  p.m = m;
  p.objective = std::move(f);
  p.objective_gradient = std::move(grad);
  p.constraints = std::move(g);
  p.constraint_jacobian = std::move(jac);
  p.lagrangian_hessian = std::move(hess);
  return p;
}

Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// min u  s.t.  phi_i(x) - u <= 0, with three smooth pieces in (x1, x2).
// The first piece is x1^2 + x2^4 (quartic_first = false) or x1^4 + x2^2.
NlpProblem charalambous_conn(std::string name, bool quartic_first) {
  auto pieces = [quartic_first](const Vec& z) {
    const double x1 = z[0];
    const double x2 = z[1];
    const double p1 = quartic_first ? std::pow(x1, 4) + x2 * x2 : x1 * x1 + std::pow(x2, 4);
    return vec({p1, (2 - x1) * (2 - x1) + (2 - x2) * (2 - x2), 2 * std::exp(x2 - x1)});
  };
  return make_problem(
      std::move(name), 3, 3, [](const Vec& z) { return z[2]; },
      [](const Vec&) { return vec({0, 0, 1}); },
      [pieces](const Vec& z) { return Vec(pieces(z).array() - z[2]); },
      [quartic_first](const Vec& z) {
        const double x1 = z[0];
        const double x2 = z[1];
        const double e = std::exp(x2 - x1);
        Mat a(3, 3);
        if (quartic_first) {
          a.col(0) << 4 * x1 * x1 * x1, 2 * x2, -1;
        } else {
          a.col(0) << 2 * x1, 4 * x2 * x2 * x2, -1;
        }
        a.col(1) << -2 * (2 - x1), -2 * (2 - x2), -1;
        a.col(2) << -2 * e, 2 * e, -1;
        return a;
      },
      [quartic_first](const Vec& z, const Vec& l) {
        const double x1 = z[0];
        const double x2 = z[1];
        const double e = 2 * std::exp(x2 - x1);
        Mat h = Mat::Zero(3, 3);
        if (quartic_first) {
          h(0, 0) += l[0] * 12 * x1 * x1;
          h(1, 1) += l[0] * 2;
        } else {
          h(0, 0) += l[0] * 2;
          h(1, 1) += l[0] * 12 * x2 * x2;
        }
        h(0, 0) += l[1] * 2 + l[2] * e;
        h(1, 1) += l[1] * 2 + l[2] * e;
        h(0, 1) -= l[2] * e;
        h(1, 0) -= l[2] * e;
        return h;
      });
}

NlpProblem demymalo() {
  return make_problem(
      "DEMYMALO", 3, 3, [](const Vec& z) { return z[2]; },
      [](const Vec&) { return vec({0, 0, 1}); },
      [](const Vec& z) {
        return vec({5 * z[0] + z[1] - z[2], -5 * z[0] + z[1] - z[2],
                    z[0] * z[0] + z[1] * z[1] + 4 * z[1] - z[2]});
      },
      [](const Vec& z) {
        Mat a(3, 3);
        a.col(0) << 5, 1, -1;
        a.col(1) << -5, 1, -1;
        a.col(2) << 2 * z[0], 2 * z[1] + 4, -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = 2 * l[2];
        h(1, 1) = 2 * l[2];
        return h;
      });
}

NlpProblem hs10() {
  return make_problem(
      "HS10", 2, 1, [](const Vec& x) { return x[0] - x[1]; },
      [](const Vec&) { return vec({1, -1}); },
      [](const Vec& x) {
        return vec({3 * x[0] * x[0] - 2 * x[0] * x[1] + x[1] * x[1] - 1});
      },
      [](const Vec& x) {
        Mat a(2, 1);
        a << 6 * x[0] - 2 * x[1], -2 * x[0] + 2 * x[1];
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h(2, 2);
        h << 6, -2, -2, 2;
        return Mat(l[0] * h);
      });
}

NlpProblem hs11() {
  return make_problem(
      "HS11", 2, 1,
      [](const Vec& x) { return (x[0] - 5) * (x[0] - 5) + x[1] * x[1] - 25; },
      [](const Vec& x) { return vec({2 * (x[0] - 5), 2 * x[1]}); },
      [](const Vec& x) { return vec({x[0] * x[0] - x[1]}); },
      [](const Vec& x) {
        Mat a(2, 1);
        a << 2 * x[0], -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h(2, 2);
        h << 2 + 2 * l[0], 0, 0, 2;
        return h;
      });
}

NlpProblem hs12() {
  return make_problem(
      "HS12", 2, 1,
      [](const Vec& x) {
        return 0.5 * x[0] * x[0] + x[1] * x[1] - x[0] * x[1] - 7 * x[0] - 7 * x[1];
      },
      [](const Vec& x) { return vec({x[0] - x[1] - 7, 2 * x[1] - x[0] - 7}); },
      [](const Vec& x) { return vec({4 * x[0] * x[0] + x[1] * x[1] - 25}); },
      [](const Vec& x) {
        Mat a(2, 1);
        a << 8 * x[0], 2 * x[1];
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h(2, 2);
        h << 1 + 8 * l[0], -1, -1, 2 + 2 * l[0];
        return h;
      });
}

NlpProblem hs14() {
  // The equality x1 - 2 x2 + 1 = 0 is split into a pair of inequalities.
  return make_problem(
      "HS14", 2, 3,
      [](const Vec& x) { return (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1); },
      [](const Vec& x) { return vec({2 * (x[0] - 2), 2 * (x[1] - 1)}); },
      [](const Vec& x) {
        const double lin = x[0] - 2 * x[1] + 1;
        return vec({0.25 * x[0] * x[0] + x[1] * x[1] - 1, lin, -lin});
      },
      [](const Vec& x) {
        Mat a(2, 3);
        a.col(0) << 0.5 * x[0], 2 * x[1];
        a.col(1) << 1, -2;
        a.col(2) << -1, 2;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h(2, 2);
        h << 2 + 0.5 * l[0], 0, 0, 2 + 2 * l[0];
        return h;
      });
}

NlpProblem hs22() {
  return make_problem(
      "HS22", 2, 2,
      [](const Vec& x) { return (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1); },
      [](const Vec& x) { return vec({2 * (x[0] - 2), 2 * (x[1] - 1)}); },
      [](const Vec& x) { return vec({x[0] + x[1] - 2, x[0] * x[0] - x[1]}); },
      [](const Vec& x) {
        Mat a(2, 2);
        a.col(0) << 1, 1;
        a.col(1) << 2 * x[0], -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h(2, 2);
        h << 2 + 2 * l[1], 0, 0, 2;
        return h;
      });
}

NlpProblem hs29() {
  return make_problem(
      "HS29", 3, 1, [](const Vec& x) { return -x[0] * x[1] * x[2]; },
      [](const Vec& x) { return vec({-x[1] * x[2], -x[0] * x[2], -x[0] * x[1]}); },
      [](const Vec& x) {
        return vec({x[0] * x[0] + 2 * x[1] * x[1] + 4 * x[2] * x[2] - 48});
      },
      [](const Vec& x) {
        Mat a(3, 1);
        a << 2 * x[0], 4 * x[1], 8 * x[2];
        return a;
      },
      [](const Vec& x, const Vec& l) {
        Mat h(3, 3);
        h << 2 * l[0], -x[2], -x[1],  //
            -x[2], 4 * l[0], -x[0],   //
            -x[1], -x[0], 8 * l[0];
        return h;
      });
}

NlpProblem hs43() {
  // Rosen-Suzuki.
  return make_problem(
      "HS43", 4, 3,
      [](const Vec& x) {
        return x[0] * x[0] + x[1] * x[1] + 2 * x[2] * x[2] + x[3] * x[3] - 5 * x[0] - 5 * x[1] -
               21 * x[2] + 7 * x[3];
      },
      [](const Vec& x) {
        return vec({2 * x[0] - 5, 2 * x[1] - 5, 4 * x[2] - 21, 2 * x[3] + 7});
      },
      [](const Vec& x) {
        const Vec sq = x.cwiseProduct(x);
        return vec({sq.sum() + x[0] - x[1] + x[2] - x[3] - 8,
                    sq[0] + 2 * sq[1] + sq[2] + 2 * sq[3] - x[0] - x[3] - 10,
                    2 * sq[0] + sq[1] + sq[2] + 2 * x[0] - x[1] - x[3] - 5});
      },
      [](const Vec& x) {
        Mat a(4, 3);
        a.col(0) << 2 * x[0] + 1, 2 * x[1] - 1, 2 * x[2] + 1, 2 * x[3] - 1;
        a.col(1) << 2 * x[0] - 1, 4 * x[1], 2 * x[2], 4 * x[3] - 1;
        a.col(2) << 4 * x[0] + 2, 2 * x[1] - 1, 2 * x[2], -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Vec diag = vec({2, 2, 4, 2});
        diag += l[0] * vec({2, 2, 2, 2}) + l[1] * vec({2, 4, 2, 4}) + l[2] * vec({4, 2, 2, 0});
        return Mat(diag.asDiagonal());
      });
}

NlpProblem kiwcresc() {
  return make_problem(
      "KIWCRESC", 3, 2, [](const Vec& z) { return z[2]; },
      [](const Vec&) { return vec({0, 0, 1}); },
      [](const Vec& z) {
        const double q = z[0] * z[0] + (z[1] - 1) * (z[1] - 1);
        return vec({q + z[1] - 1 - z[2], -q + z[1] + 1 - z[2]});
      },
      [](const Vec& z) {
        Mat a(3, 2);
        a.col(0) << 2 * z[0], 2 * (z[1] - 1) + 1, -1;
        a.col(1) << -2 * z[0], -2 * (z[1] - 1) + 1, -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = 2 * (l[0] - l[1]);
        h(1, 1) = 2 * (l[0] - l[1]);
        return h;
      });
}

NlpProblem makela1() {
  return make_problem(
      "MAKELA1", 3, 2, [](const Vec& z) { return z[2]; },
      [](const Vec&) { return vec({0, 0, 1}); },
      [](const Vec& z) {
        const double lin = -z[0] - z[1];
        return vec({lin - z[2], lin + z[0] * z[0] + z[1] * z[1] - 1 - z[2]});
      },
      [](const Vec& z) {
        Mat a(3, 2);
        a.col(0) << -1, -1, -1;
        a.col(1) << -1 + 2 * z[0], -1 + 2 * z[1], -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = 2 * l[1];
        h(1, 1) = 2 * l[1];
        return h;
      });
}

NlpProblem mifflin1() {
  return make_problem(
      "MIFFLIN1", 3, 2, [](const Vec& z) { return -z[0] + 20 * z[2]; },
      [](const Vec&) { return vec({-1, 0, 20}); },
      [](const Vec& z) { return vec({z[0] * z[0] + z[1] * z[1] - 1 - z[2], -z[2]}); },
      [](const Vec& z) {
        Mat a(3, 2);
        a.col(0) << 2 * z[0], 2 * z[1], -1;
        a.col(1) << 0, 0, -1;
        return a;
      },
      [](const Vec&, const Vec& l) {
        Mat h = Mat::Zero(3, 3);
        h(0, 0) = 2 * l[0];
        h(1, 1) = 2 * l[0];
        return h;
      });
}

SuiteEntry entry(NlpProblem problem, Vec x0, PublishedCounts published, double optimum) {
  SuiteEntry e;
  e.name = problem.name;
  e.problem = std::move(problem);
  e.x0 = std::move(x0);
  e.published = published;
  e.known_optimum = optimum;
  return e;
}

const std::map<std::string, std::function<SuiteEntry()>>& registry() {
  static const std::map<std::string, std::function<SuiteEntry()>> table = {
      {"CB2",
       [] {
         return entry(charalambous_conn("CB2", false), vec({2, 2, 1}),
                      {4, 11, 12, 12, 8.2592e-09}, 1.9522244939);
       }},
      {"CB3",
       [] {
         return entry(charalambous_conn("CB3", true), vec({2, 2, 1}),
                      {5, 11, 12, 12, 9.1045e-09}, 2.0);
       }},
      {"CHACONN1",
       [] {
         return entry(charalambous_conn("CHACONN1", false), vec({1, -0.1, 1}),
                      {4, 11, 12, 12, 1.0000e-09}, 1.9522244939);
       }},
      {"CHACONN2",
       [] {
         return entry(charalambous_conn("CHACONN2", true), vec({1, -0.1, 1}),
                      {6, 11, 12, 12, 8.7100e-09}, 2.0);
       }},
      {"DEMYMALO",
       [] { return entry(demymalo(), vec({1, 1, 1}), {5, 13, 14, 14, 3.4620e-09}, -3.0); }},
      {"HS10",
       [] { return entry(hs10(), vec({-10, 10}), {2, 10, 11, 11, 7.4074e-09}, -1.0); }},
      {"HS11",
       [] {
         return entry(hs11(), vec({4.9, 0.1}), {8, 8, 9, 9, 6.6897e-10}, -8.498464223);
       }},
      {"HS12", [] { return entry(hs12(), vec({0, 0}), {13, 9, 10, 10, 3.2684e-09}, -30.0); }},
      {"HS14",
       [] {
         return entry(hs14(), vec({2, 2}), {13, 13, 14, 14, 8.9474e-09},
                      9.0 - 2.875 * std::sqrt(7.0));
       }},
      {"HS22", [] { return entry(hs22(), vec({2, 2}), {2, 5, 6, 6, 6.6849e-09}, 1.0); }},
      {"HS29",
       [] {
         return entry(hs29(), vec({1, 1, 1}), {2, 8, 9, 9, 6.7619e-09},
                      -16.0 * std::sqrt(2.0));
       }},
      {"HS43",
       [] { return entry(hs43(), vec({0, 0, 0, 0}), {3, 11, 12, 12, 9.9850e-09}, -44.0); }},
      {"KIWCRESC",
       [] { return entry(kiwcresc(), vec({-1.5, 2, 0}), {2, 12, 13, 13, 1.0643e-09}, 0.0); }},
      {"MAKELA1",
       [] {
         return entry(makela1(), vec({-0.5, 0.5, 0}), {3, 12, 13, 13, 8.4986e-09},
                      -std::sqrt(2.0));
       }},
      {"MIFFLIN1",
       [] { return entry(mifflin1(), vec({0.8, 0.6, 0}), {2, 8, 9, 9, 8.6619e-09}, -1.0); }},
  };
  return table;
}

}  // namespace

SuiteEntry get_problem(const std::string& name) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string valid;
    for (const auto& [key, _] : table) valid += (valid.empty() ? "" : ", ") + key;
    throw UnknownProblem("unknown problem '" + name + "'; valid names: " + valid);
  }
  return it->second();
}

std::vector<ProblemInfo> list_problems() {
  std::vector<ProblemInfo> out;
  for (const auto& [name, make] : registry()) {
    const SuiteEntry e = make();
    out.push_back({name, e.problem.n, e.problem.m});
  }
  return out;  // std::map iterates in key order
}

std::vector<SuiteEntry> all_problems() {
  std::vector<SuiteEntry> out;
  for (const auto& [name, make] : registry()) out.push_back(make());
  return out;
}

}  // namespace arcbip::suite
