// Acceptance suite: one pass/fail line per criterion, each run at full scale
// with its stated tolerance and runtime budget.  Criteria to run can be
// passed as arguments (1..9); default is all.

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "gapcert/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  gapcert::verify::CheckResult (*run)(const gapcert::verify::Options&);
  double time_limit_s;
};

const Criterion kCriteria[] = {
    {1, "closed-form gap identities", gapcert::verify::closed_form_gaps, 1.0},
    {2, "exact hypercube operator contraction",
     gapcert::verify::hypercube_contraction, 30.0},
    {3, "spread bounded by local variation", gapcert::verify::petrov_comparison,
     30.0},
    {4, "dynamical variance oracle", gapcert::verify::variance_oracle, 10.0},
    {5, "minorization oracle", gapcert::verify::doeblin_oracle, 10.0},
    {6, "bounded-variation contraction oracle",
     gapcert::verify::bv_contraction, 60.0},
    {7, "statistical bound validity", gapcert::verify::bound_validity, 600.0},
    {8, "stationary-law histogram", gapcert::verify::histogram_uniform, 300.0},
    {9, "planner round-trip", gapcert::verify::planner_roundtrip, 1.0},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  gapcert::verify::Options opts;
  opts.quick = false;

  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && wanted.count(c.number) == 0) continue;
    const auto result = c.run(opts);
    const bool in_time = result.seconds <= c.time_limit_s;
    const bool pass = result.pass && in_time;
    all_pass = all_pass && pass;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number
              << ": " << c.title << " (" << result.seconds << " s, limit "
              << c.time_limit_s << " s) " << result.detail;
    if (!in_time) std::cout << " [over time budget]";
    std::cout << "\n";
  }
  return all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
