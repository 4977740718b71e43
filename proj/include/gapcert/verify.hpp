#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gapcert::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;     // worst margin / first violation
  double seconds = 0.0;
};

struct Options {
  bool quick = false;             // reduced sampling for fast unit runs
  std::uint64_t seed = 20250810;  // sampling seed; results are deterministic
  int threads = 0;                // 0 -> hardware concurrency
};

// Closed-form gap identities across the family grids, including agreement
// with the generic lemma formula.
CheckResult closed_form_gaps(const Options& opts);

// Exact hypercube operator contraction: Lipschitz, local-variation and
// whole-norm rates on random observables.
CheckResult hypercube_contraction(const Options& opts);

// Spread-vs-local-variation comparison on random and structured observables.
CheckResult petrov_comparison(const Options& opts);

// Slot-indicator dynamical variance against its closed form, and agreement
// with the flip-probability formula.
CheckResult variance_oracle(const Options& opts);

// Minorization split reconstruction, Dobrushin domination and spread-norm
// gap realization on random kernels.
CheckResult doeblin_oracle(const Options& opts);

// Exact jump-sum contraction of the block operator on random step
// functions, plus the frozen half-indicator example.
CheckResult bv_contraction(const Options& opts);

// Seeded Monte Carlo tails versus the proven bounds (three chains).
CheckResult bound_validity(const Options& opts);

// Flat-parameter histogram against the exact uniform law.
CheckResult histogram_uniform(const Options& opts);

// Planner minimality round-trip on random tuples.
CheckResult planner_roundtrip(const Options& opts);

// Supplementary per-module property suites (monotonicity, consistency,
// metric axioms, Banach-algebra submultiplicativity, ...).
std::vector<CheckResult> bounds_properties(const Options& opts);
std::vector<CheckResult> gap_properties(const Options& opts);
std::vector<CheckResult> hypercube_properties(const Options& opts);
std::vector<CheckResult> doeblin_properties(const Options& opts);
std::vector<CheckResult> bernoulli_properties(const Options& opts);

// Everything above; the two Monte Carlo checks only when include_slow.
std::vector<CheckResult> run_all(const Options& opts, bool include_slow);

}  // namespace gapcert::verify
