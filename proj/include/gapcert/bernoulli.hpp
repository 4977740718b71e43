#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapcert/rng.hpp"
#include "gapcert/stats.hpp"

namespace gapcert::bernoulli {

// Two-map affine system T0(x) = lambda*x - lambda, T1(x) = lambda*x + lambda
// observed every `ell` steps, with lambda^ell < 1/2 so the block operator
// contracts on bounded variation.
struct IfsParams {
  double lambda = 0.5;
  int ell = 1;
  double lo = 0.0;           // -lambda/(1-lambda), fixed point of T0
  double hi = 0.0;           // +lambda/(1-lambda), fixed point of T1
  double lambda_pow_ell = 0.0;

  void validate() const;
};

// Attractor and block length derived from lambda alone (minimal certified ell).
IfsParams make_ifs(double lambda);
// Explicit block length; still requires lambda^ell < 1/2.
IfsParams make_ifs(double lambda, int ell);

// A word of length k is the unsigned value whose bit j-1 is letter j; letter
// 0 applies T0, letter 1 applies T1, and the composition acts rightmost
// letter first.
double apply_word(const IfsParams& params, std::uint64_t word, int length,
                  double x);

// Signed offset sum_{j=1..k} s(w_j)*lambda^j with s(0) = -1, s(1) = +1;
// apply_word(x) = lambda^k * x + word_offset.
double word_offset(const IfsParams& params, std::uint64_t word, int length);

// One block transition: a uniform word of length ell (one 64-bit draw).
double block_step(const IfsParams& params, double x, rng::ReplicaRng& rng);

// Piecewise-constant function: pieces are right-open except the last, so a
// query exactly on a breakpoint takes the right piece.
struct StepFunction {
  std::vector<double> breakpoints;  // strictly increasing
  std::vector<double> values;       // breakpoints.size() + 1 piece values

  double eval(double x) const;
  void validate() const;
};

StepFunction make_step(std::vector<double> breakpoints,
                       std::vector<double> values);

// Indicator of [threshold, +inf).
StepFunction threshold_indicator(double threshold);

struct BvNorm {
  double sup = 0.0;
  double var = 0.0;
  double norm = 0.0;  // sup + var
};

BvNorm bv_norm(const StepFunction& f);

// Jump-sum variation restricted to [a, b]: jumps at breakpoints t with
// a < t <= b.
double variation_on(const StepFunction& f, double a, double b);

// Exact image of f under the block averaging operator:
// (L f)(x) = 2^{-ell} sum_w f(T_w(x)), assembled from the pulled-back
// breakpoints; preimages closer than kMergeTol are merged.
inline constexpr double kMergeTol = 1e-12;
inline constexpr std::size_t kDefaultBreakpointCap = 1'000'000;

StepFunction apply_block_operator(const IfsParams& params,
                                  const StepFunction& f,
                                  std::size_t breakpoint_cap = kDefaultBreakpointCap);

struct SimulationPlan {
  std::int64_t n = 0;           // block steps averaged per replica
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  double start = 0.0;
  int threads = 0;
};

std::vector<double> replica_means(const IfsParams& params,
                                  const StepFunction& f,
                                  const SimulationPlan& plan);

struct IntegralEstimate {
  double estimate = 0.0;        // median of replica means
  std::vector<double> means;    // one per replica
};

// Stationary-integral estimate of f along the block chain.  The deviation
// curve around a reference mean (defaults to the median estimate) is built
// separately via stats::deviation_curve.
IntegralEstimate estimate_integral(const IfsParams& params,
                                   const StepFunction& f,
                                   const SimulationPlan& plan);

struct HistogramParams {
  std::int64_t n_points = 1'000'000;
  int bins = 500;
  int runs = 30;
  std::uint64_t seed = 0;
  double start = 0.0;
  int threads = 0;
};

struct Histogram {
  std::vector<double> bin_left;
  std::vector<double> bin_right;
  std::vector<double> mass;          // averaged over runs, sums to 1
  std::vector<std::uint64_t> count;  // pooled raw counts
};

// Equal-width bins over the attractor, counts pooled over independent runs.
Histogram histogram(const IfsParams& params, const HistogramParams& hp);

}  // namespace gapcert::bernoulli
