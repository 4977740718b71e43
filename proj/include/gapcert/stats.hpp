#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gapcert/bounds.hpp"

namespace gapcert::stats {

// One-sided Wilson score upper confidence limit at the fixed 99% level for
// `successes` out of `trials`.
double wilson_upper99(std::uint64_t successes, std::uint64_t trials);

// Fraction of replica means deviating from `center` by at least `a`.
double tail_fraction(const std::vector<double>& means, double center, double a);

struct TailPoint {
  double a = 0.0;
  double p_hat = 0.0;
  double wilson_upper = 0.0;
  double bound_raw = 0.0;
  double bound_clipped = 0.0;
  Regime regime = Regime::kGaussian;
};

using TailCurve = std::vector<TailPoint>;

// Pairs each deviation in `a_grid` with the empirical tail of `means` around
// `center` and with the proven bound supplied by `bound_at`.
TailCurve deviation_curve(const std::vector<double>& means, double center,
                          const std::vector<double>& a_grid,
                          const std::function<BoundResult(double)>& bound_at);

// Default deviation grid: midpoints of ten equal subdivisions of
// (0, a_max], strictly inside every validity window that contains a_max.
std::vector<double> default_a_grid(double a_max);

double median(std::vector<double> values);

}  // namespace gapcert::stats
