#include "gapcert/stats.hpp"

#include <algorithm>
#include <cmath>

#include "gapcert/constants.hpp"
#include "gapcert/errors.hpp"

namespace gapcert::stats {

double wilson_upper99(std::uint64_t successes, std::uint64_t trials) {
  require(trials > 0 && successes <= trials, "DOMAIN",
          "wilson limit needs 0 <= successes <= trials, trials > 0");
  const double z = constants::kWilsonZ99;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  const double upper =
      (p + z2n / 2.0 +
       z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n))) /
      (1.0 + z2n);
  return std::min(upper, 1.0);
}

double tail_fraction(const std::vector<double>& means, double center, double a) {
  require(!means.empty(), "DOMAIN", "no replica means");
  std::uint64_t hits = 0;
  for (const double m : means) {
    if (std::abs(m - center) >= a) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(means.size());
}

TailCurve deviation_curve(const std::vector<double>& means, double center,
                          const std::vector<double>& a_grid,
                          const std::function<BoundResult(double)>& bound_at) {
  require(!means.empty(), "DOMAIN", "no replica means");
  TailCurve curve;
  curve.reserve(a_grid.size());
  const auto trials = static_cast<std::uint64_t>(means.size());
  for (const double a : a_grid) {
    std::uint64_t hits = 0;
    for (const double m : means) {
      if (std::abs(m - center) >= a) ++hits;
    }
    const BoundResult b = bound_at(a);
    TailPoint pt;
    pt.a = a;
    pt.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    pt.wilson_upper = wilson_upper99(hits, trials);
    pt.bound_raw = b.raw;
    pt.bound_clipped = b.clipped;
    pt.regime = b.regime;
    curve.push_back(pt);
  }
  return curve;
}

std::vector<double> default_a_grid(double a_max) {
  require(std::isfinite(a_max) && a_max > 0.0, "DOMAIN",
          "a_max must be positive");
  std::vector<double> grid;
  grid.reserve(10);
  for (int j = 1; j <= 10; ++j) {
    grid.push_back(a_max * (2.0 * j - 1.0) / 20.0);
  }
  return grid;
}

double median(std::vector<double> values) {
  require(!values.empty(), "DOMAIN", "median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  std::nth_element(values.begin(), values.begin() + mid - 1,
                   values.begin() + mid);
  return 0.5 * (values[mid - 1] + hi);
}

}  // namespace gapcert::stats
