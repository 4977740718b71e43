#include <doctest.h>

#include <vector>

#include "gapcert/stats.hpp"

using namespace gapcert;

TEST_SUITE_BEGIN("stats");

TEST_CASE("wilson upper limit at the frozen reference values") {
  // High-precision references for the one-sided 99% level.
  CHECK(stats::wilson_upper99(0, 10000) ==
        doctest::Approx(0.000540896715513188).epsilon(1e-12));
  CHECK(stats::wilson_upper99(5, 10000) ==
        doctest::Approx(0.00135610387426542535).epsilon(1e-12));
  CHECK(stats::wilson_upper99(500, 1000) ==
        doctest::Approx(0.53668365945259277).epsilon(1e-12));
  CHECK(stats::wilson_upper99(100, 100) == 1.0);
}

TEST_CASE("wilson upper limit dominates the point estimate") {
  for (std::uint64_t n : {10ull, 100ull, 1000ull}) {
    for (std::uint64_t k = 0; k <= n; k += n / 10) {
      const double up = stats::wilson_upper99(k, n);
      CHECK(up >= static_cast<double>(k) / n);
      CHECK(up <= 1.0);
    }
  }
}

TEST_CASE("tail fraction counts symmetric deviations") {
  const std::vector<double> means = {0.0, 0.5, -0.5, 1.0, -1.0};
  CHECK(stats::tail_fraction(means, 0.0, 0.0) == 1.0);
  CHECK(stats::tail_fraction(means, 0.0, 0.5) == doctest::Approx(0.8));
  CHECK(stats::tail_fraction(means, 0.0, 0.75) == doctest::Approx(0.4));
  CHECK(stats::tail_fraction(means, 0.0, 1.5) == 0.0);
}

TEST_CASE("default deviation grid stays strictly inside the window") {
  const auto grid = stats::default_a_grid(0.2);
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == doctest::Approx(0.01));
  CHECK(grid.back() == doctest::Approx(0.19));
  for (const double a : grid) {
    CHECK(a > 0.0);
    CHECK(a < 0.2);
  }
}

TEST_CASE("median of odd and even counts") {
  CHECK(stats::median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(stats::median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  CHECK(stats::median({7.0}) == 7.0);
}

TEST_SUITE_END();
