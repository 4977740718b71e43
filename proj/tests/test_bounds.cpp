#include <doctest.h>

#include <cmath>

#include "gapcert/bounds.hpp"
#include "gapcert/errors.hpp"

using namespace gapcert;

namespace {

bool has_flag(const BoundResult& r, Flag f) {
  for (const auto v : r.violated)
    if (v == f) return true;
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("minimal chain lengths") {
  const auto half = min_n_main(certificate_from_delta0(0.5));
  CHECK(half.exact_n == 119);
  CHECK(half.simplified_n == 120);

  const auto one = min_n_main(certificate_from_delta0(1.0));
  CHECK(one.exact_n == 59);
  CHECK(one.simplified_n == 60);
}

TEST_CASE("main bound, gaussian branch") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);

  const auto at_zero = main_bound(cert, obs, 200, 0.0);
  CHECK(at_zero.raw == doctest::Approx(2.488).epsilon(1e-15));
  CHECK(at_zero.regime == Regime::kGaussian);
  CHECK(at_zero.clipped == 1.0);
  CHECK(at_zero.valid());

  // Reference value 2.4879952554121581e0 * ... computed at 50 digits:
  const auto small = main_bound(cert, obs, 200, 0.1);
  CHECK(small.raw == doctest::Approx(2.3279952554121581).epsilon(1e-12));
  CHECK(small.regime == Regime::kGaussian);
}

TEST_CASE("main bound, exponential branch") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);
  const auto r = main_bound(cert, obs, 1000, 0.5);
  CHECK(r.regime == Regime::kExponential);
  CHECK(r.raw == doctest::Approx(0.018778740778504661).epsilon(1e-12));
}

TEST_CASE("regime ties go to the gaussian branch") {
  const auto cert = certificate_from_delta0(0.6);
  const auto obs = observable_from_norm(2.0);
  const double a = obs.norm * cert.delta0 / 3.0;
  CHECK(main_bound(cert, obs, 500, a).regime == Regime::kGaussian);
  CHECK(main_bound(cert, obs, 500, std::nextafter(a, 1.0)).regime ==
        Regime::kExponential);
}

TEST_CASE("main bound flags short chains but still evaluates") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);
  const auto r = main_bound(cert, obs, 118, 0.1);  // threshold is 119
  CHECK(!r.valid());
  CHECK(has_flag(r, Flag::kNTooSmall));
  CHECK(r.raw > 0.0);
  CHECK(main_bound(cert, obs, 119, 0.1).valid());
  CHECK_THROWS_AS(main_bound(cert, obs, 0, 0.1), Error);
  CHECK_THROWS_AS(main_bound(cert, obs, 100, -0.1), Error);
}

TEST_CASE("variance bound values and window") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);

  const auto at_zero = variance_bound(cert, obs, 1.0, 1000000, 0.0);
  CHECK(at_zero.raw == doctest::Approx(2.637).epsilon(1e-15));
  CHECK(at_zero.regime == Regime::kVariance);
  CHECK(at_zero.valid());

  const auto mid = variance_bound(cert, obs, 1.0, 1000000, 0.002);
  CHECK(mid.raw == doctest::Approx(0.73318436129507293).epsilon(1e-12));

  // Window limit log(1 + 0.25/18.5) = 0.0134230203321407.
  const auto outside = variance_bound(cert, obs, 1.0, 1000000, 0.02);
  CHECK(!outside.valid());
  CHECK(has_flag(outside, Flag::kAWindow));
  const auto inside = variance_bound(cert, obs, 1.0, 1000000, 0.0134);
  CHECK(!has_flag(inside, Flag::kAWindow));

  CHECK_THROWS_AS(variance_bound(cert, obs, 0.0, 1000000, 0.01), Error);
}

TEST_CASE("variance bound flags a variance proxy below sigma2") {
  const auto cert = certificate_from_delta0(0.5);
  auto obs = observable_from_norm(1.0);
  obs.sigma2 = 2.0;
  CHECK(has_flag(variance_bound(cert, obs, 1.0, 1000000, 0.001),
                 Flag::kUBelowSigma2));
  CHECK(!has_flag(variance_bound(cert, obs, 2.0, 1000000, 0.001),
                  Flag::kUBelowSigma2));
}

TEST_CASE("variance bound can exceed its prefactor when the cubic term wins") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);
  // Inside the deviation window (0.01 < 0.01342) yet the cubic correction
  // dominates the quadratic term: the bound is vacuous and reported as-is.
  const auto r = variance_bound(cert, obs, 1.0, 1000000, 0.01);
  CHECK(r.valid());
  CHECK(r.raw > 2.637);
  CHECK(r.clipped == 1.0);
}

TEST_CASE("minorization corollary") {
  const auto mid = doeblin_corollary_bound(0.5, 10000, 0.2);
  CHECK(mid.raw == doctest::Approx(0.78942770484714278).epsilon(1e-12));
  CHECK(mid.valid());
  CHECK(mid.regime == Regime::kGaussian);

  const auto exact = doeblin_corollary_bound(1.0, 5000, 0.5);
  CHECK(exact.raw == doctest::Approx(0.0043879771976798539).epsilon(1e-12));

  const auto short_run = doeblin_corollary_bound(0.5, 100, 0.2);
  CHECK(!short_run.valid());
  CHECK(has_flag(short_run, Flag::kNTooSmall));

  CHECK(has_flag(doeblin_corollary_bound(0.5, 10000, 0.3), Flag::kAWindow));
  CHECK_THROWS_AS(doeblin_corollary_bound(0.0, 1000, 0.1), Error);
  CHECK_THROWS_AS(doeblin_corollary_bound(1.2, 1000, 0.1), Error);
}

TEST_CASE("bounded-variation corollary") {
  const auto mid = bv_corollary_bound(2, 1.0, 1000, 0.04);
  CHECK(mid.raw == doctest::Approx(2.4331098079316140).epsilon(1e-12));
  CHECK(mid.valid());

  const auto at_zero = bv_corollary_bound(2, 1.0, 1000, 0.0);
  CHECK(at_zero.raw == doctest::Approx(2.488).epsilon(1e-15));
  CHECK(at_zero.valid());

  const auto short_run = bv_corollary_bound(1, 2.0, 100, 0.1);
  CHECK(!short_run.valid());
  CHECK(has_flag(short_run, Flag::kNTooSmall));

  // Window is strict: a must stay below norm/(3*(2^{ell+1}-1)).
  const double window = 1.0 / (3.0 * 7.0);
  CHECK(has_flag(bv_corollary_bound(2, 1.0, 1000, window), Flag::kAWindow));
  CHECK(!has_flag(bv_corollary_bound(2, 1.0, 1000, window * 0.99),
                  Flag::kAWindow));

  CHECK_THROWS_AS(bv_corollary_bound(0, 1.0, 1000, 0.01), Error);
  CHECK_THROWS_AS(bv_corollary_bound(2, 0.0, 1000, 0.01), Error);
}

TEST_CASE("planner hits the target and is minimal") {
  const auto cert = certificate_from_delta0(0.5);
  const auto obs = observable_from_norm(1.0);

  // The inversion lands at 11756.02, so the certified answer is 11757.
  const std::int64_t n = plan_required_n(cert, obs, 0.1, 0.05);
  CHECK(n == 11757);
  CHECK(main_bound(cert, obs, n, 0.1).raw <= 0.05);
  CHECK(main_bound(cert, obs, n - 1, 0.1).raw > 0.05);

  // A trivial target is dominated by the minimal chain length.
  CHECK(plan_required_n(cert, obs, 0.1, 2.488) == 119);

  CHECK_THROWS_AS(plan_required_n(cert, obs, 0.0, 0.05), Error);
}

TEST_CASE("planner works in the exponential regime") {
  const auto cert = certificate_from_delta0(0.3);
  const auto obs = observable_from_norm(1.0);
  const double a = 0.2;  // above delta0/3 = 0.1
  CHECK(main_bound(cert, obs, 1000, a).regime == Regime::kExponential);
  const std::int64_t n = plan_required_n(cert, obs, a, 0.01);
  CHECK(main_bound(cert, obs, n, a).raw <= 0.01);
  const std::int64_t threshold = min_n_main(cert).exact_n;
  if (n - 1 >= threshold) {
    CHECK(main_bound(cert, obs, n - 1, a).raw > 0.01);
  }
}

TEST_CASE("observable spec validation") {
  ObservableSpec obs;
  obs.norm = 2.0;
  obs.sup_norm = 1.0;
  obs.seminorm = 1.0;
  CHECK_NOTHROW(obs.validate());
  obs.seminorm = 0.5;
  CHECK_THROWS_AS(obs.validate(), Error);
  obs.seminorm = 1.0;
  obs.sigma2 = -1.0;
  CHECK_THROWS_AS(obs.validate(), Error);
}

TEST_SUITE_END();
