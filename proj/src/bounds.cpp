#include "gapcert/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "gapcert/constants.hpp"
#include "gapcert/errors.hpp"

namespace gapcert {

namespace k = constants;

void ObservableSpec::validate() const {
  require(std::isfinite(norm) && norm > 0.0, "DOMAIN",
          "observable norm must be positive");
  require(sup_norm >= 0.0 && seminorm >= 0.0, "DOMAIN",
          "norm components must be nonnegative");
  require(std::abs(norm - (sup_norm + seminorm)) <= 1e-12 * std::max(1.0, norm),
          "DOMAIN", "norm must equal sup_norm + seminorm");
  if (sigma2) {
    require(std::isfinite(*sigma2) && *sigma2 >= 0.0, "DOMAIN",
            "dynamical variance must be nonnegative");
  }
}

ObservableSpec observable_from_norm(double norm) {
  require(std::isfinite(norm) && norm > 0.0, "DOMAIN",
          "observable norm must be positive");
  ObservableSpec obs;
  obs.norm = norm;
  obs.sup_norm = norm;
  obs.seminorm = 0.0;
  return obs;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kGaussian: return "gaussian";
    case Regime::kExponential: return "exponential";
    case Regime::kVariance: return "variance";
  }
  return "gaussian";
}

const char* flag_name(Flag f) {
  switch (f) {
    case Flag::kNTooSmall: return "N_TOO_SMALL";
    case Flag::kAWindow: return "A_WINDOW";
    case Flag::kUBelowSigma2: return "U_BELOW_SIGMA2";
  }
  return "N_TOO_SMALL";
}

namespace {

// min(raw, 1) with the raw value preserved; exp() is fed the exponent once,
// computed in log space by the callers.
BoundResult make_result(double log_prefactor, double exponent, Regime regime,
                        std::vector<Flag> violated) {
  BoundResult r;
  r.raw = std::exp(log_prefactor - exponent);
  r.clipped = std::min(r.raw, 1.0);
  r.regime = regime;
  r.violated = std::move(violated);
  return r;
}

void check_n_a(std::int64_t n, double a) {
  require(n >= 1, "DOMAIN", "chain length n must be at least 1");
  require(std::isfinite(a) && a >= 0.0, "DOMAIN",
          "deviation a must be nonnegative");
}

double gauss_rate(double d0) {
  return d0 / (k::kGaussRateMul * d0 + k::kGaussRateAdd);
}

double exp_rate(double d0) {
  return k::kExpRateNum * d0 * d0 / (k::kRateDenAdd + k::kRateDenMul * d0);
}

}  // namespace

MinN min_n_main(const GapCertificate& cert) {
  cert.validate();
  const double d0 = cert.delta0;
  const double exact =
      1.0 + std::log(k::kMinNLogArg) / (-std::log1p(-d0 / k::kMinNDeltaDiv));
  MinN out;
  out.exact_n = static_cast<std::int64_t>(std::ceil(exact));
  out.simplified_n =
      static_cast<std::int64_t>(std::ceil(k::kSimplifiedMinNNum / d0));
  return out;
}

BoundResult main_bound(const GapCertificate& cert, const ObservableSpec& obs,
                       std::int64_t n, double a) {
  cert.validate();
  obs.validate();
  check_n_a(n, a);

  std::vector<Flag> violated;
  if (n < min_n_main(cert).exact_n) violated.push_back(Flag::kNTooSmall);

  const double d0 = cert.delta0;
  const double ratio = a / obs.norm;
  const double nn = static_cast<double>(n);
  if (ratio <= d0 / k::kRegimeSplitDiv) {
    // Ties go to the gaussian branch.
    const double exponent = nn * gauss_rate(d0) * ratio * ratio;
    return make_result(std::log(k::kGaussPrefactor), exponent,
                       Regime::kGaussian, std::move(violated));
  }
  const double exponent = nn * exp_rate(d0) * (ratio - k::kExpShift * d0);
  return make_result(std::log(k::kExpPrefactor), exponent,
                     Regime::kExponential, std::move(violated));
}

BoundResult variance_bound(const GapCertificate& cert, const ObservableSpec& obs,
                           double u, std::int64_t n, double a) {
  cert.validate();
  obs.validate();
  check_n_a(n, a);
  require(std::isfinite(u) && u > 0.0, "DOMAIN",
          "variance proxy U must be positive");

  const double d0 = cert.delta0;
  std::vector<Flag> violated;
  if (n < min_n_main(cert).simplified_n) violated.push_back(Flag::kNTooSmall);
  if (obs.sigma2 && u < *obs.sigma2) violated.push_back(Flag::kUBelowSigma2);
  const double a_window =
      u / obs.norm *
      std::log1p(d0 * d0 / (k::kRateDenAdd + k::kRateDenMul * d0));
  if (a > a_window) violated.push_back(Flag::kAWindow);

  const double inv = 1.0 + 1.0 / d0;
  const double cubic =
      k::kVarCubicMul * inv * inv * std::pow(obs.norm, 3) * std::pow(a, 3) /
      std::pow(u, 3);
  // The cubic term can dominate; raw is then > prefactor and reported as-is.
  const double exponent = static_cast<double>(n) * (a * a / (2.0 * u) - cubic);
  return make_result(std::log(k::kVarPrefactor), exponent, Regime::kVariance,
                     std::move(violated));
}

BoundResult doeblin_corollary_bound(double beta, std::int64_t n, double a) {
  require(std::isfinite(beta) && beta > 0.0 && beta <= 1.0, "DOMAIN",
          "minorization constant beta must lie in (0, 1]");
  check_n_a(n, a);

  std::vector<Flag> violated;
  if (static_cast<double>(n) < k::kCorollaryMinNNum / beta)
    violated.push_back(Flag::kNTooSmall);
  if (a > beta / k::kDoeblinWindowDiv) violated.push_back(Flag::kAWindow);

  const double exponent = static_cast<double>(n) * a * a * beta /
                          (k::kDoeblinDenAdd + k::kDoeblinDenMul * beta);
  return make_result(std::log(k::kDoeblinPrefactor), exponent,
                     Regime::kGaussian, std::move(violated));
}

BoundResult bv_corollary_bound(int ell, double norm_bv, std::int64_t n, double a) {
  require(ell >= 1 && ell <= kMaxBernoulliEll, "DOMAIN",
          "block length ell must lie in [1, 64]");
  require(std::isfinite(norm_bv) && norm_bv > 0.0, "DOMAIN",
          "BV norm must be positive");
  check_n_a(n, a);

  const double two_ell = std::ldexp(1.0, ell);
  std::vector<Flag> violated;
  if (static_cast<double>(n) < k::kCorollaryMinNNum * two_ell)
    violated.push_back(Flag::kNTooSmall);
  // Window is strict: a must stay below norm_bv/(3*(2^{ell+1}-1)); a = 0 is
  // accepted (the bound is trivial there anyway).
  const double window =
      norm_bv / (k::kRegimeSplitDiv * (2.0 * two_ell - 1.0));
  if (a >= window && a > 0.0) violated.push_back(Flag::kAWindow);

  const double exponent =
      static_cast<double>(n) * a * a /
      (norm_bv * norm_bv * (k::kBvDenMul * two_ell + k::kBvDenAdd));
  return make_result(std::log(k::kGaussPrefactor), exponent, Regime::kGaussian,
                     std::move(violated));
}

std::int64_t plan_required_n(const GapCertificate& cert,
                             const ObservableSpec& obs, double a,
                             double target_p) {
  cert.validate();
  obs.validate();
  require(std::isfinite(a) && a > 0.0, "INFEASIBLE",
          "the bound does not decrease with n at a = 0; no finite n exists");
  require(std::isfinite(target_p) && target_p > 0.0, "DOMAIN",
          "target probability must be positive");

  const double d0 = cert.delta0;
  const double ratio = a / obs.norm;
  const std::int64_t threshold = min_n_main(cert).exact_n;

  // Closed-form inversion of the active branch.  Both branches decay at a
  // strictly positive per-step rate (the exponential branch's deviation
  // offset 0.254*d0 lies below the split d0/3).
  double log_prefactor, per_step;
  if (ratio <= d0 / k::kRegimeSplitDiv) {
    log_prefactor = std::log(k::kGaussPrefactor);
    per_step = gauss_rate(d0) * ratio * ratio;
  } else {
    log_prefactor = std::log(k::kExpPrefactor);
    per_step = exp_rate(d0) * (ratio - k::kExpShift * d0);
  }

  std::int64_t n = threshold;
  const double needed = log_prefactor - std::log(target_p);
  if (needed > 0.0) {
    n = std::max(n, static_cast<std::int64_t>(std::ceil(needed / per_step)));
  }

  // Certify: the returned n must satisfy the target, and n-1 must not
  // (unless n-1 is below the threshold).  The ceiling can land one off when
  // the inversion is borderline in the last ulp.
  while (main_bound(cert, obs, n, a).raw > target_p) ++n;
  while (n - 1 >= threshold && main_bound(cert, obs, n - 1, a).raw <= target_p)
    --n;
  return n;
}

}  // namespace gapcert
