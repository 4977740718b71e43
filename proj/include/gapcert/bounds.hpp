#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapcert/certificates.hpp"

namespace gapcert {

// Norm data of an observable in the Banach-algebra norm sup + seminorm.
struct ObservableSpec {
  double norm = 1.0;      // sup_norm + seminorm, > 0
  double sup_norm = 1.0;  // >= 0
  double seminorm = 0.0;  // >= 0
  std::optional<double> sigma2;  // dynamical variance, if known
  Family family = Family::kCustom;

  void validate() const;
};

// Convenience for callers that only know the full norm value.
ObservableSpec observable_from_norm(double norm);

enum class Regime { kGaussian, kExponential, kVariance };
const char* regime_name(Regime r);

// Precondition violations are reported, never fatal: the formula value is
// still computed so invalid regions can be plotted.
enum class Flag { kNTooSmall, kAWindow, kUBelowSigma2 };
const char* flag_name(Flag f);

struct BoundResult {
  double raw = 0.0;      // formula value, may exceed 1
  double clipped = 0.0;  // min(raw, 1)
  Regime regime = Regime::kGaussian;
  std::vector<Flag> violated;

  bool valid() const { return violated.empty(); }
};

struct MinN {
  std::int64_t exact_n;       // ceil(1 + log 100 / (-log(1 - d0/13)))
  std::int64_t simplified_n;  // ceil(60 / d0)
};

// Minimal chain lengths for the main tail bound.
MinN min_n_main(const GapCertificate& cert);

// Main two-regime tail bound on P[|empirical mean - stationary mean| >= a].
BoundResult main_bound(const GapCertificate& cert, const ObservableSpec& obs,
                       std::int64_t n, double a);

// Variance-scaled tail bound; U must dominate the dynamical variance.
BoundResult variance_bound(const GapCertificate& cert, const ObservableSpec& obs,
                           double u, std::int64_t n, double a);

// Rounded corollary for chains with a one-step minorization constant beta,
// observables mapping into [-1, 1] (caller's responsibility).
BoundResult doeblin_corollary_bound(double beta, std::int64_t n, double a);

// Rounded corollary for the ell-block chain on bounded-variation observables.
BoundResult bv_corollary_bound(int ell, double norm_bv, std::int64_t n, double a);

// Smallest n with main_bound(...).raw <= target_p and n >= exact minimal n.
// Closed-form inversion of the active branch, then ceiling, then a
// re-evaluation loop that certifies the returned n.
std::int64_t plan_required_n(const GapCertificate& cert, const ObservableSpec& obs,
                             double a, double target_p);

}  // namespace gapcert
