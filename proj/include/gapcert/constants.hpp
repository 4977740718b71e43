#pragma once

#include <cstddef>

// Every numeric constant of the certified tail bounds lives here, once.
// The evaluators in bounds.cpp reference these by name; none of the values
// below may be repeated inline elsewhere.

namespace gapcert::constants {

// --- main tail bound, gaussian branch ---------------------------------
// raw = kGaussPrefactor * exp(-n * d0/(kGaussRateMul*d0 + kGaussRateAdd)
//                                * a^2/norm^2)
inline constexpr double kGaussPrefactor = 2.488;
inline constexpr double kGaussRateMul = 13.44;
inline constexpr double kGaussRateAdd = 8.324;

// --- main tail bound, exponential branch ------------------------------
// raw = kExpPrefactor * exp(-n * kExpRateNum*d0^2/(kRateDenAdd + kRateDenMul*d0)
//                              * (a/norm - kExpShift*d0))
inline constexpr double kExpPrefactor = 2.624;
inline constexpr double kExpRateNum = 0.98;
inline constexpr double kExpShift = 0.254;

// Shared rate denominator kRateDenAdd + kRateDenMul*d0; the same polynomial
// appears in the exponential branch and in the variance-bound window.
inline constexpr double kRateDenAdd = 12.0;
inline constexpr double kRateDenMul = 13.0;

// Branch split: gaussian iff a/norm <= d0/kRegimeSplitDiv.  The same divisor
// defines the validity window of the bounded-variation corollary.
inline constexpr double kRegimeSplitDiv = 3.0;

// --- variance tail bound -----------------------------------------------
// raw = kVarPrefactor * exp(-n * (a^2/(2U) - kVarCubicMul*(1+1/d0)^2*norm^3*a^3/U^3))
inline constexpr double kVarPrefactor = 2.637;
inline constexpr double kVarCubicMul = 10.0;

// --- minimal chain lengths ---------------------------------------------
// exact:      n >= 1 + log(kMinNLogArg) / (-log(1 - d0/kMinNDeltaDiv))
// simplified: n >= kSimplifiedMinNNum / d0
// corollaries: n >= kCorollaryMinNNum / beta  and  n >= kCorollaryMinNNum * 2^ell
inline constexpr double kMinNLogArg = 100.0;
inline constexpr double kMinNDeltaDiv = 13.0;
inline constexpr double kSimplifiedMinNNum = 60.0;
inline constexpr double kCorollaryMinNNum = 120.0;

// --- uniform-ergodicity (minorization) corollary -----------------------
// raw = kDoeblinPrefactor * exp(-n * a^2 * beta/(kDoeblinDenAdd + kDoeblinDenMul*beta)),
// valid for a <= beta/kDoeblinWindowDiv.
inline constexpr double kDoeblinPrefactor = 2.5;
inline constexpr double kDoeblinDenAdd = 150.0;
inline constexpr double kDoeblinDenMul = 47.0;
inline constexpr double kDoeblinWindowDiv = 2.0;

// --- bounded-variation corollary ---------------------------------------
// raw = kGaussPrefactor * exp(-n * a^2 / (norm_bv^2*(kBvDenMul*2^ell + kBvDenAdd)))
inline constexpr double kBvDenMul = 16.65;
inline constexpr double kBvDenAdd = 5.12;

// One-sided 99% standard normal quantile, used by the Wilson upper limit.
inline constexpr double kWilsonZ99 = 2.3263478740408408;

struct Provenance {
  const char* name;
  double value;
  const char* role;
};

// Role-indexed table of the constants above, for the CLI and for audits.
inline constexpr Provenance kProvenance[] = {
    {"gauss_prefactor", kGaussPrefactor, "gaussian-branch prefactor of the main tail bound"},
    {"gauss_rate_mul", kGaussRateMul, "gaussian-branch rate denominator, delta0 coefficient"},
    {"gauss_rate_add", kGaussRateAdd, "gaussian-branch rate denominator, constant term"},
    {"exp_prefactor", kExpPrefactor, "exponential-branch prefactor of the main tail bound"},
    {"exp_rate_num", kExpRateNum, "exponential-branch rate numerator coefficient"},
    {"exp_shift", kExpShift, "exponential-branch deviation offset, delta0 coefficient"},
    {"rate_den_add", kRateDenAdd, "shared rate denominator, constant term"},
    {"rate_den_mul", kRateDenMul, "shared rate denominator, delta0 coefficient"},
    {"regime_split_div", kRegimeSplitDiv, "regime split threshold divisor (a/norm vs delta0/3)"},
    {"var_prefactor", kVarPrefactor, "variance-bound prefactor"},
    {"var_cubic_mul", kVarCubicMul, "variance-bound cubic correction multiplier"},
    {"min_n_log_arg", kMinNLogArg, "argument of the log in the exact minimal chain length"},
    {"min_n_delta_div", kMinNDeltaDiv, "delta0 divisor in the exact minimal chain length"},
    {"simplified_min_n_num", kSimplifiedMinNNum, "numerator of the simplified minimal chain length"},
    {"corollary_min_n_num", kCorollaryMinNNum, "numerator/factor of the corollary minimal chain lengths"},
    {"doeblin_prefactor", kDoeblinPrefactor, "minorization-corollary prefactor"},
    {"doeblin_den_add", kDoeblinDenAdd, "minorization-corollary rate denominator, constant term"},
    {"doeblin_den_mul", kDoeblinDenMul, "minorization-corollary rate denominator, beta coefficient"},
    {"doeblin_window_div", kDoeblinWindowDiv, "minorization-corollary deviation window divisor"},
    {"bv_den_mul", kBvDenMul, "bounded-variation corollary denominator, 2^ell coefficient"},
    {"bv_den_add", kBvDenAdd, "bounded-variation corollary denominator, constant term"},
    {"wilson_z99", kWilsonZ99, "one-sided 99% normal quantile for the Wilson upper limit"},
};

inline constexpr std::size_t kProvenanceCount =
    sizeof(kProvenance) / sizeof(kProvenance[0]);

}  // namespace gapcert::constants
