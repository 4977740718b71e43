#pragma once

#include <map>
#include <string>

namespace gapcert {

// Chain/norm family a certificate belongs to.  The enum value fixes which
// closed-form gap and which norm conventions apply downstream.
enum class Family {
  kDoeblin,
  kHypercubeL,   // sup + Lipschitz
  kHypercubeDL,  // sup + diameter-weighted Lipschitz
  kHypercubeW,   // sup + local total variation
  kBernoulliBv,
  kCustom,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Hypercube norm selector used by the lab and the CLI.
enum class CubeNorm { kL, kDL, kW };

// Contraction data feeding the gap formula: sup-norm bound constant C on
// zero-mean functions and seminorm contraction factor theta.
struct LemmaInput {
  double c_const = 1.0;  // > 0
  double theta = 0.0;    // in [0, 1)

  void validate() const;
};

// A certified contraction gap delta0 together with where it came from.
struct GapCertificate {
  double delta0 = 0.0;
  Family family = Family::kCustom;
  double c_const = 1.0;
  double theta = 0.0;
  std::map<std::string, double> params;  // family parameters (beta, n_slots, lambda, ell)

  void validate() const;
};

// delta0 = (1 - theta) / (1 + C*theta); family set to kCustom.
GapCertificate lemma_gap(const LemmaInput& input);

// Back-fills a consistent (C=1, theta) pair for a bare delta0 in (0,1].
GapCertificate certificate_from_delta0(double delta0);

// Minorization constant beta in (0,1] -> gap beta/(2-beta) on the spread norm.
GapCertificate doeblin_gap(double beta);

// Lazy random walk on {0,1}^N; gap 1/N^2, 1/(2N-1) or 1/(4N-1) depending on
// the norm the observable is measured in.
GapCertificate hypercube_gap(int n_slots, CubeNorm norm);

// Smallest ell with lambda^ell < 1/2 (strict), capped at kMaxBernoulliEll,
// and the ell-block certificate with gap 1/(2^{ell+1}-1).
inline constexpr int kMaxBernoulliEll = 64;

struct BernoulliCertificate {
  int ell = 1;
  GapCertificate cert;
};

BernoulliCertificate bernoulli_certificate(double lambda);

// Exposed separately: the minimal-ell search (repeated multiplication, no
// logarithms, so boundary cases like lambda^ell == 1/2 classify exactly).
int bernoulli_min_ell(double lambda);

}  // namespace gapcert
