#include "gapcert/certificates.hpp"

#include <cmath>
#include <cstdint>

#include "gapcert/errors.hpp"

namespace gapcert {

const char* family_name(Family f) {
  switch (f) {
    case Family::kDoeblin: return "doeblin";
    case Family::kHypercubeL: return "hypercube_L";
    case Family::kHypercubeDL: return "hypercube_dL";
    case Family::kHypercubeW: return "hypercube_W";
    case Family::kBernoulliBv: return "bernoulli_bv";
    case Family::kCustom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  if (name == "doeblin") return Family::kDoeblin;
  if (name == "hypercube_L") return Family::kHypercubeL;
  if (name == "hypercube_dL") return Family::kHypercubeDL;
  if (name == "hypercube_W") return Family::kHypercubeW;
  if (name == "bernoulli_bv") return Family::kBernoulliBv;
  if (name == "custom") return Family::kCustom;
  fail("PARSE", "unknown family name: " + name);
}

void LemmaInput::validate() const {
  require(std::isfinite(c_const) && c_const > 0.0, "DOMAIN",
          "lemma constant C must be positive");
  require(std::isfinite(theta) && theta >= 0.0 && theta < 1.0, "DOMAIN",
          "contraction factor theta must lie in [0, 1)");
}

void GapCertificate::validate() const {
  require(std::isfinite(delta0) && delta0 > 0.0 && delta0 <= 1.0, "DOMAIN",
          "delta0 must lie in (0, 1]");
  require(c_const >= 0.0, "DOMAIN", "C must be nonnegative");
  require(theta >= 0.0 && theta < 1.0, "DOMAIN", "theta must lie in [0, 1)");
  if (family != Family::kCustom) {
    const double from_lemma = (1.0 - theta) / (1.0 + c_const * theta);
    require(std::abs(from_lemma - delta0) <= 1e-12, "DOMAIN",
            "delta0 inconsistent with its (C, theta) data");
  }
}

GapCertificate lemma_gap(const LemmaInput& input) {
  input.validate();
  GapCertificate cert;
  cert.delta0 = (1.0 - input.theta) / (1.0 + input.c_const * input.theta);
  cert.family = Family::kCustom;
  cert.c_const = input.c_const;
  cert.theta = input.theta;
  cert.validate();
  return cert;
}

GapCertificate certificate_from_delta0(double delta0) {
  require(std::isfinite(delta0) && delta0 > 0.0 && delta0 <= 1.0, "DOMAIN",
          "delta0 must lie in (0, 1]");
  // With C = 1, (1-theta)/(1+theta) = delta0 inverts to the theta below.
  GapCertificate cert;
  cert.delta0 = delta0;
  cert.family = Family::kCustom;
  cert.c_const = 1.0;
  cert.theta = (1.0 - delta0) / (1.0 + delta0);
  cert.validate();
  return cert;
}

GapCertificate doeblin_gap(double beta) {
  require(std::isfinite(beta) && beta > 0.0 && beta <= 1.0, "DOMAIN",
          "minorization constant beta must lie in (0, 1]");
  GapCertificate cert;
  cert.delta0 = beta / (2.0 - beta);
  cert.family = Family::kDoeblin;
  cert.c_const = 1.0;
  cert.theta = 1.0 - beta;
  cert.params["beta"] = beta;
  cert.validate();
  return cert;
}

GapCertificate hypercube_gap(int n_slots, CubeNorm norm) {
  require(n_slots >= 1, "DOMAIN", "number of slots must be at least 1");
  const double n = static_cast<double>(n_slots);
  GapCertificate cert;
  cert.params["n_slots"] = n;
  switch (norm) {
    case CubeNorm::kL:
      cert.family = Family::kHypercubeL;
      cert.c_const = n;
      cert.theta = 1.0 - 1.0 / n;
      cert.delta0 = 1.0 / (n * n);
      break;
    case CubeNorm::kDL:
      cert.family = Family::kHypercubeDL;
      cert.c_const = 1.0;
      cert.theta = 1.0 - 1.0 / n;
      cert.delta0 = 1.0 / (2.0 * n - 1.0);
      break;
    case CubeNorm::kW:
      cert.family = Family::kHypercubeW;
      cert.c_const = 1.0;
      cert.theta = 1.0 - 1.0 / (2.0 * n);
      cert.delta0 = 1.0 / (4.0 * n - 1.0);
      break;
  }
  cert.validate();
  return cert;
}

int bernoulli_min_ell(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0 && lambda < 1.0, "DOMAIN",
          "lambda must lie in (0, 1)");
  // Strict inequality: lambda^ell == 1/2 exactly forces the next ell.
  double power = 1.0;
  for (int ell = 1; ell <= kMaxBernoulliEll; ++ell) {
    power *= lambda;
    if (power < 0.5) return ell;
  }
  fail("DOMAIN", "lambda too close to 1: required block length exceeds 64");
}

BernoulliCertificate bernoulli_certificate(double lambda) {
  BernoulliCertificate out;
  out.ell = bernoulli_min_ell(lambda);
  const double half_pow = std::ldexp(1.0, -out.ell);  // 2^{-ell}, exact
  out.cert.delta0 = 1.0 / (std::ldexp(1.0, out.ell + 1) - 1.0);
  out.cert.family = Family::kBernoulliBv;
  out.cert.c_const = 1.0;
  out.cert.theta = 1.0 - half_pow;
  out.cert.params["lambda"] = lambda;
  out.cert.params["ell"] = static_cast<double>(out.ell);
  out.cert.validate();
  return out;
}

}  // namespace gapcert
