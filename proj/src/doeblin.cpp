#include "gapcert/doeblin.hpp"

#include <algorithm>
#include <cmath>

#include "gapcert/errors.hpp"
#include "gapcert/parallel.hpp"

namespace gapcert::doeblin {

void FiniteKernel::validate() const {
  require(size >= 1, "DOMAIN", "kernel needs at least one state");
  require(rows.size() == static_cast<std::size_t>(size) * size, "SIZE",
          "row table must hold size*size entries");
  for (int x = 0; x < size; ++x) {
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
      const double p = at(x, y);
      require(std::isfinite(p) && p >= 0.0, "DOMAIN",
              "transition probabilities must be nonnegative");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "DOMAIN",
            "every row must sum to 1 within 1e-12");
  }
}

FiniteKernel make_kernel(int size, std::vector<double> row_major) {
  FiniteKernel k;
  k.size = size;
  k.rows = std::move(row_major);
  k.validate();
  return k;
}

MinorizationSplit minorization_split(const FiniteKernel& kernel) {
  kernel.validate();
  const int k = kernel.size;
  std::vector<double> col_min(k);
  double beta = 0.0;
  for (int y = 0; y < k; ++y) {
    double m = kernel.at(0, y);
    for (int x = 1; x < k; ++x) m = std::min(m, kernel.at(x, y));
    col_min[y] = m;
    beta += m;
  }
  require(beta > 0.0, "NO_MINORIZATION",
          "every column has a vanishing minimum: no one-step minorization");

  MinorizationSplit split;
  split.beta = beta;
  split.omega.resize(k);
  for (int y = 0; y < k; ++y) split.omega[y] = col_min[y] / beta;
  split.residual.resize(static_cast<std::size_t>(k) * k);
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      split.residual[static_cast<std::size_t>(x) * k + y] =
          kernel.at(x, y) - col_min[y];
    }
  }
  return split;
}

double tv_distance(const std::vector<double>& mu,
                   const std::vector<double>& nu) {
  require(mu.size() == nu.size(), "SIZE",
          "distributions must have equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) sum += std::abs(mu[i] - nu[i]);
  return 0.5 * sum;
}

double dobrushin_coefficient(const FiniteKernel& kernel) {
  kernel.validate();
  const int k = kernel.size;
  double worst = 0.0;
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      double l1 = 0.0;
      for (int z = 0; z < k; ++z) l1 += std::abs(kernel.at(x, z) - kernel.at(y, z));
      worst = std::max(worst, 0.5 * l1);
    }
  }
  return worst;
}

std::vector<double> stationary_distribution(const FiniteKernel& kernel) {
  kernel.validate();
  const double alpha = dobrushin_coefficient(kernel);
  require(alpha < 1.0, "NOT_CONTRACTING",
          "Dobrushin coefficient is 1: stationary law may not be unique");

  const int k = kernel.size;
  std::vector<double> pi(k, 1.0 / k);
  std::vector<double> next(k);
  // d_TV(pi_m, pi_inf) <= d_TV(pi_m, pi_{m+1}) / (1 - alpha); iterate until
  // that certificate and the direct residual are both below tolerance.
  constexpr double kTol = 1e-13;
  constexpr int kMaxIterations = 1 << 22;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (int y = 0; y < k; ++y) {
      double s = 0.0;
      for (int x = 0; x < k; ++x) s += pi[x] * kernel.at(x, y);
      next[y] = s;
    }
    const double step_tv = tv_distance(pi, next);
    double residual_sup = 0.0;
    for (int y = 0; y < k; ++y)
      residual_sup = std::max(residual_sup, std::abs(next[y] - pi[y]));
    pi.swap(next);
    if (step_tv / (1.0 - alpha) < kTol && residual_sup < kTol) {
      // Renormalize away accumulated rounding.
      double total = 0.0;
      for (const double p : pi) total += p;
      for (double& p : pi) p /= total;
      return pi;
    }
  }
  fail("NOT_CONTRACTING", "power iteration failed to converge");
}

std::vector<double> apply_kernel(const FiniteKernel& kernel,
                                 const std::vector<double>& f) {
  kernel.validate();
  require(f.size() == static_cast<std::size_t>(kernel.size), "SIZE",
          "observable length must match the state count");
  std::vector<double> out(kernel.size);
  for (int x = 0; x < kernel.size; ++x) {
    double s = 0.0;
    for (int y = 0; y < kernel.size; ++y) s += kernel.at(x, y) * f[y];
    out[x] = s;
  }
  return out;
}

namespace {

int sample_row(const FiniteKernel& kernel, int state, rng::ReplicaRng& rng) {
  const double u = rng.next_unit();
  double acc = 0.0;
  const int k = kernel.size;
  for (int y = 0; y < k; ++y) {
    acc += kernel.at(state, y);
    if (u < acc) return y;
  }
  return k - 1;  // guards against rounding in the row sum
}

}  // namespace

std::vector<double> replica_means(const FiniteKernel& kernel,
                                  const std::vector<double>& f,
                                  const SimulationPlan& plan) {
  kernel.validate();
  require(f.size() == static_cast<std::size_t>(kernel.size), "SIZE",
          "observable length must match the state count");
  for (const double v : f) {
    require(std::isfinite(v) && v >= -1.0 && v <= 1.0, "RANGE",
            "observable values must lie in [-1, 1]");
  }
  require(plan.n >= 1, "DOMAIN", "need at least one step");
  require(plan.replicas >= 1, "DOMAIN", "need at least one replica");
  require(plan.start_state >= 0 && plan.start_state < kernel.size, "DOMAIN",
          "start state out of range");

  std::vector<double> means(plan.replicas);
  parallel_for_index(plan.replicas, plan.threads, [&](std::uint64_t r) {
    rng::ReplicaRng gen(plan.seed, r);
    int state = plan.start_state;
    double sum = 0.0;
    for (std::int64_t step = 0; step < plan.n; ++step) {
      state = sample_row(kernel, state, gen);
      sum += f[state];
    }
    means[r] = sum / static_cast<double>(plan.n);
  });
  return means;
}

TailEstimate simulate_tail(const FiniteKernel& kernel,
                           const std::vector<double>& f,
                           const SimulationPlan& plan, double a) {
  require(std::isfinite(a) && a >= 0.0, "DOMAIN",
          "deviation a must be nonnegative");
  const std::vector<double> means = replica_means(kernel, f, plan);
  const std::vector<double> pi = stationary_distribution(kernel);
  double center = 0.0;
  for (int y = 0; y < kernel.size; ++y) center += pi[y] * f[y];
  std::uint64_t hits = 0;
  for (const double m : means) {
    if (std::abs(m - center) >= a) ++hits;
  }
  TailEstimate est;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(plan.replicas);
  est.wilson_upper = stats::wilson_upper99(hits, plan.replicas);
  return est;
}

}  // namespace gapcert::doeblin
