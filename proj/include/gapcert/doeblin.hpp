#pragma once

#include <cstdint>
#include <vector>

#include "gapcert/rng.hpp"
#include "gapcert/stats.hpp"

namespace gapcert::doeblin {

// Row-stochastic transition table over a finite state space.
struct FiniteKernel {
  int size = 0;
  std::vector<double> rows;  // row-major, size*size entries

  double at(int x, int y) const { return rows[static_cast<std::size_t>(x) * size + y]; }
  void validate() const;  // entries >= 0, rows sum to 1 within 1e-12
};

FiniteKernel make_kernel(int size, std::vector<double> row_major);

// m_x = beta*omega + r_x with r_x >= 0 of mass 1-beta, for the largest
// one-step beta (column minima).
struct MinorizationSplit {
  double beta = 0.0;
  std::vector<double> omega;     // probability vector, length k
  std::vector<double> residual;  // row-major k*k, rows of mass 1-beta
};

MinorizationSplit minorization_split(const FiniteKernel& kernel);

// Max over state pairs of the total-variation distance between their rows;
// equals the exact contraction factor of the averaging operator on the
// spread seminorm.
double dobrushin_coefficient(const FiniteKernel& kernel);

// (1/2) sum |mu - nu|.
double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu);

// Unique stationary law by power iteration; the Dobrushin coefficient turns
// successive differences into a certified bound on the true error, and the
// returned vector has residual sup-norm below 1e-12.
std::vector<double> stationary_distribution(const FiniteKernel& kernel);

// Pull one row forward: (L0 f)(x) = sum_y rows[x][y] f(y).
std::vector<double> apply_kernel(const FiniteKernel& kernel,
                                 const std::vector<double>& f);

struct SimulationPlan {
  std::int64_t n = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  int start_state = 0;
  int threads = 0;
};

// Empirical means of f over steps 1..n, one per replica.  f must map into
// [-1, 1].
std::vector<double> replica_means(const FiniteKernel& kernel,
                                  const std::vector<double>& f,
                                  const SimulationPlan& plan);

struct TailEstimate {
  double p_hat = 0.0;
  double wilson_upper = 0.0;
};

// Tail of the empirical mean around the exact stationary mean of f.
TailEstimate simulate_tail(const FiniteKernel& kernel,
                           const std::vector<double>& f,
                           const SimulationPlan& plan, double a);

}  // namespace gapcert::doeblin
