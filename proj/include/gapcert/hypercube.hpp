#pragma once

#include <cstdint>
#include <vector>

#include "gapcert/rng.hpp"
#include "gapcert/stats.hpp"

namespace gapcert::cube {

// Vertices of {0,1}^N are unsigned words: slot i (1-based) is bit i-1.
using Vertex = std::uint64_t;

// Dense tables of 2^N values support exact operator arithmetic up to
// kMaxOracleSlots; pure simulation works up to kMaxSimSlots.
inline constexpr int kMaxOracleSlots = 24;
inline constexpr int kMaxSimSlots = 63;

struct DenseObservable {
  int n_slots = 0;
  std::vector<double> values;  // indexed by vertex word, length 2^n_slots

  std::size_t size() const { return values.size(); }
  double operator[](Vertex v) const { return values[v]; }
};

// Proportion of 1-bits in the argument.
DenseObservable polarization(int n_slots);

// Indicator of {x : slot `slot` of x equals `bit`}; slot is 1-based.
DenseObservable slot_indicator(int n_slots, int slot = 1, int bit = 0);

// Indicator of an arbitrary vertex set.
DenseObservable set_indicator(int n_slots, const std::vector<Vertex>& members);

DenseObservable from_table(int n_slots, std::vector<double> values);

struct SeminormReport {
  double sup = 0.0;  // max |f|
  double lip = 0.0;  // max over edges |f(x+e) - f(x)| (Hamming-metric Lipschitz constant)
  double w = 0.0;    // max over x of the summed absolute edge differences at x
  double s = 0.0;    // max f - min f
  double norm_l = 0.0;   // sup + lip
  double norm_dl = 0.0;  // sup + N*lip
  double norm_w = 0.0;   // sup + w
};

SeminormReport seminorms(const DenseObservable& f);

// One application of the averaging operator:
// (L0 f)(x) = f(x)/2 + (1/2N) * sum_i f(x xor e_i).
DenseObservable apply_averaging(const DenseObservable& f);

// Mean of f under the uniform (stationary) measure.
double uniform_mean(const DenseObservable& f);

// CLT variance of f along the walk started at stationarity:
// Var(f) + 2*sum_{k>=1} <f, L0^k fbar>.  The correlation sum is obtained by
// iterating g <- L0(fbar + g) on the zero-mean subspace; the iteration stops
// once the certified contraction rate pushes the remaining error below 1e-12.
double dynamical_variance_exact(const DenseObservable& f);

// Variance of a set indicator whose value flips with probability p per step:
// 1/4 + (1-2p)/(4p), for p in (0, 1/2].
double scrambled_variance(double p);

// One step of the lazy walk: a uniform slot is replaced by a fair bit.
// Consumes exactly two 64-bit draws (= one generator block).
Vertex chain_step(Vertex x, int n_slots, rng::ReplicaRng& rng);

enum class Start { kPoint, kUniform };

struct SimulationPlan {
  std::int64_t n = 0;           // steps averaged per replica (steps 1..n)
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  Start start = Start::kPoint;
  Vertex start_vertex = 0;
  int threads = 0;  // 0 -> hardware concurrency
};

// Empirical mean of f over steps 1..n for every replica, each replica on its
// own counter-based substream.
std::vector<double> replica_means(const DenseObservable& f,
                                  const SimulationPlan& plan);

struct TailEstimate {
  double p_hat = 0.0;
  double wilson_upper = 0.0;
};

// P[|mean over steps 1..n - uniform mean| >= a] estimated over replicas,
// with its one-sided 99% Wilson upper limit.
TailEstimate empirical_tail_probability(const DenseObservable& f,
                                        const SimulationPlan& plan, double a);

}  // namespace gapcert::cube
