#include "gapcert/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gapcert/errors.hpp"
#include "gapcert/parallel.hpp"

namespace gapcert::cube {

namespace {

void check_oracle_slots(int n_slots) {
  require(n_slots >= 1, "DOMAIN", "number of slots must be at least 1");
  require(n_slots <= kMaxOracleSlots, "SIZE",
          "dense tables support at most 24 slots");
}

std::size_t table_size(int n_slots) { return std::size_t{1} << n_slots; }

}  // namespace

DenseObservable polarization(int n_slots) {
  check_oracle_slots(n_slots);
  DenseObservable f;
  f.n_slots = n_slots;
  f.values.resize(table_size(n_slots));
  for (Vertex v = 0; v < f.values.size(); ++v) {
    f.values[v] = static_cast<double>(std::popcount(v)) / n_slots;
  }
  return f;
}

DenseObservable slot_indicator(int n_slots, int slot, int bit) {
  check_oracle_slots(n_slots);
  require(slot >= 1 && slot <= n_slots, "DOMAIN", "slot index out of range");
  require(bit == 0 || bit == 1, "DOMAIN", "bit must be 0 or 1");
  DenseObservable f;
  f.n_slots = n_slots;
  f.values.resize(table_size(n_slots));
  const Vertex mask = Vertex{1} << (slot - 1);
  for (Vertex v = 0; v < f.values.size(); ++v) {
    f.values[v] = ((v & mask) != 0) == (bit == 1) ? 1.0 : 0.0;
  }
  return f;
}

DenseObservable set_indicator(int n_slots, const std::vector<Vertex>& members) {
  check_oracle_slots(n_slots);
  DenseObservable f;
  f.n_slots = n_slots;
  f.values.assign(table_size(n_slots), 0.0);
  for (const Vertex v : members) {
    require(v < f.values.size(), "DOMAIN", "vertex outside {0,1}^N");
    f.values[v] = 1.0;
  }
  return f;
}

DenseObservable from_table(int n_slots, std::vector<double> values) {
  check_oracle_slots(n_slots);
  require(values.size() == table_size(n_slots), "SIZE",
          "table length must be 2^N");
  DenseObservable f;
  f.n_slots = n_slots;
  f.values = std::move(values);
  return f;
}

SeminormReport seminorms(const DenseObservable& f) {
  check_oracle_slots(f.n_slots);
  SeminormReport r;
  double lo = f.values[0];
  double hi = f.values[0];
  for (Vertex v = 0; v < f.values.size(); ++v) {
    const double fv = f.values[v];
    lo = std::min(lo, fv);
    hi = std::max(hi, fv);
    r.sup = std::max(r.sup, std::abs(fv));
    double local = 0.0;
    for (int i = 0; i < f.n_slots; ++i) {
      const double diff = std::abs(f.values[v ^ (Vertex{1} << i)] - fv);
      r.lip = std::max(r.lip, diff);
      local += diff;
    }
    r.w = std::max(r.w, local);
  }
  r.s = hi - lo;
  r.norm_l = r.sup + r.lip;
  r.norm_dl = r.sup + f.n_slots * r.lip;
  r.norm_w = r.sup + r.w;
  return r;
}

DenseObservable apply_averaging(const DenseObservable& f) {
  check_oracle_slots(f.n_slots);
  DenseObservable out;
  out.n_slots = f.n_slots;
  out.values.resize(f.values.size());
  const double inv2n = 1.0 / (2.0 * f.n_slots);
  for (Vertex v = 0; v < f.values.size(); ++v) {
    double neighbors = 0.0;
    for (int i = 0; i < f.n_slots; ++i) {
      neighbors += f.values[v ^ (Vertex{1} << i)];
    }
    out.values[v] = 0.5 * f.values[v] + inv2n * neighbors;
  }
  return out;
}

double uniform_mean(const DenseObservable& f) {
  check_oracle_slots(f.n_slots);
  double sum = 0.0;
  for (const double fv : f.values) sum += fv;
  return sum / static_cast<double>(f.values.size());
}

double dynamical_variance_exact(const DenseObservable& f) {
  check_oracle_slots(f.n_slots);
  const std::size_t size = f.values.size();
  const double mean = uniform_mean(f);

  DenseObservable fbar;
  fbar.n_slots = f.n_slots;
  fbar.values.resize(size);
  for (std::size_t v = 0; v < size; ++v) fbar.values[v] = f.values[v] - mean;

  // g solves g = L0(fbar + g) on the zero-mean subspace, i.e. the summed
  // correlations sum_{k>=1} L0^k fbar.  The residual of the fixed-point
  // iteration evolves by L0 itself, so the diameter-weighted Lipschitz norm
  // certifies the distance to the true solution: that norm contracts by
  // 1 - delta0 per step on zero-mean functions, with delta0 = 1/(2N-1).
  const double delta0 = 1.0 / (2.0 * f.n_slots - 1.0);
  DenseObservable g = fbar;
  DenseObservable sum_arg = fbar;
  g.values.assign(size, 0.0);

  const auto dl_norm = [&](const DenseObservable& h) {
    double sup = 0.0;
    double lip = 0.0;
    for (Vertex v = 0; v < h.values.size(); ++v) {
      sup = std::max(sup, std::abs(h.values[v]));
      for (int i = 0; i < h.n_slots; ++i) {
        lip = std::max(lip,
                       std::abs(h.values[v ^ (Vertex{1} << i)] - h.values[v]));
      }
    }
    return sup + h.n_slots * lip;
  };

  constexpr double kTol = 1e-12;
  constexpr int kMaxIterations = 1 << 20;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (std::size_t v = 0; v < size; ++v)
      sum_arg.values[v] = fbar.values[v] + g.values[v];
    DenseObservable next = apply_averaging(sum_arg);
    double residual_sup = 0.0;
    DenseObservable residual = next;
    for (std::size_t v = 0; v < size; ++v) {
      residual.values[v] = next.values[v] - g.values[v];
      residual_sup = std::max(residual_sup, std::abs(residual.values[v]));
    }
    g = std::move(next);
    if (residual_sup < kTol && dl_norm(residual) / delta0 < kTol) {
      double var = 0.0;
      double corr = 0.0;
      for (std::size_t v = 0; v < size; ++v) {
        var += fbar.values[v] * fbar.values[v];
        corr += fbar.values[v] * g.values[v];
      }
      const double inv_size = 1.0 / static_cast<double>(size);
      return var * inv_size + 2.0 * corr * inv_size;
    }
  }
  fail("DOMAIN", "correlation-sum iteration failed to converge");
}

double scrambled_variance(double p) {
  require(std::isfinite(p) && p > 0.0 && p <= 0.5, "DOMAIN",
          "flip probability must lie in (0, 1/2]");
  return 0.25 + (1.0 - 2.0 * p) / (4.0 * p);
}

Vertex chain_step(Vertex x, int n_slots, rng::ReplicaRng& rng) {
  const auto slot = rng.next_below(static_cast<std::uint32_t>(n_slots));
  const Vertex coin = rng.next_u64() & 1u;
  const Vertex mask = Vertex{1} << slot;
  return (x & ~mask) | (coin << slot);
}

std::vector<double> replica_means(const DenseObservable& f,
                                  const SimulationPlan& plan) {
  check_oracle_slots(f.n_slots);
  require(plan.n >= 1, "DOMAIN", "need at least one step");
  require(plan.replicas >= 1, "DOMAIN", "need at least one replica");
  require(plan.start_vertex < f.values.size(), "DOMAIN",
          "start vertex outside {0,1}^N");

  std::vector<double> means(plan.replicas);
  parallel_for_index(plan.replicas, plan.threads, [&](std::uint64_t r) {
    rng::ReplicaRng gen(plan.seed, r);
    Vertex x = plan.start_vertex;
    if (plan.start == Start::kUniform) {
      x = gen.next_u64() & (f.values.size() - 1);
    }
    double sum = 0.0;
    for (std::int64_t step = 0; step < plan.n; ++step) {
      x = chain_step(x, f.n_slots, gen);
      sum += f.values[x];
    }
    means[r] = sum / static_cast<double>(plan.n);
  });
  return means;
}

TailEstimate empirical_tail_probability(const DenseObservable& f,
                                        const SimulationPlan& plan, double a) {
  require(std::isfinite(a) && a >= 0.0, "DOMAIN",
          "deviation a must be nonnegative");
  const std::vector<double> means = replica_means(f, plan);
  const double center = uniform_mean(f);
  std::uint64_t hits = 0;
  for (const double m : means) {
    if (std::abs(m - center) >= a) ++hits;
  }
  TailEstimate est;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(plan.replicas);
  est.wilson_upper = stats::wilson_upper99(hits, plan.replicas);
  return est;
}

}  // namespace gapcert::cube
