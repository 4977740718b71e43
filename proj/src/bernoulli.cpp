#include "gapcert/bernoulli.hpp"

#include <algorithm>
#include <cmath>

#include "gapcert/certificates.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/parallel.hpp"

namespace gapcert::bernoulli {

void IfsParams::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0 && lambda < 1.0, "DOMAIN",
          "lambda must lie in (0, 1)");
  require(ell >= 1 && ell <= kMaxBernoulliEll, "DOMAIN",
          "block length out of range");
  double power = 1.0;
  for (int j = 0; j < ell; ++j) power *= lambda;
  require(power < 0.5, "DOMAIN", "lambda^ell must be below 1/2");
}

namespace {

IfsParams finish(double lambda, int ell) {
  IfsParams p;
  p.lambda = lambda;
  p.ell = ell;
  p.hi = lambda / (1.0 - lambda);
  p.lo = -p.hi;
  double power = 1.0;
  for (int j = 0; j < ell; ++j) power *= lambda;
  p.lambda_pow_ell = power;
  p.validate();
  return p;
}

}  // namespace

IfsParams make_ifs(double lambda) {
  return finish(lambda, bernoulli_min_ell(lambda));
}

IfsParams make_ifs(double lambda, int ell) { return finish(lambda, ell); }

double word_offset(const IfsParams& params, std::uint64_t word, int length) {
  // Horner evaluation of sum_j s(w_j) lambda^j from the innermost letter.
  double acc = 0.0;
  for (int j = length - 1; j >= 0; --j) {
    const double sign = (word >> j) & 1u ? 1.0 : -1.0;
    acc = sign + params.lambda * acc;
  }
  return params.lambda * acc;
}

double apply_word(const IfsParams& params, std::uint64_t word, int length,
                  double x) {
  params.validate();
  require(length >= 0 && length <= 64, "DOMAIN", "word length out of range");
  require(x >= params.lo - 1e-12 && x <= params.hi + 1e-12, "DOMAIN",
          "point outside the attractor");
  double scale = 1.0;
  for (int j = 0; j < length; ++j) scale *= params.lambda;
  const double y = scale * x + word_offset(params, word, length);
  return std::clamp(y, params.lo, params.hi);
}

double block_step(const IfsParams& params, double x, rng::ReplicaRng& rng) {
  const std::uint64_t word = rng.next_u64();
  const double y =
      params.lambda_pow_ell * x + word_offset(params, word, params.ell);
  return std::clamp(y, params.lo, params.hi);
}

void StepFunction::validate() const {
  require(values.size() == breakpoints.size() + 1, "SIZE",
          "need exactly one more value than breakpoints");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    require(breakpoints[i] < breakpoints[i + 1], "DOMAIN",
            "breakpoints must be strictly increasing");
  }
  for (const double b : breakpoints)
    require(std::isfinite(b), "DOMAIN", "breakpoints must be finite");
  for (const double v : values)
    require(std::isfinite(v), "DOMAIN", "values must be finite");
}

double StepFunction::eval(double x) const {
  const auto it =
      std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  // upper_bound counts breakpoints <= x, so a query on a jump takes the
  // right piece.
  return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

StepFunction make_step(std::vector<double> breakpoints,
                       std::vector<double> values) {
  StepFunction f;
  f.breakpoints = std::move(breakpoints);
  f.values = std::move(values);
  f.validate();
  return f;
}

StepFunction threshold_indicator(double threshold) {
  return make_step({threshold}, {0.0, 1.0});
}

BvNorm bv_norm(const StepFunction& f) {
  f.validate();
  BvNorm out;
  for (const double v : f.values) out.sup = std::max(out.sup, std::abs(v));
  for (std::size_t i = 0; i + 1 < f.values.size(); ++i) {
    out.var += std::abs(f.values[i + 1] - f.values[i]);
  }
  out.norm = out.sup + out.var;
  return out;
}

double variation_on(const StepFunction& f, double a, double b) {
  f.validate();
  require(a <= b, "DOMAIN", "empty interval");
  double var = 0.0;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    const double t = f.breakpoints[i];
    if (a < t && t <= b) var += std::abs(f.values[i + 1] - f.values[i]);
  }
  return var;
}

StepFunction apply_block_operator(const IfsParams& params,
                                  const StepFunction& f,
                                  std::size_t breakpoint_cap) {
  params.validate();
  f.validate();
  require(params.ell < 62, "BREAKPOINT_OVERFLOW",
          "2^ell branch images exceed any representable breakpoint budget");

  const std::uint64_t n_words = std::uint64_t{1} << params.ell;
  const double est_events =
      static_cast<double>(n_words) *
      static_cast<double>(f.breakpoints.size() + 1);
  require(est_events <= static_cast<double>(breakpoint_cap) * 2.0 + 16.0,
          "BREAKPOINT_OVERFLOW", "breakpoint budget exceeded before merging");

  // Every f(T_w(.)) is a step function whose jumps sit at the preimages
  // (b - offset_w)/lambda^ell of f's jumps; T_w is strictly increasing so
  // jump heights carry over unchanged.  The sum is assembled by sweeping the
  // jump events from the left endpoint value.
  struct Event {
    double position;
    double jump;
  };
  std::vector<Event> events;
  events.reserve(static_cast<std::size_t>(
      std::min(est_events, static_cast<double>(breakpoint_cap) * 2.0)));

  const double inv_scale = 1.0 / params.lambda_pow_ell;
  double base = 0.0;  // sum over words of f(T_w(lo))
  for (std::uint64_t w = 0; w < n_words; ++w) {
    const double off = word_offset(params, w, params.ell);
    base += f.eval(std::clamp(params.lambda_pow_ell * params.lo + off,
                              params.lo, params.hi));
    for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
      const double t = (f.breakpoints[i] - off) * inv_scale;
      // Jumps at or left of lo are absorbed by the base value (the left
      // endpoint already evaluates on the right piece); jumps at or right
      // of hi leave every interior piece untouched.
      if (t > params.lo && t < params.hi) {
        events.push_back({t, f.values[i + 1] - f.values[i]});
      }
    }
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.position < b.position; });

  const double scale = 1.0 / static_cast<double>(n_words);
  StepFunction out;
  out.values.push_back(base * scale);
  std::size_t i = 0;
  while (i < events.size()) {
    const double pos = events[i].position;
    double jump = 0.0;
    std::size_t j = i;
    while (j < events.size() && events[j].position <= pos + kMergeTol) {
      jump += events[j].jump;
      ++j;
    }
    i = j;
    if (jump != 0.0) {
      require(out.breakpoints.size() < breakpoint_cap, "BREAKPOINT_OVERFLOW",
              "merged breakpoint count exceeds the configured cap");
      out.breakpoints.push_back(pos);
      out.values.push_back(out.values.back() + jump * scale);
    }
  }
  out.validate();
  return out;
}

std::vector<double> replica_means(const IfsParams& params,
                                  const StepFunction& f,
                                  const SimulationPlan& plan) {
  params.validate();
  f.validate();
  require(plan.n >= 1, "DOMAIN", "need at least one block step");
  require(plan.replicas >= 1, "DOMAIN", "need at least one replica");
  require(plan.start >= params.lo && plan.start <= params.hi, "DOMAIN",
          "start point outside the attractor");

  std::vector<double> means(plan.replicas);
  parallel_for_index(plan.replicas, plan.threads, [&](std::uint64_t r) {
    rng::ReplicaRng gen(plan.seed, r);
    double x = plan.start;
    double sum = 0.0;
    for (std::int64_t step = 0; step < plan.n; ++step) {
      x = block_step(params, x, gen);
      sum += f.eval(x);
    }
    means[r] = sum / static_cast<double>(plan.n);
  });
  return means;
}

IntegralEstimate estimate_integral(const IfsParams& params,
                                   const StepFunction& f,
                                   const SimulationPlan& plan) {
  IntegralEstimate out;
  out.means = replica_means(params, f, plan);
  out.estimate = stats::median(out.means);
  return out;
}

Histogram histogram(const IfsParams& params, const HistogramParams& hp) {
  params.validate();
  require(hp.bins >= 1, "DOMAIN", "need at least one bin");
  require(hp.runs >= 1, "DOMAIN", "need at least one run");
  require(hp.n_points >= 1, "DOMAIN", "need at least one point per run");
  require(hp.start >= params.lo && hp.start <= params.hi, "DOMAIN",
          "start point outside the attractor");

  const double width = (params.hi - params.lo) / hp.bins;
  std::vector<std::vector<std::uint64_t>> run_counts(
      hp.runs, std::vector<std::uint64_t>(hp.bins, 0));

  parallel_for_index(static_cast<std::uint64_t>(hp.runs), hp.threads,
                     [&](std::uint64_t run) {
    rng::ReplicaRng gen(hp.seed, run);
    auto& counts = run_counts[run];
    double x = hp.start;
    for (std::int64_t k = 0; k < hp.n_points; ++k) {
      x = block_step(params, x, gen);
      int bin = static_cast<int>((x - params.lo) / width);
      bin = std::clamp(bin, 0, hp.bins - 1);
      ++counts[bin];
    }
  });

  Histogram h;
  h.bin_left.resize(hp.bins);
  h.bin_right.resize(hp.bins);
  h.count.assign(hp.bins, 0);
  h.mass.resize(hp.bins);
  for (int b = 0; b < hp.bins; ++b) {
    h.bin_left[b] = params.lo + b * width;
    h.bin_right[b] = (b + 1 == hp.bins) ? params.hi : params.lo + (b + 1) * width;
    for (int run = 0; run < hp.runs; ++run) h.count[b] += run_counts[run][b];
  }
  const double total =
      static_cast<double>(hp.runs) * static_cast<double>(hp.n_points);
  for (int b = 0; b < hp.bins; ++b) {
    h.mass[b] = static_cast<double>(h.count[b]) / total;
  }
  return h;
}

}  // namespace gapcert::bernoulli
