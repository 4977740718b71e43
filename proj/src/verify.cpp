#include "gapcert/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gapcert/bernoulli.hpp"
#include "gapcert/bounds.hpp"
#include "gapcert/certificates.hpp"
#include "gapcert/constants.hpp"
#include "gapcert/doeblin.hpp"
#include "gapcert/hypercube.hpp"
#include "gapcert/rng.hpp"
#include "gapcert/stats.hpp"

namespace gapcert::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

// Collects violations and tracks the tightest margin seen, so a passing
// check still reports how close it came.
class Margin {
 public:
  // Requires lhs <= rhs + slack; margin is rhs - lhs.
  void require_le(double lhs, double rhs, double slack, const std::string& what) {
    const double margin = rhs - lhs;
    if (margin < worst_) {
      worst_ = margin;
      worst_what_ = what;
    }
    if (!(lhs <= rhs + slack)) {
      ++violations_;
      if (first_violation_.empty()) {
        std::ostringstream ss;
        ss << what << ": " << lhs << " > " << rhs << " + " << slack;
        first_violation_ = ss.str();
      }
    }
  }

  void require_close(double lhs, double rhs, double tol, const std::string& what) {
    require_le(std::abs(lhs - rhs), 0.0, tol, what);
  }

  bool pass() const { return violations_ == 0; }

  std::string detail() const {
    if (violations_ > 0) {
      std::ostringstream ss;
      ss << violations_ << " violation(s); first: " << first_violation_;
      return ss.str();
    }
    std::ostringstream ss;
    ss << "worst margin " << worst_ << " (" << worst_what_ << ")";
    return ss.str();
  }

 private:
  double worst_ = 1e300;
  std::string worst_what_;
  std::size_t violations_ = 0;
  std::string first_violation_;
};

CheckResult finish(const std::string& name, const Margin& m, const Timer& t) {
  CheckResult r;
  r.name = name;
  r.pass = m.pass();
  r.detail = m.detail();
  r.seconds = t.seconds();
  return r;
}

double uniform(rng::ReplicaRng& gen, double lo, double hi) {
  return lo + (hi - lo) * gen.next_unit();
}

cube::DenseObservable random_observable(int n_slots, rng::ReplicaRng& gen) {
  std::vector<double> values(std::size_t{1} << n_slots);
  for (double& v : values) v = uniform(gen, -1.0, 1.0);
  return cube::from_table(n_slots, std::move(values));
}

bernoulli::StepFunction random_step_function(const bernoulli::IfsParams& ifs,
                                             int max_jumps,
                                             rng::ReplicaRng& gen) {
  const int jumps = 1 + static_cast<int>(gen.next_below(max_jumps));
  std::vector<double> breaks(jumps);
  const double span = ifs.hi - ifs.lo;
  for (double& b : breaks) b = ifs.lo + span * (0.01 + 0.98 * gen.next_unit());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> values(breaks.size() + 1);
  for (double& v : values) v = uniform(gen, -1.0, 1.0);
  return bernoulli::make_step(std::move(breaks), std::move(values));
}

doeblin::FiniteKernel random_kernel(int states, rng::ReplicaRng& gen) {
  std::vector<double> rows(static_cast<std::size_t>(states) * states);
  for (int x = 0; x < states; ++x) {
    double sum = 0.0;
    for (int y = 0; y < states; ++y) {
      const double e = 0.05 + gen.next_unit();
      rows[static_cast<std::size_t>(x) * states + y] = e;
      sum += e;
    }
    for (int y = 0; y < states; ++y) {
      rows[static_cast<std::size_t>(x) * states + y] /= sum;
    }
  }
  return doeblin::make_kernel(states, std::move(rows));
}

double spread(const std::vector<double>& f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

double sup_abs(const std::vector<double>& f) {
  double s = 0.0;
  for (const double v : f) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

CheckResult closed_form_gaps(const Options&) {
  Timer t;
  Margin m;
  const auto agree_with_lemma = [&m](const GapCertificate& cert,
                                     const std::string& what) {
    const auto via_lemma = lemma_gap({cert.c_const, cert.theta});
    m.require_close(cert.delta0, via_lemma.delta0, 1e-12, what + " vs lemma");
  };

  for (int i = 1; i <= 100; ++i) {
    const double beta = i / 100.0;
    const auto cert = doeblin_gap(beta);
    m.require_close(cert.delta0, beta / (2.0 - beta), 1e-12, "doeblin gap");
    agree_with_lemma(cert, "doeblin gap");
  }
  for (int n = 1; n <= 20; ++n) {
    const double nd = n;
    const auto cl = hypercube_gap(n, CubeNorm::kL);
    const auto cd = hypercube_gap(n, CubeNorm::kDL);
    const auto cw = hypercube_gap(n, CubeNorm::kW);
    m.require_close(cl.delta0, 1.0 / (nd * nd), 1e-12, "cube L gap");
    m.require_close(cd.delta0, 1.0 / (2.0 * nd - 1.0), 1e-12, "cube dL gap");
    m.require_close(cw.delta0, 1.0 / (4.0 * nd - 1.0), 1e-12, "cube W gap");
    agree_with_lemma(cl, "cube L gap");
    agree_with_lemma(cd, "cube dL gap");
    agree_with_lemma(cw, "cube W gap");
  }
  for (int ell = 1; ell <= 10; ++ell) {
    // lambda chosen so the minimal certified block length is exactly ell.
    const double lambda =
        ell == 1 ? 0.3 : std::pow(0.5, 1.0 / ell) * 0.9999;
    const auto bc = bernoulli_certificate(lambda);
    m.require_close(static_cast<double>(bc.ell), static_cast<double>(ell), 0.0,
                    "certified block length");
    m.require_close(bc.cert.delta0, 1.0 / (std::ldexp(1.0, ell + 1) - 1.0),
                    1e-12, "bv gap");
    agree_with_lemma(bc.cert, "bv gap");
  }
  return finish("closed_form_gaps", m, t);
}

CheckResult hypercube_contraction(const Options& opts) {
  Timer t;
  Margin m;
  const int samples = opts.quick ? 60 : 1000;
  rng::ReplicaRng gen(opts.seed, 1);
  for (int n = 2; n <= 8; ++n) {
    const double lip_rate = 1.0 - 1.0 / n;
    const double w_rate = 1.0 - 1.0 / (2.0 * n);
    const double d_l = hypercube_gap(n, CubeNorm::kL).delta0;
    const double d_dl = hypercube_gap(n, CubeNorm::kDL).delta0;
    const double d_w = hypercube_gap(n, CubeNorm::kW).delta0;
    for (int s = 0; s < samples; ++s) {
      auto f = random_observable(n, gen);
      const double mean = cube::uniform_mean(f);
      for (double& v : f.values) v -= mean;  // zero-mean for the norm rates
      const auto before = cube::seminorms(f);
      const auto lf = cube::apply_averaging(f);
      const auto after = cube::seminorms(lf);
      m.require_le(after.lip, lip_rate * before.lip, 1e-12, "Lip rate");
      m.require_le(after.w, w_rate * before.w, 1e-12, "W rate");
      m.require_le(after.norm_l, (1.0 - d_l) * before.norm_l, 1e-12, "L norm gap");
      m.require_le(after.norm_dl, (1.0 - d_dl) * before.norm_dl, 1e-12,
                   "dL norm gap");
      m.require_le(after.norm_w, (1.0 - d_w) * before.norm_w, 1e-12,
                   "W norm gap");
    }
  }
  return finish("hypercube_contraction", m, t);
}

CheckResult petrov_comparison(const Options& opts) {
  Timer t;
  Margin m;
  const int random_per_n = opts.quick ? 300 : 10000;
  rng::ReplicaRng gen(opts.seed, 2);
  for (int n = 1; n <= 10; ++n) {
    const std::size_t size = std::size_t{1} << n;
    for (int s = 0; s < random_per_n; ++s) {
      const auto f = random_observable(n, gen);
      const auto sn = cube::seminorms(f);
      m.require_le(sn.s, sn.w, 1e-12, "spread vs local variation (random)");
      m.require_le(sn.lip, sn.w, 1e-12, "lip vs w");
      m.require_le(sn.w, n * sn.lip, 1e-12, "w vs N*lip");
    }
    // Structured families: single-vertex spikes, subcube indicators and
    // linear functionals (tight case: spread equals local variation).
    for (int s = 0; s < 40; ++s) {
      const auto spike_at = gen.next_u64() & (size - 1);
      const auto spike = cube::set_indicator(n, {spike_at});
      const auto sn = cube::seminorms(spike);
      m.require_le(sn.s, sn.w, 1e-12, "spread vs w (spike)");

      const cube::Vertex mask = gen.next_u64() & (size - 1);
      const cube::Vertex want = gen.next_u64() & mask;
      std::vector<double> sub(size);
      for (cube::Vertex v = 0; v < size; ++v)
        sub[v] = ((v & mask) == want) ? 1.0 : 0.0;
      const auto sn2 = cube::seminorms(cube::from_table(n, std::move(sub)));
      m.require_le(sn2.s, sn2.w, 1e-12, "spread vs w (subcube)");

      std::vector<double> coeff(n);
      for (double& c : coeff) c = uniform(gen, -1.0, 1.0);
      std::vector<double> lin(size);
      for (cube::Vertex v = 0; v < size; ++v) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          if (v & (cube::Vertex{1} << i)) acc += coeff[i];
        lin[v] = acc;
      }
      const auto sn3 = cube::seminorms(cube::from_table(n, std::move(lin)));
      m.require_le(sn3.s, sn3.w, 1e-12, "spread vs w (linear)");
    }
  }
  return finish("petrov_comparison", m, t);
}

CheckResult variance_oracle(const Options&) {
  Timer t;
  Margin m;
  for (int n = 2; n <= 10; ++n) {
    const double expected = (2.0 * n - 1.0) / 4.0;
    const double got = cube::dynamical_variance_exact(cube::slot_indicator(n));
    m.require_close(got, expected, 1e-9, "slot-indicator variance");
    m.require_close(cube::scrambled_variance(1.0 / (2.0 * n)), expected, 1e-12,
                    "flip-probability variance formula");
  }
  return finish("variance_oracle", m, t);
}

CheckResult doeblin_oracle(const Options& opts) {
  Timer t;
  Margin m;
  const int kernels = opts.quick ? 20 : 100;
  rng::ReplicaRng gen(opts.seed, 3);
  for (int trial = 0; trial < kernels; ++trial) {
    const int states = 5 + static_cast<int>(gen.next_below(46));
    const auto kernel = random_kernel(states, gen);
    const auto split = doeblin::minorization_split(kernel);
    m.require_le(0.0, split.beta, 0.0, "beta positive");

    for (int x = 0; x < states; ++x) {
      double residual_sum = 0.0;
      for (int y = 0; y < states; ++y) {
        const double rebuilt =
            split.beta * split.omega[y] +
            split.residual[static_cast<std::size_t>(x) * states + y];
        m.require_close(rebuilt, kernel.at(x, y), 1e-12, "split reconstruction");
        m.require_le(0.0, split.residual[static_cast<std::size_t>(x) * states + y],
                     1e-15, "residual nonnegative");
        residual_sum += split.residual[static_cast<std::size_t>(x) * states + y];
      }
      m.require_close(residual_sum, 1.0 - split.beta, 1e-12, "residual mass");
    }

    const double alpha = doeblin::dobrushin_coefficient(kernel);
    m.require_le(alpha, 1.0 - split.beta, 1e-12, "dobrushin vs 1-beta");

    const auto pi = doeblin::stationary_distribution(kernel);
    const double delta0 = split.beta / (2.0 - split.beta);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> f(states);
      for (double& v : f) v = uniform(gen, -1.0, 1.0);
      double pimean = 0.0;
      for (int y = 0; y < states; ++y) pimean += pi[y] * f[y];
      for (double& v : f) v -= pimean;
      const auto lf = doeblin::apply_kernel(kernel, f);
      m.require_le(spread(lf), alpha * spread(f), 1e-12, "spread contraction");
      const double norm_before = sup_abs(f) + spread(f);
      const double norm_after = sup_abs(lf) + spread(lf);
      m.require_le(norm_after, (1.0 - delta0) * norm_before, 1e-10,
                   "spread-norm gap realization");
    }
  }
  return finish("doeblin_oracle", m, t);
}

CheckResult bv_contraction(const Options& opts) {
  Timer t;
  Margin m;
  const int samples = opts.quick ? 60 : 1000;
  const double lambdas[] = {0.55, 0.618, 2.0 / 3.0, 0.75, 0.9};
  rng::ReplicaRng gen(opts.seed, 4);
  for (const double lambda : lambdas) {
    const auto ifs = bernoulli::make_ifs(lambda);
    const double rate = 1.0 - std::ldexp(1.0, -ifs.ell);
    for (int s = 0; s < samples; ++s) {
      const auto f = random_step_function(ifs, 50, gen);
      const auto lf = bernoulli::apply_block_operator(ifs, f);
      const auto before = bernoulli::bv_norm(f);
      const auto after = bernoulli::bv_norm(lf);
      m.require_le(after.var, rate * before.var, 1e-9, "variation rate");
      m.require_le(after.sup, before.sup, 1e-12, "sup non-expansion");
    }
  }

  // Frozen example: lambda = 2/3, two-letter blocks, half-line indicator.
  const auto ifs = bernoulli::make_ifs(2.0 / 3.0);
  const auto image =
      bernoulli::apply_block_operator(ifs, bernoulli::threshold_indicator(0.0));
  m.require_close(static_cast<double>(ifs.ell), 2.0, 0.0, "2/3 block length");
  if (image.breakpoints.size() == 2 && image.values.size() == 3) {
    m.require_close(image.breakpoints[0], -0.5, 1e-12, "first breakpoint");
    m.require_close(image.breakpoints[1], 0.5, 1e-12, "second breakpoint");
    m.require_close(image.values[0], 0.25, 1e-12, "left value");
    m.require_close(image.values[1], 0.5, 1e-12, "middle value");
    m.require_close(image.values[2], 0.75, 1e-12, "right value");
    m.require_close(bernoulli::bv_norm(image).var, 0.5, 1e-12, "image variation");
  } else {
    m.require_close(static_cast<double>(image.breakpoints.size()), 2.0, 0.0,
                    "image breakpoint count");
  }
  return finish("bv_contraction", m, t);
}

CheckResult bound_validity(const Options& opts) {
  Timer t;
  Margin m;
  const std::uint64_t replicas = opts.quick ? 1000 : 10000;

  {  // Lazy walk, polarization, diameter-weighted Lipschitz norm.
    const auto cert = hypercube_gap(4, CubeNorm::kDL);
    const auto rho = cube::polarization(4);
    const auto sn = cube::seminorms(rho);
    ObservableSpec obs;
    obs.sup_norm = sn.sup;
    obs.seminorm = 4 * sn.lip;
    obs.norm = sn.norm_dl;
    obs.family = Family::kHypercubeDL;
    cube::SimulationPlan plan;
    plan.n = 1000;
    plan.replicas = replicas;
    plan.seed = opts.seed;
    plan.threads = opts.threads;
    const auto means = cube::replica_means(rho, plan);
    const double center = cube::uniform_mean(rho);
    const auto grid = stats::default_a_grid(
        obs.norm * cert.delta0 / constants::kRegimeSplitDiv);
    const auto curve = stats::deviation_curve(
        means, center, grid,
        [&](double a) { return main_bound(cert, obs, plan.n, a); });
    for (const auto& pt : curve) {
      m.require_le(pt.wilson_upper, pt.bound_raw, 0.0, "cube tail vs bound");
    }
  }

  {  // Two-state kernel with a three-quarter minorization constant.
    const auto kernel = doeblin::make_kernel(2, {0.5, 0.5, 0.25, 0.75});
    const double beta = doeblin::minorization_split(kernel).beta;
    const std::vector<double> f = {1.0, -1.0};
    doeblin::SimulationPlan plan;
    plan.n = 10000;
    plan.replicas = replicas;
    plan.seed = opts.seed + 1;
    plan.threads = opts.threads;
    const auto means = doeblin::replica_means(kernel, f, plan);
    const auto pi = doeblin::stationary_distribution(kernel);
    const double center = pi[0] * f[0] + pi[1] * f[1];
    const auto grid =
        stats::default_a_grid(beta / constants::kDoeblinWindowDiv);
    const auto curve = stats::deviation_curve(
        means, center, grid,
        [&](double a) { return doeblin_corollary_bound(beta, plan.n, a); });
    for (const auto& pt : curve) {
      m.require_le(pt.wilson_upper, pt.bound_raw, 0.0, "doeblin tail vs bound");
    }
  }

  {  // Golden-ratio-like contraction, half-line indicator, block chain.
    const auto ifs = bernoulli::make_ifs(0.618);
    const auto phi = bernoulli::threshold_indicator(0.0);
    const double norm_bv = bernoulli::bv_norm(phi).norm;
    bernoulli::SimulationPlan plan;
    plan.n = static_cast<std::int64_t>(constants::kCorollaryMinNNum *
                                       std::ldexp(1.0, ifs.ell));
    plan.replicas = replicas;
    plan.seed = opts.seed + 2;
    plan.threads = opts.threads;
    const auto means = bernoulli::replica_means(ifs, phi, plan);
    // The stationary law is symmetric about 0 and atomless, so the
    // half-line indicator integrates to exactly 1/2.
    const double center = 0.5;
    const double window = norm_bv / (constants::kRegimeSplitDiv *
                                     (std::ldexp(1.0, ifs.ell + 1) - 1.0));
    const auto grid = stats::default_a_grid(window);
    const auto curve = stats::deviation_curve(
        means, center, grid, [&](double a) {
          return bv_corollary_bound(ifs.ell, norm_bv, plan.n, a);
        });
    for (const auto& pt : curve) {
      m.require_le(pt.wilson_upper, pt.bound_raw, 0.0, "bv tail vs bound");
    }
  }
  return finish("bound_validity", m, t);
}

CheckResult histogram_uniform(const Options& opts) {
  Timer t;
  Margin m;
  const auto ifs = bernoulli::make_ifs(0.5);
  bernoulli::HistogramParams hp;
  hp.bins = 500;
  hp.runs = opts.quick ? 5 : 30;
  hp.n_points = opts.quick ? 200000 : 1000000;
  hp.seed = opts.seed;
  hp.start = 0.0;
  hp.threads = opts.threads;
  const auto h = bernoulli::histogram(ifs, hp);

  double total = 0.0;
  for (const double mass : h.mass) total += mass;
  m.require_close(total, 1.0, 1e-9, "mass normalization");

  // The stationary law at lambda = 1/2 is uniform on [-1, 1]: every bin
  // carries 1/bins, so pooled counts are multinomial.
  const double p = 1.0 / hp.bins;
  const double samples =
      static_cast<double>(hp.runs) * static_cast<double>(hp.n_points);
  const double sigma = std::sqrt(p * (1.0 - p) / samples);
  for (int b = 0; b < hp.bins; ++b) {
    m.require_le(std::abs(h.mass[b] - p), 4.0 * sigma, 0.0,
                 "bin mass vs uniform (4 sigma)");
  }
  return finish("histogram_uniform", m, t);
}

CheckResult planner_roundtrip(const Options& opts) {
  Timer t;
  Margin m;
  const int tuples = opts.quick ? 30 : 100;
  rng::ReplicaRng gen(opts.seed, 5);
  for (int trial = 0; trial < tuples; ++trial) {
    const double delta0 = uniform(gen, 0.02, 1.0);
    const auto cert = certificate_from_delta0(delta0);
    const auto obs = observable_from_norm(uniform(gen, 0.5, 5.0));
    const double a = obs.norm * uniform(gen, 0.001, 0.5);
    const double target = uniform(gen, 1e-6, 0.9);
    const std::int64_t n = plan_required_n(cert, obs, a, target);
    const std::int64_t threshold = min_n_main(cert).exact_n;
    m.require_le(main_bound(cert, obs, n, a).raw, target, 0.0, "bound at n");
    m.require_le(static_cast<double>(threshold), static_cast<double>(n), 0.0,
                 "n above threshold");
    if (n - 1 >= threshold) {
      m.require_le(target, main_bound(cert, obs, n - 1, a).raw,
                   0.0, "bound at n-1 exceeds target");
    }
  }
  return finish("planner_roundtrip", m, t);
}

std::vector<CheckResult> bounds_properties(const Options& opts) {
  std::vector<CheckResult> out;
  rng::ReplicaRng gen(opts.seed, 6);

  {  // Monotonicity in n and in a within a fixed regime.
    Timer t;
    Margin m;
    const int trials = opts.quick ? 40 : 300;
    for (int i = 0; i < trials; ++i) {
      const auto cert = certificate_from_delta0(uniform(gen, 0.02, 1.0));
      const auto obs = observable_from_norm(uniform(gen, 0.5, 4.0));
      const std::int64_t n = 50 + static_cast<std::int64_t>(gen.next_below(100000));
      const std::int64_t n2 = n + 1 + static_cast<std::int64_t>(gen.next_below(1000));
      const double a_gauss =
          obs.norm * cert.delta0 / constants::kRegimeSplitDiv * gen.next_unit();
      const double a2 = a_gauss * uniform(gen, 0.0, 1.0);
      m.require_le(main_bound(cert, obs, n2, a_gauss).raw,
                   main_bound(cert, obs, n, a_gauss).raw, 1e-12,
                   "gaussian branch nonincreasing in n");
      m.require_le(main_bound(cert, obs, n, a_gauss).raw,
                   main_bound(cert, obs, n, a2).raw, 1e-12,
                   "gaussian branch nonincreasing in a");

      const double beta = uniform(gen, 0.05, 1.0);
      const double a =
          uniform(gen, 0.0, beta / constants::kDoeblinWindowDiv);
      const double a_small = a * uniform(gen, 0.0, 1.0);
      m.require_le(doeblin_corollary_bound(beta, n2, a).raw,
                   doeblin_corollary_bound(beta, n, a).raw, 1e-12,
                   "minorization corollary nonincreasing in n");
      m.require_le(doeblin_corollary_bound(beta, n, a).raw,
                   doeblin_corollary_bound(beta, n, a_small).raw, 1e-12,
                   "minorization corollary nonincreasing in a");

      const int ell = 1 + static_cast<int>(gen.next_below(6));
      const double norm_bv = uniform(gen, 0.5, 4.0);
      const double window = norm_bv / (constants::kRegimeSplitDiv *
                                       (std::ldexp(1.0, ell + 1) - 1.0));
      const double ab = window * gen.next_unit();
      const double ab_small = ab * uniform(gen, 0.0, 1.0);
      m.require_le(bv_corollary_bound(ell, norm_bv, n2, ab).raw,
                   bv_corollary_bound(ell, norm_bv, n, ab).raw, 1e-12,
                   "bv corollary nonincreasing in n");
      m.require_le(bv_corollary_bound(ell, norm_bv, n, ab).raw,
                   bv_corollary_bound(ell, norm_bv, n, ab_small).raw, 1e-12,
                   "bv corollary nonincreasing in a");
    }
    out.push_back(finish("bound_monotonicity", m, t));
  }

  {  // The bv corollary is the gaussian branch with rounded constants.
    Timer t;
    Margin m;
    for (int ell = 1; ell <= 8; ++ell) {
      const double delta0 = 1.0 / (std::ldexp(1.0, ell + 1) - 1.0);
      const auto cert = certificate_from_delta0(delta0);
      const auto obs = observable_from_norm(1.0);
      const auto n = static_cast<std::int64_t>(constants::kCorollaryMinNNum *
                                               std::ldexp(1.0, ell));
      const double window = obs.norm * delta0 / constants::kRegimeSplitDiv;
      for (const double a : stats::default_a_grid(window)) {
        const double via_main = main_bound(cert, obs, n, a).raw;
        const double via_corollary = bv_corollary_bound(ell, obs.norm, n, a).raw;
        m.require_le(std::abs(via_main - via_corollary) / via_corollary, 0.005,
                     0.0, "bv corollary vs gaussian branch");
      }
    }
    out.push_back(finish("bv_corollary_consistency", m, t));
  }

  {  // The minorization corollary never beats the gaussian branch it rounds.
    Timer t;
    Margin m;
    for (int i = 1; i <= 40; ++i) {
      const double beta = i / 40.0;
      const auto cert = certificate_from_delta0(beta / (2.0 - beta));
      const auto obs = observable_from_norm(3.0);
      const std::int64_t n = 1000;
      const double a = 0.9 * beta / constants::kDoeblinWindowDiv;
      const double raw_main = main_bound(cert, obs, n, a).raw;
      const double raw_corollary = doeblin_corollary_bound(beta, n, a).raw;
      // Signed exponents: corollary decays no faster.
      const double exp_main =
          std::log(constants::kGaussPrefactor) - std::log(raw_main);
      const double exp_corollary =
          std::log(constants::kDoeblinPrefactor) - std::log(raw_corollary);
      m.require_le(exp_corollary, exp_main, 1e-12,
                   "minorization corollary exponent never stronger");
    }
    out.push_back(finish("doeblin_corollary_consistency", m, t));
  }

  out.push_back(planner_roundtrip(opts));

  {  // Exact minimal n never exceeds the simplified one.
    Timer t;
    Margin m;
    for (int i = 1; i <= 1000; ++i) {
      const auto cert = certificate_from_delta0(i / 1000.0);
      const auto mn = min_n_main(cert);
      m.require_le(static_cast<double>(mn.exact_n),
                   static_cast<double>(mn.simplified_n), 0.0,
                   "exact minimal n vs simplified");
    }
    out.push_back(finish("min_n_comparison", m, t));
  }
  return out;
}

std::vector<CheckResult> gap_properties(const Options& opts) {
  std::vector<CheckResult> out;
  out.push_back(closed_form_gaps(opts));

  Timer t;
  Margin m;
  rng::ReplicaRng gen(opts.seed, 7);
  const int trials = opts.quick ? 100 : 1000;
  for (int i = 0; i < trials; ++i) {
    const double c = uniform(gen, 0.01, 10.0);
    const double theta = uniform(gen, 0.0, 0.999);
    const double bump_t = uniform(gen, 1e-6, 0.999 - theta);
    const double bump_c = uniform(gen, 1e-6, 5.0);
    const double base = lemma_gap({c, theta}).delta0;
    m.require_le(lemma_gap({c, theta + bump_t}).delta0, base, 1e-15,
                 "gap decreasing in theta");
    if (theta > 0.0) {
      m.require_le(lemma_gap({c + bump_c, theta}).delta0, base, 1e-15,
                   "gap nonincreasing in C");
    }
  }

  // Minimality of the certified block length.
  for (int i = 0; i < (opts.quick ? 50 : 500); ++i) {
    const double lambda = uniform(gen, 0.01, 0.995);
    const int ell = bernoulli_min_ell(lambda);
    double power = 1.0;
    for (int j = 0; j < ell; ++j) power *= lambda;
    m.require_le(power, 0.5, 0.0, "lambda^ell below one half");
    if (ell > 1) {
      m.require_le(0.5, power / lambda, 0.0, "lambda^(ell-1) at least one half");
    }
  }
  out.push_back(finish("gap_monotonicity_and_min_ell", m, t));
  return out;
}

std::vector<CheckResult> hypercube_properties(const Options& opts) {
  std::vector<CheckResult> out;
  out.push_back(hypercube_contraction(opts));
  out.push_back(petrov_comparison(opts));
  out.push_back(variance_oracle(opts));

  Timer t;
  Margin m;
  rng::ReplicaRng gen(opts.seed, 8);
  const int trials = opts.quick ? 50 : 400;
  for (int i = 0; i < trials; ++i) {
    const int n = 2 + static_cast<int>(gen.next_below(6));
    const auto f = random_observable(n, gen);
    const auto g = random_observable(n, gen);

    // Sup-norm non-expansion and stationarity of the uniform law.
    const auto lf = cube::apply_averaging(f);
    m.require_le(cube::seminorms(lf).sup, cube::seminorms(f).sup, 1e-12,
                 "sup non-expansion");
    m.require_close(cube::uniform_mean(lf), cube::uniform_mean(f), 1e-12,
                    "uniform law is stationary");

    // Banach-algebra submultiplicativity in all three norms.
    std::vector<double> prod(f.values.size());
    for (std::size_t v = 0; v < prod.size(); ++v)
      prod[v] = f.values[v] * g.values[v];
    const auto sf = cube::seminorms(f);
    const auto sg = cube::seminorms(g);
    const auto sp = cube::seminorms(cube::from_table(n, std::move(prod)));
    m.require_le(sp.norm_l, sf.norm_l * sg.norm_l, 1e-12, "L submultiplicative");
    m.require_le(sp.norm_dl, sf.norm_dl * sg.norm_dl, 1e-12,
                 "dL submultiplicative");
    m.require_le(sp.norm_w, sf.norm_w * sg.norm_w, 1e-12, "W submultiplicative");
  }
  const auto ones = cube::from_table(3, std::vector<double>(8, 1.0));
  const auto s1 = cube::seminorms(ones);
  m.require_close(s1.norm_l, 1.0, 0.0, "constant has unit norm");
  m.require_close(s1.norm_w, 1.0, 0.0, "constant has unit W norm");
  out.push_back(finish("hypercube_algebra", m, t));
  return out;
}

std::vector<CheckResult> doeblin_properties(const Options& opts) {
  std::vector<CheckResult> out;
  out.push_back(doeblin_oracle(opts));

  Timer t;
  Margin m;
  rng::ReplicaRng gen(opts.seed, 9);
  const int trials = opts.quick ? 50 : 300;
  for (int i = 0; i < trials; ++i) {
    const int k = 2 + static_cast<int>(gen.next_below(20));
    std::vector<double> mu(k), nu(k), xi(k);
    double smu = 0, snu = 0, sxi = 0;
    for (int j = 0; j < k; ++j) {
      mu[j] = gen.next_unit() + 1e-3;
      nu[j] = gen.next_unit() + 1e-3;
      xi[j] = gen.next_unit() + 1e-3;
      smu += mu[j];
      snu += nu[j];
      sxi += xi[j];
    }
    for (int j = 0; j < k; ++j) {
      mu[j] /= smu;
      nu[j] /= snu;
      xi[j] /= sxi;
    }
    const double dmn = doeblin::tv_distance(mu, nu);
    m.require_close(dmn, doeblin::tv_distance(nu, mu), 1e-15, "tv symmetry");
    m.require_close(doeblin::tv_distance(mu, mu), 0.0, 0.0, "tv identity");
    m.require_le(dmn,
                 doeblin::tv_distance(mu, xi) + doeblin::tv_distance(xi, nu),
                 1e-12, "tv triangle inequality");
    m.require_le(dmn, 1.0, 1e-15, "tv bounded by one");

    // Spread contracts at the Dobrushin rate.
    const auto kernel = random_kernel(k, gen);
    const double alpha = doeblin::dobrushin_coefficient(kernel);
    std::vector<double> f(k);
    for (double& v : f) v = uniform(gen, -1.0, 1.0);
    const auto lf = doeblin::apply_kernel(kernel, f);
    m.require_le(spread(lf), alpha * spread(f), 1e-12,
                 "spread contraction at Dobrushin rate");
  }
  out.push_back(finish("tv_metric_and_spread", m, t));
  return out;
}

std::vector<CheckResult> bernoulli_properties(const Options& opts) {
  std::vector<CheckResult> out;
  out.push_back(bv_contraction(opts));

  Timer t;
  Margin m;
  rng::ReplicaRng gen(opts.seed, 10);
  const double lambdas[] = {0.55, 0.618, 2.0 / 3.0, 0.75, 0.9};
  for (const double lambda : lambdas) {
    const auto ifs = bernoulli::make_ifs(lambda);

    // The images of the all-0 and all-1 words are disjoint.
    const double right_of_low =
        bernoulli::apply_word(ifs, 0, ifs.ell, ifs.hi);
    const double left_of_high = bernoulli::apply_word(
        ifs, (std::uint64_t{1} << ifs.ell) - 1, ifs.ell, ifs.lo);
    m.require_le(right_of_low, left_of_high, 0.0, "extreme word images disjoint");

    // Extensiveness with equality when the cut avoids every jump.
    for (int i = 0; i < (opts.quick ? 20 : 100); ++i) {
      const auto f = random_step_function(ifs, 20, gen);
      const double whole = bernoulli::variation_on(f, ifs.lo, ifs.hi);
      m.require_close(whole, bernoulli::bv_norm(f).var, 1e-12,
                      "interval variation matches jump sum");
      // Cut strictly between two consecutive jumps.
      const std::size_t cut_idx = gen.next_below(
          static_cast<std::uint32_t>(f.breakpoints.size()));
      const double next_pos = cut_idx + 1 < f.breakpoints.size()
                                  ? f.breakpoints[cut_idx + 1]
                                  : ifs.hi;
      const double cut =
          0.5 * (f.breakpoints[cut_idx] + next_pos);
      const double left = bernoulli::variation_on(f, ifs.lo, cut);
      const double right = bernoulli::variation_on(f, cut, ifs.hi);
      m.require_close(left + right, whole, 1e-12,
                      "extensiveness equality between jumps");
    }
  }

  // A point-started empirical law after k block steps has at most 2^{k*ell}
  // distinct values.
  {
    const auto ifs = bernoulli::make_ifs(0.618);
    for (int k = 1; k <= 3; ++k) {
      std::vector<double> points;
      for (std::uint64_t r = 0; r < 512; ++r) {
        rng::ReplicaRng chain(opts.seed, r);
        double x = 0.0;
        for (int step = 0; step < k; ++step)
          x = bernoulli::block_step(ifs, x, chain);
        points.push_back(x);
      }
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      m.require_le(static_cast<double>(points.size()),
                   std::ldexp(1.0, k * ifs.ell), 0.0,
                   "finite support of the point-started law");
    }
  }
  out.push_back(finish("bernoulli_structure", m, t));
  return out;
}

std::vector<CheckResult> run_all(const Options& opts, bool include_slow) {
  std::vector<CheckResult> all;
  const auto absorb = [&all](std::vector<CheckResult> batch) {
    for (auto& r : batch) all.push_back(std::move(r));
  };
  absorb(gap_properties(opts));
  absorb(bounds_properties(opts));
  absorb(hypercube_properties(opts));
  absorb(doeblin_properties(opts));
  absorb(bernoulli_properties(opts));
  if (include_slow) {
    all.push_back(bound_validity(opts));
    all.push_back(histogram_uniform(opts));
  }
  return all;
}

}  // namespace gapcert::verify
