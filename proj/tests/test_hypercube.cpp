#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "gapcert/bounds.hpp"
#include "gapcert/certificates.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/hypercube.hpp"
#include "gapcert/rng.hpp"

using namespace gapcert;
using cube::Vertex;

namespace {

// Independent oracle: the full 2^N x 2^N transition matrix, built directly
// from the kernel definition and applied by dense matrix-vector products.
std::vector<double> dense_transition_matrix(int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> p(size * size, 0.0);
  for (Vertex x = 0; x < size; ++x) {
    // Re-tossing the current value keeps x: total mass 1/2 on the diagonal,
    // 1/(2N) on each neighbor.
    p[x * size + x] = 0.5;
    for (int i = 0; i < n; ++i) {
      p[x * size + (x ^ (Vertex{1} << i))] = 1.0 / (2.0 * n);
    }
  }
  return p;
}

std::vector<double> matvec(const std::vector<double>& p,
                           const std::vector<double>& f) {
  const std::size_t size = f.size();
  std::vector<double> out(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    double acc = 0.0;
    for (std::size_t y = 0; y < size; ++y) acc += p[x * size + y] * f[y];
    out[x] = acc;
  }
  return out;
}

// Truncated correlation-sum oracle with an explicit geometric tail bound.
double variance_by_matrix_powers(const cube::DenseObservable& f) {
  const int n = f.n_slots;
  const std::size_t size = f.values.size();
  const auto p = dense_transition_matrix(n);
  const double mean = cube::uniform_mean(f);
  std::vector<double> fbar(size);
  for (std::size_t v = 0; v < size; ++v) fbar[v] = f.values[v] - mean;

  double var = 0.0;
  for (std::size_t v = 0; v < size; ++v) var += fbar[v] * fbar[v];
  var /= static_cast<double>(size);

  double corr = 0.0;
  std::vector<double> iter = fbar;
  // Spread decays at least like (1-1/N)^k, so 3000 terms leave a tail far
  // below 1e-12 for N <= 6.
  for (int k = 1; k <= 3000; ++k) {
    iter = matvec(p, iter);
    double dot = 0.0;
    for (std::size_t v = 0; v < size; ++v) dot += fbar[v] * iter[v];
    corr += dot / static_cast<double>(size);
  }
  return var + 2.0 * corr;
}

}  // namespace

TEST_SUITE_BEGIN("hypercube");

TEST_CASE("observables take the documented values") {
  const auto rho = cube::polarization(4);
  CHECK(rho[0b0110] == doctest::Approx(0.5));
  CHECK(rho[0b1111] == 1.0);
  CHECK(rho[0] == 0.0);

  const auto ind = cube::slot_indicator(4);
  CHECK(ind[0b0110] == 1.0);  // slot 1 (bit 0) is 0
  CHECK(ind[0b1110] == 1.0);
  CHECK(ind[0b0111] == 0.0);
  CHECK(ind[0b1111] == 0.0);
}

TEST_CASE("seminorm reports match the closed forms") {
  const auto rho_report = cube::seminorms(cube::polarization(4));
  CHECK(rho_report.sup == 1.0);
  CHECK(rho_report.lip == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rho_report.w == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rho_report.s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rho_report.norm_l == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(rho_report.norm_dl == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rho_report.norm_w == doctest::Approx(2.0).epsilon(1e-15));

  const auto ind_report = cube::seminorms(cube::slot_indicator(4));
  CHECK(ind_report.lip == 1.0);
  CHECK(ind_report.w == 1.0);
  CHECK(ind_report.s == 1.0);
  CHECK(ind_report.norm_l == 2.0);
  CHECK(ind_report.norm_dl == 5.0);
  CHECK(ind_report.norm_w == 2.0);

  const auto flat = cube::seminorms(cube::from_table(3, std::vector<double>(8, 4.0)));
  CHECK(flat.lip == 0.0);
  CHECK(flat.w == 0.0);
  CHECK(flat.s == 0.0);
}

TEST_CASE("averaging operator on reference observables") {
  const auto ones = cube::from_table(3, std::vector<double>(8, 1.0));
  const auto l_ones = cube::apply_averaging(ones);
  for (const double v : l_ones.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  // Closed form: L0 rho = (1 - 1/N) rho + 1/(2N).
  const auto rho = cube::polarization(4);
  const auto l_rho = cube::apply_averaging(rho);
  for (Vertex v = 0; v < l_rho.values.size(); ++v) {
    CHECK(l_rho[v] ==
          doctest::Approx(0.75 * rho[v] + 0.125).epsilon(1e-15));
  }
  CHECK(l_rho[0b0101] == doctest::Approx(0.5).epsilon(1e-15));

  const auto ind = cube::slot_indicator(4);
  const auto l_ind = cube::apply_averaging(ind);
  CHECK(l_ind[0b0000] == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(l_ind[0b0001] == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("averaging operator agrees with the dense-matrix oracle") {
  rng::ReplicaRng gen(5, 0);
  for (int n : {2, 3, 5}) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> values(size);
    for (double& v : values) v = 2.0 * gen.next_unit() - 1.0;
    const auto f = cube::from_table(n, values);
    const auto via_bits = cube::apply_averaging(f);
    const auto via_matrix = matvec(dense_transition_matrix(n), values);
    for (std::size_t v = 0; v < size; ++v) {
      CHECK(via_bits.values[v] == doctest::Approx(via_matrix[v]).epsilon(1e-13));
    }
  }
}

TEST_CASE("dynamical variance: slot indicator, parity, constants") {
  for (int n : {2, 4, 7}) {
    CHECK(cube::dynamical_variance_exact(cube::slot_indicator(n)) ==
          doctest::Approx((2.0 * n - 1.0) / 4.0).epsilon(1e-10));
  }

  // Constants have vanishing variance.
  CHECK(cube::dynamical_variance_exact(
            cube::from_table(3, std::vector<double>(8, 2.5))) ==
        doctest::Approx(0.0));

  // Parity flips value with probability 1/2 each step: the averaging
  // operator annihilates it, so only the static variance remains.
  std::vector<double> parity(16);
  for (Vertex v = 0; v < 16; ++v)
    parity[v] = (std::popcount(v) % 2 == 0) ? 1.0 : -1.0;
  CHECK(cube::dynamical_variance_exact(cube::from_table(4, parity)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dynamical variance agrees with the matrix-power oracle") {
  rng::ReplicaRng gen(11, 0);
  for (int n : {2, 3, 4}) {
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> values(size);
    for (double& v : values) v = 2.0 * gen.next_unit() - 1.0;
    const auto f = cube::from_table(n, values);
    CHECK(cube::dynamical_variance_exact(f) ==
          doctest::Approx(variance_by_matrix_powers(f)).epsilon(1e-9));
  }
}

TEST_CASE("flip-probability variance formula") {
  CHECK(cube::scrambled_variance(0.5) == doctest::Approx(0.25));
  CHECK(cube::scrambled_variance(0.125) == doctest::Approx(1.75));
  // Strictly decreasing in p.
  double prev = 1e300;
  for (double p = 0.01; p <= 0.5; p += 0.01) {
    const double v = cube::scrambled_variance(p);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(cube::scrambled_variance(0.0), Error);
  CHECK_THROWS_AS(cube::scrambled_variance(0.6), Error);
}

TEST_CASE("chain step marginals match the kernel") {
  const int n = 4;
  rng::ReplicaRng gen(31337, 0);
  Vertex x = 0b1010;
  const std::int64_t steps = 1000000;
  std::int64_t stays = 0;
  std::vector<std::int64_t> neighbor_hits(n, 0);
  for (std::int64_t s = 0; s < steps; ++s) {
    const Vertex y = cube::chain_step(x, n, gen);
    const Vertex diff = x ^ y;
    if (diff == 0) {
      ++stays;
    } else {
      CHECK(std::popcount(diff) == 1);
      ++neighbor_hits[std::countr_zero(diff)];
    }
    x = y;
  }
  const double stay_freq = static_cast<double>(stays) / steps;
  CHECK(std::abs(stay_freq - 0.5) < 0.002);
  for (int i = 0; i < n; ++i) {
    const double freq = static_cast<double>(neighbor_hits[i]) / steps;
    const double p = 1.0 / (2.0 * n);
    CHECK(std::abs(freq - p) < 3.0 * std::sqrt(p * (1 - p) / steps));
  }
}

TEST_CASE("empirical tails at the degenerate deviations") {
  const auto rho = cube::polarization(3);
  cube::SimulationPlan plan;
  plan.n = 50;
  plan.replicas = 200;
  plan.seed = 7;

  CHECK(cube::empirical_tail_probability(rho, plan, 0.0).p_hat == 1.0);
  // Deviations beyond the spread of f are impossible.
  CHECK(cube::empirical_tail_probability(rho, plan, 1.01).p_hat == 0.0);
}

TEST_CASE("replica means are reproducible and thread-count independent") {
  const auto rho = cube::polarization(4);
  cube::SimulationPlan plan;
  plan.n = 100;
  plan.replicas = 64;
  plan.seed = 99;
  plan.threads = 1;
  const auto one = cube::replica_means(rho, plan);
  plan.threads = 7;
  CHECK(cube::replica_means(rho, plan) == one);
  plan.start = cube::Start::kUniform;
  const auto uniform_started = cube::replica_means(rho, plan);
  CHECK(uniform_started != one);
}

TEST_CASE("oracle size limits are enforced") {
  CHECK_THROWS_AS(cube::polarization(25), Error);
  CHECK_THROWS_AS(cube::from_table(3, std::vector<double>(7, 0.0)), Error);
}

TEST_SUITE_END();
