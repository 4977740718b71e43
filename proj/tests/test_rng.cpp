#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "gapcert/parallel.hpp"
#include "gapcert/rng.hpp"

using gapcert::rng::Philox4x32;
using gapcert::rng::ReplicaRng;

TEST_SUITE_BEGIN("rng");

TEST_CASE("block function matches the published test vectors") {
  // Random123 kat_vectors, philox4x32-10.
  const auto zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                             0xbc57ac4cu, 0x9b00dbd8u});

  const auto ones = Philox4x32::block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                             0xa20bc7c6u, 0x6d5451fdu});

  const auto pi = Philox4x32::block(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                           0x5001e420u, 0x24126ea1u});
}

TEST_CASE("substreams are pure functions of (seed, replica, position)") {
  ReplicaRng a(42, 7);
  ReplicaRng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // Different replicas and different seeds give different streams.
  ReplicaRng c(42, 8);
  ReplicaRng d(43, 7);
  ReplicaRng e(42, 7);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 64; ++i) {
    const auto v = e.next_u64();
    if (v == c.next_u64()) ++same_c;
    if (v == d.next_u64()) ++same_d;
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("unit doubles land in [0,1) and fill the range") {
  ReplicaRng gen(1234, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = gen.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("next_below is uniform over small ranges") {
  ReplicaRng gen(99, 3);
  const std::uint32_t bound = 7;
  std::vector<int> counts(bound, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[gen.next_below(bound)];
  for (const int c : counts) {
    // 5 sigma of Binomial(70000, 1/7).
    CHECK(std::abs(c - n / 7.0) < 5.0 * std::sqrt(n * (1.0 / 7) * (6.0 / 7)));
  }
}

TEST_CASE("parallel replica results do not depend on the thread count") {
  const auto run = [](int threads) {
    std::vector<std::uint64_t> out(64);
    gapcert::parallel_for_index(64, threads, [&](std::uint64_t r) {
      ReplicaRng gen(7, r);
      std::uint64_t acc = 0;
      for (int i = 0; i < 100; ++i) acc ^= gen.next_u64();
      out[r] = acc;
    });
    return out;
  };
  const auto one = run(1);
  CHECK(run(2) == one);
  CHECK(run(5) == one);
  CHECK(run(16) == one);
}

TEST_SUITE_END();
