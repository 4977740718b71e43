#pragma once

#include <array>
#include <cstdint>

namespace gapcert::rng {

// Philox 4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// One call encrypts a 128-bit counter under a 64-bit key into 128 random
// bits; there is no sequential state to carry, which is what makes replica
// substreams trivially independent of scheduling.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key) {
    auto c = counter;
    auto k = key;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
           static_cast<std::uint32_t>(p0)};
    }
    return c;
  }
};

// Substream of one simulation replica.  Block b of replica r under master
// seed s is Philox4x32-10 with key (s_lo, s_hi) and counter
// (b_lo, b_hi, r_lo, r_hi); the chain loops consume a fixed number of 64-bit
// draws per step, so the stream position is a pure function of
// (seed, replica, step) and results do not depend on scheduling.
class ReplicaRng {
 public:
  ReplicaRng(std::uint64_t seed, std::uint64_t replica)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        replica_lo_(static_cast<std::uint32_t>(replica)),
        replica_hi_(static_cast<std::uint32_t>(replica >> 32)) {}

  std::uint64_t next_u64() {
    if (half_) {
      half_ = false;
      return spare_;
    }
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32), replica_lo_, replica_hi_};
    const auto out = Philox4x32::block(ctr, key_);
    ++block_;
    spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    half_ = true;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, bound) by 64x64 multiply-high; the bias is below
  // bound/2^64 and of no statistical consequence here.
  std::uint32_t next_below(std::uint32_t bound) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint32_t>(wide >> 64);
  }

  bool next_bit() { return (next_u64() & 1u) != 0; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t replica_lo_;
  std::uint32_t replica_hi_;
  std::uint64_t block_ = 0;
  std::uint64_t spare_ = 0;
  bool half_ = false;
};

}  // namespace gapcert::rng
