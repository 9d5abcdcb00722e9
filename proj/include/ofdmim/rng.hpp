#ifndef OFDMIM_RNG_HPP
#define OFDMIM_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace ofdmim::rng {

// Counter-based uniform stream (SplitMix64 over a keyed state). The n-th
// output is a pure function of (key, n), so streams keyed by
// (master_seed, trial_index, ...) are reproducible regardless of scheduling
// or platform. Not cryptographic.
class Stream {
 public:
  explicit Stream(std::initializer_list<std::uint64_t> key_parts);

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution. Never returns 1.0.
  double next_unit();

 private:
  std::uint64_t state_;
};

}  // namespace ofdmim::rng

#endif
