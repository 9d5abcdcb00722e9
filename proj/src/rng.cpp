#include "ofdmim/rng.hpp"

namespace ofdmim::rng {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Stream::Stream(std::initializer_list<std::uint64_t> key_parts)
    : state_(0x6a09e667f3bcc909ULL) {
  for (std::uint64_t part : key_parts) {
    state_ = mix64(state_ + kGamma + part);
  }
}

std::uint64_t Stream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Stream::next_unit() {
  // 53 top bits -> [0, 1). Max value is (2^53 - 1) / 2^53 < 1.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace ofdmim::rng
