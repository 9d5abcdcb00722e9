#ifndef OFDMIM_CAPACITY_HPP
#define OFDMIM_CAPACITY_HPP

#include <cstdint>
#include <string>

#include "ofdmim/channel.hpp"
#include "ofdmim/mapping.hpp"
#include "ofdmim/rng.hpp"
#include "ofdmim/waterfill.hpp"

namespace ofdmim {

enum class Strategy { dynamic, uniform };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& name);  // throws std::invalid_argument

// Network capacity of one activation pattern: per active position the min of
// the two hop rates, halved for the two-phase relay protocol. k = 1 routes
// the full budget to the complementary subcarrier of each hop.
struct PatternCapacity {
  std::uint64_t k;
  double capacity;  // bit/s/Hz
  PowerAllocation alloc_hop1;
  PowerAllocation alloc_hop2;
};

// How the pattern average is evaluated: exact enumeration of all 2^{N_S}
// patterns (bounded by enumeration_cap) or a uniform sample of `draws`
// pattern indices.
struct PatternPolicy {
  enum class Kind { exact, sampled };

  Kind kind = Kind::exact;
  std::uint64_t draws = 0;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;

  static constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 16;

  static PatternPolicy exact(std::uint64_t cap = kDefaultEnumerationCap);
  static PatternPolicy sampled(std::uint64_t draws);
};

PatternCapacity pattern_capacity(const ChannelRealization& realization,
                                 const MappingSelection& selection,
                                 const ActivationPattern& pattern, double budget, double n_0,
                                 Strategy strategy);

// Mean of PatternCapacity::capacity over the pattern distribution (uniform
// on {1..2^{N_S}}). Exact policy sums all patterns in index order; sampled
// policy draws indices from pattern_stream, which must then be non-null.
double average_capacity_over_patterns(const ChannelRealization& realization,
                                      const MappingSelection& selection, double budget,
                                      double n_0, Strategy strategy,
                                      const PatternPolicy& policy,
                                      rng::Stream* pattern_stream = nullptr);

}  // namespace ofdmim

#endif
