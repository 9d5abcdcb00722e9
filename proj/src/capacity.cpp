#include "ofdmim/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ofdmim {

std::string to_string(Strategy strategy) {
  return strategy == Strategy::dynamic ? "dynamic" : "uniform";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "dynamic") return Strategy::dynamic;
  if (name == "uniform") return Strategy::uniform;
  throw std::invalid_argument("unknown strategy '" + name +
                              "' (expected dynamic or uniform)");
}

PatternPolicy PatternPolicy::exact(std::uint64_t cap) {
  PatternPolicy policy;
  policy.kind = Kind::exact;
  policy.enumeration_cap = cap;
  return policy;
}

PatternPolicy PatternPolicy::sampled(std::uint64_t draws) {
  PatternPolicy policy;
  policy.kind = Kind::sampled;
  policy.draws = draws;
  return policy;
}

namespace {

double hop_rate(double power, double gain, double n_0) {
  return std::log2(1.0 + power * gain / n_0);
}

}  // namespace

PatternCapacity pattern_capacity(const ChannelRealization& realization,
                                 const MappingSelection& selection,
                                 const ActivationPattern& pattern, double budget, double n_0,
                                 Strategy strategy) {
  const std::size_t n_s = selection.n_s();
  if (!pattern.active_positions.empty() && pattern.active_positions.back() >= n_s) {
    throw std::invalid_argument("pattern positions exceed the selection size");
  }
  if (!(n_0 > 0.0)) throw std::invalid_argument("n_0 must be positive");
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");

  PatternCapacity result;
  result.k = pattern.k;

  if (pattern.active_positions.empty()) {
    // No active positions: the complementary subcarrier of each hop carries
    // the whole budget, under either strategy.
    const double g1 = realization.gains_hop1[selection.comp_hop1];
    const double g2 = realization.gains_hop2[selection.comp_hop2];
    result.capacity =
        0.5 * std::min(hop_rate(budget, g1, n_0), hop_rate(budget, g2, n_0));
    result.alloc_hop1.powers = {budget};
    result.alloc_hop2.powers = {budget};
    if (budget > 0.0) {
      result.alloc_hop1.support = {0};
      result.alloc_hop2.support = {0};
    }
    return result;
  }

  const std::size_t n_a = pattern.n_a();
  std::vector<double> gains1(n_a), gains2(n_a);
  for (std::size_t j = 0; j < n_a; ++j) {
    gains1[j] = selection.effective_gains_hop1[pattern.active_positions[j]];
    gains2[j] = selection.effective_gains_hop2[pattern.active_positions[j]];
  }

  if (strategy == Strategy::uniform) {
    result.alloc_hop1 = uniform_allocation(n_a, budget);
    result.alloc_hop2 = result.alloc_hop1;
  } else if (selection.mode == Mode::centralized) {
    // Hops are coupled through the min; optimize once over the link gains.
    std::vector<double> link(n_a);
    for (std::size_t j = 0; j < n_a; ++j) link[j] = std::min(gains1[j], gains2[j]);
    result.alloc_hop1 = waterfill(AllocationProblem(std::move(link), n_0, budget));
    result.alloc_hop2 = result.alloc_hop1;
  } else {
    // Per-hop budgets are separate, so each hop waterfills independently.
    result.alloc_hop1 = waterfill(AllocationProblem(gains1, n_0, budget));
    result.alloc_hop2 = waterfill(AllocationProblem(gains2, n_0, budget));
  }

  double capacity = 0.0;
  for (std::size_t j = 0; j < n_a; ++j) {
    capacity += 0.5 * std::min(hop_rate(result.alloc_hop1.powers[j], gains1[j], n_0),
                               hop_rate(result.alloc_hop2.powers[j], gains2[j], n_0));
  }
  result.capacity = capacity;
  return result;
}

double average_capacity_over_patterns(const ChannelRealization& realization,
                                      const MappingSelection& selection, double budget,
                                      double n_0, Strategy strategy,
                                      const PatternPolicy& policy,
                                      rng::Stream* pattern_stream) {
  const std::size_t n_s = selection.n_s();
  if (n_s < 1 || n_s > 63) {
    throw std::invalid_argument("n_s must be in [1, 63] to enumerate patterns");
  }
  const std::uint64_t pattern_count = std::uint64_t{1} << n_s;

  if (policy.kind == PatternPolicy::Kind::exact) {
    if (pattern_count > policy.enumeration_cap) {
      throw std::invalid_argument(
          "2^n_s exceeds the enumeration cap; use the sampled pattern policy");
    }
    double sum = 0.0;
    for (std::uint64_t k = 1; k <= pattern_count; ++k) {
      sum += pattern_capacity(realization, selection, pattern_from_index(k, n_s), budget,
                              n_0, strategy)
                 .capacity;
    }
    return sum / static_cast<double>(pattern_count);
  }

  if (policy.draws == 0) throw std::invalid_argument("sampled policy needs draws >= 1");
  if (pattern_stream == nullptr) {
    throw std::invalid_argument("sampled policy needs a pattern stream");
  }
  double sum = 0.0;
  for (std::uint64_t d = 0; d < policy.draws; ++d) {
    // pattern_count is a power of two, so masking is bias-free.
    const std::uint64_t k = 1 + (pattern_stream->next_u64() & (pattern_count - 1));
    sum += pattern_capacity(realization, selection, pattern_from_index(k, n_s), budget, n_0,
                            strategy)
               .capacity;
  }
  return sum / static_cast<double>(policy.draws);
}

}  // namespace ofdmim
