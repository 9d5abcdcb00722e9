#ifndef OFDMIM_MAPPING_HPP
#define OFDMIM_MAPPING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ofdmim/channel.hpp"

namespace ofdmim {

// Who picks the N_S-subcarrier mapping scheme: each hop from its own gains,
// or once at the source from the per-subcarrier min of the two hop gains.
enum class Mode { decentralized, centralized };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& name);  // throws std::invalid_argument

// One mapping-scheme decision for both hops. Selected lists hold physical
// subcarrier indices (0-based) sorted by descending effective gain, ties by
// ascending index; position j of hop 1 carries the same payload as position
// j of hop 2. The complementary subcarrier is the best unselected one,
// activated only for the all-inactive pattern.
struct MappingSelection {
  Mode mode;
  std::vector<std::size_t> selected_hop1;
  std::vector<std::size_t> selected_hop2;
  std::size_t comp_hop1;
  std::size_t comp_hop2;
  std::vector<double> effective_gains_hop1;
  std::vector<double> effective_gains_hop2;

  std::size_t n_s() const { return selected_hop1.size(); }
};

// One of the 2^{N_S} on/off configurations of the selected positions.
// k is 1-based; k = 1 is the all-inactive pattern; position p (0-based) is
// active iff bit p of k - 1 is set.
struct ActivationPattern {
  std::uint64_t k;
  std::vector<std::size_t> active_positions;  // ascending, 0-based

  std::size_t n_a() const { return active_positions.size(); }
};

// Top-n_s indices by gain (descending, ties by ascending index) plus the
// best unselected index. Throws std::invalid_argument unless
// 1 <= n_s < gains.size().
std::pair<std::vector<std::size_t>, std::size_t> select_decentralized(
    std::span<const double> gains, std::size_t n_s);

// Elementwise min of the two hop-gain vectors.
std::vector<double> link_gains(const ChannelRealization& realization);

// Selection over link gains, shared by both hops; effective gains stay per
// hop at the shared indices.
MappingSelection select_centralized(const ChannelRealization& realization, std::size_t n_s);

MappingSelection build_selection(const ChannelRealization& realization, std::size_t n_s,
                                 Mode mode);

// Throws std::invalid_argument when k is outside [1, 2^n_s] or n_s > 63.
ActivationPattern pattern_from_index(std::uint64_t k, std::size_t n_s);

// Length of the bit stream carried by a pattern: n_s index bits plus b_m
// bits per active position.
std::size_t pattern_bit_length(const ActivationPattern& pattern, std::size_t n_s,
                               std::size_t b_m);

}  // namespace ofdmim

#endif
