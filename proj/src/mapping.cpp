#include "ofdmim/mapping.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ofdmim {

std::string to_string(Mode mode) {
  return mode == Mode::decentralized ? "decentralized" : "centralized";
}

Mode parse_mode(const std::string& name) {
  if (name == "decentralized") return Mode::decentralized;
  if (name == "centralized") return Mode::centralized;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (expected decentralized or centralized)");
}

std::pair<std::vector<std::size_t>, std::size_t> select_decentralized(
    std::span<const double> gains, std::size_t n_s) {
  const std::size_t n_t = gains.size();
  if (n_s < 1 || n_s >= n_t) {
    throw std::invalid_argument("n_s must satisfy 1 <= n_s < n_t");
  }

  // The selection metric is a sum of per-subcarrier monotone terms, so the
  // top-n_s gains are exactly optimal; no subset search needed.
  std::vector<std::size_t> order(n_t);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (gains[a] != gains[b]) return gains[a] > gains[b];
    return a < b;
  });

  std::vector<std::size_t> selected(order.begin(), order.begin() + n_s);
  const std::size_t complementary = order[n_s];
  return {std::move(selected), complementary};
}

std::vector<double> link_gains(const ChannelRealization& realization) {
  const std::size_t n_t = realization.n_t();
  if (realization.gains_hop2.size() != n_t) {
    throw std::invalid_argument("hop gain vectors must have equal length");
  }
  std::vector<double> link(n_t);
  for (std::size_t n = 0; n < n_t; ++n) {
    link[n] = std::min(realization.gains_hop1[n], realization.gains_hop2[n]);
  }
  return link;
}

MappingSelection select_centralized(const ChannelRealization& realization, std::size_t n_s) {
  const std::vector<double> link = link_gains(realization);
  auto [selected, complementary] = select_decentralized(link, n_s);

  MappingSelection sel;
  sel.mode = Mode::centralized;
  sel.selected_hop1 = selected;
  sel.selected_hop2 = std::move(selected);
  sel.comp_hop1 = complementary;
  sel.comp_hop2 = complementary;
  sel.effective_gains_hop1.reserve(n_s);
  sel.effective_gains_hop2.reserve(n_s);
  for (std::size_t idx : sel.selected_hop1) {
    sel.effective_gains_hop1.push_back(realization.gains_hop1[idx]);
    sel.effective_gains_hop2.push_back(realization.gains_hop2[idx]);
  }
  return sel;
}

MappingSelection build_selection(const ChannelRealization& realization, std::size_t n_s,
                                 Mode mode) {
  if (realization.gains_hop2.size() != realization.n_t()) {
    throw std::invalid_argument("hop gain vectors must have equal length");
  }
  if (mode == Mode::centralized) return select_centralized(realization, n_s);

  auto [sel1, comp1] = select_decentralized(realization.gains_hop1, n_s);
  auto [sel2, comp2] = select_decentralized(realization.gains_hop2, n_s);

  MappingSelection sel;
  sel.mode = Mode::decentralized;
  sel.comp_hop1 = comp1;
  sel.comp_hop2 = comp2;
  sel.effective_gains_hop1.reserve(n_s);
  sel.effective_gains_hop2.reserve(n_s);
  for (std::size_t j = 0; j < n_s; ++j) {
    sel.effective_gains_hop1.push_back(realization.gains_hop1[sel1[j]]);
    sel.effective_gains_hop2.push_back(realization.gains_hop2[sel2[j]]);
  }
  sel.selected_hop1 = std::move(sel1);
  sel.selected_hop2 = std::move(sel2);
  return sel;
}

ActivationPattern pattern_from_index(std::uint64_t k, std::size_t n_s) {
  if (n_s < 1 || n_s > 63) {
    throw std::invalid_argument("n_s must be in [1, 63] to index patterns");
  }
  const std::uint64_t count = std::uint64_t{1} << n_s;
  if (k < 1 || k > count) {
    throw std::invalid_argument("pattern index k must be in [1, 2^n_s]");
  }

  ActivationPattern pattern;
  pattern.k = k;
  const std::uint64_t bits = k - 1;
  pattern.active_positions.reserve(static_cast<std::size_t>(std::popcount(bits)));
  for (std::size_t p = 0; p < n_s; ++p) {
    if ((bits >> p) & 1u) pattern.active_positions.push_back(p);
  }
  return pattern;
}

std::size_t pattern_bit_length(const ActivationPattern& pattern, std::size_t n_s,
                               std::size_t b_m) {
  if (!pattern.active_positions.empty() && pattern.active_positions.back() >= n_s) {
    throw std::invalid_argument("pattern has positions outside [0, n_s)");
  }
  return n_s + pattern.n_a() * b_m;
}

}  // namespace ofdmim
