#ifndef OFDMIM_EXPERIMENT_HPP
#define OFDMIM_EXPERIMENT_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofdmim/capacity.hpp"
#include "ofdmim/channel.hpp"
#include "ofdmim/mapping.hpp"
#include "ofdmim/waterfill.hpp"

namespace ofdmim {

// Validation failure that names the offending config field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SweepConfig {
  std::size_t n_t = 16;
  std::vector<std::size_t> n_s_list = {2, 4, 8};
  std::vector<double> snr_points_db = {0, 5, 10, 15, 20, 25, 30, 35, 40};
  std::size_t trials = 10000;
  double mu_1 = 1.0;
  double mu_2 = 1.0;
  double n_0 = 1.0;
  std::vector<Mode> modes = {Mode::decentralized, Mode::centralized};
  std::vector<Strategy> strategies = {Strategy::dynamic, Strategy::uniform};
  std::uint64_t master_seed = 1;
  PatternPolicy pattern_policy = PatternPolicy::exact();
};

struct SweepRow {
  double snr_db;
  Mode mode;
  Strategy strategy;
  std::size_t n_t;
  std::size_t n_s;
  double mean_capacity;  // bit/s/Hz
  double std_error;      // sample standard deviation / sqrt(trials)
  std::size_t trials;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (snr point, mode, strategy, n_s)
};

// Throws ConfigError naming the first offending field.
void validate(const SweepConfig& config);

// Substreams of the master seed. The channel stream depends only on
// (master_seed, trial), so every SNR point, mode and strategy sees the same
// realization (common random numbers); the pattern stream additionally keys
// on (n_s, mode, snr index) but not the strategy, keeping sampled-pattern
// comparisons paired.
rng::Stream trial_channel_stream(std::uint64_t master_seed, std::uint64_t trial);
rng::Stream trial_pattern_stream(std::uint64_t master_seed, std::uint64_t trial,
                                 std::size_t n_s, Mode mode, std::size_t snr_index);

// Monte Carlo sweep of average network capacity vs P_t/N_0. Trials fan out
// over `workers` threads (0 = hardware concurrency); per-trial values land
// in a trial-indexed table and are reduced serially, so the result is
// bitwise identical for any worker count.
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 1);

// For each budget, max over positions (and hops, in decentralized mode) of
// |P*_n - budget/N_A| / (budget/N_A) for the waterfilled all-active pattern;
// the deviation sequence contracts as 1/budget. Throws on a partial pattern
// or nonpositive gains.
std::vector<double> high_snr_convergence_check(const ChannelRealization& realization,
                                               const MappingSelection& selection,
                                               const ActivationPattern& pattern, double n_0,
                                               std::span<const double> budgets);

// True iff waterfill pours the whole budget on the strongest position.
// Cross-checks the closed-form threshold budget <= n_0/g_(2) - n_0/g_(1)
// against the solver and throws std::logic_error if the two disagree.
// Requires at least two positions, strictly positive gains and budget > 0.
bool low_snr_concentration_check(const AllocationProblem& problem);

}  // namespace ofdmim

#endif
