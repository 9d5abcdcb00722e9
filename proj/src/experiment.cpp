#include "ofdmim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ofdmim {

namespace {

// Purpose tags keep the channel and pattern substream families disjoint.
constexpr std::uint64_t kChannelTag = 0x6368616e6e656cULL;   // "channel"
constexpr std::uint64_t kPatternTag = 0x7061747465726eULL;   // "pattern"

std::uint64_t mode_id(Mode mode) { return mode == Mode::decentralized ? 0 : 1; }

}  // namespace

void validate(const SweepConfig& config) {
  if (config.n_t < 2) throw ConfigError("n_t", "must be at least 2");
  if (!(config.mu_1 > 0.0) || !std::isfinite(config.mu_1)) {
    throw ConfigError("mu_1", "must be positive and finite");
  }
  if (!(config.mu_2 > 0.0) || !std::isfinite(config.mu_2)) {
    throw ConfigError("mu_2", "must be positive and finite");
  }
  if (!(config.n_0 > 0.0) || !std::isfinite(config.n_0)) {
    throw ConfigError("n_0", "must be positive and finite");
  }
  if (config.trials < 1) throw ConfigError("trials", "must be at least 1");
  if (config.snr_points_db.empty()) throw ConfigError("snr_points_db", "must be nonempty");
  for (double db : config.snr_points_db) {
    if (!std::isfinite(db)) throw ConfigError("snr_points_db", "entries must be finite");
  }
  if (config.modes.empty()) throw ConfigError("modes", "must be nonempty");
  if (config.strategies.empty()) throw ConfigError("strategies", "must be nonempty");
  if (config.n_s_list.empty()) throw ConfigError("n_s_list", "must be nonempty");
  for (std::size_t n_s : config.n_s_list) {
    if (n_s < 1 || n_s >= config.n_t) {
      throw ConfigError("n_s_list", "n_s must satisfy 1 <= n_s < n_t (got n_s=" +
                                        std::to_string(n_s) +
                                        ", n_t=" + std::to_string(config.n_t) + ")");
    }
    if (n_s > 63) throw ConfigError("n_s_list", "n_s must be at most 63");
    if (config.pattern_policy.kind == PatternPolicy::Kind::exact &&
        (std::uint64_t{1} << n_s) > config.pattern_policy.enumeration_cap) {
      throw ConfigError("pattern_policy",
                        "exact enumeration of 2^" + std::to_string(n_s) +
                            " patterns exceeds the enumeration cap; use sampled");
    }
  }
  if (config.pattern_policy.kind == PatternPolicy::Kind::sampled &&
      config.pattern_policy.draws < 1) {
    throw ConfigError("pattern_policy", "sampled policy needs draws >= 1");
  }
}

rng::Stream trial_channel_stream(std::uint64_t master_seed, std::uint64_t trial) {
  return rng::Stream{master_seed, kChannelTag, trial};
}

rng::Stream trial_pattern_stream(std::uint64_t master_seed, std::uint64_t trial,
                                 std::size_t n_s, Mode mode, std::size_t snr_index) {
  return rng::Stream{master_seed, kPatternTag, trial, static_cast<std::uint64_t>(n_s),
                     mode_id(mode), static_cast<std::uint64_t>(snr_index)};
}

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
  validate(config);

  const auto& snrs = config.snr_points_db;
  const auto& modes = config.modes;
  const auto& strategies = config.strategies;
  const auto& ns_list = config.n_s_list;
  const std::size_t rows_per_trial =
      snrs.size() * modes.size() * strategies.size() * ns_list.size();

  const ChannelParams params(config.n_t, config.mu_1, config.mu_2, config.n_0);

  std::vector<double> budgets(snrs.size());
  for (std::size_t s = 0; s < snrs.size(); ++s) {
    budgets[s] = config.n_0 * std::pow(10.0, snrs[s] / 10.0);
  }

  const auto row_index = [&](std::size_t snr_i, std::size_t mode_i, std::size_t strat_i,
                             std::size_t ns_i) {
    return ((snr_i * modes.size() + mode_i) * strategies.size() + strat_i) * ns_list.size() +
           ns_i;
  };

  // Per-trial capacities, trial-major. Workers write disjoint slices; the
  // reduction below runs serially in trial order, so the output does not
  // depend on the worker count.
  std::vector<double> table(config.trials * rows_per_trial);

  const auto run_trial = [&](std::size_t trial) {
    rng::Stream channel_stream = trial_channel_stream(config.master_seed, trial);
    const ChannelRealization realization = sample_realization(params, channel_stream);
    double* out = table.data() + trial * rows_per_trial;

    for (std::size_t mode_i = 0; mode_i < modes.size(); ++mode_i) {
      for (std::size_t ns_i = 0; ns_i < ns_list.size(); ++ns_i) {
        const MappingSelection selection =
            build_selection(realization, ns_list[ns_i], modes[mode_i]);
        for (std::size_t snr_i = 0; snr_i < snrs.size(); ++snr_i) {
          for (std::size_t strat_i = 0; strat_i < strategies.size(); ++strat_i) {
            rng::Stream pattern_stream = trial_pattern_stream(
                config.master_seed, trial, ns_list[ns_i], modes[mode_i], snr_i);
            out[row_index(snr_i, mode_i, strat_i, ns_i)] = average_capacity_over_patterns(
                realization, selection, budgets[snr_i], config.n_0, strategies[strat_i],
                config.pattern_policy, &pattern_stream);
          }
        }
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(config.trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
          run_trial(t);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  }

  SweepResult result;
  result.rows.reserve(rows_per_trial);
  for (std::size_t snr_i = 0; snr_i < snrs.size(); ++snr_i) {
    for (std::size_t mode_i = 0; mode_i < modes.size(); ++mode_i) {
      for (std::size_t strat_i = 0; strat_i < strategies.size(); ++strat_i) {
        for (std::size_t ns_i = 0; ns_i < ns_list.size(); ++ns_i) {
          const std::size_t column = row_index(snr_i, mode_i, strat_i, ns_i);
          double sum = 0.0;
          for (std::size_t t = 0; t < config.trials; ++t) {
            sum += table[t * rows_per_trial + column];
          }
          const double mean = sum / static_cast<double>(config.trials);
          double sq = 0.0;
          for (std::size_t t = 0; t < config.trials; ++t) {
            const double d = table[t * rows_per_trial + column] - mean;
            sq += d * d;
          }
          const double std_error =
              config.trials > 1
                  ? std::sqrt(sq / static_cast<double>(config.trials - 1)) /
                        std::sqrt(static_cast<double>(config.trials))
                  : 0.0;
          result.rows.push_back({snrs[snr_i], modes[mode_i], strategies[strat_i],
                                 config.n_t, ns_list[ns_i], mean, std_error,
                                 config.trials});
        }
      }
    }
  }
  return result;
}

std::vector<double> high_snr_convergence_check(const ChannelRealization&,
                                               const MappingSelection& selection,
                                               const ActivationPattern& pattern, double n_0,
                                               std::span<const double> budgets) {
  const std::size_t n_s = selection.n_s();
  if (pattern.n_a() != n_s) {
    throw std::invalid_argument("convergence check needs the all-active pattern");
  }

  std::vector<std::vector<double>> gain_sets;
  if (selection.mode == Mode::centralized) {
    std::vector<double> link(n_s);
    for (std::size_t j = 0; j < n_s; ++j) {
      link[j] = std::min(selection.effective_gains_hop1[j], selection.effective_gains_hop2[j]);
    }
    gain_sets.push_back(std::move(link));
  } else {
    gain_sets.push_back(selection.effective_gains_hop1);
    gain_sets.push_back(selection.effective_gains_hop2);
  }
  for (const auto& gains : gain_sets) {
    for (double g : gains) {
      if (!(g > 0.0)) throw std::invalid_argument("gains must be strictly positive");
    }
  }

  std::vector<double> deviations;
  deviations.reserve(budgets.size());
  for (double budget : budgets) {
    if (!(budget > 0.0)) throw std::invalid_argument("budgets must be positive");
    const double even_share = budget / static_cast<double>(n_s);
    double max_dev = 0.0;
    for (const auto& gains : gain_sets) {
      const PowerAllocation alloc = waterfill(AllocationProblem(gains, n_0, budget));
      for (double p : alloc.powers) {
        max_dev = std::max(max_dev, std::abs(p - even_share) / even_share);
      }
    }
    deviations.push_back(max_dev);
  }
  return deviations;
}

bool low_snr_concentration_check(const AllocationProblem& problem) {
  if (problem.gains.size() < 2) {
    throw std::invalid_argument("concentration check needs at least two positions");
  }
  for (double g : problem.gains) {
    if (!(g > 0.0)) throw std::invalid_argument("gains must be strictly positive");
  }
  if (!(problem.budget > 0.0)) throw std::invalid_argument("budget must be positive");

  std::size_t best = 0;
  for (std::size_t i = 1; i < problem.gains.size(); ++i) {
    if (problem.gains[i] > problem.gains[best]) best = i;
  }
  double second_gain = 0.0;
  for (std::size_t i = 0; i < problem.gains.size(); ++i) {
    if (i != best) second_gain = std::max(second_gain, problem.gains[i]);
  }

  const PowerAllocation alloc = waterfill(problem);
  const bool concentrated = alloc.support.size() == 1 && alloc.support.front() == best;

  const double threshold = problem.n_0 / second_gain - problem.n_0 / problem.gains[best];
  const bool predicted = problem.budget <= threshold;

  if (concentrated != predicted) {
    throw std::logic_error("waterfill concentration disagrees with its threshold form");
  }
  return concentrated;
}

}  // namespace ofdmim
