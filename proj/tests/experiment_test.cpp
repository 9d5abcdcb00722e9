#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ofdmim/experiment.hpp"
#include "ofdmim/sweep_io.hpp"

using namespace ofdmim;

namespace {

SweepConfig small_config() {
  SweepConfig config;
  config.n_t = 8;
  config.n_s_list = {2, 3};
  config.snr_points_db = {0, 10, 20};
  config.trials = 300;
  config.master_seed = 77;
  return config;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  SweepConfig config;
  config.n_t = 1;
  try {
    validate(config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "n_t");
  }

  config = SweepConfig{};
  config.n_s_list = {4, 16};
  try {
    validate(config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "n_s_list");
    CHECK(std::string(e.what()).find("n_s") != std::string::npos);
  }

  config = SweepConfig{};
  config.trials = 0;
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = SweepConfig{};
  config.snr_points_db.clear();
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = SweepConfig{};
  config.pattern_policy = PatternPolicy::exact(4);
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = SweepConfig{};
  config.pattern_policy = PatternPolicy::sampled(0);
  CHECK_THROWS_AS(validate(config), ConfigError);

  CHECK_NOTHROW(validate(SweepConfig{}));
}

TEST_CASE("substreams are deterministic and distinct") {
  rng::Stream a = trial_channel_stream(1, 0);
  rng::Stream b = trial_channel_stream(1, 0);
  rng::Stream c = trial_channel_stream(1, 1);
  rng::Stream d = trial_channel_stream(2, 0);
  const std::uint64_t va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(va != d.next_u64());

  rng::Stream p = trial_pattern_stream(1, 0, 4, Mode::decentralized, 0);
  rng::Stream q = trial_pattern_stream(1, 0, 4, Mode::decentralized, 0);
  rng::Stream s = trial_pattern_stream(1, 0, 4, Mode::centralized, 0);
  const std::uint64_t vp = p.next_u64();
  CHECK(vp == q.next_u64());
  CHECK(vp != s.next_u64());
  CHECK(vp != va);
}

TEST_CASE("sweep output is a pure function of the config") {
  const SweepConfig config = small_config();
  const SweepResult a = run_sweep(config, 1);
  const SweepResult b = run_sweep(config, 1);
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(to_csv(a) == to_csv(b));

  SweepConfig other = config;
  other.master_seed = 78;
  CHECK(to_csv(run_sweep(other, 1)) != to_csv(a));
}

TEST_CASE("sweep output does not depend on the worker count") {
  const SweepConfig config = small_config();
  const std::string serial = to_csv(run_sweep(config, 1));
  CHECK(to_csv(run_sweep(config, 2)) == serial);
  CHECK(to_csv(run_sweep(config, 3)) == serial);
  CHECK(to_csv(run_sweep(config, 0)) == serial);
}

TEST_CASE("row layout covers the full grid in order") {
  const SweepConfig config = small_config();
  const SweepResult result = run_sweep(config, 2);
  REQUIRE(result.rows.size() == 3 * 2 * 2 * 2);
  std::size_t i = 0;
  for (double snr : config.snr_points_db) {
    for (Mode mode : config.modes) {
      for (Strategy strategy : config.strategies) {
        for (std::size_t n_s : config.n_s_list) {
          const SweepRow& row = result.rows[i++];
          CHECK(row.snr_db == snr);
          CHECK(row.mode == mode);
          CHECK(row.strategy == strategy);
          CHECK(row.n_s == n_s);
          CHECK(row.n_t == config.n_t);
          CHECK(row.trials == config.trials);
          CHECK(row.mean_capacity >= 0.0);
          CHECK(row.std_error >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("doubling the trials moves means by less than four pooled errors") {
  SweepConfig config = small_config();
  config.n_s_list = {2};
  const SweepResult a = run_sweep(config, 2);
  config.trials *= 2;
  const SweepResult b = run_sweep(config, 2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double pooled = std::sqrt(a.rows[i].std_error * a.rows[i].std_error +
                                    b.rows[i].std_error * b.rows[i].std_error);
    CHECK(std::abs(a.rows[i].mean_capacity - b.rows[i].mean_capacity) < 4.0 * pooled);
  }
}

TEST_CASE("mean capacity is nondecreasing in SNR") {
  SweepConfig config = small_config();
  config.snr_points_db = {0, 5, 10, 15, 20, 30, 40};
  const SweepResult result = run_sweep(config, 2);
  for (std::size_t mode_i = 0; mode_i < config.modes.size(); ++mode_i) {
    for (std::size_t strat_i = 0; strat_i < config.strategies.size(); ++strat_i) {
      for (std::size_t ns_i = 0; ns_i < config.n_s_list.size(); ++ns_i) {
        double previous = -1.0;
        for (std::size_t snr_i = 0; snr_i < config.snr_points_db.size(); ++snr_i) {
          const std::size_t index =
              ((snr_i * config.modes.size() + mode_i) * config.strategies.size() + strat_i) *
                  config.n_s_list.size() +
              ns_i;
          CHECK(result.rows[index].mean_capacity >= previous);
          previous = result.rows[index].mean_capacity;
        }
      }
    }
  }
}

TEST_CASE("per-trial centralized dominance aggregates into the sweep") {
  SweepConfig config = small_config();
  config.modes = {Mode::centralized};
  const SweepResult result = run_sweep(config, 2);
  // dynamic and uniform rows alternate within each (snr, n_s) block
  for (std::size_t snr_i = 0; snr_i < config.snr_points_db.size(); ++snr_i) {
    for (std::size_t ns_i = 0; ns_i < config.n_s_list.size(); ++ns_i) {
      const std::size_t dyn = (snr_i * 2 + 0) * config.n_s_list.size() + ns_i;
      const std::size_t uni = (snr_i * 2 + 1) * config.n_s_list.size() + ns_i;
      CHECK(result.rows[dyn].mean_capacity >= result.rows[uni].mean_capacity - 1e-12);
    }
  }
}

TEST_CASE("high-SNR deviation contracts like one over the budget") {
  ChannelRealization r;
  r.gains_hop1 = {1.0, 0.5, 0.3};
  r.gains_hop2 = {1.0, 0.5, 0.3};
  const MappingSelection sel = build_selection(r, 2, Mode::centralized);
  const ActivationPattern all = pattern_from_index(4, 2);

  const std::vector<double> budgets{1e3, 1e4, 1e5, 1e6};
  const std::vector<double> devs = high_snr_convergence_check(r, sel, all, 1.0, budgets);
  REQUIRE(devs.size() == 4);
  // Interior closed form: deviation = |t_n - mean(t)| * n / budget with
  // thresholds (1, 2), so 1.0 / budget exactly.
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    CHECK(devs[i] == doctest::Approx(1.0 / budgets[i]).epsilon(1e-9));
  }
  for (std::size_t i = 1; i < devs.size(); ++i) {
    CHECK(devs[i] < devs[i - 1]);
    CHECK(devs[i - 1] / devs[i] == doctest::Approx(10.0).epsilon(1e-6));
  }
}

TEST_CASE("equal gains never deviate from the even split") {
  ChannelRealization r;
  r.gains_hop1 = {0.4, 0.4, 0.4};
  r.gains_hop2 = {0.4, 0.4, 0.4};
  const MappingSelection sel = build_selection(r, 2, Mode::decentralized);
  const std::vector<double> budgets{1.0, 1e3, 1e6};
  for (double dev : high_snr_convergence_check(r, sel, pattern_from_index(4, 2), 1.0, budgets)) {
    CHECK(dev == 0.0);
  }
}

TEST_CASE("convergence check rejects partial patterns") {
  ChannelRealization r;
  r.gains_hop1 = {1.0, 0.5, 0.3};
  r.gains_hop2 = {1.0, 0.5, 0.3};
  const MappingSelection sel = build_selection(r, 2, Mode::centralized);
  const std::vector<double> budgets{10.0};
  CHECK_THROWS_AS(high_snr_convergence_check(r, sel, pattern_from_index(2, 2), 1.0, budgets),
                  std::invalid_argument);
}

TEST_CASE("sampled-pattern sweeps are deterministic and stay paired") {
  SweepConfig config;
  config.n_t = 32;
  config.n_s_list = {10};  // 1024 patterns, evaluated by sampling
  config.pattern_policy = PatternPolicy::sampled(64);
  config.snr_points_db = {0, 20};
  config.trials = 150;
  config.modes = {Mode::centralized};
  config.master_seed = 5;

  const SweepResult a = run_sweep(config, 1);
  CHECK(to_csv(run_sweep(config, 3)) == to_csv(a));

  // The pattern stream does not key on the strategy, so both strategies see
  // the same sampled patterns and the per-pattern dominance carries over.
  for (std::size_t snr_i = 0; snr_i < config.snr_points_db.size(); ++snr_i) {
    CHECK(a.rows[snr_i * 2 + 0].mean_capacity >= a.rows[snr_i * 2 + 1].mean_capacity - 1e-12);
  }
}

TEST_CASE("sampled pattern averages agree with exact enumeration") {
  SweepConfig exact;
  exact.n_t = 12;
  exact.n_s_list = {6};
  exact.snr_points_db = {10};
  exact.trials = 400;
  exact.modes = {Mode::decentralized};
  exact.master_seed = 31;

  SweepConfig sampled = exact;
  sampled.pattern_policy = PatternPolicy::sampled(256);

  const SweepResult a = run_sweep(exact, 2);
  const SweepResult b = run_sweep(sampled, 2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double pooled = std::sqrt(a.rows[i].std_error * a.rows[i].std_error +
                                    b.rows[i].std_error * b.rows[i].std_error);
    CHECK(std::abs(a.rows[i].mean_capacity - b.rows[i].mean_capacity) < 5.0 * pooled);
  }
}

TEST_CASE("large carrier counts run with reduced n_s") {
  SweepConfig config;
  config.n_t = 128;
  config.n_s_list = {4};
  config.snr_points_db = {0, 20};
  config.trials = 40;
  config.master_seed = 17;
  const SweepResult result = run_sweep(config, 2);
  REQUIRE(result.rows.size() == 8);
  for (const SweepRow& row : result.rows) {
    CHECK(std::isfinite(row.mean_capacity));
    CHECK(row.mean_capacity > 0.0);
  }

  config.n_s_list = {64};
  CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("selection records stay structurally consistent") {
  const ChannelParams params(16, 1.0, 2.0, 1.0);
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    rng::Stream stream{911, trial};
    const ChannelRealization r = sample_realization(params, stream);
    for (Mode mode : {Mode::decentralized, Mode::centralized}) {
      const MappingSelection sel = build_selection(r, 5, mode);
      REQUIRE(sel.n_s() == 5);
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(sel.effective_gains_hop1[j] == r.gains_hop1[sel.selected_hop1[j]]);
        CHECK(sel.effective_gains_hop2[j] == r.gains_hop2[sel.selected_hop2[j]]);
      }
      for (std::size_t idx : sel.selected_hop1) CHECK(idx != sel.comp_hop1);
      for (std::size_t idx : sel.selected_hop2) CHECK(idx != sel.comp_hop2);
      if (mode == Mode::centralized) {
        CHECK(sel.selected_hop1 == sel.selected_hop2);
        CHECK(sel.comp_hop1 == sel.comp_hop2);
        // Shared list sorted by descending link gain.
        for (std::size_t j = 1; j < 5; ++j) {
          CHECK(std::min(sel.effective_gains_hop1[j], sel.effective_gains_hop2[j]) <=
                std::min(sel.effective_gains_hop1[j - 1], sel.effective_gains_hop2[j - 1]));
        }
      } else {
        for (std::size_t j = 1; j < 5; ++j) {
          CHECK(sel.effective_gains_hop1[j] <= sel.effective_gains_hop1[j - 1]);
          CHECK(sel.effective_gains_hop2[j] <= sel.effective_gains_hop2[j - 1]);
        }
      }
    }
  }

  ChannelRealization lopsided;
  lopsided.gains_hop1 = {1.0, 2.0, 3.0};
  lopsided.gains_hop2 = {1.0, 2.0};
  CHECK_THROWS_AS(build_selection(lopsided, 1, Mode::decentralized), std::invalid_argument);
  CHECK_THROWS_AS(link_gains(lopsided), std::invalid_argument);
}

TEST_CASE("low-SNR concentration threshold") {
  // Threshold for gains (1.0, 0.5) is exactly 1.0.
  CHECK(low_snr_concentration_check(AllocationProblem({1.0, 0.5}, 1.0, 1.0)));
  CHECK(!low_snr_concentration_check(AllocationProblem({1.0, 0.5}, 1.0, 1.5)));
  CHECK(low_snr_concentration_check(AllocationProblem({0.5, 1.0}, 1.0, 0.25)));
  CHECK(!low_snr_concentration_check(AllocationProblem({0.7, 0.7}, 1.0, 0.001)));
  CHECK_THROWS_AS(low_snr_concentration_check(AllocationProblem({1.0}, 1.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(low_snr_concentration_check(AllocationProblem({1.0, 0.0}, 1.0, 1.0)),
                  std::invalid_argument);
}
