// Command-line front end: Monte Carlo capacity sweeps, single-shot power
// allocations and KKT certificate checks.
//
// Exit codes: 0 success, 1 check failure, 2 validation error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ofdmim/capacity.hpp"
#include "ofdmim/channel.hpp"
#include "ofdmim/experiment.hpp"
#include "ofdmim/sweep_io.hpp"
#include "ofdmim/waterfill.hpp"

namespace {

using namespace ofdmim;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

struct SweepArgs {
  std::string config_path;
  std::string out_path = "sweep.csv";
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t nt = 0;
  std::string ns_spec;
  std::string snr_spec;
  std::string mode_spec;
  std::string strategy_spec;
  unsigned workers = 0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* nt_opt = nullptr;
  CLI::Option* ns_opt = nullptr;
  CLI::Option* snr_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* strategy_opt = nullptr;
};

int cmd_sweep(const SweepArgs& args) {
  SweepConfig config;
  if (args.config_opt->count() > 0) {
    config = parse_config_text(read_file(args.config_path));
  }
  // Flags (and their environment variables) override config-file values.
  if (args.seed_opt->count() > 0) config.master_seed = args.seed;
  if (args.trials_opt->count() > 0) config.trials = args.trials;
  if (args.nt_opt->count() > 0) config.n_t = args.nt;
  if (args.ns_opt->count() > 0) config.n_s_list = parse_size_list(args.ns_spec);
  if (args.snr_opt->count() > 0) config.snr_points_db = parse_snr_spec(args.snr_spec);
  if (args.mode_opt->count() > 0) config.modes = parse_mode_list(args.mode_spec);
  if (args.strategy_opt->count() > 0) {
    config.strategies = parse_strategy_list(args.strategy_spec);
  }
  validate(config);

  RunManifest manifest;
  manifest.config = config;
  manifest.tool_version = kToolVersion;
  manifest.output_path = args.out_path;
  manifest.started_at = iso8601_utc_now();

  const SweepResult result = run_sweep(config, args.workers);

  manifest.finished_at = iso8601_utc_now();

  const std::string payload = args.format == "json" ? to_json(result) : to_csv(result);
  if (args.out_path == "-") {
    std::cout << payload;
  } else {
    write_file(args.out_path, payload);
    write_file(args.out_path + ".manifest.json", manifest_to_json(manifest));
  }
  return 0;
}

struct AllocateArgs {
  std::string gains_spec;
  double n0 = 1.0;
  double budget = 0.0;
  std::string strategy = "dynamic";
  std::string format = "text";
};

int cmd_allocate(const AllocateArgs& args) {
  const std::vector<double> gains = parse_double_list("gains", args.gains_spec);
  if (gains.empty()) throw std::invalid_argument("gains must be nonempty");
  if (!(args.budget > 0.0)) throw std::invalid_argument("budget must be positive");
  if (!(args.n0 > 0.0)) throw std::invalid_argument("n0 must be positive");
  const Strategy strategy = parse_strategy(args.strategy);

  const AllocationProblem problem(gains, args.n0, args.budget);
  const PowerAllocation alloc = strategy == Strategy::dynamic
                                    ? waterfill(problem)
                                    : uniform_allocation(gains.size(), args.budget);

  std::vector<double> snrs(gains.size()), caps(gains.size());
  double total = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    snrs[i] = alloc.powers[i] * gains[i] / args.n0;
    caps[i] = 0.5 * std::log2(1.0 + snrs[i]);
    total += caps[i];
  }

  if (args.format == "json") {
    nlohmann::json j{{"strategy", to_string(strategy)},
                     {"powers", alloc.powers},
                     {"total_capacity", total}};
    if (alloc.water_level) j["water_level"] = *alloc.water_level;
    nlohmann::json positions = nlohmann::json::array();
    for (std::size_t i = 0; i < gains.size(); ++i) {
      positions.push_back({{"gain", gains[i]},
                           {"power", alloc.powers[i]},
                           {"snr", snrs[i]},
                           {"capacity", caps[i]}});
    }
    j["positions"] = positions;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "strategy = " << to_string(strategy) << "\n";
  std::cout << "powers =";
  for (double p : alloc.powers) std::cout << " " << format_double(p);
  std::cout << "\n";
  if (alloc.water_level) {
    std::cout << "water_level = " << format_double(*alloc.water_level) << "\n";
  }
  for (std::size_t i = 0; i < gains.size(); ++i) {
    std::cout << "position " << i << ": gain = " << format_double(gains[i])
              << ", power = " << format_double(alloc.powers[i])
              << ", snr = " << format_double(snrs[i])
              << ", capacity = " << format_double(caps[i]) << "\n";
  }
  std::cout << "total_capacity = " << format_double(total) << "\n";
  return 0;
}

struct KktArgs {
  std::string gains_spec;
  std::string powers_spec;
  double n0 = 1.0;
  double budget = 0.0;
  double tol = 1e-9;
};

int cmd_kkt_check(const KktArgs& args) {
  const std::vector<double> gains = parse_double_list("gains", args.gains_spec);
  const std::vector<double> powers = parse_double_list("powers", args.powers_spec);
  if (gains.size() != powers.size()) {
    throw std::invalid_argument("powers length (" + std::to_string(powers.size()) +
                                ") does not match gains length (" +
                                std::to_string(gains.size()) + ")");
  }

  const AllocationProblem problem(gains, args.n0, args.budget);
  PowerAllocation alloc;
  alloc.powers = powers;
  const KktReport report = verify_kkt(problem, alloc, args.tol);

  std::cout << "epsilon = " << format_double(report.epsilon) << "\n";
  std::cout << "epsilon_n =";
  for (double e : report.epsilon_n) std::cout << " " << format_double(e);
  std::cout << "\n";
  std::cout << "stationarity_residual = " << format_double(report.stationarity_residual)
            << "\n";
  std::cout << "complementarity_residual = "
            << format_double(report.complementarity_residual) << "\n";
  std::cout << "budget_residual = " << format_double(report.budget_residual) << "\n";
  std::cout << "dual_violation = " << format_double(report.dual_violation) << "\n";
  std::cout << "passed = " << (report.passed ? "true" : "false") << "\n";
  return report.passed ? 0 : 1;
}

bool selftest_case(const std::string& name, bool ok) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << name << "\n";
  return ok;
}

int cmd_selftest() {
  bool all = true;

  {
    const PowerAllocation alloc = waterfill(AllocationProblem({1.0, 0.5}, 1.0, 3.0));
    all &= selftest_case("waterfill two-position example",
                         std::abs(alloc.powers[0] - 2.0) < 1e-12 &&
                             std::abs(alloc.powers[1] - 1.0) < 1e-12 &&
                             std::abs(*alloc.water_level - 3.0) < 1e-12);
  }
  {
    const AllocationProblem problem({1.0, 0.5}, 1.0, 3.0);
    const KktReport good = verify_kkt(problem, waterfill(problem), 1e-9);
    PowerAllocation even;
    even.powers = {1.5, 1.5};
    const KktReport bad = verify_kkt(problem, even, 1e-6);
    all &= selftest_case("kkt accepts waterfill and rejects an even split",
                         good.passed && !bad.passed);
  }
  {
    ChannelRealization r;
    r.gains_hop1 = {1.0, 0.5};
    r.gains_hop2 = {1.0, 0.5};
    const MappingSelection sel = build_selection(r, 1, Mode::centralized);
    const double avg = average_capacity_over_patterns(r, sel, 2.0, 1.0, Strategy::dynamic,
                                                      PatternPolicy::exact());
    const double expected = 0.25 * (1.0 + std::log2(3.0));
    all &= selftest_case("single-selection exact pattern average",
                         std::abs(avg - expected) < 1e-12);
  }
  {
    SweepConfig config;
    config.n_t = 6;
    config.n_s_list = {2};
    config.snr_points_db = {0, 10};
    config.trials = 64;
    const std::string a = to_csv(run_sweep(config, 1));
    const std::string b = to_csv(run_sweep(config, 2));
    all &= selftest_case("sweep is reproducible across worker counts", a == b);
  }

  std::cout << (all ? "selftest passed" : "selftest FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-hop OFDM index-modulation capacity simulator"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Run a Monte Carlo capacity sweep and write CSV/JSON results");
  sweep_args.config_opt = sweep->add_option("--config", sweep_args.config_path,
                                            "Config file (flat key = value)")
                              ->envname("OFDMIM_CONFIG");
  sweep->add_option("--out", sweep_args.out_path, "Output path ('-' for stdout)")
      ->envname("OFDMIM_OUT");
  sweep->add_option("--format", sweep_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("OFDMIM_FORMAT");
  sweep_args.seed_opt =
      sweep->add_option("--seed", sweep_args.seed, "Master seed")->envname("OFDMIM_SEED");
  sweep_args.trials_opt = sweep->add_option("--trials", sweep_args.trials,
                                            "Monte Carlo trials per SNR point")
                              ->envname("OFDMIM_TRIALS");
  sweep_args.nt_opt =
      sweep->add_option("--nt", sweep_args.nt, "Total subcarriers")->envname("OFDMIM_NT");
  sweep_args.ns_opt =
      sweep->add_option("--ns", sweep_args.ns_spec, "Selected-subcarrier counts, e.g. 2,4,8")
          ->envname("OFDMIM_NS");
  sweep_args.snr_opt = sweep->add_option("--snr-db", sweep_args.snr_spec,
                                         "SNR grid: list 0,5,10 or range 0:5:40")
                           ->envname("OFDMIM_SNR_DB");
  sweep_args.mode_opt = sweep->add_option("--mode", sweep_args.mode_spec,
                                          "Selection modes: decentralized,centralized")
                            ->envname("OFDMIM_MODE");
  sweep_args.strategy_opt = sweep->add_option("--strategy", sweep_args.strategy_spec,
                                              "Allocation strategies: dynamic,uniform")
                                ->envname("OFDMIM_STRATEGY");
  sweep->add_option("--workers", sweep_args.workers,
                    "Worker threads (0 = all available); the result does not depend on it")
      ->envname("OFDMIM_WORKERS");

  AllocateArgs alloc_args;
  auto* allocate =
      app.add_subcommand("allocate", "Allocate a power budget over one set of gains");
  allocate->add_option("--gains", alloc_args.gains_spec, "Channel gains, e.g. 1.0,0.5")
      ->required()
      ->envname("OFDMIM_GAINS");
  allocate->add_option("--n0", alloc_args.n0, "Noise power")->envname("OFDMIM_N0");
  allocate->add_option("--budget", alloc_args.budget, "Total transmit power")
      ->required()
      ->envname("OFDMIM_BUDGET");
  allocate->add_option("--strategy", alloc_args.strategy, "dynamic or uniform")
      ->envname("OFDMIM_STRATEGY");
  allocate->add_option("--format", alloc_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->envname("OFDMIM_FORMAT");

  KktArgs kkt_args;
  auto* kkt = app.add_subcommand("kkt-check",
                                 "Check the first-order optimality of an allocation");
  kkt->add_option("--gains", kkt_args.gains_spec, "Channel gains")
      ->required()
      ->envname("OFDMIM_GAINS");
  kkt->add_option("--powers", kkt_args.powers_spec, "Allocated powers")
      ->required()
      ->envname("OFDMIM_POWERS");
  kkt->add_option("--n0", kkt_args.n0, "Noise power")->envname("OFDMIM_N0");
  kkt->add_option("--budget", kkt_args.budget, "Total transmit power")
      ->required()
      ->envname("OFDMIM_BUDGET");
  kkt->add_option("--tol", kkt_args.tol, "Residual tolerance")->envname("OFDMIM_TOL");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in quick checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (allocate->parsed()) return cmd_allocate(alloc_args);
    if (kkt->parsed()) return cmd_kkt_check(kkt_args);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
