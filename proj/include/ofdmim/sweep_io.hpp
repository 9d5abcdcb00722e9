#ifndef OFDMIM_SWEEP_IO_HPP
#define OFDMIM_SWEEP_IO_HPP

#include <string>
#include <vector>

#include "ofdmim/experiment.hpp"

namespace ofdmim {

inline constexpr const char* kToolVersion = "0.1.0";

// CSV schema: snr_db,mode,strategy,n_t,n_s,mean_capacity,std_error,trials.
// Locale-independent, floats printed with 12 significant digits.
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

// Fixed-point-free, shortest-exact double text (round-trips bitwise).
std::string format_double_exact(double value);
// 12-significant-digit form used for result output.
std::string format_double(double value);

// Flat key = value config text mirroring the SweepConfig field names.
// Serialization is lossless: parse(config_to_text(c)) == c.
std::string config_to_text(const SweepConfig& config);
SweepConfig parse_config_text(const std::string& text);  // ConfigError on bad input

std::string config_to_json(const SweepConfig& config);
SweepConfig config_from_json(const std::string& json_text);

struct RunManifest {
  SweepConfig config;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::string output_path;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& json_text);

// "0,5,10" or "start:step:stop" (stop inclusive).
std::vector<double> parse_snr_spec(const std::string& spec);
std::vector<double> parse_double_list(const std::string& field, const std::string& spec);
std::vector<std::size_t> parse_size_list(const std::string& spec);
std::vector<Mode> parse_mode_list(const std::string& spec);
std::vector<Strategy> parse_strategy_list(const std::string& spec);

std::string iso8601_utc_now();

bool operator==(const PatternPolicy& a, const PatternPolicy& b);
bool operator==(const SweepConfig& a, const SweepConfig& b);

}  // namespace ofdmim

#endif
