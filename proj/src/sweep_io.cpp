#include "ofdmim/sweep_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ofdmim {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(trim(s.substr(start)));
      break;
    }
    parts.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(field, "not a number: '" + t + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError(field, "not a nonnegative integer: '" + t + "'");
  }
  return value;
}

std::string policy_to_text(const PatternPolicy& policy) {
  if (policy.kind == PatternPolicy::Kind::exact) return "exact";
  return "sampled:" + std::to_string(policy.draws);
}

PatternPolicy policy_from_text(const std::string& field, const std::string& text,
                               std::uint64_t enumeration_cap) {
  const std::string t = trim(text);
  if (t == "exact") return PatternPolicy::exact(enumeration_cap);
  if (t.rfind("sampled:", 0) == 0) {
    PatternPolicy policy = PatternPolicy::sampled(parse_u64(field, t.substr(8)));
    policy.enumeration_cap = enumeration_cap;
    return policy;
  }
  throw ConfigError(field, "expected 'exact' or 'sampled:<draws>', got '" + t + "'");
}

}  // namespace

std::string format_double_exact(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string format_double(double value) {
  // 12 significant digits, locale-independent regardless of any setlocale.
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  return std::string(buffer, ptr);
}

std::string to_csv(const SweepResult& result) {
  std::string out = "snr_db,mode,strategy,n_t,n_s,mean_capacity,std_error,trials\n";
  for (const SweepRow& row : result.rows) {
    out += format_double(row.snr_db);
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += to_string(row.strategy);
    out += ',';
    out += std::to_string(row.n_t);
    out += ',';
    out += std::to_string(row.n_s);
    out += ',';
    out += format_double(row.mean_capacity);
    out += ',';
    out += format_double(row.std_error);
    out += ',';
    out += std::to_string(row.trials);
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    rows.push_back({{"snr_db", row.snr_db},
                    {"mode", to_string(row.mode)},
                    {"strategy", to_string(row.strategy)},
                    {"n_t", row.n_t},
                    {"n_s", row.n_s},
                    {"mean_capacity", row.mean_capacity},
                    {"std_error", row.std_error},
                    {"trials", row.trials}});
  }
  return json{{"rows", rows}}.dump(2) + "\n";
}

std::string config_to_text(const SweepConfig& config) {
  std::ostringstream out;
  out << "n_t = " << config.n_t << "\n";
  out << "n_s_list = ";
  for (std::size_t i = 0; i < config.n_s_list.size(); ++i) {
    out << (i ? "," : "") << config.n_s_list[i];
  }
  out << "\nsnr_points_db = ";
  for (std::size_t i = 0; i < config.snr_points_db.size(); ++i) {
    out << (i ? "," : "") << format_double_exact(config.snr_points_db[i]);
  }
  out << "\ntrials = " << config.trials << "\n";
  out << "mu_1 = " << format_double_exact(config.mu_1) << "\n";
  out << "mu_2 = " << format_double_exact(config.mu_2) << "\n";
  out << "n_0 = " << format_double_exact(config.n_0) << "\n";
  out << "modes = ";
  for (std::size_t i = 0; i < config.modes.size(); ++i) {
    out << (i ? "," : "") << to_string(config.modes[i]);
  }
  out << "\nstrategies = ";
  for (std::size_t i = 0; i < config.strategies.size(); ++i) {
    out << (i ? "," : "") << to_string(config.strategies[i]);
  }
  out << "\nmaster_seed = " << config.master_seed << "\n";
  out << "pattern_policy = " << policy_to_text(config.pattern_policy) << "\n";
  out << "enumeration_cap = " << config.pattern_policy.enumeration_cap << "\n";
  return out.str();
}

SweepConfig parse_config_text(const std::string& text) {
  SweepConfig config;
  std::string policy_text;
  bool have_policy = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n_t") {
      config.n_t = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "n_s_list") {
      config.n_s_list.clear();
      for (const auto& part : split(value, ',')) {
        config.n_s_list.push_back(static_cast<std::size_t>(parse_u64(key, part)));
      }
    } else if (key == "snr_points_db") {
      config.snr_points_db.clear();
      for (const auto& part : split(value, ',')) {
        config.snr_points_db.push_back(parse_double(key, part));
      }
    } else if (key == "trials") {
      config.trials = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "mu_1") {
      config.mu_1 = parse_double(key, value);
    } else if (key == "mu_2") {
      config.mu_2 = parse_double(key, value);
    } else if (key == "n_0") {
      config.n_0 = parse_double(key, value);
    } else if (key == "modes") {
      config.modes.clear();
      for (const auto& part : split(value, ',')) {
        try {
          config.modes.push_back(parse_mode(part));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(key, e.what());
        }
      }
    } else if (key == "strategies") {
      config.strategies.clear();
      for (const auto& part : split(value, ',')) {
        try {
          config.strategies.push_back(parse_strategy(part));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(key, e.what());
        }
      }
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "pattern_policy") {
      policy_text = value;
      have_policy = true;
    } else if (key == "enumeration_cap") {
      config.pattern_policy.enumeration_cap = parse_u64(key, value);
    } else {
      throw ConfigError(key, "unknown config key");
    }
  }

  if (have_policy) {
    config.pattern_policy =
        policy_from_text("pattern_policy", policy_text, config.pattern_policy.enumeration_cap);
  }
  return config;
}

namespace {

json config_json(const SweepConfig& config) {
  json policy{{"kind", config.pattern_policy.kind == PatternPolicy::Kind::exact
                           ? "exact"
                           : "sampled"},
              {"enumeration_cap", config.pattern_policy.enumeration_cap}};
  if (config.pattern_policy.kind == PatternPolicy::Kind::sampled) {
    policy["draws"] = config.pattern_policy.draws;
  }

  std::vector<std::string> modes, strategies;
  for (Mode m : config.modes) modes.push_back(to_string(m));
  for (Strategy s : config.strategies) strategies.push_back(to_string(s));

  return json{{"n_t", config.n_t},
              {"n_s_list", config.n_s_list},
              {"snr_points_db", config.snr_points_db},
              {"trials", config.trials},
              {"mu_1", config.mu_1},
              {"mu_2", config.mu_2},
              {"n_0", config.n_0},
              {"modes", modes},
              {"strategies", strategies},
              {"master_seed", config.master_seed},
              {"pattern_policy", policy}};
}

SweepConfig config_from(const json& j) {
  SweepConfig config;
  config.n_t = j.at("n_t").get<std::size_t>();
  config.n_s_list = j.at("n_s_list").get<std::vector<std::size_t>>();
  config.snr_points_db = j.at("snr_points_db").get<std::vector<double>>();
  config.trials = j.at("trials").get<std::size_t>();
  config.mu_1 = j.at("mu_1").get<double>();
  config.mu_2 = j.at("mu_2").get<double>();
  config.n_0 = j.at("n_0").get<double>();
  config.modes.clear();
  for (const auto& m : j.at("modes")) config.modes.push_back(parse_mode(m.get<std::string>()));
  config.strategies.clear();
  for (const auto& s : j.at("strategies")) {
    config.strategies.push_back(parse_strategy(s.get<std::string>()));
  }
  config.master_seed = j.at("master_seed").get<std::uint64_t>();
  const auto& policy = j.at("pattern_policy");
  if (policy.at("kind").get<std::string>() == "exact") {
    config.pattern_policy = PatternPolicy::exact(policy.at("enumeration_cap").get<std::uint64_t>());
  } else {
    config.pattern_policy = PatternPolicy::sampled(policy.at("draws").get<std::uint64_t>());
    config.pattern_policy.enumeration_cap = policy.at("enumeration_cap").get<std::uint64_t>();
  }
  return config;
}

}  // namespace

std::string config_to_json(const SweepConfig& config) {
  return config_json(config).dump(2) + "\n";
}

SweepConfig config_from_json(const std::string& json_text) {
  return config_from(json::parse(json_text));
}

std::string manifest_to_json(const RunManifest& manifest) {
  return json{{"config", config_json(manifest.config)},
              {"tool_version", manifest.tool_version},
              {"started_at", manifest.started_at},
              {"finished_at", manifest.finished_at},
              {"output_path", manifest.output_path}}
             .dump(2) +
         "\n";
}

RunManifest manifest_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  RunManifest manifest;
  manifest.config = config_from(j.at("config"));
  manifest.tool_version = j.at("tool_version").get<std::string>();
  manifest.started_at = j.at("started_at").get<std::string>();
  manifest.finished_at = j.at("finished_at").get<std::string>();
  manifest.output_path = j.at("output_path").get<std::string>();
  return manifest;
}

std::vector<double> parse_snr_spec(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw ConfigError("snr_points_db", "range form is start:step:stop");
    }
    const double start = parse_double("snr_points_db", parts[0]);
    const double step = parse_double("snr_points_db", parts[1]);
    const double stop = parse_double("snr_points_db", parts[2]);
    if (step == 0.0 || (stop - start) * step < 0.0) {
      throw ConfigError("snr_points_db", "empty range " + spec);
    }
    std::vector<double> points;
    const double slack = 1e-9 * std::abs(step);
    for (std::size_t i = 0;; ++i) {
      const double value = start + step * static_cast<double>(i);
      if (step > 0.0 ? value > stop + slack : value < stop - slack) break;
      points.push_back(value);
    }
    return points;
  }
  std::vector<double> points;
  for (const auto& part : split(spec, ',')) {
    points.push_back(parse_double("snr_points_db", part));
  }
  return points;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& spec) {
  std::vector<double> values;
  for (const auto& part : split(spec, ',')) {
    values.push_back(parse_double(field, part));
  }
  return values;
}

std::vector<std::size_t> parse_size_list(const std::string& spec) {
  std::vector<std::size_t> values;
  for (const auto& part : split(spec, ',')) {
    values.push_back(static_cast<std::size_t>(parse_u64("n_s_list", part)));
  }
  return values;
}

std::vector<Mode> parse_mode_list(const std::string& spec) {
  std::vector<Mode> modes;
  for (const auto& part : split(spec, ',')) modes.push_back(parse_mode(part));
  return modes;
}

std::vector<Strategy> parse_strategy_list(const std::string& spec) {
  std::vector<Strategy> strategies;
  for (const auto& part : split(spec, ',')) strategies.push_back(parse_strategy(part));
  return strategies;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

bool operator==(const PatternPolicy& a, const PatternPolicy& b) {
  return a.kind == b.kind && a.draws == b.draws && a.enumeration_cap == b.enumeration_cap;
}

bool operator==(const SweepConfig& a, const SweepConfig& b) {
  return a.n_t == b.n_t && a.n_s_list == b.n_s_list && a.snr_points_db == b.snr_points_db &&
         a.trials == b.trials && a.mu_1 == b.mu_1 && a.mu_2 == b.mu_2 && a.n_0 == b.n_0 &&
         a.modes == b.modes && a.strategies == b.strategies &&
         a.master_seed == b.master_seed && a.pattern_policy == b.pattern_policy;
}

}  // namespace ofdmim
