#include "swarmcap/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace swarmcap {

StrategyKind strategy_from_string(const std::string& s) {
  if (s == "learning") return StrategyKind::learning;
  if (s == "random-moving") return StrategyKind::random_moving;
  if (s == "static") return StrategyKind::static_deployment;
  if (s == "exhaustive-sequential") return StrategyKind::exhaustive_sequential;
  if (s == "exhaustive-joint") return StrategyKind::exhaustive_joint;
  throw ConfigError("unknown strategy '" + s +
                    "' (expected learning, random-moving, static, "
                    "exhaustive-sequential or exhaustive-joint)");
}

std::string strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::learning: return "learning";
    case StrategyKind::random_moving: return "random-moving";
    case StrategyKind::static_deployment: return "static";
    case StrategyKind::exhaustive_sequential: return "exhaustive-sequential";
    case StrategyKind::exhaustive_joint: return "exhaustive-joint";
  }
  throw std::logic_error("unknown strategy kind");
}

AntennaArray ExperimentConfig::array() const {
  return build_ura(ura_nx, ura_ny, ura_spacing);
}

std::vector<double> ExperimentConfig::snr_linear() const {
  std::vector<double> out;
  out.reserve(snr_db.size());
  for (double db : snr_db) out.push_back(std::pow(10.0, db / 10.0));
  return out;
}

void ExperimentConfig::validate() const {
  if (uavs < 1) throw ConfigError("uavs: must be >= 1");
  if (ura_nx < 1 || ura_ny < 1) throw ConfigError("ura_nx/ura_ny: must be >= 1");
  if (ura_spacing <= 0.0) throw ConfigError("ura_spacing: must be > 0");
  if (lattice_step <= 0.0) throw ConfigError("lattice_step: must be > 0");
  if (volume_x < 0.0 || volume_y < 0.0 || volume_z < lattice_step) {
    throw ConfigError("volume_x/volume_y/volume_z: volume must hold at least one layer");
  }
  if (comm_radius <= 0.0) throw ConfigError("comm_radius: must be > 0");
  if (wavelength <= 0.0) throw ConfigError("wavelength: must be > 0");
  if (iterations < 1) throw ConfigError("iterations: must be >= 1");
  if (snr_db.empty()) throw ConfigError("snr_db: list must be non-empty");
  if (seeds.empty()) throw ConfigError("seeds: list must be non-empty");
  if (strategies.empty()) throw ConfigError("strategies: list must be non-empty");
  if (stop_threshold <= 0.0 || stop_threshold >= 1.0) {
    throw ConfigError("stop_threshold: must be in (0, 1)");
  }
  if (connect_retries < 1) throw ConfigError("connect_retries: must be >= 1");
  if (snapshot_interval < 0) throw ConfigError("snapshot_interval: must be >= 0");
  if (volume().cell_count() < uavs) {
    throw ConfigError("volume too small for the requested UAV count");
  }
  try {
    schedule.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (StrategyKind k : strategies) {
    if (k == StrategyKind::exhaustive_joint && uavs > 4) {
      throw ConfigError("exhaustive-joint: infeasible for uavs > 4 (7^M profiles per slot)");
    }
  }
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += f(v[i]);
  }
  return out;
}

}  // namespace

std::string ExperimentConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["uavs"] = std::to_string(uavs);
  kv["ura_nx"] = std::to_string(ura_nx);
  kv["ura_ny"] = std::to_string(ura_ny);
  kv["ura_spacing"] = fmt(ura_spacing);
  kv["volume_x"] = fmt(volume_x);
  kv["volume_y"] = fmt(volume_y);
  kv["volume_z"] = fmt(volume_z);
  kv["lattice_step"] = fmt(lattice_step);
  kv["comm_radius"] = fmt(comm_radius);
  kv["wavelength"] = fmt(wavelength);
  kv["beta0"] = fmt(schedule.beta0);
  kv["beta_step"] = fmt(schedule.beta_step);
  kv["temperature_rule"] =
      schedule.rule == TemperatureRule::inverse_beta ? "inverse-beta" : "fixed";
  kv["temperature_scale"] = fmt(schedule.temperature_scale);
  kv["fixed_temperature"] = fmt(schedule.fixed_temperature);
  kv["iterations"] = std::to_string(iterations);
  kv["snr_db"] = join(snr_db, fmt);
  kv["strategies"] = join(strategies, strategy_name);
  kv["seeds"] = join(seeds, [](std::uint64_t s) { return std::to_string(s); });
  kv["snapshot_interval"] = std::to_string(snapshot_interval);
  kv["stop_threshold"] = fmt(stop_threshold);
  kv["dynamic_graph"] = dynamic_graph ? "true" : "false";
  kv["connect_retries"] = std::to_string(connect_retries);
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k + " = " + v + "\n";
  }
  return out;
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : echo()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + v + "' as a number");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return n;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + v + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + ": cannot parse '" + v + "' as a bool");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "uavs") cfg.uavs = static_cast<int>(parse_long(key, value));
  else if (key == "ura_nx") cfg.ura_nx = static_cast<int>(parse_long(key, value));
  else if (key == "ura_ny") cfg.ura_ny = static_cast<int>(parse_long(key, value));
  else if (key == "ura_spacing") cfg.ura_spacing = parse_double(key, value);
  else if (key == "volume_x") cfg.volume_x = parse_double(key, value);
  else if (key == "volume_y") cfg.volume_y = parse_double(key, value);
  else if (key == "volume_z") cfg.volume_z = parse_double(key, value);
  else if (key == "lattice_step") cfg.lattice_step = parse_double(key, value);
  else if (key == "comm_radius") cfg.comm_radius = parse_double(key, value);
  else if (key == "wavelength") cfg.wavelength = parse_double(key, value);
  else if (key == "beta0") cfg.schedule.beta0 = parse_double(key, value);
  else if (key == "beta_step") cfg.schedule.beta_step = parse_double(key, value);
  else if (key == "temperature_rule") {
    if (value == "inverse-beta") cfg.schedule.rule = TemperatureRule::inverse_beta;
    else if (value == "fixed") cfg.schedule.rule = TemperatureRule::fixed;
    else throw ConfigError("temperature_rule: expected 'inverse-beta' or 'fixed', got '" + value + "'");
  }
  else if (key == "temperature_scale") cfg.schedule.temperature_scale = parse_double(key, value);
  else if (key == "fixed_temperature") cfg.schedule.fixed_temperature = parse_double(key, value);
  else if (key == "iterations") cfg.iterations = parse_long(key, value);
  else if (key == "snr_db") {
    cfg.snr_db.clear();
    for (const auto& s : split_list(value)) cfg.snr_db.push_back(parse_double(key, s));
  }
  else if (key == "strategies") {
    cfg.strategies.clear();
    for (const auto& s : split_list(value)) cfg.strategies.push_back(strategy_from_string(s));
  }
  else if (key == "seeds") {
    cfg.seeds.clear();
    for (const auto& s : split_list(value)) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(parse_long(key, s)));
    }
  }
  else if (key == "out") cfg.out_dir = value;
  else if (key == "snapshot_interval") cfg.snapshot_interval = parse_long(key, value);
  else if (key == "stop_threshold") cfg.stop_threshold = parse_double(key, value);
  else if (key == "dynamic_graph") cfg.dynamic_graph = parse_bool(key, value);
  else if (key == "connect_retries") cfg.connect_retries = static_cast<int>(parse_long(key, value));
  else throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::map<std::string, std::string>& overrides) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const auto& [k, v] : overrides) apply_config_key(cfg, k, v);
  if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& file_path,
                              const std::map<std::string, std::string>& overrides) {
  std::string text;
  if (!file_path.empty()) {
    std::ifstream f(file_path);
    if (!f) throw ConfigError("cannot open config file '" + file_path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return parse_config_text(text, overrides);
}

std::string default_out_dir() {
  if (const char* env = std::getenv("SWARMCAP_OUT"); env && *env) return env;
  return "out";
}

}  // namespace swarmcap
