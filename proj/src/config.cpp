#include "faultscale/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace faultscale {

namespace {

// chosen so the default single-seed run is a representative draw of the
// synthetic workload (see README: calibration)
constexpr std::uint64_t kDefaultSeed = 42;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_number(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad number '" + value + "'");
  }
}

int parse_int(const std::string& value, const std::string& key) {
  double v = parse_number(value, key);
  if (v != std::floor(v)) {
    throw ConfigError("config key '" + key + "': expected integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false");
}

std::uint64_t parse_seed(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad seed '" + value + "'");
  }
}

void apply_workload_key(WorkloadProfile& p, const std::string& key,
                        const std::string& value) {
  const std::string full = "workload." + key;
  if (key == "duration_s") p.duration_s = parse_number(value, full);
  else if (key == "sample_interval_s") p.sample_interval_s = parse_number(value, full);
  else if (key == "mean_reversion_per_s") p.mean_reversion_per_s = parse_number(value, full);
  else if (key == "latency_mean_ms") p.latency_mean_ms = parse_number(value, full);
  else if (key == "latency_volatility_ms") p.latency_volatility_ms = parse_number(value, full);
  else if (key.rfind("mean_", 0) == 0) {
    p.mean[resource_kind_from_string(key.substr(5))] = parse_number(value, full);
  } else if (key.rfind("volatility_", 0) == 0) {
    p.volatility[resource_kind_from_string(key.substr(11))] = parse_number(value, full);
  } else {
    throw ConfigError("unknown config key: " + full);
  }
}

}  // namespace

std::uint64_t default_seed() { return kDefaultSeed; }

void ScenarioConfig::resolve() {
  matrix.catalog =
      catalog_source == "builtin" ? builtin_catalog() : load_catalog_file(catalog_source);
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  MatrixConfig& m = config.matrix;
  m.seeds = {kDefaultSeed};

  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;

    try {
      if (section.empty()) {
        if (key == "seed" || key == "seeds") {
          m.seeds.clear();
          for (const auto& s : split_list(value)) m.seeds.push_back(parse_seed(s, full));
          if (m.seeds.empty()) throw ConfigError("config key 'seeds': empty list");
          config.seeds_explicit = true;
        } else if (key == "catalog") {
          config.catalog_source = value;
        } else if (key == "output_dir") {
          config.output_dir = value;
        } else if (key == "hours_per_month") {
          m.hours_per_month = parse_number(value, full);
        } else if (key == "current_replicas") {
          m.current_replicas = parse_int(value, full);
        } else if (key == "min_replicas") {
          m.min_replicas = parse_int(value, full);
        } else if (key == "max_replicas") {
          m.max_replicas = parse_int(value, full);
        } else if (key == "decision_window") {
          if (value == "fault") m.decision_window = DecisionWindow::FaultWindow;
          else if (value == "full") m.decision_window = DecisionWindow::FullTrace;
          else throw ConfigError("config key 'decision_window': fault|full");
        } else if (key == "eq1_interpretation") {
          m.sizing_rule = sizing_rule_from_string(value);
        } else if (key == "per_minute_bucketing") {
          m.per_minute_bucketing = parse_bool(value, full);
        } else if (key == "classify_tolerance_pct") {
          m.classify_tolerance_pct = parse_number(value, full);
        } else if (key == "jobs") {
          m.jobs = parse_int(value, full);
        } else if (key == "strict") {
          config.strict = parse_bool(value, full);
        } else {
          throw ConfigError("unknown config key: " + key);
        }
      } else if (section == "workload") {
        apply_workload_key(m.profile, key, value);
      } else if (section == "matrix") {
        if (key == "faults") {
          m.faults.clear();
          for (const auto& name : split_list(value)) {
            m.faults.push_back(fault_kind_from_string(name));
          }
        } else if (key == "slos") {
          m.slos.clear();
          for (const auto& name : split_list(value)) {
            m.slos.push_back({name, slo_preset(name).target});
          }
        } else if (key == "policies") {
          m.policies.clear();
          for (const auto& name : split_list(value)) {
            m.policies.push_back(policy_from_string(name));
          }
        } else {
          throw ConfigError("unknown config key: matrix." + key);
        }
      } else if (section == "fault_window") {
        if (key == "start_s") m.fault_window.start = parse_number(value, full);
        else if (key == "duration_s") m.fault_window.duration = parse_number(value, full);
        else throw ConfigError("unknown config key: fault_window." + key);
      } else if (section.rfind("faults.", 0) == 0) {
        FaultKind kind = fault_kind_from_string(section.substr(7));
        m.fault_overrides[kind][key] = parse_number(value, full);
      } else if (section == "trigger") {
        if (key == "enabled") m.trigger.enabled = parse_bool(value, full);
        else if (key == "mode") {
          if (value == "all") m.trigger.mode = TriggerMode::All;
          else if (value == "any") m.trigger.mode = TriggerMode::Any;
          else throw ConfigError("config key 'trigger.mode': all|any");
        } else if (key == "cpu" || key == "memory" || key == "disk_io" ||
                   key == "network" || key == "latency_ms") {
          m.trigger.thresholds[key] = parse_number(value, full);
        } else {
          throw ConfigError("unknown config key: trigger." + key);
        }
      } else {
        throw ConfigError("unknown config section: [" + section + "]");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  if (m.faults.empty() || m.slos.empty() || m.policies.empty()) {
    throw ConfigError("config needs at least one fault, SLO and policy");
  }
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ScenarioConfig default_config() { return parse_config(default_config_text()); }

std::string default_config_text() {
  std::ostringstream out;
  out << "# faultscale scenario configuration (defaults)\n"
         "\n"
         "seed = " << kDefaultSeed << "\n"
      << "catalog = builtin\n"
         "output_dir = out\n"
         "hours_per_month = 730\n"
         "current_replicas = 3\n"
         "min_replicas = 1\n"
         "# max_replicas is unbounded unless set\n"
         "decision_window = fault   # fault|full: window the deciders aggregate\n"
         "eq1_interpretation = literal   # literal|headroom vertical sizing rule\n"
         "per_minute_bucketing = false\n"
         "classify_tolerance_pct = 5\n"
         "jobs = 1\n"
         "strict = false\n"
         "\n"
         "[workload]\n"
         "duration_s = 900\n"
         "sample_interval_s = 1\n"
         "mean_cpu = 0.45\n"
         "mean_memory = 0.50\n"
         "mean_disk_io = 0.20\n"
         "mean_network = 0.25\n"
         "volatility_cpu = 0.05\n"
         "volatility_memory = 0.01\n"
         "volatility_disk_io = 0.02\n"
         "volatility_network = 0.02\n"
         "mean_reversion_per_s = 0.1\n"
         "latency_mean_ms = 30\n"
         "latency_volatility_ms = 3\n"
         "\n"
         "[matrix]\n"
         "faults = syn,udp,vol,rtr,disk,app\n"
         "slos = slo85,slo50\n"
         "policies = vertical,horizontal\n"
         "\n"
         "[fault_window]\n"
         "start_s = 750\n"
         "duration_s = 300\n"
         "\n"
         "# per-kind distortion parameter overrides, e.g.\n"
         "# [faults.syn]\n"
         "# saturation_level = 0.98\n"
         "\n"
         "# optional composite scaling trigger (mitigation policy)\n"
         "# [trigger]\n"
         "# enabled = true\n"
         "# mode = all\n"
         "# cpu = 0.85\n"
         "# network = 0.5\n";
  return out.str();
}

}  // namespace faultscale
