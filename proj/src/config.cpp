#include "gambench/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace gambench {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Raw key/value pairs in file order; duplicate keys are an error.
std::map<std::string, std::string> read_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::map<std::string, std::string> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = unquote(trim(stripped.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!pairs.emplace(key, value).second) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    }
  }
  return pairs;
}

class ConfigReader {
 public:
  explicit ConfigReader(std::map<std::string, std::string> pairs) : pairs_(std::move(pairs)) {}

  std::optional<std::string> take(const std::string& key) {
    auto it = pairs_.find(key);
    if (it == pairs_.end()) return std::nullopt;
    std::string value = it->second;
    pairs_.erase(it);
    return value;
  }

  template <typename T>
  void read_number(const std::string& key, T& out) {
    auto raw = take(key);
    if (!raw) return;
    std::istringstream ss(*raw);
    T value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) {
      throw ConfigError("config key '" + key + "': expected a number, got '" + *raw + "'");
    }
    out = value;
  }

  void fail_on_leftovers() const {
    if (pairs_.empty()) return;
    std::string keys;
    for (const auto& [k, _] : pairs_) {
      if (!keys.empty()) keys += ", ";
      keys += "'" + k + "'";
    }
    throw ConfigError("unknown config key(s): " + keys);
  }

 private:
  std::map<std::string, std::string> pairs_;
};

}  // namespace

RunConfig parse_config(const std::filesystem::path& path) {
  ConfigReader reader(read_pairs(path));
  RunConfig config;

  if (auto v = reader.take("personas")) {
    config.personas.clear();
    for (const std::string& name : split_list(*v)) {
      try {
        config.personas.push_back(persona_kind_from_string(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config key 'personas': ") + e.what());
      }
    }
  }

  std::vector<MachineKind> machine_kinds = {MachineKind::Fair, MachineKind::BiasedLow,
                                            MachineKind::Streak};
  if (auto v = reader.take("machines")) {
    machine_kinds.clear();
    for (const std::string& name : split_list(*v)) {
      try {
        machine_kinds.push_back(machine_kind_from_string(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config key 'machines': ") + e.what());
      }
    }
  }

  // machine.* keys define a single overridden machine and replace the grid.
  bool machine_override = false;
  MachineKind override_kind = MachineKind::Fair;
  if (auto v = reader.take("machine.kind")) {
    try {
      override_kind = machine_kind_from_string(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config key 'machine.kind': ") + e.what());
    }
    machine_override = true;
  }
  MachineConfig overridden = MachineConfig::standard(override_kind);
  auto machine_param = [&](const char* key, double& field) {
    std::string full = std::string("machine.") + key;
    auto v = reader.take(full);
    if (!v) return;
    std::istringstream ss(*v);
    double value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) {
      throw ConfigError("config key '" + full + "': expected a number, got '" + *v + "'");
    }
    field = value;
    machine_override = true;
  };
  machine_param("base_win_prob", overridden.base_win_prob);
  machine_param("payout_multiplier", overridden.payout_multiplier);
  machine_param("streak_increment", overridden.streak_increment);
  machine_param("streak_cap", overridden.streak_cap);
  if (machine_override && overridden.streak_increment == 0.0) {
    overridden.streak_cap = std::max(overridden.streak_cap, overridden.base_win_prob);
  }

  config.machines.clear();
  if (machine_override) {
    config.machines.push_back(overridden);
  } else {
    for (MachineKind kind : machine_kinds) {
      config.machines.push_back(MachineConfig::standard(kind));
    }
  }

  reader.read_number("iterations", config.iterations_per_condition);
  reader.read_number("max_rounds", config.max_rounds);
  reader.read_number("seed", config.run_seed);
  reader.read_number("concurrency", config.concurrency_limit);
  reader.read_number("reprompt_budget", config.reprompt_budget);
  config.agent.max_concurrent_requests = config.concurrency_limit;

  if (auto v = reader.take("output_dir")) config.output_dir = *v;
  if (auto v = reader.take("prompt_template")) {
    config.prompt_template = PromptTemplate::load(*v);
  }

  if (auto v = reader.take("agent.backend")) {
    try {
      config.agent.backend = agent_backend_from_string(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config key 'agent.backend': ") + e.what());
    }
  }
  if (auto v = reader.take("agent.model")) config.agent.model_name = *v;
  if (auto v = reader.take("agent.endpoint")) config.agent.endpoint_url = *v;
  reader.read_number("agent.temperature", config.agent.temperature);
  reader.read_number("agent.max_tokens", config.agent.max_tokens);
  reader.read_number("agent.max_attempts", config.agent.retry.max_attempts);
  if (auto v = reader.take("agent.api_key_env")) config.agent.api_key_env = *v;
  if (auto v = reader.take("agent.auth_header")) config.agent.auth_header = *v;
  if (auto v = reader.take("agent.auth_prefix")) config.agent.auth_prefix = *v;

  reader.fail_on_leftovers();

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

}  // namespace gambench
