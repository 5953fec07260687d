#include "soficlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace soficlab {

std::string action_name(Action a) {
  switch (a) {
    case Action::RegularLp:
      return "regular-lp";
    case Action::FiniteGroupRep:
      return "finite-group-rep";
    case Action::ZRotation:
      return "z-rotation";
    case Action::Betti:
      return "betti";
    case Action::SchattenRegular:
      return "schatten-regular";
  }
  return "unknown";
}

std::string construction_name(Construction c) {
  switch (c) {
    case Construction::Random:
      return "random";
    case Construction::Folner:
      return "folner";
    case Construction::Block:
      return "block";
    case Construction::Tensor:
      return "tensor";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

long long parse_ll(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs an integer, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("config: key '" + key + "' needs an integer, got '" + value + "'");
  }
  return out;
}

double parse_d(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: key '" + key + "' needs true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

GroupDescriptor parse_group(const std::string& value) {
  if (value == "integers") return GroupDescriptor::integers();
  if (value == "integers2") return GroupDescriptor::integers_squared();
  const auto colon = value.find(':');
  if (colon != std::string::npos) {
    const std::string head = value.substr(0, colon);
    const long long param = parse_ll("group", value.substr(colon + 1));
    if (head == "free" && param >= 1) return GroupDescriptor::free_group(static_cast<int>(param));
    if (head == "cyclic" && param >= 1) return GroupDescriptor::cyclic(static_cast<int>(param));
  }
  throw ConfigError("config: group must be free:N, integers, integers2, or cyclic:K (got '" +
                    value + "')");
}

Action parse_action(const std::string& value) {
  if (value == "regular-lp") return Action::RegularLp;
  if (value == "finite-group-rep") return Action::FiniteGroupRep;
  if (value == "z-rotation") return Action::ZRotation;
  if (value == "betti") return Action::Betti;
  if (value == "schatten-regular") return Action::SchattenRegular;
  throw ConfigError("config: unknown action '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is missing a key or value");
    }

    if (key == "id") {
      cfg.id = value;
    } else if (key == "action") {
      cfg.action = parse_action(value);
    } else if (key == "group") {
      cfg.group = parse_group(value);
    } else if (key == "multiplicity") {
      cfg.multiplicity = static_cast<int>(parse_ll(key, value));
    } else if (key == "p") {
      cfg.p = parse_d(key, value);
    } else if (key == "levels") {
      cfg.levels.clear();
      for (const auto& item : split_list(value)) {
        const long long d = parse_ll(key, item);
        if (d < 1) throw ConfigError("config: levels entries must be >= 1");
        cfg.levels.push_back(static_cast<std::uint32_t>(d));
      }
    } else if (key == "construction") {
      const auto colon = value.find(':');
      const std::string head = colon == std::string::npos ? value : value.substr(0, colon);
      if (head == "random") {
        cfg.construction = Construction::Random;
      } else if (head == "folner") {
        cfg.construction = Construction::Folner;
      } else if (head == "block") {
        cfg.construction = Construction::Block;
      } else if (head == "tensor") {
        cfg.construction = Construction::Tensor;
      } else {
        throw ConfigError("config: unknown construction '" + value + "'");
      }
      if (colon != std::string::npos) {
        cfg.tensor_k = static_cast<int>(parse_ll(key, value.substr(colon + 1)));
      }
    } else if (key == "f_radius") {
      cfg.f_radius = static_cast<int>(parse_ll(key, value));
    } else if (key == "f_positive") {
      cfg.f_positive = parse_bool(key, value);
    } else if (key == "m") {
      cfg.m = static_cast<int>(parse_ll(key, value));
    } else if (key == "delta") {
      cfg.delta = parse_d(key, value);
    } else if (key == "eps") {
      cfg.eps.clear();
      for (const auto& item : split_list(value)) cfg.eps.push_back(parse_d(key, item));
    } else if (key == "rho_q") {
      cfg.rho_q = parse_d(key, value);
    } else if (key == "rho_leading_one") {
      cfg.rho_leading_one = parse_bool(key, value);
    } else if (key == "rungs") {
      cfg.rungs = static_cast<int>(parse_ll(key, value));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_ll(key, value));
    } else if (key == "order_k") {
      cfg.order_k = static_cast<int>(parse_ll(key, value));
    } else if (key == "characters") {
      cfg.characters.clear();
      for (const auto& item : split_list(value)) cfg.characters.push_back(parse_ll(key, item));
    } else if (key == "theta_turns") {
      cfg.theta_turns = parse_d(key, value);
    } else if (key == "cayley_radius") {
      cfg.cayley_radius = static_cast<int>(parse_ll(key, value));
    } else if (key == "capacity") {
      const long long cap = parse_ll(key, value);
      if (cap < 1) throw ConfigError("config: capacity must be >= 1");
      cfg.capacity = static_cast<std::size_t>(cap);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config_text(buffer.str());
  if (const char* env = std::getenv("SOFICDIM_CAPACITY")) {
    const long long cap = parse_ll("SOFICDIM_CAPACITY", env);
    if (cap < 1) throw ConfigError("SOFICDIM_CAPACITY must be >= 1");
    cfg.capacity = static_cast<std::size_t>(cap);
  }
  return cfg;
}

double effective_rho_q(const ExperimentConfig& cfg) {
  return cfg.rho_q == 0.0 ? cfg.p : cfg.rho_q;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.id.empty()) throw ConfigError("config: id must be nonempty");
  if (cfg.levels.empty()) throw ConfigError("config: levels must be nonempty");
  if (!(cfg.delta > 0.0)) throw ConfigError("config: delta must be > 0");
  if (cfg.eps.empty()) throw ConfigError("config: eps must be nonempty");
  for (double e : cfg.eps) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("config: eps entries must lie in (0, 1)");
  }
  if (!(cfg.p >= 1.0)) throw ConfigError("config: p must be >= 1");
  if (cfg.rho_q != 0.0 && !(cfg.rho_q >= 1.0)) {
    throw ConfigError("config: rho_q must be 0 (follow p) or >= 1");
  }
  if (cfg.multiplicity < 1) throw ConfigError("config: multiplicity must be >= 1");
  if (cfg.m < 1) throw ConfigError("config: m must be >= 1");
  if (cfg.f_radius < 1) throw ConfigError("config: f_radius must be >= 1");
  if (cfg.rungs < 1) throw ConfigError("config: rungs must be >= 1");
  if (cfg.tensor_k < 1) throw ConfigError("config: tensor exponent must be >= 1");
  if (cfg.cayley_radius < 1) throw ConfigError("config: cayley_radius must be >= 1");

  switch (cfg.construction) {
    case Construction::Random:
      if (cfg.group.kind != GroupKind::Free && cfg.group.kind != GroupKind::Integers) {
        throw ConfigError("config: construction random needs a free group or integers");
      }
      break;
    case Construction::Folner:
      if (cfg.group.kind != GroupKind::Integers && cfg.group.kind != GroupKind::Integers2) {
        throw ConfigError("config: construction folner needs integers or integers2");
      }
      break;
    case Construction::Block:
      if (cfg.group.kind != GroupKind::Cyclic) {
        throw ConfigError("config: construction block needs a cyclic group");
      }
      break;
    case Construction::Tensor:
      if (cfg.group.kind == GroupKind::Integers2) {
        throw ConfigError("config: tensor construction is not defined for integers2");
      }
      break;
  }

  switch (cfg.action) {
    case Action::RegularLp:
      break;
    case Action::FiniteGroupRep:
      if (cfg.group.kind != GroupKind::Cyclic) {
        throw ConfigError("config: finite-group-rep needs a cyclic group");
      }
      if (cfg.characters.empty()) {
        throw ConfigError("config: finite-group-rep needs at least one character exponent");
      }
      break;
    case Action::ZRotation:
      if (cfg.group.kind != GroupKind::Integers) {
        throw ConfigError("config: z-rotation acts through integers");
      }
      if (cfg.order_k < 1) throw ConfigError("config: z-rotation needs order_k >= 1");
      break;
    case Action::Betti:
      if (cfg.group.kind != GroupKind::Free) {
        throw ConfigError("config: betti needs a free group");
      }
      break;
    case Action::SchattenRegular:
      break;
  }
}

}  // namespace soficlab
