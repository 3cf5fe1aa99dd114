#include "wpcn/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

namespace wpcn {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& text) {
  const std::string s = unquote(trim(text));
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text) {
  const std::string s = unquote(trim(text));
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  const std::string s = unquote(trim(text));
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("expected true or false, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ConfigError("unterminated list '" + s + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = unquote(trim(item));
    if (item.empty()) throw ConfigError("empty list element in '" + text + "'");
    out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item));
  return out;
}

SchemeSpec parse_scheme(const std::string& text) {
  const auto at = text.find('@');
  const std::string name = trim(text.substr(0, at));
  SchemeSpec spec;
  if (name == "backscatter") {
    spec.scheme = Scheme::backscatter;
  } else if (name == "no_backscatter") {
    spec.scheme = Scheme::no_backscatter;
  } else {
    throw ConfigError("unknown scheme '" + name + "' (expected backscatter or no_backscatter)");
  }
  if (at != std::string::npos) spec.rb = parse_double(text.substr(at + 1));
  return spec;
}

using Setter = std::function<void(Config&, const std::string&)>;

void add_doubles(std::map<std::string, Setter>& m,
                 std::initializer_list<std::pair<const char*, double SystemParams::*>> fields) {
  for (const auto& [name, member] : fields) {
    m[name] = [member](Config& c, const std::string& v) { c.params.*member = parse_double(v); };
  }
}

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const auto table = [] {
    std::map<std::string, std::map<std::string, Setter>> t;
    add_doubles(t["system"], {{"p0", &SystemParams::p0},
                              {"eta", &SystemParams::eta},
                              {"beta", &SystemParams::beta},
                              {"mu1", &SystemParams::mu1},
                              {"mu2", &SystemParams::mu2},
                              {"sigma0_sq", &SystemParams::sigma0_sq},
                              {"sigmas_sq", &SystemParams::sigmas_sq},
                              {"rb", &SystemParams::rb},
                              {"s_rate", &SystemParams::s_rate},
                              {"t0", &SystemParams::t0},
                              {"bandwidth", &SystemParams::bandwidth},
                              {"ga", &SystemParams::ga},
                              {"fd", &SystemParams::fd},
                              {"lambda_pl", &SystemParams::lambda_pl}});

    auto& policy = t["policy"];
    policy["own_slot_mode"] = [](Config& c, const std::string& v) {
      const std::string s = unquote(trim(v));
      if (s == "none") c.policy.own_slot_mode = OwnSlotMode::none;
      else if (s == "full") c.policy.own_slot_mode = OwnSlotMode::full;
      else if (s == "bit_averaged") c.policy.own_slot_mode = OwnSlotMode::bit_averaged;
      else throw ConfigError("own_slot_mode must be none, full or bit_averaged");
    };
    policy["include_cross_term"] = [](Config& c, const std::string& v) {
      c.policy.include_cross_term = parse_bool(v);
    };

    auto& solver = t["solver"];
    solver["z_tolerance"] = [](Config& c, const std::string& v) {
      c.solver.z_tolerance = parse_double(v);
    };
    solver["inner_tolerance"] = [](Config& c, const std::string& v) {
      c.solver.inner_tolerance = parse_double(v);
    };
    solver["max_iterations"] = [](Config& c, const std::string& v) {
      c.solver.max_iterations = int(parse_uint(v));
    };
    solver["grid_resolution"] = [](Config& c, const std::string& v) {
      c.solver.grid_resolution = parse_double(v);
    };

    auto& sweep = t["sweep"];
    auto sw = [](Config& c) -> SweepSection& {
      if (!c.sweep) c.sweep.emplace();
      return *c.sweep;
    };
    sweep["kind"] = [sw](Config& c, const std::string& v) {
      const std::string s = unquote(trim(v));
      if (s == "channel_disparity") sw(c).kind = SweepKind::channel_disparity;
      else if (s == "inter_user_distance") sw(c).kind = SweepKind::inter_user_distance;
      else if (s == "custom") sw(c).kind = SweepKind::custom;
      else throw ConfigError("kind must be channel_disparity, inter_user_distance or custom");
    };
    sweep["parameter"] = [sw](Config& c, const std::string& v) {
      sw(c).parameter = unquote(trim(v));
    };
    sweep["values"] = [sw](Config& c, const std::string& v) {
      sw(c).values = parse_double_list(v);
    };
    sweep["schemes"] = [sw](Config& c, const std::string& v) {
      sw(c).schemes.clear();
      for (const auto& item : split_list(v)) sw(c).schemes.push_back(parse_scheme(item));
    };
    sweep["output"] = [sw](Config& c, const std::string& v) { sw(c).output = unquote(trim(v)); };
    sweep["seed"] = [sw](Config& c, const std::string& v) { sw(c).seed = parse_uint(v); };
    sweep["grid_check"] = [sw](Config& c, const std::string& v) {
      sw(c).grid_check = parse_bool(v);
    };

    auto& ber = t["ber"];
    ber["d12"] = [](Config& c, const std::string& v) { c.ber.d12 = parse_double_list(v); };
    ber["h12"] = [](Config& c, const std::string& v) { c.ber.h12 = parse_double_list(v); };
    ber["n_bits"] = [](Config& c, const std::string& v) { c.ber.n_bits = parse_uint(v); };
    ber["seed"] = [](Config& c, const std::string& v) { c.ber.seed = parse_uint(v); };
    ber["signal_model"] = [](Config& c, const std::string& v) {
      const std::string s = unquote(trim(v));
      if (s == "gaussian_energy_signal") c.ber.signal_model = SignalModel::gaussian_energy_signal;
      else if (s == "unit_modulus_random_phase")
        c.ber.signal_model = SignalModel::unit_modulus_random_phase;
      else throw ConfigError("signal_model must be gaussian_energy_signal or unit_modulus_random_phase");
    };
    ber["direction"] = [](Config& c, const std::string& v) {
      const std::string s = unquote(trim(v));
      if (s == "1->2") c.ber.directions = {Link::one_to_two};
      else if (s == "2->1") c.ber.directions = {Link::two_to_one};
      else if (s == "both") c.ber.directions = {Link::one_to_two, Link::two_to_one};
      else throw ConfigError("direction must be 1->2, 2->1 or both");
    };
    return t;
  }();
  return table;
}

double* gain_field(ChannelGains& g, const std::string& key) {
  if (key == "h_e1") return &g.h_e1;
  if (key == "h_e2") return &g.h_e2;
  if (key == "h_1a") return &g.h_1a;
  if (key == "h_2a") return &g.h_2a;
  if (key == "h_12") return &g.h_12;
  if (key == "h_21") return &g.h_21;
  return nullptr;
}

double* topology_field(Topology& t, const std::string& key) {
  if (key == "d_e1") return &t.d_e1;
  if (key == "d_e2") return &t.d_e2;
  if (key == "d_1a") return &t.d_1a;
  if (key == "d_2a") return &t.d_2a;
  if (key == "d_12") return &t.d_12;
  return nullptr;
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

std::string located(const std::string& source, int line, const std::string& msg) {
  return source + ":" + std::to_string(line) + ": " + msg;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void apply_setting(Config& cfg, const std::string& section, const std::string& key,
                   const std::string& value) {
  if (section == "gains") {
    double* field = gain_field(cfg.gains, key);
    if (!field) throw ConfigError("unknown key '" + key + "' in [gains]");
    *field = parse_double(value);
    // Reciprocal link: both directions move together.
    if (key == "h_12") cfg.gains.h_21 = cfg.gains.h_12;
    if (key == "h_21") cfg.gains.h_12 = cfg.gains.h_21;
    cfg.gain_source = GainSource::explicit_gains;
    return;
  }
  if (section == "topology") {
    if (!cfg.topology) throw ConfigError("no [topology] to modify");
    double* field = topology_field(*cfg.topology, key);
    if (!field) throw ConfigError("unknown key '" + key + "' in [topology]");
    *field = parse_double(value);
    if (cfg.gain_source == GainSource::topology) {
      cfg.gains = gains_from_topology(*cfg.topology, cfg.params);
    }
    return;
  }
  const auto& table = setters();
  const auto sec = table.find(section);
  if (sec == table.end()) throw ConfigError("unknown section [" + section + "]");
  const auto setter = sec->second.find(key);
  if (setter == sec->second.end()) {
    throw ConfigError("unknown key '" + key + "' in [" + section + "]");
  }
  setter->second(cfg, value);
}

Config parse_config(std::istream& in, const std::string& source) {
  std::vector<Entry> entries;
  std::string section;
  std::string raw;
  int line_no = 0;
  bool saw_gains = false;
  bool saw_topology = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (!quoted && (line[i] == '#' || line[i] == ';')) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(located(source, line_no, "malformed section header"));
      section = trim(line.substr(1, line.size() - 2));
      const bool known = section == "gains" || section == "topology" ||
                         setters().count(section) > 0;
      if (!known) throw ConfigError(located(source, line_no, "unknown section [" + section + "]"));
      saw_gains |= section == "gains";
      saw_topology |= section == "topology";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(located(source, line_no, "expected key = value"));
    }
    if (section.empty()) {
      throw ConfigError(located(source, line_no, "key outside of any section"));
    }
    entries.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
  }

  Config cfg;
  std::vector<const Entry*> gain_entries;
  std::vector<const Entry*> topology_entries;
  for (const auto& e : entries) {
    if (e.section == "gains") {
      if (!gain_field(cfg.gains, e.key)) {
        throw ConfigError(located(source, e.line, "unknown key '" + e.key + "' in [gains]"));
      }
      gain_entries.push_back(&e);
      continue;
    }
    if (e.section == "topology") {
      Topology probe;
      if (!topology_field(probe, e.key)) {
        throw ConfigError(located(source, e.line, "unknown key '" + e.key + "' in [topology]"));
      }
      topology_entries.push_back(&e);
      continue;
    }
    try {
      apply_setting(cfg, e.section, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(located(source, e.line, err.what()));
    }
  }

  if (saw_topology) {
    Topology topo;
    std::map<std::string, bool> seen;
    for (const Entry* e : topology_entries) {
      try {
        *topology_field(topo, e->key) = parse_double(e->value);
      } catch (const ConfigError& err) {
        throw ConfigError(located(source, e->line, err.what()));
      }
      seen[e->key] = true;
    }
    for (const char* key : {"d_e1", "d_e2", "d_1a", "d_2a", "d_12"}) {
      if (!seen[key]) throw ConfigError(source + ": [topology] is missing " + key);
    }
    if (const auto issues = validate(topo); !issues.empty()) {
      throw ConfigError(source + ": [topology] " + issues.front());
    }
    cfg.topology = topo;
  }

  if (saw_gains) {
    cfg.gains = reference_gains(cfg.params);
    bool h21_given = false;
    for (const Entry* e : gain_entries) {
      try {
        *gain_field(cfg.gains, e->key) = parse_double(e->value);
      } catch (const ConfigError& err) {
        throw ConfigError(located(source, e->line, err.what()));
      }
      h21_given |= e->key == "h_21";
    }
    if (!h21_given) cfg.gains.h_21 = cfg.gains.h_12;
    cfg.gain_source = GainSource::explicit_gains;
  } else if (cfg.topology) {
    cfg.gains = gains_from_topology(*cfg.topology, cfg.params);
    cfg.gain_source = GainSource::topology;
  } else {
    cfg.gains = reference_gains(cfg.params);
    cfg.gain_source = GainSource::defaults;
  }

  std::vector<std::string> issues = validate(cfg.params, cfg.gains);
  for (auto& s : validate(cfg.solver)) issues.push_back(std::move(s));
  if (!issues.empty()) {
    std::string msg = source + ": invalid configuration:";
    for (const auto& s : issues) msg += "\n  " + s;
    throw ConfigError(msg);
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

std::vector<std::string> describe(const Config& c) {
  const SystemParams& p = c.params;
  const ChannelGains& g = c.gains;
  std::vector<std::string> out = {
      "system.p0=" + fmt(p.p0),
      "system.eta=" + fmt(p.eta),
      "system.beta=" + fmt(p.beta),
      "system.mu1=" + fmt(p.mu1),
      "system.mu2=" + fmt(p.mu2),
      "system.sigma0_sq=" + fmt(p.sigma0_sq),
      "system.sigmas_sq=" + fmt(p.sigmas_sq),
      "system.rb=" + fmt(p.rb),
      "system.s_rate=" + fmt(p.s_rate),
      "system.t0=" + fmt(p.t0),
      "system.bandwidth=" + fmt(p.bandwidth),
      "system.ga=" + fmt(p.ga),
      "system.fd=" + fmt(p.fd),
      "system.lambda_pl=" + fmt(p.lambda_pl),
      "gains.h_e1=" + fmt(g.h_e1),
      "gains.h_e2=" + fmt(g.h_e2),
      "gains.h_1a=" + fmt(g.h_1a),
      "gains.h_2a=" + fmt(g.h_2a),
      "gains.h_12=" + fmt(g.h_12),
      "gains.h_21=" + fmt(g.h_21),
      "policy.own_slot_mode=" + to_string(c.policy.own_slot_mode),
      std::string("policy.include_cross_term=") + (c.policy.include_cross_term ? "true" : "false"),
      "solver.z_tolerance=" + fmt(c.solver.z_tolerance),
      "solver.inner_tolerance=" + fmt(c.solver.inner_tolerance),
      "solver.max_iterations=" + std::to_string(c.solver.max_iterations),
      "solver.grid_resolution=" + fmt(c.solver.grid_resolution),
  };
  return out;
}

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::channel_disparity: return "channel_disparity";
    case SweepKind::inter_user_distance: return "inter_user_distance";
    case SweepKind::custom: return "custom";
  }
  return "custom";
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::backscatter ? "backscatter" : "no_backscatter";
}

std::string to_string(OwnSlotMode mode) {
  switch (mode) {
    case OwnSlotMode::none: return "none";
    case OwnSlotMode::full: return "full";
    case OwnSlotMode::bit_averaged: return "bit_averaged";
  }
  return "bit_averaged";
}

}  // namespace wpcn
