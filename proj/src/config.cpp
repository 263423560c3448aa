#include "eplab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "eplab/errors.hpp"

namespace eplab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string_view value;
  int line;
  std::string key;  // section.key
};

double to_double(const Entry& e) {
  double v = 0.0;
  const char* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("'" + e.key + "' expects a finite number, got '" + std::string(e.value) + "'",
                      e.line, e.key);
  return v;
}

int to_int(const Entry& e) {
  int v = 0;
  const char* end = e.value.data() + e.value.size();
  const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("'" + e.key + "' expects an integer, got '" + std::string(e.value) + "'",
                      e.line, e.key);
  return v;
}

[[noreturn]] void invalid(const Entry& e, const std::string& why) {
  throw ConfigError("invalid value for '" + e.key + "': " + why, e.line, e.key);
}

double positive(const Entry& e) {
  const double v = to_double(e);
  if (!(v > 0.0)) invalid(e, "must be positive");
  return v;
}

std::vector<std::pair<double, double>> to_table(const Entry& e) {
  std::vector<std::pair<double, double>> table;
  std::string_view rest = e.value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) invalid(e, "table entries are written r:value");
    const Entry r{trim(item.substr(0, colon)), e.line, e.key};
    const Entry v{trim(item.substr(colon + 1)), e.line, e.key};
    table.emplace_back(to_double(r), to_double(v));
  }
  if (table.size() < 2) invalid(e, "table needs at least two entries");
  return table;
}

using Setter = std::function<void(RunConfig&, const Entry&)>;

void add_profile_keys(std::map<std::string, Setter>& keys, const std::string& section,
                      ProfileSpec RunConfig::*spec, int RunConfig::*nodes) {
  keys[section + ".family"] = [spec](RunConfig& c, const Entry& e) {
    try {
      (c.*spec).family = parse_profile_family(e.value);
    } catch (const DomainError&) {
      invalid(e, "unknown profile family '" + std::string(e.value) + "'");
    }
  };
  keys[section + ".amplitude"] = [spec](RunConfig& c, const Entry& e) {
    (c.*spec).amplitude = to_double(e);
  };
  keys[section + ".radius"] = [spec](RunConfig& c, const Entry& e) {
    (c.*spec).radius = positive(e);
  };
  keys[section + ".sigma"] = [spec](RunConfig& c, const Entry& e) {
    (c.*spec).sigma = positive(e);
  };
  keys[section + ".slope"] = [spec](RunConfig& c, const Entry& e) {
    (c.*spec).slope = to_double(e);
  };
  keys[section + ".table"] = [spec](RunConfig& c, const Entry& e) {
    (c.*spec).table = to_table(e);
  };
  keys[section + ".nodes"] = [nodes](RunConfig& c, const Entry& e) {
    const int n = to_int(e);
    if (n < 3) invalid(e, "need at least 3 nodes");
    c.*nodes = n;
  };
}

const std::map<std::string, Setter>& known_keys() {
  static const std::map<std::string, Setter> keys = [] {
    std::map<std::string, Setter> k;
    k["model.dim"] = [](RunConfig& c, const Entry& e) {
      const int d = to_int(e);
      if (d < 1) invalid(e, "dimension must be >= 1");
      c.model.dim = d;
    };
    k["model.delta"] = [](RunConfig& c, const Entry& e) {
      const int d = to_int(e);
      if (d < -1 || d > 1) invalid(e, "must be -1, 0 or 1");
      c.model.delta = d;
    };
    k["model.K"] = [](RunConfig& c, const Entry& e) {
      const double v = to_double(e);
      if (v < 0.0) invalid(e, "must be >= 0");
      c.model.pressure_const = v;
    };
    k["model.gamma"] = [](RunConfig& c, const Entry& e) {
      const double v = to_double(e);
      if (v < 1.0) invalid(e, "must be >= 1");
      c.model.adiabatic_exp = v;
    };
    k["model.alpha"] = [](RunConfig& c, const Entry& e) { c.model.coupling = positive(e); };
    add_profile_keys(k, "density", &RunConfig::density, &RunConfig::density_nodes);
    add_profile_keys(k, "velocity", &RunConfig::velocity, &RunConfig::velocity_nodes);
    k["numerics.shell_count"] = [](RunConfig& c, const Entry& e) {
      const int n = to_int(e);
      if (n < 8) invalid(e, "need at least 8 shells");
      c.shell_count = n;
    };
    k["numerics.dt"] = [](RunConfig& c, const Entry& e) { c.dt = positive(e); };
    k["numerics.t_end"] = [](RunConfig& c, const Entry& e) { c.t_end = positive(e); };
    k["numerics.escape_threshold"] = [](RunConfig& c, const Entry& e) {
      c.thresholds.divergence_escape = positive(e);
    };
    k["numerics.min_radius_fraction"] = [](RunConfig& c, const Entry& e) {
      const double v = positive(e);
      if (v >= 1.0) invalid(e, "must be below 1");
      c.thresholds.min_radius_fraction = v;
    };
    k["output.trace"] = [](RunConfig& c, const Entry& e) { c.trace_path = std::string(e.value); };
    k["output.report"] = [](RunConfig& c, const Entry& e) { c.report_path = std::string(e.value); };
    return k;
  }();
  return keys;
}

const std::set<std::string> kSections{"model", "density", "velocity", "numerics", "output"};
const std::set<std::string> kRequired{"model.dim",           "model.delta", "density.family",
                                      "numerics.shell_count", "numerics.dt", "numerics.t_end"};

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string> seen;
  bool alpha_given = false;
  int line_no = 0;

  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kSections.contains(section))
        throw ConfigError("unknown section [" + section + "]", line_no, section);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (section.empty())
      throw ConfigError("key '" + std::string(key) + "' outside any section", line_no,
                        std::string(key));
    const std::string full = section + "." + std::string(key);
    const auto it = known_keys().find(full);
    if (it == known_keys().end())
      throw ConfigError("unknown key '" + std::string(key) + "' in [" + section + "]", line_no,
                        std::string(key));
    if (!seen.insert(full).second)
      throw ConfigError("duplicate key '" + full + "'", line_no, std::string(key));
    if (value.empty())
      throw ConfigError("missing value for '" + full + "'", line_no, std::string(key));
    it->second(cfg, Entry{value, line_no, full});
    if (full == "model.alpha") alpha_given = true;
  }

  for (const auto& key : kRequired)
    if (!seen.contains(key)) throw ConfigError("missing required key '" + key + "'", 0, key);
  if (!alpha_given) cfg.model.coupling = default_coupling(cfg.model.dim);
  if (cfg.density.family == ProfileFamily::table && cfg.density.table.empty())
    throw ConfigError("density family 'table' needs a table", 0, "density.table");
  if (cfg.velocity.family == ProfileFamily::table && cfg.velocity.table.empty())
    throw ConfigError("velocity family 'table' needs a table", 0, "velocity.table");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace eplab
