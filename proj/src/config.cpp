#include "hyperest/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hyperest/errors.hpp"

namespace hyperest {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& text, int line_no) {
  std::string t;
  for (char c : trim(text)) {
    if (c != '_') t += c;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("line " + std::to_string(line_no) + ": cannot parse number '" + text + "'");
  }
  return v;
}

ConfigValue parse_value(const std::string& raw, int line_no) {
  const std::string v = trim(raw);
  if (v.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
    return v.substr(1, v.size() - 2);
  }
  if (v.front() == '[') {
    if (v.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
    std::vector<double> out;
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) out.push_back(parse_number(item, line_no));
    }
    return out;
  }
  return parse_number(v, line_no);
}

template <typename T>
const T& expect(const ConfigValue& v, const std::string& key) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ConfigError("config key '" + key + "' has the wrong type");
}

int expect_int(const ConfigValue& v, const std::string& key) {
  const double d = expect<double>(v, key);
  if (d != static_cast<int>(d)) throw ConfigError("config key '" + key + "' must be an integer");
  return static_cast<int>(d);
}

State expect_state(const ConfigValue& v, const std::string& key) {
  const auto& arr = expect<std::vector<double>>(v, key);
  State s(static_cast<int>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) s[i] = arr[i];
  return s;
}

}  // namespace

std::map<std::string, ConfigValue> parse_toml(const std::string& text) {
  std::map<std::string, ConfigValue> out;
  std::stringstream ss(text);
  std::string line;
  std::string table;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string l = trim(strip_comment(line));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed table header");
      table = trim(l.substr(1, l.size() - 2));
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(l.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!table.empty()) key = table + "." + key;
    if (out.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out[key] = parse_value(l.substr(eq + 1), line_no);
  }
  return out;
}

RunConfig config_from_toml(const std::string& text, RunConfig cfg) {
  const auto kv = parse_toml(text);
  State box_lower, box_upper;
  for (const auto& [key, v] : kv) {
    if (key == "problem") {
      cfg.problem = parse_problem(expect<std::string>(v, key));
    } else if (key == "speed") {
      cfg.speed = expect<double>(v, key);
    } else if (key == "gamma") {
      cfg.gamma = expect<double>(v, key);
    } else if (key == "initial") {
      cfg.initial = expect<std::string>(v, key);
    } else if (key == "initial_projection") {
      cfg.initial_projection = parse_initial_projection(expect<std::string>(v, key));
    } else if (key == "constant_value") {
      cfg.constant_value = expect<double>(v, key);
    } else if (key == "domain") {
      const auto& d = expect<std::vector<double>>(v, key);
      if (d.size() != 2) throw ConfigError("domain needs two entries");
      cfg.domain_left = d[0];
      cfg.domain_right = d[1];
    } else if (key == "t_end") {
      cfg.t_end = expect<double>(v, key);
    } else if (key == "q") {
      cfg.q = expect_int(v, key);
    } else if (key == "stepper") {
      cfg.stepper = parse_stepper(expect<std::string>(v, key));
    } else if (key == "recon") {
      const DerivativeMode mode = cfg.recon.mode;
      cfg.recon = parse_recon(expect<std::string>(v, key));
      cfg.recon.mode = mode;
    } else if (key == "derivative_mode") {
      const std::string& m = expect<std::string>(v, key);
      if (m == "directional") cfg.recon.mode = DerivativeMode::directional;
      else if (m == "backward_fd") cfg.recon.mode = DerivativeMode::backward_fd;
      else throw ConfigError("derivative_mode must be directional or backward_fd");
    } else if (key == "flux" || key == "flux.kind") {
      cfg.flux.kind = parse_flux_kind(expect<std::string>(v, key));
    } else if (key == "mu" || key == "flux.mu") {
      cfg.flux.mu = expect<double>(v, key);
    } else if (key == "nu" || key == "flux.nu") {
      cfg.flux.nu = expect_int(v, key);
    } else if (key == "lambda" || key == "flux.lambda") {
      cfg.flux.lambda = expect<double>(v, key);
      cfg.lambda_from_grid = false;
    } else if (key == "local_speed" || key == "flux.local_speed") {
      cfg.flux.local_speed = expect<bool>(v, key);
    } else if (key == "chi_width" || key == "flux.chi_width") {
      cfg.flux.chi_width = expect<double>(v, key);
    } else if (key == "levels") {
      cfg.levels = expect_int(v, key);
    } else if (key == "h0") {
      cfg.h0 = expect<double>(v, key);
    } else if (key == "tau0") {
      cfg.tau0 = expect<double>(v, key);
    } else if (key == "checkpoints") {
      cfg.checkpoints = expect<std::vector<double>>(v, key);
    } else if (key == "cfl_cap") {
      cfg.cfl_cap = expect<double>(v, key);
    } else if (key == "entropy_resolution" || key == "estimator.resolution") {
      cfg.entropy_resolution = expect_int(v, key);
    } else if (key == "safety" || key == "estimator.safety") {
      cfg.safety = expect<double>(v, key);
    } else if (key == "box_padding" || key == "estimator.box_padding") {
      cfg.box_padding = expect<double>(v, key);
    } else if (key == "box_lower" || key == "estimator.box_lower") {
      box_lower = expect_state(v, key);
    } else if (key == "box_upper" || key == "estimator.box_upper") {
      box_upper = expect_state(v, key);
    } else if (key == "force") {
      cfg.force = expect<bool>(v, key);
    } else if (key == "reference_factor") {
      cfg.reference_factor = expect_int(v, key);
    } else if (key == "reference_tau_factor") {
      cfg.reference_tau_factor = expect_int(v, key);
    } else if (key == "residual.time_points") {
      cfg.residual.time_points = expect_int(v, key);
    } else if (key == "residual.space_points") {
      cfg.residual.space_points = expect_int(v, key);
    } else if (key == "residual.sup_samples") {
      cfg.residual.sup_samples = expect_int(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (box_lower.size() != box_upper.size()) throw ConfigError("box_lower and box_upper must both be given");
  if (box_lower.size() > 0) cfg.box = CompactBox{box_lower, box_upper};
  return cfg;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig load_config(const std::string& path, RunConfig base) { return config_from_toml(read_file(path), base); }

RunConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  const auto kv = parse_toml(text);
  Problem problem = Problem::advection;
  int q = 1;
  if (auto it = kv.find("problem"); it != kv.end()) problem = parse_problem(expect<std::string>(it->second, "problem"));
  if (auto it = kv.find("q"); it != kv.end()) q = expect_int(it->second, "q");
  RunConfig base = problem == Problem::euler     ? euler_config(q)
                   : problem == Problem::burgers ? burgers_config(q)
                                                 : advection_config(q);
  return config_from_toml(text, base);
}

}  // namespace hyperest
