#include "fluctlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "fluctlab/errors.hpp"

namespace fluctlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const std::string& path, int line, const std::string& message) {
  throw Error("invalid-config", path + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& path, const Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    fail(path, e.line, "expected a number for key '" + key + "', got '" + e.value + "'");
  }
}

std::int64_t parse_int(const std::string& path, const Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    fail(path, e.line, "expected an integer for key '" + key + "', got '" + e.value + "'");
  }
}

std::uint64_t parse_u64(const std::string& path, const Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    fail(path, e.line, "expected an unsigned integer for key '" + key + "', got '" + e.value +
                           "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

const std::map<std::string, ExperimentKind> experiment_names = {
    {"fiber_tail", ExperimentKind::fiber_tail},
    {"modulus_tail", ExperimentKind::modulus_tail},
    {"interval_prob", ExperimentKind::interval_prob},
    {"gaussian_independence", ExperimentKind::gaussian_independence},
    {"wegner", ExperimentKind::wegner},
    {"partition", ExperimentKind::partition},
    {"smooth_theorem", ExperimentKind::smooth_theorem},
    {"rcm_sweep", ExperimentKind::rcm_sweep},
    {"full_suite", ExperimentKind::full_suite},
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& path) {
  std::map<std::string, Entry> entries;
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      const std::string stripped = trim(raw.substr(0, raw.find('#')));
      if (stripped.empty()) continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) fail(path, line, "expected key = value");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(path, line, "empty key");
      if (value.empty()) fail(path, line, "empty value for key '" + key + "'");
      if (entries.count(key)) fail(path, line, "duplicate key '" + key + "'");
      entries[key] = Entry{value, line};
    }
  }

  ExperimentConfig cfg;
  double a = 0.0, ell = 1.0, beta = 0.0;
  std::string kind = "uniform";

  auto take = [&](const char* key) -> std::optional<Entry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  };

  if (auto e = take("experiment")) {
    auto it = experiment_names.find(e->value);
    if (it == experiment_names.end()) fail(path, e->line, "unknown experiment '" + e->value + "'");
    cfg.experiment = it->second;
  } else {
    fail(path, 0, "missing required key 'experiment'");
  }

  if (auto e = take("seed"))
    cfg.seed = parse_u64(path, *e, "seed");
  else
    fail(path, 0, "missing required key 'seed' (runs must be reproducible)");

  if (auto e = take("kind")) {
    kind = e->value;
    if (kind != "gaussian" && kind != "uniform" && kind != "smooth")
      fail(path, e->line, "kind must be gaussian, uniform or smooth");
  }
  if (auto e = take("a")) a = parse_double(path, *e, "a");
  if (auto e = take("ell")) {
    ell = parse_double(path, *e, "ell");
    if (!(ell > 0)) fail(path, e->line, "ell must be positive");
  }
  if (auto e = take("beta")) {
    beta = parse_double(path, *e, "beta");
    if (!(std::abs(beta) < 1)) fail(path, e->line, "|beta| must be < 1");
  }
  if (kind == "gaussian")
    cfg.marginal = MarginalSpec::gaussian();
  else if (kind == "uniform")
    cfg.marginal = MarginalSpec::uniform(a, ell);
  else
    cfg.marginal = MarginalSpec::smooth(a, ell, beta);

  if (auto e = take("n")) {
    cfg.n = parse_int(path, *e, "n");
    if (cfg.n < 2) fail(path, e->line, "n must be at least 2");
  }
  if (auto e = take("dim")) {
    cfg.dim = static_cast<int>(parse_int(path, *e, "dim"));
    if (cfg.dim < 1) fail(path, e->line, "dim must be >= 1");
  }
  if (auto e = take("side")) {
    cfg.side = static_cast<int>(parse_int(path, *e, "side"));
    if (cfg.side < 1) fail(path, e->line, "side must be >= 1");
  }
  if (auto e = take("s")) cfg.s = parse_double(path, *e, "s");
  if (auto e = take("delta")) cfg.delta = parse_double(path, *e, "delta");
  if (auto e = take("alpha")) cfg.alpha = parse_double(path, *e, "alpha");
  if (auto e = take("r")) cfg.r = parse_double(path, *e, "r");
  if (auto e = take("interval_t")) cfg.interval_t = parse_double(path, *e, "interval_t");
  if (auto e = take("interval_s")) cfg.interval_s = parse_double(path, *e, "interval_s");
  if (auto e = take("trials")) {
    cfg.trials = parse_int(path, *e, "trials");
    if (cfg.trials < 1) fail(path, e->line, "trials must be >= 1");
  }
  if (auto e = take("workers")) {
    cfg.workers = static_cast<int>(parse_int(path, *e, "workers"));
    if (cfg.workers < 1) fail(path, e->line, "workers must be >= 1");
  }
  if (auto e = take("cover_breakpoints")) {
    for (const auto& part : split_list(e->value))
      cfg.cover_breakpoints.push_back(parse_double(path, Entry{part, e->line}, "cover_breakpoints"));
    if (cfg.cover_breakpoints.size() < 2)
      fail(path, e->line, "cover_breakpoints needs at least two values");
    if (!std::is_sorted(cfg.cover_breakpoints.begin(), cfg.cover_breakpoints.end()))
      fail(path, e->line, "cover_breakpoints must be ascending");
  }
  if (auto e = take("cover_m")) {
    cfg.cover_m = static_cast<int>(parse_int(path, *e, "cover_m"));
    if (cfg.cover_m < 0 || cfg.cover_m > 16) fail(path, e->line, "cover_m must lie in [0,16]");
  }
  if (auto e = take("mu_rule")) {
    if (e->value == "constant")
      cfg.mu_rule = MuRule::constant;
    else if (e->value == "eta-median" || e->value == "eta_median")
      cfg.mu_rule = MuRule::eta_median;
    else if (e->value == "eta-max" || e->value == "eta_max")
      cfg.mu_rule = MuRule::eta_max;
    else
      fail(path, e->line, "mu_rule must be constant, eta-median or eta-max");
  }
  if (auto e = take("mu_const")) cfg.mu_const = parse_double(path, *e, "mu_const");
  if (auto e = take("q_sizes")) {
    cfg.q_sizes.clear();
    for (const auto& part : split_list(e->value))
      cfg.q_sizes.push_back(parse_int(path, Entry{part, e->line}, "q_sizes"));
    if (cfg.q_sizes.empty()) fail(path, e->line, "q_sizes needs at least one value");
  }
  if (auto e = take("s_values")) {
    cfg.s_values.clear();
    for (const auto& part : split_list(e->value))
      cfg.s_values.push_back(parse_double(path, Entry{part, e->line}, "s_values"));
    if (cfg.s_values.empty()) fail(path, e->line, "s_values needs at least one value");
  }
  if (auto e = take("output")) cfg.output = e->value;

  if (!entries.empty()) {
    const auto& [key, entry] = *entries.begin();
    fail(path, entry.line, "unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("invalid-config", path + ": cannot open config file");
  std::stringstream buffer;
  buffer << f.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace fluctlab
