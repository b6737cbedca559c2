#include "lax2d/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lax2d {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a boolean");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "n") n = static_cast<int>(parse_int(key, value));
  else if (key == "dt") dt = parse_double(key, value);
  else if (key == "T") T = parse_double(key, value);
  else if (key == "ic") ic = value;
  else if (key == "eps") eps = parse_double(key, value);
  else if (key == "band") band = static_cast<int>(parse_int(key, value));
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "K") K = static_cast<int>(parse_int(key, value));
  else if (key == "out") out_dir = value;
  else if (key == "snapshot_interval") snapshot_interval = static_cast<int>(parse_int(key, value));
  else if (key == "suite") suite = value;
  else if (key == "trials") trials = static_cast<int>(parse_int(key, value));
  else if (key == "samples") samples = static_cast<int>(parse_int(key, value));
  else if (key == "order_study") order_study = parse_bool(key, value);
  else if (key == "mode_index") mode_index = static_cast<int>(parse_int(key, value));
  else if (key == "alpha") alpha = parse_double(key, value);
  else if (key == "beta") beta = parse_double(key, value);
  else if (key == "gamma") gamma = parse_double(key, value);
  else if (key == "delta") delta = parse_double(key, value);
  else if (key == "lambda_re") lambda_re = parse_double(key, value);
  else if (key == "lambda_im") lambda_im = parse_double(key, value);
  else if (key == "resonance_policy") resonance_policy = value;
  else if (key == "sample_times") {
    sample_times.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) sample_times.push_back(parse_double(key, item));
    }
    if (sample_times.empty()) throw ConfigError("sample_times must contain at least one time");
  } else if (key.rfind("tol_", 0) == 0) {
    static const char* known[] = {"tol_bracket", "tol_compatibility", "tol_zakharov",
                                  "tol_conservation", "tol_transport"};
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ConfigError("unknown tolerance key '" + key + "'");
    tolerances[key] = parse_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void RunConfig::validate() const {
  if (n < 8 || n % 2 != 0) throw ConfigError("n must be even and >= 8");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (K < 1 || K > 32) throw ConfigError("K must be in [1, 32]");
  if (band < 0) throw ConfigError("band must be non-negative");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (snapshot_interval < 0) throw ConfigError("snapshot_interval must be >= 0");
  if (resonance_policy != "error" && resonance_policy != "zero-gauge")
    throw ConfigError("resonance_policy must be 'error' or 'zero-gauge'");
  for (const auto& [key, value] : tolerances)
    if (!(value > 0.0)) throw ConfigError(key + " must be positive");
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::map<std::string, std::string> RunConfig::to_map() const {
  std::map<std::string, std::string> m;
  m["n"] = std::to_string(n);
  m["dt"] = fmt(dt);
  m["T"] = fmt(T);
  m["ic"] = ic;
  m["eps"] = fmt(eps);
  m["band"] = std::to_string(band);
  m["seed"] = std::to_string(seed);
  m["K"] = std::to_string(K);
  m["out"] = out_dir;
  m["snapshot_interval"] = std::to_string(snapshot_interval);
  if (!suite.empty()) m["suite"] = suite;
  m["trials"] = std::to_string(trials);
  m["samples"] = std::to_string(samples);
  m["order_study"] = order_study ? "true" : "false";
  m["mode_index"] = std::to_string(mode_index);
  m["alpha"] = fmt(alpha);
  m["beta"] = fmt(beta);
  m["gamma"] = fmt(gamma);
  m["delta"] = fmt(delta);
  m["lambda_re"] = fmt(lambda_re);
  m["lambda_im"] = fmt(lambda_im);
  m["resonance_policy"] = resonance_policy;
  std::string times;
  for (size_t i = 0; i < sample_times.size(); ++i) {
    if (i) times += ",";
    times += fmt(sample_times[i]);
  }
  m["sample_times"] = times;
  for (const auto& [key, value] : tolerances) m[key] = fmt(value);
  return m;
}

RunConfig RunConfig::from_map(const std::map<std::string, std::string>& map) {
  RunConfig cfg;
  for (const auto& [key, value] : map) cfg.apply(key, value);
  cfg.validate();
  return cfg;
}

}  // namespace lax2d
