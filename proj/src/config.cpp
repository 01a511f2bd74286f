#include "obisect/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "obisect/errors.hpp"

namespace obisect {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': cannot parse number '" + value + "'");
  }
  if (used != value.size())
    fail(origin, line, "key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

std::int64_t parse_int(const std::string& origin, int line,
                       const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(value, &used);
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': cannot parse integer '" + value + "'");
  }
  if (used != value.size())
    fail(origin, line, "key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& origin, int line,
                         const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "': cannot parse unsigned '" + value + "'");
  }
  if (used != value.size())
    fail(origin, line, "key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& origin, int line,
                                      const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(origin, line, "key '" + key + "': empty list entry");
    out.push_back(parse_double(origin, line, key, item));
  }
  if (out.empty()) fail(origin, line, "key '" + key + "': empty list");
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "missing key before '='");

    if (key == "D") {
      cfg.D = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "d") {
      cfg.d = static_cast<int>(parse_int(origin, line_no, key, value));
    } else if (key == "T") {
      cfg.T = parse_int(origin, line_no, key, value);
    } else if (key == "seed") {
      cfg.seed = parse_uint(origin, line_no, key, value);
    } else if (key == "eval_M") {
      cfg.eval_m = parse_int(origin, line_no, key, value);
    } else if (key == "w_star_mode") {
      if (value == "random_uniform01") {
        cfg.w_star_mode = WStarMode::kRandomUniform01;
      } else if (value == "explicit") {
        cfg.w_star_mode = WStarMode::kExplicit;
      } else {
        fail(origin, line_no, "key 'w_star_mode': unknown mode '" + value + "'");
      }
    } else if (key == "w_star_values") {
      cfg.w_star_values = parse_double_list(origin, line_no, key, value);
    } else if (key == "noise.kind") {
      try {
        cfg.noise_kind = noise_kind_from_name(value);
      } catch (const ConfigError& e) {
        fail(origin, line_no, e.what());
      }
    } else if (key == "noise.u") {
      cfg.noise_u = parse_double(origin, line_no, key, value);
    } else if (key == "noise.sigma") {
      cfg.noise_sigma = parse_double(origin, line_no, key, value);
    } else if (key == "query.kind") {
      try {
        cfg.query_kind = query_kind_from_name(value);
      } catch (const ConfigError& e) {
        fail(origin, line_no, e.what());
      }
    } else if (key == "query.mixture_weight") {
      cfg.mixture_weight = parse_double(origin, line_no, key, value);
    } else if (key == "query.jitter_angle") {
      cfg.jitter_angle = parse_double(origin, line_no, key, value);
    } else if (key == "query.scale_lo") {
      cfg.scale_lo = parse_double(origin, line_no, key, value);
    } else if (key == "query.scale_hi") {
      cfg.scale_hi = parse_double(origin, line_no, key, value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else {
      fail(origin, line_no, "unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.D < 1) throw ConfigError("key 'D': must be at least 1");
  if (cfg.d < 1 || cfg.d > cfg.D)
    throw ConfigError("key 'd': must satisfy 1 <= d <= D");
  if (cfg.T < 2) throw ConfigError("key 'T': must be at least 2");
  if (cfg.eval_m < 1) throw ConfigError("key 'eval_M': must be at least 1");
  if (!(cfg.noise_u > 0.0)) throw ConfigError("key 'noise.u': must be positive");
  if (!(cfg.noise_sigma > 0.0))
    throw ConfigError("key 'noise.sigma': must be positive");
  if (!(cfg.mixture_weight >= 0.0 && cfg.mixture_weight <= 1.0))
    throw ConfigError("key 'query.mixture_weight': must be in [0, 1]");
  if (!(cfg.scale_lo > 0.0 && cfg.scale_lo <= cfg.scale_hi &&
        cfg.scale_hi <= 1.0))
    throw ConfigError(
        "keys 'query.scale_lo'/'query.scale_hi': need 0 < lo <= hi <= 1");
  const double phi =
      2.0 * std::asin(1.0 / (64.0 * std::sqrt(static_cast<double>(cfg.d))));
  if (cfg.jitter_angle &&
      !(*cfg.jitter_angle >= 0.0 && *cfg.jitter_angle <= phi))
    throw ConfigError("key 'query.jitter_angle': must be in [0, phi(d)]");
  if (cfg.w_star_mode == WStarMode::kExplicit) {
    if (cfg.w_star_values.size() != static_cast<std::size_t>(cfg.D))
      throw ConfigError("key 'w_star_values': expected exactly D entries");
    for (double v : cfg.w_star_values)
      if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError("key 'w_star_values': entries must lie in [0, 1]");
  }
}

double resolved_jitter(const ExperimentConfig& cfg) {
  if (cfg.jitter_angle) return *cfg.jitter_angle;
  return 2.0 * std::asin(1.0 / (64.0 * std::sqrt(static_cast<double>(cfg.d))));
}

NoiseModel noise_model_from(const ExperimentConfig& cfg) {
  switch (cfg.noise_kind) {
    case NoiseKind::kUniform: return uniform_noise(cfg.noise_u);
    case NoiseKind::kTriangular: return triangular_noise(cfg.noise_u);
    case NoiseKind::kTruncatedGaussian:
      return truncated_gaussian_noise(cfg.noise_u, cfg.noise_sigma);
  }
  throw ConfigError("key 'noise.kind': unknown kind");
}

}  // namespace obisect
