#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obisect/noise.hpp"
#include "obisect/querygen.hpp"

namespace obisect {

enum class WStarMode { kRandomUniform01, kExplicit };

/// Flat key = value experiment description. Unset keys take the defaults
/// below; unknown keys are rejected by name.
struct ExperimentConfig {
  int D = 4;
  int d = 2;
  std::int64_t T = 10000;
  std::uint64_t seed = 1;
  std::int64_t eval_m = 10000;
  WStarMode w_star_mode = WStarMode::kRandomUniform01;
  std::vector<double> w_star_values;  // used when mode is explicit
  NoiseKind noise_kind = NoiseKind::kUniform;
  double noise_u = 1e-3;
  double noise_sigma = 1.0;
  QueryKind query_kind = QueryKind::kBasisMixture;
  double mixture_weight = 0.5;
  std::optional<double> jitter_angle;  // defaults to the learner's phi(d)
  double scale_lo = 0.25;
  double scale_hi = 1.0;
  std::string output_path;

  bool disable_shrink = false;  // ablation hook, not a config-file key
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin = "<string>");

/// Validates ranges and cross-field constraints; throws ConfigError naming
/// the offending key.
void validate_config(const ExperimentConfig& cfg);

/// The jitter angle actually used: the configured one, or phi(d) if unset.
double resolved_jitter(const ExperimentConfig& cfg);

NoiseModel noise_model_from(const ExperimentConfig& cfg);

}  // namespace obisect
