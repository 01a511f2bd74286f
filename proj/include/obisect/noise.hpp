#pragma once

#include <string>

#include "obisect/rng.hpp"

namespace obisect {

enum class NoiseKind { kUniform, kTriangular, kTruncatedGaussian };

/// Bounded symmetric noise on [-u, u] with an exact closed-form CDF.
/// The distribution is known to the learner; only the draws are hidden.
struct NoiseModel {
  NoiseKind kind = NoiseKind::kUniform;
  double u = 1.0;      // support half-width
  double sigma = 1.0;  // pre-truncation std-dev (truncated gaussian only)
};

NoiseModel uniform_noise(double u);
NoiseModel triangular_noise(double u);
NoiseModel truncated_gaussian_noise(double u, double sigma);

NoiseKind noise_kind_from_name(const std::string& name);
std::string noise_kind_name(NoiseKind kind);

/// One draw from the model; always lands in [-u, u].
double sample(const NoiseModel& model, Rng& rng);

/// P(E <= x), clamped to {0, 1} outside the support.
double cdf(const NoiseModel& model, double x);

/// P(-side/(8D) <= E <= side/(8D)): the probability mass the bisection can
/// separate at the given hypercube side length.
double delta_p(const NoiseModel& model, double side, int D);

/// P(E > side/(8D)).
double p1(const NoiseModel& model, double side, int D);

}  // namespace obisect
