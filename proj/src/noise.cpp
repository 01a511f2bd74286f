#include "obisect/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "obisect/errors.hpp"

namespace obisect {
namespace {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Rational approximation of the standard normal quantile (Acklam-style),
// refined with one Halley step against erfc so sampler and CDF agree to
// full double precision.
double standard_normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = standard_normal_cdf(x) - p;
  const double w = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  if (std::isfinite(w)) x = x - w / (1.0 + 0.5 * x * w);
  return x;
}

void require_valid(const NoiseModel& model) {
  if (!(model.u > 0.0))
    throw UsageError("noise: support half-width u must be positive");
  if (model.kind == NoiseKind::kTruncatedGaussian && !(model.sigma > 0.0))
    throw UsageError("noise: sigma must be positive");
}

}  // namespace

NoiseModel uniform_noise(double u) {
  NoiseModel m{NoiseKind::kUniform, u, 1.0};
  require_valid(m);
  return m;
}

NoiseModel triangular_noise(double u) {
  NoiseModel m{NoiseKind::kTriangular, u, 1.0};
  require_valid(m);
  return m;
}

NoiseModel truncated_gaussian_noise(double u, double sigma) {
  NoiseModel m{NoiseKind::kTruncatedGaussian, u, sigma};
  require_valid(m);
  return m;
}

NoiseKind noise_kind_from_name(const std::string& name) {
  if (name == "uniform") return NoiseKind::kUniform;
  if (name == "triangular") return NoiseKind::kTriangular;
  if (name == "truncated_gaussian") return NoiseKind::kTruncatedGaussian;
  throw ConfigError("unknown noise kind '" + name + "'");
}

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kUniform: return "uniform";
    case NoiseKind::kTriangular: return "triangular";
    case NoiseKind::kTruncatedGaussian: return "truncated_gaussian";
  }
  return "?";
}

double sample(const NoiseModel& model, Rng& rng) {
  require_valid(model);
  const double u = model.u;
  switch (model.kind) {
    case NoiseKind::kUniform:
      return u * (2.0 * uniform01(rng) - 1.0);
    case NoiseKind::kTriangular: {
      // Inverse CDF of the symmetric triangle with peak at 0.
      const double p = uniform01(rng);
      const double x = p < 0.5 ? -u + u * std::sqrt(2.0 * p)
                               : u - u * std::sqrt(2.0 * (1.0 - p));
      return std::clamp(x, -u, u);
    }
    case NoiseKind::kTruncatedGaussian: {
      const double lo = standard_normal_cdf(-u / model.sigma);
      const double hi = standard_normal_cdf(u / model.sigma);
      const double p = lo + (hi - lo) * uniform01(rng);
      const double x = model.sigma * standard_normal_quantile(p);
      return std::clamp(x, -u, u);
    }
  }
  throw UsageError("noise: unknown kind");
}

double cdf(const NoiseModel& model, double x) {
  require_valid(model);
  const double u = model.u;
  if (x <= -u) return 0.0;
  if (x >= u) return 1.0;
  switch (model.kind) {
    case NoiseKind::kUniform:
      return (x + u) / (2.0 * u);
    case NoiseKind::kTriangular: {
      const double t = (x + u) / u;  // in (0, 2)
      return x < 0.0 ? 0.5 * t * t : 1.0 - 0.5 * (2.0 - t) * (2.0 - t);
    }
    case NoiseKind::kTruncatedGaussian: {
      const double lo = standard_normal_cdf(-u / model.sigma);
      const double hi = standard_normal_cdf(u / model.sigma);
      return (standard_normal_cdf(x / model.sigma) - lo) / (hi - lo);
    }
  }
  throw UsageError("noise: unknown kind");
}

double delta_p(const NoiseModel& model, double side, int D) {
  if (side < 0.0) throw UsageError("delta_p: side must be nonnegative");
  if (D < 1) throw UsageError("delta_p: D must be at least 1");
  const double a = side / (8.0 * static_cast<double>(D));
  return cdf(model, a) - cdf(model, -a);
}

double p1(const NoiseModel& model, double side, int D) {
  if (side < 0.0) throw UsageError("p1: side must be nonnegative");
  if (D < 1) throw UsageError("p1: D must be at least 1");
  return 1.0 - cdf(model, side / (8.0 * static_cast<double>(D)));
}

}  // namespace obisect
