#include "obisect/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "obisect/errors.hpp"
#include "obisect/learner.hpp"
#include "obisect/runner.hpp"

namespace obisect {
namespace {

Eigen::MatrixXd random_gaussian(int rows, int cols, Rng& rng) {
  // Box-Muller on the engine's own uniforms, independent of library
  // distribution internals.
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double u1 = 1.0 - uniform01(rng);
      const double u2 = uniform01(rng);
      m(i, j) = std::sqrt(-2.0 * std::log(u1)) *
                std::cos(2.0 * std::numbers::pi * u2);
    }
  return m;
}

Basis random_orthonormal(int D, int d, Rng& rng) {
  for (;;) {
    Eigen::MatrixXd g = random_gaussian(D, d, rng);
    std::vector<Vector> cols;
    cols.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) cols.push_back(g.col(i));
    try {
      return gram_schmidt(cols);
    } catch (const DegenerateInputError&) {
      // near-singular draw; try again
    }
  }
}

}  // namespace

std::string format_report(const LemmaCheckReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-22s %s  trials=%lld  worst=%.6g  bound=%.6g  %s",
                report.lemma_id.c_str(), report.pass ? "PASS" : "FAIL",
                static_cast<long long>(report.trials), report.worst,
                report.bound, report.params.c_str());
  return buf;
}

double brute_force_support(const Hypercube& hc, const Vector& q) {
  const int d = hc.dimension();
  if (d > 20)
    throw UsageError("brute_force_support: refusing to enumerate 2^d corners for d > 20");
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g[i] = dot(hc.basis.vectors.col(i), q);

  double best = -std::numeric_limits<double>::infinity();
  const std::uint64_t corners = 1ULL << d;
  for (std::uint64_t mask = 0; mask < corners; ++mask) {
    double value = 0.0;
    for (int i = 0; i < d; ++i)
      value += ((mask >> i) & 1ULL ? hc.upper[i] : hc.lower[i]) * g[i];
    best = std::max(best, value);
  }
  return best;
}

LemmaCheckReport check_support_equivalence(int instances_per_dim, Rng& rng) {
  LemmaCheckReport report;
  report.lemma_id = "closed-form-support";
  report.bound = 1e-12;
  report.params = "d=1..12, relative error";

  double worst = 0.0;
  std::int64_t trials = 0;
  for (int d = 1; d <= 12; ++d) {
    const int D = d + 4;
    for (int k = 0; k < instances_per_dim; ++k) {
      Basis basis = random_orthonormal(D, d, rng);
      Hypercube hc;
      hc.basis = std::move(basis);
      hc.lower.resize(d);
      hc.upper.resize(d);
      for (int i = 0; i < d; ++i) {
        const double lo = uniform_in(rng, -3.0, 3.0);
        hc.lower[i] = lo;
        hc.upper[i] = lo + uniform_in(rng, 0.0, 4.0);
      }
      Vector q(D);
      for (int i = 0; i < D; ++i) q[i] = uniform_in(rng, -1.0, 1.0);

      const double fast = support(hc, q);
      const double exact = brute_force_support(hc, q);
      const double rel =
          std::abs(fast - exact) / std::max(1.0, std::abs(exact));
      worst = std::max(worst, rel);
      ++trials;
    }
  }
  report.trials = trials;
  report.worst = worst;
  report.pass = worst <= report.bound;
  return report;
}

LemmaCheckReport check_chernoff(int m, double p1, double dp, int trials,
                                Rng& rng) {
  if (m < 1) throw UsageError("check_chernoff: m must be at least 1");
  if (!(p1 >= 0.0 && dp >= 0.0 && p1 + dp <= 1.0))
    throw UsageError("check_chernoff: need 0 <= p1 and p1 + dp <= 1");

  const double threshold = static_cast<double>(m) * p1 +
                           static_cast<double>(m) * dp / 2.0;
  std::binomial_distribution<int> low(m, p1);
  std::binomial_distribution<int> high(m, p1 + dp);
  std::int64_t upper_tail = 0;
  std::int64_t lower_tail = 0;
  for (int i = 0; i < trials; ++i) {
    if (static_cast<double>(low(rng)) >= threshold) ++upper_tail;
    if (static_cast<double>(high(rng)) < threshold) ++lower_tail;
  }
  const double freq_up =
      static_cast<double>(upper_tail) / static_cast<double>(trials);
  const double freq_down =
      static_cast<double>(lower_tail) / static_cast<double>(trials);
  const double bound =
      std::exp(-static_cast<double>(m) * dp * dp / 10.0);
  const double slack =
      3.0 * std::sqrt(std::max(bound * (1.0 - bound), 1e-12) /
                      static_cast<double>(trials));

  LemmaCheckReport report;
  report.lemma_id = "binomial-tail";
  report.trials = trials;
  report.worst = std::max(freq_up, freq_down);
  report.bound = bound + slack;
  report.pass = freq_up <= report.bound && freq_down <= report.bound;
  std::ostringstream params;
  params << "m=" << m << " p1=" << p1 << " dp=" << dp;
  report.params = params.str();
  return report;
}

LemmaCheckReport check_cut_lemma(int d, double L, double theta, double beta,
                                 int trials, Rng& rng) {
  if (d > 10)
    throw UsageError("check_cut_lemma: corner enumeration capped at d = 10");
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0))
    throw UsageError("check_cut_lemma: need 0 < theta < pi/2");
  if (!(beta > 0.0 && beta < 1.0))
    throw UsageError("check_cut_lemma: need 0 < beta < 1");

  const double eps = 8.0 * std::sin(theta / 2.0) * std::sqrt(static_cast<double>(d));
  const double bound_left = L * (beta + eps);
  const double bound_right = L * (1.0 - beta + eps);
  const int ambient = d + 1;
  const std::uint64_t corners = 1ULL << d;

  double worst_overshoot = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    const Basis frame = random_orthonormal(ambient, d, rng);
    Vector w(ambient);
    for (int i = 0; i < ambient; ++i) w[i] = uniform_in(rng, -1.0, 1.0);
    const Vector e = frame.vectors.col(0);

    // Unit z within angle theta of e.
    Vector z;
    for (;;) {
      Vector r = random_gaussian(ambient, 1, rng);
      r -= r.dot(e) * e;
      const double rn = r.norm();
      if (rn > 1e-12) {
        const double psi = uniform_in(rng, 0.0, theta);
        z = std::cos(psi) * e + (std::sin(psi) / rn) * r;
        break;
      }
    }

    Eigen::VectorXd z_dot(d), e_dot(d);
    for (int i = 0; i < d; ++i) {
      z_dot[i] = L * z.dot(frame.vectors.col(i));
      e_dot[i] = L * frame.vectors.col(i).dot(e);
    }
    const double z_base = z.dot(w);
    const double e_base = e.dot(w);

    double m = z_base, M = z_base;
    for (int i = 0; i < d; ++i) {
      m += std::min(0.0, z_dot[i]);
      M += std::max(0.0, z_dot[i]);
    }
    if (M - m <= 1e-12) continue;  // degenerate cut, nothing to measure
    const double cut = m + beta * (M - m);

    double left_min = std::numeric_limits<double>::infinity();
    double left_max = -left_min;
    double right_min = left_min;
    double right_max = -left_min;
    auto feed_left = [&](double v) {
      left_min = std::min(left_min, v);
      left_max = std::max(left_max, v);
    };
    auto feed_right = [&](double v) {
      right_min = std::min(right_min, v);
      right_max = std::max(right_max, v);
    };

    // Corner values, split by the halfspace (closure on both sides: the
    // extrema of a linear functional over the cut box are attained there).
    std::vector<double> corner_z(corners), corner_e(corners);
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
      double vz = z_base, ve = e_base;
      for (int i = 0; i < d; ++i)
        if ((mask >> i) & 1ULL) {
          vz += z_dot[i];
          ve += e_dot[i];
        }
      corner_z[mask] = vz;
      corner_e[mask] = ve;
      if (vz <= cut) feed_left(ve);
      if (vz >= cut) feed_right(ve);
    }
    // Edge-hyperplane intersections belong to both closures.
    for (std::uint64_t mask = 0; mask < corners; ++mask)
      for (int i = 0; i < d; ++i) {
        if ((mask >> i) & 1ULL) continue;
        const std::uint64_t partner = mask | (1ULL << i);
        const double a = corner_z[mask], b = corner_z[partner];
        if ((a - cut) * (b - cut) < 0.0) {
          const double t = (cut - a) / (b - a);
          const double ve = corner_e[mask] + t * e_dot[i];
          feed_left(ve);
          feed_right(ve);
        }
      }

    const double extent_left =
        left_max > left_min ? left_max - left_min : 0.0;
    const double extent_right =
        right_max > right_min ? right_max - right_min : 0.0;
    worst_overshoot = std::max(
        {worst_overshoot, extent_left - bound_left, extent_right - bound_right});
  }

  LemmaCheckReport report;
  report.lemma_id = "hypercube-cut";
  report.trials = trials;
  report.worst = worst_overshoot;
  report.bound = 1e-9;
  report.pass = worst_overshoot <= report.bound;
  std::ostringstream params;
  params << "d=" << d << " L=" << L << " theta=" << theta << " beta=" << beta
         << " eps=" << eps << " (worst = extent minus its bound)";
  report.params = params.str();
  return report;
}

LemmaCheckReport check_ncrit_schedule(const ExperimentConfig& cfg) {
  World world = build_world(cfg);
  LearnerState& learner = world.learner;
  const double L = 2.0 * std::sqrt(static_cast<double>(cfg.D));

  bool quota_constant = true;
  bool delta_matches = true;
  double worst_side_dev = 0.0;

  double phase_quota = n_crit(learner);
  int observed_phase = 0;
  auto audit_phase_entry = [&]() {
    const double side = side_length(learner.hc);
    const double expected_side =
        L * std::pow(0.75, static_cast<double>(learner.phase));
    worst_side_dev = std::max(worst_side_dev, std::abs(side - expected_side));
    const double dp_here = delta_p(world.noise, side, cfg.D);
    const double dp_expected = delta_p(world.noise, expected_side, cfg.D);
    if (std::abs(dp_here - dp_expected) > 1e-9) delta_matches = false;
  };
  audit_phase_entry();

  Vector q(cfg.D);
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    sample_query_into(world.queries, world.streams.query, q);
    QueryTicket ticket{q};
    AskCapability access{ticket, world.db, world.noise, world.streams.noise};
    const StepOutcome out = step(learner, q, access);
    if (out.converged) break;
    if (out.shrank) {
      ++observed_phase;
      audit_phase_entry();
      phase_quota = n_crit(learner);
    } else if (n_crit(learner) != phase_quota) {
      quota_constant = false;
    }
  }

  const double h_t = std::sqrt(static_cast<double>(cfg.T)) /
                     std::log(static_cast<double>(cfg.T));
  const double phase_budget =
      std::ceil(std::log(L * std::sqrt(static_cast<double>(cfg.d)) * h_t) /
                std::log(4.0 / 3.0)) +
      1.0;
  const bool phases_ok = static_cast<double>(observed_phase) <= phase_budget;

  LemmaCheckReport report;
  report.lemma_id = "ncrit-schedule";
  report.trials = cfg.T;
  report.worst = worst_side_dev;
  report.bound = 1e-9;
  report.pass = quota_constant && delta_matches && phases_ok &&
                worst_side_dev <= report.bound;
  std::ostringstream params;
  params << "phases=" << observed_phase << " budget=" << phase_budget
         << " quota_constant=" << (quota_constant ? "yes" : "no")
         << " delta_p_matches=" << (delta_matches ? "yes" : "no");
  report.params = params.str();
  return report;
}

std::vector<LemmaCheckReport> run_all_lemma_checks(std::uint64_t seed) {
  std::vector<LemmaCheckReport> reports;
  std::uint64_t state = seed;

  {
    Rng rng(splitmix64(state));
    reports.push_back(check_support_equivalence(1000, rng));
  }
  {
    Rng rng(splitmix64(state));
    for (int m : {100, 1000, 10000})
      for (double dp : {0.05, 0.1, 0.2, 0.5})
        for (double p1 : {0.1, 0.3})
          reports.push_back(check_chernoff(m, p1, dp, 100000, rng));
  }
  {
    Rng rng(splitmix64(state));
    for (int d : {1, 2, 4, 8}) {
      const double phi =
          2.0 * std::asin(1.0 / (64.0 * std::sqrt(static_cast<double>(d))));
      for (double theta : {phi, 2.0 * phi, 0.3})
        reports.push_back(check_cut_lemma(d, 1.0, theta, 0.5, 10000, rng));
    }
  }
  {
    ExperimentConfig cfg;
    cfg.D = 4;
    cfg.d = 1;
    cfg.T = 100000;
    cfg.seed = splitmix64(state);
    cfg.noise_u = 1e-6;
    reports.push_back(check_ncrit_schedule(cfg));
  }
  return reports;
}

}  // namespace obisect
