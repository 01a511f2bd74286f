#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obisect/config.hpp"
#include "obisect/hypercube.hpp"
#include "obisect/rng.hpp"

namespace obisect {

/// Result of one statistical or brute-force check against a stated bound.
struct LemmaCheckReport {
  std::string lemma_id;
  std::int64_t trials = 0;
  double worst = 0.0;  // worst observed value (semantics noted in params)
  double bound = 0.0;  // value the worst observation must not exceed
  bool pass = false;
  std::string params;
};

std::string format_report(const LemmaCheckReport& report);

/// Exact support maximum by enumerating all 2^d corners. This is the
/// independent oracle for the closed-form support; it must stay that way.
double brute_force_support(const Hypercube& hc, const Vector& q);

/// Closed form vs corner enumeration on random instances across d = 1..12.
LemmaCheckReport check_support_equivalence(int instances_per_dim, Rng& rng);

/// Binomial tail concentration: empirical tails of Bin(m, p1) above and
/// Bin(m, p1 + dp) below mu1 + m*dp/2 against exp(-m*dp^2/10).
LemmaCheckReport check_chernoff(int m, double p1, double dp, int trials,
                                Rng& rng);

/// Linear-threshold cut geometry: the extent of a box along a basis direction
/// after cutting with a nearby halfspace, against L*(beta + eps) and
/// L*(1 - beta + eps) with eps = 8*sin(theta/2)*sqrt(d).
LemmaCheckReport check_cut_lemma(int d, double L, double theta, double beta,
                                 int trials, Rng& rng);

/// Replays a run and audits the phase schedule: quota constant within each
/// phase, per-phase crossing probability matching the side geometry, and the
/// phase count within its logarithmic budget.
LemmaCheckReport check_ncrit_schedule(const ExperimentConfig& cfg);

/// The full default battery behind the verify-lemmas subcommand.
std::vector<LemmaCheckReport> run_all_lemma_checks(std::uint64_t seed);

}  // namespace obisect
