#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "obisect/config.hpp"
#include "obisect/csv.hpp"
#include "obisect/learner.hpp"
#include "obisect/protocol.hpp"
#include "obisect/querygen.hpp"

namespace obisect {

/// Independent deterministic sub-streams derived from the experiment seed.
struct RngStreams {
  Rng subspace;
  Rng w_star;
  Rng noise;
  Rng query;
  Rng eval;
};

RngStreams make_streams(std::uint64_t seed);

/// A fully wired experiment: hidden database, noise, query source, learner.
struct World {
  Database db;
  NoiseModel noise;
  QueryDistribution queries;
  LearnerState learner;
  Vector w_star_coeffs;  // projection of w* onto the query space (metrics side)
  RngStreams streams;
};

World build_world(const ExperimentConfig& cfg);

/// Snapshot taken at every shrink (and at the start), the experimenter's
/// log of the phase schedule.
struct PhaseLogEntry {
  int phase = 0;
  double side = 0.0;
  double delta_p = 0.0;
  double n_crit = 0.0;
  std::int64_t entered_at = 0;  // query index at which this phase began
};

struct RunSummary {
  std::int64_t queries = 0;
  double avg_error = 0.0;
  double final_side = 0.0;
  int phases = 0;
  std::int64_t oracle_calls = 0;
  bool contained = false;  // w* projection inside the final hypercube
  bool converged = false;
  std::vector<PhaseLogEntry> phase_log;
};

using RowSink = std::function<void(const RunRecord&)>;

/// Drives the T-query online loop: one fresh ticket per query, per-query
/// error measured against the exact answer on the metrics side only.
RunSummary run_online(World& world, const ExperimentConfig& cfg,
                      const RowSink& sink = {});
RunSummary run_online(const ExperimentConfig& cfg, const RowSink& sink = {});

/// Train-then-test report: the final hypothesis against fresh queries.
struct BatchReport {
  double mean_abs_error = 0.0;
  double bound = 0.0;  // sqrt(D) * ln(T) / sqrt(T)
  bool bound_satisfied = false;
  double final_side = 0.0;
  bool converged = false;
};

BatchReport run_batch(const ExperimentConfig& cfg,
                      RunSummary* summary_out = nullptr);

struct ScalingPoint {
  std::int64_t T = 0;
  double avg_error = 0.0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double slope = 0.0;  // least-squares slope of ln(avg_error) vs ln(T)
};

/// Repeats the online run across stream lengths and fits the log-log error
/// trend. T values must be increasing and at least three.
ScalingReport run_scaling(const ExperimentConfig& base,
                          const std::vector<std::int64_t>& t_list);

}  // namespace obisect
