#include "obisect/runner.hpp"

#include <cmath>
#include <string>

#include "obisect/errors.hpp"
#include "obisect/kahan.hpp"

namespace obisect {

RngStreams make_streams(std::uint64_t seed) {
  std::uint64_t state = seed;
  RngStreams s;
  s.subspace.seed(splitmix64(state));
  s.w_star.seed(splitmix64(state));
  s.noise.seed(splitmix64(state));
  s.query.seed(splitmix64(state));
  s.eval.seed(splitmix64(state));
  return s;
}

World build_world(const ExperimentConfig& cfg) {
  validate_config(cfg);
  RngStreams streams = make_streams(cfg.seed);

  Basis basis = make_subspace(cfg.D, cfg.d, streams.subspace);

  Vector w_star(cfg.D);
  if (cfg.w_star_mode == WStarMode::kExplicit) {
    for (int i = 0; i < cfg.D; ++i)
      w_star[i] = cfg.w_star_values[static_cast<std::size_t>(i)];
  } else {
    for (int i = 0; i < cfg.D; ++i) w_star[i] = uniform01(streams.w_star);
  }

  NoiseModel noise = noise_model_from(cfg);

  QueryDistribution queries;
  queries.kind = cfg.query_kind;
  queries.mixture_weight = cfg.mixture_weight;
  queries.jitter_angle = resolved_jitter(cfg);
  queries.scale_lo = cfg.scale_lo;
  queries.scale_hi = cfg.scale_hi;
  queries.subspace = basis;

  LearnerState learner = new_learner(cfg.D, cfg.d, cfg.T, basis, noise);
  learner.shrink_enabled = !cfg.disable_shrink;

  Vector w_star_coeffs = project_coeffs(w_star, basis);

  return World{make_database(std::move(w_star)), noise, std::move(queries),
               std::move(learner), std::move(w_star_coeffs),
               std::move(streams)};
}

RunSummary run_online(World& world, const ExperimentConfig& cfg,
                      const RowSink& sink) {
  LearnerState& learner = world.learner;
  RunSummary summary;
  summary.queries = cfg.T;

  auto log_phase = [&](std::int64_t t) {
    PhaseLogEntry entry;
    entry.phase = learner.phase;
    entry.side = side_length(learner.hc);
    entry.delta_p = delta_p(world.noise, entry.side, cfg.D);
    entry.n_crit = critical_count(learner.log_t, entry.delta_p);
    entry.entered_at = t;
    summary.phase_log.push_back(entry);
  };
  log_phase(1);

  KahanSum error_sum;
  Vector q(cfg.D);
  for (std::int64_t t = 1; t <= cfg.T; ++t) {
    sample_query_into(world.queries, world.streams.query, q);
    QueryTicket ticket{q};
    AskCapability access{ticket, world.db, world.noise, world.streams.noise};
    const StepOutcome out = step(learner, q, access);

    // Metrics side: the experimenter can see the exact answer; the learner
    // above never did.
    const double exact = world.db.w_star.dot(q);
    const double err = std::abs(out.answer - exact);
    error_sum.add(err);
    if (out.oracle_bit >= 0) ++summary.oracle_calls;
    if (out.shrank) log_phase(t);

    if (sink) {
      RunRecord rec;
      rec.t = t;
      rec.error = err;
      rec.avg_error_so_far = error_sum.value() / static_cast<double>(t);
      rec.phase = learner.phase;
      rec.side_length = side_length(learner.hc);
      rec.oracle_called = out.oracle_bit >= 0 ? 1 : 0;
      rec.matched_dim = out.matched_dim;
      sink(rec);
    }
  }

  summary.avg_error = error_sum.value() / static_cast<double>(cfg.T);
  summary.final_side = side_length(learner.hc);
  summary.phases = learner.phase;
  summary.contained = contains(learner.hc, world.w_star_coeffs);
  summary.converged = is_converged(learner);
  return summary;
}

RunSummary run_online(const ExperimentConfig& cfg, const RowSink& sink) {
  World world = build_world(cfg);
  return run_online(world, cfg, sink);
}

BatchReport run_batch(const ExperimentConfig& cfg, RunSummary* summary_out) {
  World world = build_world(cfg);
  RunSummary summary = run_online(world, cfg);

  // Evaluation phase: frozen hypothesis, fresh queries, no oracle access.
  const Vector w_t = representative(world.learner.hc);
  KahanSum abs_error;
  Vector q(cfg.D);
  for (std::int64_t i = 0; i < cfg.eval_m; ++i) {
    sample_query_into(world.queries, world.streams.eval, q);
    abs_error.add(std::abs(w_t.dot(q) - world.db.w_star.dot(q)));
  }

  BatchReport report;
  report.mean_abs_error = abs_error.value() / static_cast<double>(cfg.eval_m);
  report.bound = std::sqrt(static_cast<double>(cfg.D)) *
                 std::log(static_cast<double>(cfg.T)) /
                 std::sqrt(static_cast<double>(cfg.T));
  report.bound_satisfied = report.mean_abs_error <= report.bound;
  report.final_side = summary.final_side;
  report.converged = summary.converged;
  if (summary_out) *summary_out = std::move(summary);
  return report;
}

ScalingReport run_scaling(const ExperimentConfig& base,
                          const std::vector<std::int64_t>& t_list) {
  if (t_list.size() < 3)
    throw UsageError("run_scaling: need at least three stream lengths");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (t_list[i] <= t_list[i - 1])
      throw UsageError("run_scaling: stream lengths must be increasing");

  ScalingReport report;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::int64_t t_len : t_list) {
    ExperimentConfig cfg = base;
    cfg.T = t_len;
    const RunSummary summary = run_online(cfg);
    report.points.push_back({t_len, summary.avg_error});
    const double x = std::log(static_cast<double>(t_len));
    const double y = std::log(summary.avg_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(t_list.size());
  report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

}  // namespace obisect
