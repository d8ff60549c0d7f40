#include "delopt/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "delopt/errors.hpp"
#include "delopt/rng.hpp"

namespace delopt {

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ogd_sc: return "ogd_sc";
    case Algorithm::dogd: return "dogd";
    case Algorithm::dogd_sc: return "dogd_sc";
    case Algorithm::bdogd_sc: return "bdogd_sc";
    case Algorithm::twopoint: return "twopoint";
    case Algorithm::dbgd: return "dbgd";
  }
  throw ParameterError("unknown algorithm");
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::ogd_sc, Algorithm::dogd, Algorithm::dogd_sc,
                      Algorithm::bdogd_sc, Algorithm::twopoint, Algorithm::dbgd})
    if (name == algorithm_name(a)) return a;
  return std::nullopt;
}

bool is_bandit(Algorithm algorithm) {
  return algorithm == Algorithm::bdogd_sc || algorithm == Algorithm::twopoint ||
         algorithm == Algorithm::dbgd;
}

DeltaRule default_delta_rule(Algorithm algorithm) {
  // The constant-step baseline couples its probe radius to the delay mass;
  // the strongly convex bandits shrink it with the horizon alone.
  if (algorithm == Algorithm::dbgd) return DeltaRule::inv_t_plus_d();
  return DeltaRule::ln_t_over_t();
}

DelaySchedule ScheduleSpec::build(int horizon) const {
  if (explicit_delays) {
    if (static_cast<int>(explicit_delays->size()) != horizon)
      throw ScheduleError("explicit schedule must list exactly one delay per round (" +
                          std::to_string(explicit_delays->size()) + " given, horizon " +
                          std::to_string(horizon) + ")");
    return DelaySchedule::custom(*explicit_delays);
  }
  return parse_schedule_pattern(pattern, horizon);
}

namespace {

double resolve_delta(const DeltaRule& rule, int horizon, long long delay_sum) {
  switch (rule.kind) {
    case DeltaRule::Kind::fixed:
      return rule.value;
    case DeltaRule::Kind::ln_t_over_t:
      return rule.value * std::log(static_cast<double>(horizon)) /
             static_cast<double>(horizon);
    case DeltaRule::Kind::inv_t_plus_d:
      return 1.0 / static_cast<double>(horizon + delay_sum);
  }
  throw ParameterError("unknown delta rule");
}

FeedbackPayload make_payload(FeedbackKind kind, const LossOracle& loss,
                             const QueryBundle& bundle,
                             const std::vector<double>& values, double delta) {
  switch (kind) {
    case FeedbackKind::gradient:
      return loss.gradient(bundle.points.front());
    case FeedbackKind::multipoint: {
      Vector offsets(static_cast<Eigen::Index>(values.size()) - 1);
      for (std::size_t i = 1; i < values.size(); ++i)
        offsets[static_cast<Eigen::Index>(i - 1)] = values[i];
      return MultipointFeedback{values.front(), std::move(offsets), delta};
    }
    case FeedbackKind::twopoint:
      return TwopointValues{values[0], values[1], delta};
  }
  throw ParameterError("unknown feedback kind");
}

}  // namespace

ResolvedParams resolve_params(const ExperimentConfig& config) {
  if (config.horizon < 1) throw ParameterError("horizon T must be at least 1");
  if (config.dim < 1) throw ParameterError("dimension must be at least 1");
  if (!std::isfinite(config.radius) || config.radius <= 0.0)
    throw ParameterError("radius must be positive");
  if (!std::isfinite(config.inner_radius) || config.inner_radius <= 0.0 ||
      config.inner_radius > config.radius)
    throw ParameterError("inner radius must satisfy 0 < r <= radius");
  if (!std::isfinite(config.beta) || config.beta <= 0.0)
    throw ParameterError("beta must be positive");
  if (!std::isfinite(config.alpha) || config.alpha <= 0.0)
    throw ParameterError("alpha must be positive");

  // The configured schedule is validated even when it is about to be
  // replaced, so a bad spec never goes unnoticed.
  DelaySchedule schedule = config.schedule.build(config.horizon);
  // The no-delay baseline always runs against same-round feedback.
  if (config.algorithm == Algorithm::ogd_sc)
    schedule = DelaySchedule::unit(config.horizon);

  const long long delay_sum = schedule.delay_sum();
  const int max_delay = schedule.max_delay();

  const double lipschitz = config.lipschitz.value_or(
      2.0 * config.radius + std::sqrt(static_cast<double>(config.dim)));
  if (!std::isfinite(lipschitz) || lipschitz <= 0.0)
    throw ParameterError("Lipschitz constant must be positive");

  double delta = 0.0;
  if (is_bandit(config.algorithm)) {
    const DeltaRule rule =
        config.delta_rule.value_or(default_delta_rule(config.algorithm));
    delta = resolve_delta(rule, config.horizon, delay_sum);
    if (!std::isfinite(delta) || delta <= 0.0 || delta >= config.inner_radius)
      throw ParameterError(
          "probe radius delta must satisfy 0 < delta < inner radius (got " +
          std::to_string(delta) + ")");
  }

  double eta = 0.0;
  if (config.algorithm == Algorithm::dogd || config.algorithm == Algorithm::dbgd)
    eta = 1.0 / (lipschitz *
                 std::sqrt(static_cast<double>(config.horizon + delay_sum)));

  return {std::move(schedule), delay_sum, max_delay, lipschitz, delta, eta};
}

RegretLedger::RegretLedger(std::vector<RegretRow> rows, Comparator comparator)
    : rows_(std::move(rows)), comparator_(std::move(comparator)) {
  if (rows_.empty()) throw ParameterError("ledger needs at least one row");
}

double instantaneous_loss(FeedbackKind kind,
                          std::span<const double> query_values) {
  if (query_values.empty())
    throw ParameterError("no query values for this round");
  if (kind == FeedbackKind::gradient) return query_values.front();
  double sum = 0.0;
  for (double v : query_values) sum += v;
  return sum / static_cast<double>(query_values.size());
}

std::unique_ptr<Learner> make_learner(const ExperimentConfig& config,
                                      const ResolvedParams& params,
                                      Rng learner_rng) {
  const BallDomain domain(config.radius);
  switch (config.algorithm) {
    case Algorithm::ogd_sc:
      return std::make_unique<OgdScLearner>(config.dim, config.beta, domain);
    case Algorithm::dogd:
      return std::make_unique<DogdLearner>(config.dim, params.eta, domain);
    case Algorithm::dogd_sc:
      return std::make_unique<DogdScLearner>(config.dim, config.beta, domain);
    case Algorithm::bdogd_sc:
      return std::make_unique<BdogdScLearner>(config.dim, config.beta,
                                              params.delta, domain,
                                              config.inner_radius);
    case Algorithm::twopoint:
      return std::make_unique<TwopointLearner>(config.dim, config.beta,
                                               params.delta, domain,
                                               config.inner_radius,
                                               std::move(learner_rng));
    case Algorithm::dbgd:
      return std::make_unique<DbgdLearner>(config.dim, params.eta, params.delta,
                                           domain, config.inner_radius);
  }
  throw ParameterError("unknown algorithm");
}

RegretLedger run_experiment(const ExperimentConfig& config) {
  const ResolvedParams params = resolve_params(config);
  const BallDomain domain(config.radius);

  // Stream 0 draws the oblivious loss sequence up front; stream 1 belongs to
  // the learner. Their consumption never interleaves.
  Rng loss_rng = make_rng(config.seed, 0);
  const std::vector<QuadraticLoss> losses = sample_quadratic_sequence(
      loss_rng, config.horizon, config.dim, config.radius);
  const Comparator comparator = offline_optimum(losses, domain);

  std::unique_ptr<Learner> learner =
      make_learner(config, params, make_rng(config.seed, 1));
  const FeedbackKind kind = learner->feedback_kind();
  const FeedbackMode mode = learner->feedback_mode();
  FeedbackBuffer<FeedbackPayload> buffer(mode);

  std::vector<RegretRow> rows;
  rows.reserve(static_cast<std::size_t>(config.horizon));
  double cum_loss = 0.0;
  double cum_comparator = 0.0;
  std::vector<double> values;

  for (int t = 1; t <= config.horizon; ++t) {
    const QuadraticLoss& loss = losses[static_cast<std::size_t>(t - 1)];
    const QueryBundle bundle = learner->queries(t);
    values.clear();
    for (const Vector& point : bundle.points) values.push_back(loss.value(point));

    buffer.enqueue(t, params.schedule.delay(t),
                   make_payload(kind, loss, bundle, values, params.delta));

    std::vector<DeliveredFeedback> delivered;
    if (mode == FeedbackMode::stamped) {
      for (StampedPayload<FeedbackPayload>& item : buffer.deliver_stamped(t))
        delivered.push_back({std::move(item.payload), item.stamp});
    } else {
      for (FeedbackPayload& payload : buffer.deliver(t))
        delivered.push_back({std::move(payload), std::nullopt});
    }
    learner->update(t, delivered);

    const double inst = instantaneous_loss(kind, values);
    cum_loss += inst;
    cum_comparator += loss.value(comparator.x_star);
    rows.push_back({t, inst, cum_loss, cum_loss - cum_comparator});
  }

  // Feedback scheduled past the horizon is delivered into the void; the
  // learner stopped at T and never sees it.
  for (int t = config.horizon + 1; t <= config.horizon + params.max_delay - 1; ++t)
    buffer.deliver(t);
  if (!buffer.empty())
    throw ProtocolError("feedback still in flight after the post-horizon flush");

  return RegretLedger(std::move(rows), comparator);
}

void write_csv(const RegretLedger& ledger, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "t,loss,cum_loss,cum_regret\n";
  char line[160];
  for (const RegretRow& row : ledger.rows()) {
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%.12g\n", row.t, row.loss,
                  row.cum_loss, row.cum_regret);
    out << line;
  }
  out.flush();
  if (!out.good()) throw IoError("failed writing '" + path + "'");
}

}  // namespace delopt
