#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "delopt/delay_sim.hpp"
#include "delopt/learners.hpp"
#include "delopt/losses.hpp"

namespace delopt {

enum class Algorithm { ogd_sc, dogd, dogd_sc, bdogd_sc, twopoint, dbgd };

const char* algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& name);

// True for the algorithms that see loss values only, never gradients.
bool is_bandit(Algorithm algorithm);

// How the probe radius delta is chosen once T and D are known.
struct DeltaRule {
  enum class Kind { fixed, ln_t_over_t, inv_t_plus_d };

  Kind kind = Kind::ln_t_over_t;
  double value = 1.0;  // the fixed delta, or the coefficient c in c ln(T)/T

  static DeltaRule fixed(double delta) { return {Kind::fixed, delta}; }
  static DeltaRule ln_t_over_t(double c = 1.0) { return {Kind::ln_t_over_t, c}; }
  static DeltaRule inv_t_plus_d() { return {Kind::inv_t_plus_d, 1.0}; }
};

// The probe-radius rule each bandit algorithm defaults to.
DeltaRule default_delta_rule(Algorithm algorithm);

// Delay schedule as specified by a user: either an inline pattern string
// ("unit", "constant:3", "periodic:2,3,2,1,4,1,3") or explicit per-round
// delays, e.g. loaded from a file, which must then match the horizon.
struct ScheduleSpec {
  std::string pattern = "unit";
  std::optional<std::vector<int>> explicit_delays;

  DelaySchedule build(int horizon) const;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::dogd_sc;
  int horizon = 1000;  // T
  int dim = 10;        // n
  double radius = 1.0;       // R, the decision ball
  double inner_radius = 1.0; // r with the r-ball contained in the decision set
  double beta = 2.0;         // strong convexity of each loss
  double alpha = 2.0;        // smoothness, used by diagnostics only
  std::optional<double> lipschitz;     // default 2R + sqrt(n)
  std::optional<DeltaRule> delta_rule; // default: default_delta_rule(algorithm)
  ScheduleSpec schedule;
  std::uint64_t seed = 1;
  std::string output_path;  // consumed by the CLI; empty means no CSV
};

// Everything derived from a config before the run starts.
struct ResolvedParams {
  DelaySchedule schedule;  // always unit for the no-delay baseline
  long long delay_sum;     // D
  int max_delay;           // d
  double lipschitz;        // L
  double delta;            // 0 for full-information algorithms
  double eta;              // constant step for the constant-step learners, else 0
};

ResolvedParams resolve_params(const ExperimentConfig& config);

struct RegretRow {
  int t;
  double loss;        // this round's loss (query-point average for bandits)
  double cum_loss;
  double cum_regret;  // cum_loss minus the comparator's loss over rounds 1..t
};

class RegretLedger {
 public:
  RegretLedger(std::vector<RegretRow> rows, Comparator comparator);

  const std::vector<RegretRow>& rows() const { return rows_; }
  const Comparator& comparator() const { return comparator_; }
  double comparator_total() const { return comparator_.total_loss; }
  double final_cumulative_loss() const { return rows_.back().cum_loss; }
  double final_regret() const { return rows_.back().cum_regret; }

 private:
  std::vector<RegretRow> rows_;
  Comparator comparator_;
};

// The loss charged for one round given the true loss values at the round's
// query points: the single value for full information, the average over all
// probes for the bandit protocols.
double instantaneous_loss(FeedbackKind kind, std::span<const double> query_values);

// Builds the configured learner. Exposed for tests that drive learners
// against hand-made feedback instead of the full loop.
std::unique_ptr<Learner> make_learner(const ExperimentConfig& config,
                                      const ResolvedParams& params,
                                      Rng learner_rng);

// Plays the full loop: draws the oblivious loss sequence from the seed,
// routes queries and delayed feedback through a buffer in the learner's
// feedback mode, and accounts regret against the offline optimum. Feedback
// still in flight after round T is flushed and discarded.
RegretLedger run_experiment(const ExperimentConfig& config);

// CSV with header t,loss,cum_loss,cum_regret; 12 significant digits.
void write_csv(const RegretLedger& ledger, const std::string& path);

}  // namespace delopt
