#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "delopt/delay_sim.hpp"
#include "delopt/estimators.hpp"
#include "delopt/geometry.hpp"
#include "delopt/rng.hpp"

namespace delopt {

// What a learner asks the loss oracle for each round.
enum class FeedbackKind { gradient, multipoint, twopoint };

// Points the environment must evaluate this round. Full-information
// learners emit one point, (n+1)-point bandits emit n+1, the two-point
// bandit emits 2 along with the sphere direction it drew.
struct QueryBundle {
  std::vector<Vector> points;
  std::optional<Vector> direction;
};

// Two-point feedback as it travels over the wire: values only. The
// direction never leaves the learner; it is matched back by round stamp.
struct TwopointValues {
  double plus_value = 0.0;
  double minus_value = 0.0;
  double delta = 0.0;
};

using FeedbackPayload = std::variant<Vector, MultipointFeedback, TwopointValues>;

// One delivered feedback item. The stamp (query round) is present only when
// the transport ran in stamped mode.
struct DeliveredFeedback {
  FeedbackPayload payload;
  std::optional<int> stamp;
};

// Online learner protocol: per round t, queries(t) yields the probe points,
// then update(t, delivered) consumes whatever feedback arrived, possibly
// none or several rounds' worth at once. iterate() is the current decision.
// Instances own mutable state and are single-driver.
class Learner {
 public:
  virtual ~Learner() = default;

  const Vector& iterate() const { return x_; }
  long long feedback_count() const { return received_; }

  virtual FeedbackKind feedback_kind() const = 0;
  virtual FeedbackMode feedback_mode() const = 0;
  virtual QueryBundle queries(int t) = 0;
  virtual void update(int t, std::span<const DeliveredFeedback> delivered) = 0;

 protected:
  Vector x_;
  long long received_ = 0;
};

// Online gradient descent for beta-strongly convex losses with step 1/(beta t).
// Assumes the classic no-delay protocol: exactly one gradient per round.
class OgdScLearner final : public Learner {
 public:
  OgdScLearner(int n, double beta, const BallDomain& domain,
               std::optional<Vector> start = std::nullopt);

  FeedbackKind feedback_kind() const override { return FeedbackKind::gradient; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::anonymous; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  double beta_;
  BallDomain domain_;
};

// Delay-tolerant gradient descent with a constant step: one projected move
// per round along the sum of all gradients that arrived.
class DogdLearner final : public Learner {
 public:
  DogdLearner(int n, double eta, const BallDomain& domain,
              std::optional<Vector> start = std::nullopt);

  double step() const { return eta_; }

  FeedbackKind feedback_kind() const override { return FeedbackKind::gradient; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::anonymous; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  double eta_;
  BallDomain domain_;
};

// Delay-tolerant gradient descent for strongly convex losses. The inverse
// step h grows by beta/2 for every gradient consumed, so h after any prefix
// equals (beta/2) * feedback_count() exactly; rounds with no arrivals leave
// the decision untouched. Needs no stamps: h depends only on how many
// gradients arrived, not on which rounds they came from.
class DogdScLearner final : public Learner {
 public:
  DogdScLearner(int n, double beta, const BallDomain& domain,
                std::optional<Vector> start = std::nullopt);

  double inverse_step() const {
    return 0.5 * beta_ * static_cast<double>(received_);
  }

  FeedbackKind feedback_kind() const override { return FeedbackKind::gradient; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::anonymous; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  double beta_;
  BallDomain domain_;
};

// Bandit version of the strongly convex delayed learner: probes the loss at
// x and x + delta e_i, receives the (n+1)-point value tuples with delay, and
// steps along the summed forward-difference estimates. Iterates live in the
// (1 - delta/r)-shrunken set so every probe stays feasible. Anonymous by
// construction: the estimate for round k is a function of round-k values
// only, so arrival order is all that matters.
class BdogdScLearner final : public Learner {
 public:
  BdogdScLearner(int n, double beta, double delta, const BallDomain& domain,
                 double inner_radius,
                 std::optional<Vector> start = std::nullopt);

  double inverse_step() const {
    return 0.5 * beta_ * static_cast<double>(received_);
  }
  double probe_radius() const { return delta_; }
  const BallDomain& shrunken_domain() const { return shrunken_; }

  FeedbackKind feedback_kind() const override { return FeedbackKind::multipoint; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::anonymous; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  int n_;
  double beta_;
  double delta_;
  BallDomain shrunken_;
};

// Two-point bandit variant: probes x +/- delta u_t for a fresh sphere
// direction each round and rescales the value gap into a gradient estimate.
// The direction is stored per round, so delivered values must carry their
// query-round stamp; without it the pair cannot be matched to its direction
// and no meaningful update exists. Anonymous delivery is a protocol error.
class TwopointLearner final : public Learner {
 public:
  TwopointLearner(int n, double beta, double delta, const BallDomain& domain,
                  double inner_radius, Rng rng,
                  std::optional<Vector> start = std::nullopt);

  double inverse_step() const {
    return 0.5 * beta_ * static_cast<double>(received_);
  }
  double probe_radius() const { return delta_; }
  const BallDomain& shrunken_domain() const { return shrunken_; }
  std::size_t pending_directions() const { return directions_.size(); }

  FeedbackKind feedback_kind() const override { return FeedbackKind::twopoint; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::stamped; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  int n_;
  double beta_;
  double delta_;
  BallDomain shrunken_;
  Rng rng_;
  std::map<int, Vector> directions_;
};

// Delayed bandit gradient descent baseline: same (n+1)-point probes, but a
// constant step and one projected move per arrived tuple, taken in ascending
// query-round order.
class DbgdLearner final : public Learner {
 public:
  DbgdLearner(int n, double eta, double delta, const BallDomain& domain,
              double inner_radius,
              std::optional<Vector> start = std::nullopt);

  double step() const { return eta_; }
  double probe_radius() const { return delta_; }
  const BallDomain& shrunken_domain() const { return shrunken_; }

  FeedbackKind feedback_kind() const override { return FeedbackKind::multipoint; }
  FeedbackMode feedback_mode() const override { return FeedbackMode::anonymous; }
  QueryBundle queries(int t) override;
  void update(int t, std::span<const DeliveredFeedback> delivered) override;

 private:
  int n_;
  double eta_;
  double delta_;
  BallDomain shrunken_;
};

}  // namespace delopt
