#include "delopt/learners.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "delopt/errors.hpp"

namespace delopt {

namespace {

void check_round(int t) {
  if (t < 1) throw ProtocolError("round counter must be at least 1");
}

double checked_beta(double beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw ParameterError("strong convexity modulus beta must be positive");
  return beta;
}

double checked_eta(double eta) {
  if (!std::isfinite(eta) || eta <= 0.0)
    throw ParameterError("step size eta must be positive");
  return eta;
}

// Default start: the all-ones direction scaled to unit norm, projected so it
// is feasible for any radius.
Vector default_start(int n) {
  if (n < 1) throw ParameterError("dimension must be at least 1");
  return Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

Vector initial_point(int n, const BallDomain& domain,
                     std::optional<Vector>&& start) {
  Vector x = start ? std::move(*start) : default_start(n);
  if (x.size() != n)
    throw ParameterError("start point has the wrong dimension");
  return domain.project(x);
}

BallDomain make_shrunken(const BallDomain& domain, double delta,
                           double inner_radius) {
  return domain.shrink(delta, inner_radius);
}

const Vector& expect_gradient(const DeliveredFeedback& item) {
  const Vector* g = std::get_if<Vector>(&item.payload);
  if (g == nullptr) throw FeedbackError("learner expected gradient feedback");
  return *g;
}

const MultipointFeedback& expect_multipoint(const DeliveredFeedback& item,
                                            Eigen::Index n) {
  const MultipointFeedback* fb = std::get_if<MultipointFeedback>(&item.payload);
  if (fb == nullptr)
    throw FeedbackError("learner expected multipoint value feedback");
  if (fb->offset_values.size() != n)
    throw FeedbackError("multipoint feedback must hold exactly n offset values");
  return *fb;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                      b.data(), b.data() + b.size());
}

// Sums in a canonical order so the result depends only on the multiset of
// summands; floating point addition is not associative, and without this the
// trajectory would leak the delivery order of same-round arrivals.
Vector canonical_sum(std::vector<Vector> items, Eigen::Index n) {
  std::sort(items.begin(), items.end(), lexicographic_less);
  Vector sum = Vector::Zero(n);
  for (const Vector& v : items) sum += v;
  return sum;
}

}  // namespace

OgdScLearner::OgdScLearner(int n, double beta, const BallDomain& domain,
                           std::optional<Vector> start)
    : beta_(checked_beta(beta)), domain_(domain) {
  x_ = initial_point(n, domain_, std::move(start));
}

QueryBundle OgdScLearner::queries(int t) {
  check_round(t);
  return {{x_}, std::nullopt};
}

void OgdScLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  if (delivered.size() != 1)
    throw ProtocolError(
        "this learner assumes unit delay: exactly one gradient per round");
  const Vector& g = expect_gradient(delivered.front());
  received_ += 1;
  const double eta = 1.0 / (beta_ * static_cast<double>(t));
  x_ = domain_.project(x_ - eta * g);
}

DogdLearner::DogdLearner(int n, double eta, const BallDomain& domain,
                         std::optional<Vector> start)
    : eta_(checked_eta(eta)), domain_(domain) {
  x_ = initial_point(n, domain_, std::move(start));
}

QueryBundle DogdLearner::queries(int t) {
  check_round(t);
  return {{x_}, std::nullopt};
}

void DogdLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  std::vector<Vector> grads;
  grads.reserve(delivered.size());
  for (const DeliveredFeedback& item : delivered)
    grads.push_back(expect_gradient(item));
  received_ += static_cast<long long>(grads.size());
  if (grads.empty()) return;
  x_ = domain_.project(x_ - eta_ * canonical_sum(std::move(grads), x_.size()));
}

DogdScLearner::DogdScLearner(int n, double beta, const BallDomain& domain,
                             std::optional<Vector> start)
    : beta_(checked_beta(beta)), domain_(domain) {
  x_ = initial_point(n, domain_, std::move(start));
}

QueryBundle DogdScLearner::queries(int t) {
  check_round(t);
  return {{x_}, std::nullopt};
}

void DogdScLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  std::vector<Vector> grads;
  grads.reserve(delivered.size());
  for (const DeliveredFeedback& item : delivered)
    grads.push_back(expect_gradient(item));
  received_ += static_cast<long long>(grads.size());
  // No arrivals: h is unchanged and so is the decision.
  if (grads.empty()) return;
  // Multiplying by a precomputed 1/h keeps the update the same floating
  // point expression as a plain gradient step with rate 1/h.
  const double rate = 1.0 / inverse_step();
  x_ = domain_.project(x_ - rate * canonical_sum(std::move(grads), x_.size()));
}

BdogdScLearner::BdogdScLearner(int n, double beta, double delta,
                               const BallDomain& domain, double inner_radius,
                               std::optional<Vector> start)
    : n_(n),
      beta_(checked_beta(beta)),
      delta_(delta),
      shrunken_(make_shrunken(domain, delta, inner_radius)) {
  Vector x0 = start ? std::move(*start)
                    : Vector((1.0 - delta / inner_radius) * default_start(n));
  x_ = initial_point(n, shrunken_, std::move(x0));
}

QueryBundle BdogdScLearner::queries(int t) {
  check_round(t);
  if (!shrunken_.contains(x_))
    throw ProtocolError("iterate left the shrunken feasible set");
  QueryBundle bundle;
  bundle.points.reserve(static_cast<std::size_t>(n_) + 1);
  bundle.points.push_back(x_);
  for (int i = 0; i < n_; ++i)
    bundle.points.push_back(x_ + delta_ * Vector::Unit(n_, i));
  return bundle;
}

void BdogdScLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  std::vector<Vector> estimates;
  estimates.reserve(delivered.size());
  for (const DeliveredFeedback& item : delivered)
    estimates.push_back(multipoint_estimate(expect_multipoint(item, n_)));
  received_ += static_cast<long long>(estimates.size());
  if (estimates.empty()) return;
  const double rate = 1.0 / inverse_step();
  x_ = shrunken_.project(x_ - rate * canonical_sum(std::move(estimates), n_));
}

TwopointLearner::TwopointLearner(int n, double beta, double delta,
                                 const BallDomain& domain, double inner_radius,
                                 Rng rng, std::optional<Vector> start)
    : n_(n),
      beta_(checked_beta(beta)),
      delta_(delta),
      shrunken_(make_shrunken(domain, delta, inner_radius)),
      rng_(std::move(rng)) {
  Vector x0 = start ? std::move(*start)
                    : Vector((1.0 - delta / inner_radius) * default_start(n));
  x_ = initial_point(n, shrunken_, std::move(x0));
}

QueryBundle TwopointLearner::queries(int t) {
  check_round(t);
  if (!shrunken_.contains(x_))
    throw ProtocolError("iterate left the shrunken feasible set");
  Vector u = sample_unit_sphere(rng_, n_);
  QueryBundle bundle;
  bundle.points.push_back(x_ + delta_ * u);
  bundle.points.push_back(x_ - delta_ * u);
  bundle.direction = u;
  directions_.insert_or_assign(t, std::move(u));
  return bundle;
}

void TwopointLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  struct Arrival {
    int stamp;
    const TwopointValues* values;
  };
  std::vector<Arrival> arrivals;
  arrivals.reserve(delivered.size());
  for (const DeliveredFeedback& item : delivered) {
    if (!item.stamp)
      throw ProtocolError(
          "two-point feedback arrived without a round stamp; anonymous values "
          "cannot be matched to their query direction");
    const TwopointValues* values = std::get_if<TwopointValues>(&item.payload);
    if (values == nullptr)
      throw FeedbackError("learner expected two-point value feedback");
    arrivals.push_back({*item.stamp, values});
  }
  received_ += static_cast<long long>(arrivals.size());
  if (arrivals.empty()) return;

  // Stamp order is the canonical summation order here.
  std::sort(arrivals.begin(), arrivals.end(),
            [](const Arrival& a, const Arrival& b) { return a.stamp < b.stamp; });
  Vector sum = Vector::Zero(n_);
  for (const Arrival& arrival : arrivals) {
    auto it = directions_.find(arrival.stamp);
    if (it == directions_.end())
      throw ProtocolError("no stored direction for feedback stamped round " +
                          std::to_string(arrival.stamp));
    const TwopointFeedback fb{arrival.values->plus_value,
                              arrival.values->minus_value, it->second,
                              arrival.values->delta};
    sum += twopoint_estimate(fb, n_);
    directions_.erase(it);
  }
  const double rate = 1.0 / inverse_step();
  x_ = shrunken_.project(x_ - rate * sum);
}

DbgdLearner::DbgdLearner(int n, double eta, double delta,
                         const BallDomain& domain, double inner_radius,
                         std::optional<Vector> start)
    : n_(n),
      eta_(checked_eta(eta)),
      delta_(delta),
      shrunken_(make_shrunken(domain, delta, inner_radius)) {
  Vector x0 = start ? std::move(*start)
                    : Vector((1.0 - delta / inner_radius) * default_start(n));
  x_ = initial_point(n, shrunken_, std::move(x0));
}

QueryBundle DbgdLearner::queries(int t) {
  check_round(t);
  if (!shrunken_.contains(x_))
    throw ProtocolError("iterate left the shrunken feasible set");
  QueryBundle bundle;
  bundle.points.reserve(static_cast<std::size_t>(n_) + 1);
  bundle.points.push_back(x_);
  for (int i = 0; i < n_; ++i)
    bundle.points.push_back(x_ + delta_ * Vector::Unit(n_, i));
  return bundle;
}

void DbgdLearner::update(int t, std::span<const DeliveredFeedback> delivered) {
  check_round(t);
  // One projected move per arrived tuple, in delivery order (ascending query
  // round when the transport delivers in order). Not batched: with an active
  // projection the sequential result differs from a single summed step.
  for (const DeliveredFeedback& item : delivered) {
    const Vector estimate = multipoint_estimate(expect_multipoint(item, n_));
    x_ = shrunken_.project(x_ - eta_ * estimate);
  }
  received_ += static_cast<long long>(delivered.size());
}

}  // namespace delopt
