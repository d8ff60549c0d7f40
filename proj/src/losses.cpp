#include "delopt/losses.hpp"

#include <cmath>
#include <utility>

#include "delopt/errors.hpp"

namespace delopt {

QuadraticLoss::QuadraticLoss(Vector b, double domain_radius)
    : b_(std::move(b)) {
  if (b_.size() == 0) throw ParameterError("linear term must be non-empty");
  if (!b_.allFinite())
    throw InvalidInputError("linear term has non-finite entries");
  if (!std::isfinite(domain_radius) || domain_radius <= 0.0)
    throw ParameterError("domain radius must be positive and finite");
  if (b_.lpNorm<Eigen::Infinity>() > 1.0)
    throw ParameterError("linear term entries must lie in [-1, 1]");
  lipschitz_ = 2.0 * domain_radius + std::sqrt(static_cast<double>(b_.size()));
}

double QuadraticLoss::value(const Vector& x) const {
  if (x.size() != b_.size())
    throw ParameterError("dimension mismatch between decision and loss");
  if (!x.allFinite())
    throw InvalidInputError("loss evaluated at a non-finite point");
  return x.squaredNorm() + b_.dot(x);
}

Vector QuadraticLoss::gradient(const Vector& x) const {
  if (x.size() != b_.size())
    throw ParameterError("dimension mismatch between decision and loss");
  if (!x.allFinite())
    throw InvalidInputError("gradient evaluated at a non-finite point");
  return 2.0 * x + b_;
}

QuadraticLoss sample_quadratic(Rng& rng, int n, double domain_radius) {
  if (n < 1) throw ParameterError("dimension must be at least 1");
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector b(n);
  for (int i = 0; i < n; ++i) b[i] = unif(rng);
  return QuadraticLoss(std::move(b), domain_radius);
}

std::vector<QuadraticLoss> sample_quadratic_sequence(Rng& rng, int horizon,
                                                     int n,
                                                     double domain_radius) {
  if (horizon < 1) throw ParameterError("horizon must be at least 1");
  std::vector<QuadraticLoss> losses;
  losses.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t)
    losses.push_back(sample_quadratic(rng, n, domain_radius));
  return losses;
}

std::vector<const LossOracle*> as_oracle_pointers(
    std::span<const QuadraticLoss> losses) {
  std::vector<const LossOracle*> out;
  out.reserve(losses.size());
  for (const QuadraticLoss& f : losses) out.push_back(&f);
  return out;
}

Comparator offline_optimum(std::span<const QuadraticLoss> losses,
                           const BallDomain& domain) {
  if (losses.empty())
    throw ParameterError("comparator requires at least one loss");
  const Eigen::Index n = losses.front().dimension();
  Vector b_sum = Vector::Zero(n);
  for (const QuadraticLoss& f : losses) {
    if (f.dimension() != n)
      throw ParameterError("losses must share one dimension");
    b_sum += f.linear_term();
  }
  const Vector x_star =
      domain.project(-b_sum / (2.0 * static_cast<double>(losses.size())));
  double total = 0.0;
  for (const QuadraticLoss& f : losses) total += f.value(x_star);
  return {x_star, total};
}

namespace {

double total_value(std::span<const LossOracle* const> losses,
                   const Vector& x) {
  double v = 0.0;
  for (const LossOracle* f : losses) v += f->value(x);
  return v;
}

Vector total_gradient(std::span<const LossOracle* const> losses,
                      const Vector& x) {
  Vector g = Vector::Zero(x.size());
  for (const LossOracle* f : losses) g += f->gradient(x);
  return g;
}

}  // namespace

Comparator pgd_comparator_oracle(std::span<const LossOracle* const> losses,
                                 const BallDomain& domain,
                                 std::size_t iterations,
                                 std::function<double(std::size_t)> step_rule) {
  if (losses.empty())
    throw ParameterError("comparator requires at least one loss");
  double beta_sum = 0.0;
  for (const LossOracle* f : losses) beta_sum += f->strong_convexity();
  if (!step_rule && beta_sum <= 0.0)
    throw ParameterError(
        "default step rule needs strongly convex losses; supply step_rule");

  const int n = losses.front()->dimension();
  Vector x = domain.project(Vector::Zero(n));
  Vector best_x = x;
  double best = total_value(losses, x);
  double previous = best;
  int consecutive_increases = 0;

  for (std::size_t k = 1; k <= iterations; ++k) {
    const double step = step_rule
                            ? step_rule(k)
                            : 1.0 / (beta_sum * static_cast<double>(k));
    if (!std::isfinite(step) || step <= 0.0)
      throw ParameterError("step rule produced a non-positive step");
    x = domain.project(x - step * total_gradient(losses, x));
    const double v = total_value(losses, x);
    if (v > previous) {
      if (++consecutive_increases >= 100)
        throw NumericalError(
            "projected gradient descent diverged: total loss rose for 100 "
            "consecutive iterations");
    } else {
      consecutive_increases = 0;
    }
    if (v < best) {
      best = v;
      best_x = x;
    }
    previous = v;
  }
  return {best_x, best};
}

double gradient_map_norm(std::span<const LossOracle* const> losses,
                         const BallDomain& domain, const Vector& x,
                         double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw ParameterError("gradient map needs a positive step");
  const Vector stepped = domain.project(x - gamma * total_gradient(losses, x));
  return (x - stepped).norm() / gamma;
}

}  // namespace delopt
