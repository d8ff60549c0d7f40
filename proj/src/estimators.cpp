#include "delopt/estimators.hpp"

#include <cmath>

#include "delopt/errors.hpp"

namespace delopt {

Vector multipoint_estimate(const MultipointFeedback& feedback) {
  if (feedback.offset_values.size() == 0)
    throw FeedbackError("multipoint feedback holds no offset values");
  if (!std::isfinite(feedback.delta) || feedback.delta <= 0.0)
    throw ParameterError("probe radius delta must be positive");
  if (!std::isfinite(feedback.base_value) || !feedback.offset_values.allFinite())
    throw InvalidInputError("multipoint feedback has non-finite values");
  return (feedback.offset_values.array() - feedback.base_value).matrix() /
         feedback.delta;
}

Vector twopoint_estimate(const TwopointFeedback& feedback, int n) {
  if (n < 1) throw ParameterError("dimension must be at least 1");
  if (feedback.direction.size() != n)
    throw FeedbackError("two-point direction has the wrong dimension");
  if (!std::isfinite(feedback.delta) || feedback.delta <= 0.0)
    throw ParameterError("probe radius delta must be positive");
  if (!std::isfinite(feedback.plus_value) || !std::isfinite(feedback.minus_value) ||
      !feedback.direction.allFinite())
    throw InvalidInputError("two-point feedback has non-finite values");
  const double scale = static_cast<double>(n) /
                       (2.0 * feedback.delta) *
                       (feedback.plus_value - feedback.minus_value);
  return scale * feedback.direction;
}

Vector sample_unit_sphere(Rng& rng, int n) {
  if (n < 1) throw ParameterError("dimension must be at least 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    norm = u.norm();
  } while (norm == 0.0);
  return u / norm;
}

Vector sample_unit_ball(Rng& rng, int n) {
  Vector u = sample_unit_sphere(rng, n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return u * std::pow(unif(rng), 1.0 / static_cast<double>(n));
}

double smoothed_value_mc(const LossOracle& f, const Domain& domain,
                         const Vector& x, double delta, std::size_t samples,
                         Rng& rng) {
  if (samples == 0) throw ParameterError("need at least one sample");
  if (!std::isfinite(delta) || delta <= 0.0)
    throw ParameterError("probe radius delta must be positive");
  const int n = f.dimension();
  if (x.size() != n)
    throw ParameterError("dimension mismatch between point and loss");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector probe = x + delta * sample_unit_ball(rng, n);
    if (!domain.contains(probe))
      throw DomainError(
          "smoothing probe left the domain; x must lie in the shrunken set");
    sum += f.value(probe);
  }
  return sum / static_cast<double>(samples);
}

}  // namespace delopt
