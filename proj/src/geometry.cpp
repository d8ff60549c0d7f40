#include "delopt/geometry.hpp"

#include <cmath>

#include "delopt/errors.hpp"

namespace delopt {

BallDomain::BallDomain(double radius) : radius_(radius) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw ParameterError("ball radius must be positive and finite");
}

Vector BallDomain::project(const Vector& y) const {
  if (!y.allFinite())
    throw InvalidInputError("projection input has non-finite entries");
  const double norm = y.norm();
  if (norm <= radius_) return y;
  return y * (radius_ / norm);
}

bool BallDomain::contains(const Vector& x) const {
  if (!x.allFinite())
    throw InvalidInputError("containment query has non-finite entries");
  return x.norm() <= radius_ + kFeasibilityTol;
}

BallDomain BallDomain::shrink(double delta, double r) const {
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= r)
    throw ParameterError("shrink requires 0 < delta < r");
  if (!std::isfinite(r) || r > radius_)
    throw ParameterError("shrink requires r <= radius so the r-ball fits inside the set");
  return BallDomain((1.0 - delta / r) * radius_);
}

}  // namespace delopt
