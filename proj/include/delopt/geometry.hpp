#pragma once

#include <Eigen/Dense>

namespace delopt {

// Decision variables are dense column vectors.
using Vector = Eigen::VectorXd;

// Convex decision set with Euclidean projection. Implementations must be
// immutable so a single instance can be shared across threads.
class Domain {
 public:
  virtual ~Domain() = default;
  virtual Vector project(const Vector& y) const = 0;
  virtual bool contains(const Vector& x) const = 0;
};

// Euclidean ball of a given radius centered at the origin.
class BallDomain final : public Domain {
 public:
  explicit BallDomain(double radius);

  double radius() const { return radius_; }

  // Nearest point of the ball: y itself when ||y|| <= radius (returned
  // unchanged, bit for bit), otherwise y scaled onto the boundary.
  Vector project(const Vector& y) const override;

  // ||x|| <= radius + kFeasibilityTol. The absolute slack absorbs roundoff
  // from repeated project-then-step cycles.
  bool contains(const Vector& x) const override;

  // The set scaled by (1 - delta/r); keeps probe points x + delta*e inside
  // the original ball whenever the r-ball fits inside it. Requires
  // 0 < delta < r <= radius.
  BallDomain shrink(double delta, double r) const;

  static constexpr double kFeasibilityTol = 1e-9;

 private:
  double radius_;
};

}  // namespace delopt
