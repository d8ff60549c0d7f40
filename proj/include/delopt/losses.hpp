#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "delopt/geometry.hpp"
#include "delopt/rng.hpp"

namespace delopt {

// First-order loss oracle plus the constants learners tune against.
class LossOracle {
 public:
  virtual ~LossOracle() = default;
  virtual int dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual double strong_convexity() const = 0;  // beta
  virtual double smoothness() const = 0;        // alpha
  virtual double lipschitz() const = 0;         // L over the intended domain
};

// f(x) = ||x||^2 + b'x with b in [-1,1]^n. 2-strongly convex and 2-smooth;
// on a ball of radius R the gradient norm is at most 2R + sqrt(n), which is
// the Lipschitz constant reported for the whole family.
class QuadraticLoss final : public LossOracle {
 public:
  QuadraticLoss(Vector b, double domain_radius);

  int dimension() const override { return static_cast<int>(b_.size()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double strong_convexity() const override { return 2.0; }
  double smoothness() const override { return 2.0; }
  double lipschitz() const override { return lipschitz_; }

  const Vector& linear_term() const { return b_; }

 private:
  Vector b_;
  double lipschitz_;
};

// Fixed decision minimizing the summed loss over the domain, with its total.
struct Comparator {
  Vector x_star;
  double total_loss;
};

// b drawn coordinatewise from U[-1, 1]. Same generator state, same loss.
QuadraticLoss sample_quadratic(Rng& rng, int n, double domain_radius = 1.0);

// The whole oblivious sequence {f_t} drawn up front, one loss per round.
std::vector<QuadraticLoss> sample_quadratic_sequence(Rng& rng, int horizon,
                                                     int n,
                                                     double domain_radius = 1.0);

// View of a quadratic sequence through the generic oracle interface.
std::vector<const LossOracle*> as_oracle_pointers(
    std::span<const QuadraticLoss> losses);

// Closed-form comparator for the quadratic family: the unconstrained
// minimizer -(sum_t b_t)/(2T) projected onto the ball, which is exact here
// because the Hessian is a multiple of the identity.
Comparator offline_optimum(std::span<const QuadraticLoss> losses,
                           const BallDomain& domain);

// Projected gradient descent on the summed loss from the origin, step
// 1/(sum_t beta_t * k) at iteration k unless a custom rule is supplied.
// Returns the best iterate visited. Throws NumericalError after 100
// consecutive iterations of increasing total loss.
Comparator pgd_comparator_oracle(
    std::span<const LossOracle* const> losses, const BallDomain& domain,
    std::size_t iterations,
    std::function<double(std::size_t)> step_rule = {});

// ||x - project(x - gamma grad F(x))|| / gamma for the summed loss F. Zero
// exactly at the constrained minimizer, so it certifies optimality.
double gradient_map_norm(std::span<const LossOracle* const> losses,
                         const BallDomain& domain, const Vector& x,
                         double gamma);

}  // namespace delopt
