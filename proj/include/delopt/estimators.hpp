#pragma once

#include <cstddef>

#include "delopt/geometry.hpp"
#include "delopt/losses.hpp"
#include "delopt/rng.hpp"

namespace delopt {

// Values behind the (n+1)-point forward-difference gradient estimate:
// f(x) plus f(x + delta e_i) for i = 1..n.
struct MultipointFeedback {
  double base_value = 0.0;
  Vector offset_values;  // offset_values[i-1] = f(x + delta e_i)
  double delta = 0.0;
};

// Values at the antipodal probes x +/- delta u for a unit direction u.
struct TwopointFeedback {
  double plus_value = 0.0;
  double minus_value = 0.0;
  Vector direction;
  double delta = 0.0;
};

// g = (1/delta) sum_i (f(x + delta e_i) - f(x)) e_i. For an L-Lipschitz,
// alpha-smooth loss: ||g|| <= sqrt(n) L and ||g - grad f(x)|| is at most
// sqrt(n) alpha delta / 2.
Vector multipoint_estimate(const MultipointFeedback& feedback);

// g = (n / (2 delta)) (f(x + delta u) - f(x - delta u)) u with ||g|| <= n L.
// Over a uniform sphere direction u the estimate is unbiased for the
// gradient of the delta-smoothed loss.
Vector twopoint_estimate(const TwopointFeedback& feedback, int n);

// Uniform direction on the unit sphere: a normalized standard Gaussian draw
// (redrawn in the measure-zero event of a zero vector).
Vector sample_unit_sphere(Rng& rng, int n);

// Uniform point in the closed unit ball: sphere direction scaled by U^(1/n).
Vector sample_unit_ball(Rng& rng, int n);

// Monte Carlo estimate of the smoothed value E_{u ~ unit ball} f(x + delta u)
// with m samples. Every probe must stay inside the domain, which callers
// guarantee by keeping x in the (1 - delta/r)-shrunken set.
double smoothed_value_mc(const LossOracle& f, const Domain& domain,
                         const Vector& x, double delta, std::size_t samples,
                         Rng& rng);

}  // namespace delopt
