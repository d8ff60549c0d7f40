#include "delopt/losses.hpp"

#include <doctest.h>

#include <cmath>

#include "delopt/errors.hpp"
#include "delopt/rng.hpp"
#include "oracles.hpp"

using delopt::BallDomain;
using delopt::Comparator;
using delopt::InvalidInputError;
using delopt::NumericalError;
using delopt::ParameterError;
using delopt::QuadraticLoss;
using delopt::Vector;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("losses");

TEST_CASE("quadratic value and gradient follow the closed form") {
  const QuadraticLoss f(vec2(1.0, -1.0), 1.0);
  CHECK(f.value(Vector::Zero(2)) == 0.0);
  CHECK(f.value(vec2(1.0, 2.0)) == doctest::Approx(4.0).epsilon(1e-15));
  const Vector g = f.gradient(vec2(1.0, 2.0));
  CHECK(g[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("family constants: beta = alpha = 2 and L = 2R + sqrt(n)") {
  delopt::Rng rng = delopt::make_rng(5, 0);
  const QuadraticLoss f = delopt::sample_quadratic(rng, 10, 1.0);
  CHECK(f.strong_convexity() == 2.0);
  CHECK(f.smoothness() == 2.0);
  CHECK(f.lipschitz() == doctest::Approx(2.0 + std::sqrt(10.0)).epsilon(1e-15));
  const QuadraticLoss g = delopt::sample_quadratic(rng, 4, 2.0);
  CHECK(g.lipschitz() == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(QuadraticLoss(Vector(), 1.0), ParameterError);
  CHECK_THROWS_AS(QuadraticLoss(vec2(1.5, 0.0), 1.0), ParameterError);
  CHECK_THROWS_AS(QuadraticLoss(vec2(0.0, 0.0), 0.0), ParameterError);
  Vector nan_b(1);
  nan_b << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(QuadraticLoss(nan_b, 1.0), InvalidInputError);
  const QuadraticLoss f(vec2(0.1, 0.2), 1.0);
  CHECK_THROWS_AS(f.value(Vector::Zero(3)), ParameterError);
  delopt::Rng rng = delopt::make_rng(5, 0);
  CHECK_THROWS_AS(delopt::sample_quadratic(rng, 0), ParameterError);
}

TEST_CASE("sampling is deterministic per seed and in range") {
  delopt::Rng a = delopt::make_rng(42, 0);
  delopt::Rng b = delopt::make_rng(42, 0);
  const QuadraticLoss fa = delopt::sample_quadratic(a, 10);
  const QuadraticLoss fb = delopt::sample_quadratic(b, 10);
  CHECK(fa.linear_term() == fb.linear_term());

  delopt::Rng other = delopt::make_rng(42, 1);
  CHECK(delopt::sample_quadratic(other, 10).linear_term() != fa.linear_term());

  delopt::Rng sweep = delopt::make_rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    const QuadraticLoss f = delopt::sample_quadratic(sweep, 10);
    CHECK(f.linear_term().lpNorm<Eigen::Infinity>() <= 1.0);
  }
}

TEST_CASE("sampled coordinates are centered") {
  // 10^4 uniform[-1,1] draws per coordinate: standard error ~ 0.0058, so a
  // +-0.02 band is a ~3.5 sigma check on a fixed seed.
  delopt::Rng rng = delopt::make_rng(2024, 0);
  Vector mean = Vector::Zero(10);
  const int samples = 10000;
  for (int i = 0; i < samples; ++i)
    mean += delopt::sample_quadratic(rng, 10).linear_term();
  mean /= static_cast<double>(samples);
  for (int i = 0; i < 10; ++i) {
    CHECK(mean[i] >= -0.02);
    CHECK(mean[i] <= 0.02);
  }
}

TEST_CASE("offline optimum: single loss, interior minimizer") {
  const BallDomain ball(1.0);
  std::vector<QuadraticLoss> losses;
  losses.emplace_back(vec2(1.0, 0.0), 1.0);
  const Comparator c = delopt::offline_optimum(losses, ball);
  CHECK(c.x_star[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(c.x_star[1] == 0.0);
  CHECK(c.total_loss == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("offline optimum: boundary case via a small radius") {
  // Unconstrained minimizer (-0.5, 0) lies outside a 0.25-ball, so the
  // constrained optimum is its radial projection at norm 0.25.
  const BallDomain ball(0.25);
  std::vector<QuadraticLoss> losses;
  losses.emplace_back(vec2(1.0, 0.0), 0.25);
  const Comparator c = delopt::offline_optimum(losses, ball);
  CHECK(c.x_star[0] == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(c.x_star[1] == 0.0);
  // f(-0.25, 0) = 0.0625 - 0.25
  CHECK(c.total_loss == doctest::Approx(-0.1875).epsilon(1e-13));
  // Cross-check against the gradient-map certificate at the claimed optimum.
  const auto oracle_view = delopt::as_oracle_pointers(losses);
  CHECK(delopt::gradient_map_norm(oracle_view, ball, c.x_star, 0.1) <= 1e-10);
}

TEST_CASE("offline optimum: symmetric and cancelling sums sit at the origin") {
  const BallDomain ball(1.0);
  std::vector<QuadraticLoss> zero3(3, QuadraticLoss(vec2(0.0, 0.0), 1.0));
  const Comparator a = delopt::offline_optimum(zero3, ball);
  CHECK(a.x_star.norm() == 0.0);
  CHECK(a.total_loss == 0.0);

  std::vector<QuadraticLoss> pair;
  pair.emplace_back(vec2(1.0, 0.0), 1.0);
  pair.emplace_back(vec2(-1.0, 0.0), 1.0);
  const Comparator b = delopt::offline_optimum(pair, ball);
  CHECK(b.x_star.norm() == 0.0);
  CHECK(b.total_loss == 0.0);

  CHECK_THROWS_AS(
      delopt::offline_optimum(std::vector<QuadraticLoss>{}, ball),
      ParameterError);
}

TEST_CASE("pgd oracle matches closed forms and certifies convergence") {
  const BallDomain ball(1.0);
  std::vector<QuadraticLoss> one;
  one.emplace_back(vec2(1.0, 0.0), 1.0);
  const auto oracles_view = delopt::as_oracle_pointers(one);

  const Comparator pgd = delopt::pgd_comparator_oracle(oracles_view, ball, 100);
  CHECK((pgd.x_star - vec2(-0.5, 0.0)).norm() <= 1e-6);

  std::vector<QuadraticLoss> zeros(2, QuadraticLoss(vec2(0.0, 0.0), 1.0));
  const auto zeros_view = delopt::as_oracle_pointers(zeros);
  CHECK(delopt::pgd_comparator_oracle(zeros_view, ball, 50).x_star.norm() <=
        1e-12);

  // Random instance: optimality certified by the gradient map, not a value.
  delopt::Rng rng = delopt::make_rng(7, 0);
  const std::vector<QuadraticLoss> losses =
      delopt::sample_quadratic_sequence(rng, 100, 10);
  const auto view = delopt::as_oracle_pointers(losses);
  const Comparator c = delopt::pgd_comparator_oracle(view, ball, 200);
  CHECK(delopt::gradient_map_norm(view, ball, c.x_star, 0.001) <= 1e-8);
}

namespace {

// Canary with a wrong-sign gradient: the reported descent direction is
// actually ascent, so PGD walks the value up every iteration. That strictly
// increasing loss is the signature the divergence detector looks for.
class AscentOracle : public delopt::LossOracle {
 public:
  int dimension() const override { return 2; }
  double value(const Vector& x) const override { return x[0]; }
  Vector gradient(const Vector& x) const override {
    (void)x;
    return vec2(-1.0, 0.0);
  }
  double strong_convexity() const override { return 0.0; }
  double smoothness() const override { return 0.0; }
  double lipschitz() const override { return 1.0; }
};

}  // namespace

TEST_CASE("pgd oracle flags runs whose loss keeps rising") {
  const BallDomain ball(1.0);
  const AscentOracle bad;
  const delopt::LossOracle* bad_view[] = {&bad};
  CHECK_THROWS_AS(
      delopt::pgd_comparator_oracle(bad_view, ball, 500,
                                    [](std::size_t) { return 1e-3; }),
      NumericalError);

  // Bounded oscillation from an oversized step is not divergence: the loss
  // alternates up and down, so the run finishes and reports the best seen.
  std::vector<QuadraticLoss> one;
  one.emplace_back(vec2(1.0, 0.0), 1.0);
  const auto view = delopt::as_oracle_pointers(one);
  const Comparator oscillating = delopt::pgd_comparator_oracle(
      view, ball, 500, [](std::size_t) { return 64.0; });
  CHECK(oscillating.total_loss <= 0.0 + 1e-12);

  CHECK_THROWS_AS(
      delopt::pgd_comparator_oracle(view, ball, 10,
                                    [](std::size_t) { return -1.0; }),
      ParameterError);
}

TEST_CASE("strong convexity inequality holds with equality for quadratics") {
  delopt::Rng rng = delopt::make_rng(31, 0);
  std::mt19937_64 points(77);
  const QuadraticLoss f = delopt::sample_quadratic(rng, 6);
  for (int i = 0; i < 10000; ++i) {
    const Vector x = oracles::random_ball_point(points, 6, 1.0);
    const Vector y = oracles::random_ball_point(points, 6, 1.0);
    const double lhs = f.value(y);
    const double rhs = f.value(x) + f.gradient(x).dot(y - x) +
                       0.5 * f.strong_convexity() * (y - x).squaredNorm();
    CHECK(lhs - rhs >= -1e-10);
    CHECK(lhs - rhs <= 1e-10);  // exact for this family, up to roundoff
  }
}

TEST_CASE("gradient agrees with central finite differences") {
  delopt::Rng rng = delopt::make_rng(12, 0);
  std::mt19937_64 points(13);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticLoss f = delopt::sample_quadratic(rng, 5);
    const Vector x = oracles::random_ball_point(points, 5, 1.0);
    const Vector g = f.gradient(x);
    for (int i = 0; i < 5; ++i) {
      const Vector e = Vector::Unit(5, i);
      const double fd = (f.value(x + h * e) - f.value(x - h * e)) / (2.0 * h);
      CHECK(std::fabs(fd - g[i]) <= 1e-5 * std::max(1.0, std::fabs(g[i])));
    }
  }
}

TEST_CASE("closed-form and pgd comparators agree on random instances") {
  const BallDomain ball(1.0);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    delopt::Rng rng = delopt::make_rng(seed, 0);
    const std::vector<QuadraticLoss> losses =
        delopt::sample_quadratic_sequence(rng, 40, 8);
    const Comparator closed = delopt::offline_optimum(losses, ball);
    const Comparator pgd = delopt::pgd_comparator_oracle(
        delopt::as_oracle_pointers(losses), ball, 300);
    CHECK((closed.x_star - pgd.x_star).norm() <= 1e-6);
    CHECK(closed.total_loss == doctest::Approx(pgd.total_loss).epsilon(1e-9));
  }
}

TEST_CASE("comparator total is a lower bound over sampled feasible points") {
  const BallDomain ball(1.0);
  delopt::Rng rng = delopt::make_rng(3, 0);
  std::mt19937_64 points(4);
  const std::vector<QuadraticLoss> losses =
      delopt::sample_quadratic_sequence(rng, 30, 5);
  const Comparator c = delopt::offline_optimum(losses, ball);
  CHECK(ball.contains(c.x_star));
  for (int i = 0; i < 100; ++i) {
    const Vector x = oracles::random_ball_point(points, 5, 1.0);
    double total = 0.0;
    for (const QuadraticLoss& f : losses) total += f.value(x);
    CHECK(c.total_loss <= total + 1e-9);
  }
}

TEST_SUITE_END();
