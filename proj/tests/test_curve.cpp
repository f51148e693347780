#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <genfreq/curve.hpp>

#include "test_support.hpp"

using genfreq::CurveState;
using genfreq::VecN;

namespace {

// Circle of radius r traversed at angular rate w, evaluated at angle theta.
CurveState circle_state(double r, double w, double theta) {
  return CurveState{VecN{-r * w * std::sin(theta), r * w * std::cos(theta)},
                    VecN{-r * w * w * std::cos(theta), -r * w * w * std::sin(theta)}};
}

}  // namespace

TEST_CASE("circle curvature is the reciprocal radius") {
  for (double r : {0.1, 1.0, 250.0, 12000.0}) {
    for (double theta : {0.0, 0.4, 2.0, 5.5}) {
      const CurveState state = circle_state(r, 2.0 * std::numbers::pi * 60.0, theta);
      REQUIRE(testing::rel_err(genfreq::curvature(state), 1.0 / r) < 1e-13);
      REQUIRE(testing::rel_err(genfreq::arc_speed(state.xdot),
                               r * 2.0 * std::numbers::pi * 60.0) < 1e-13);
      REQUIRE(std::abs(genfreq::arc_speed_rate(state)) <
              1e-12 * genfreq::arc_speed(state.xdot));
    }
  }
}

TEST_CASE("helix curvature matches the closed form") {
  const double r = 2.0;
  const double c = 0.5;
  for (double t : {0.0, 1.0, 3.7}) {
    const CurveState state{
        VecN{-r * std::sin(t), r * std::cos(t), c},
        VecN{-r * std::cos(t), -r * std::sin(t), 0.0}};
    REQUIRE(testing::rel_err(genfreq::curvature(state), r / (r * r + c * c)) < 1e-13);
    REQUIRE(testing::rel_err(genfreq::arc_speed(state.xdot), std::sqrt(r * r + c * c)) <
            1e-13);
    REQUIRE(std::abs(genfreq::arc_speed_rate(state)) < 1e-13);
  }
}

TEST_CASE("parabola curvature and speed rate match the closed forms") {
  for (double t : {-2.0, 0.0, 0.3, 1.5}) {
    const CurveState state{VecN{1.0, 2.0 * t}, VecN{0.0, 2.0}};
    const double s1 = std::sqrt(1.0 + 4.0 * t * t);
    REQUIRE(testing::rel_err(genfreq::curvature(state), 2.0 / (s1 * s1 * s1)) < 1e-13);
    REQUIRE(testing::rel_err(genfreq::arc_speed(state.xdot), s1) < 1e-14);
    const double expected_rate = 4.0 * t / s1;
    REQUIRE(std::abs(genfreq::arc_speed_rate(state) - expected_rate) < 1e-13 * s1);
  }
}

TEST_CASE("unit tangent has unit magnitude and the direction of the velocity") {
  auto rng = testing::make_rng(111);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN xdot = testing::random_vec(rng, dim);
    if (genfreq::magnitude(xdot) < 1e-3) continue;
    const VecN t = genfreq::unit_tangent(xdot);
    REQUIRE(testing::rel_err(genfreq::magnitude(t), 1.0) < 1e-14);
    REQUIRE(testing::rel_err(genfreq::inner(t, xdot), genfreq::magnitude(xdot)) < 1e-13);
  }
}

TEST_CASE("curvature vector magnitude equals the curvature") {
  auto rng = testing::make_rng(222);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN xdot = testing::random_vec(rng, dim);
    const VecN xddot = testing::random_vec(rng, dim);
    if (genfreq::magnitude(xdot) < 1e-3) continue;
    const CurveState state{xdot, xddot};
    const double kappa = genfreq::curvature(state);
    const VecN cv = genfreq::curvature_vector(state);
    REQUIRE(std::abs(genfreq::magnitude(cv) - kappa) <= 1e-10 * std::max(1.0, kappa));
    // The curvature vector is orthogonal to the tangent.
    REQUIRE(std::abs(genfreq::inner(cv, genfreq::unit_tangent(xdot))) <=
            1e-10 * std::max(1.0, kappa));
  }
}

TEST_CASE("curvature is invariant under orthogonal maps") {
  auto rng = testing::make_rng(333);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const genfreq::Matrix q = testing::random_orthogonal(rng, dim);
    const VecN xdot = testing::random_vec(rng, dim);
    const VecN xddot = testing::random_vec(rng, dim);
    if (genfreq::magnitude(xdot) < 1e-3) continue;
    const CurveState state{xdot, xddot};
    const CurveState mapped{genfreq::apply_orthogonal(xdot, q),
                            genfreq::apply_orthogonal(xddot, q)};
    const double kappa = genfreq::curvature(state);
    REQUIRE(std::abs(genfreq::curvature(mapped) - kappa) <= 1e-10 * std::max(1.0, kappa));
  }
}

TEST_CASE("curvature is invariant under time rescaling") {
  auto rng = testing::make_rng(444);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + trial % 5;
    const VecN xdot = testing::random_vec(rng, dim);
    const VecN xddot = testing::random_vec(rng, dim);
    if (genfreq::magnitude(xdot) < 1e-3) continue;
    const double a = 0.25 + 0.1 * trial;
    const CurveState state{xdot, xddot};
    const CurveState rescaled{xdot * a, xddot * (a * a)};
    const double kappa = genfreq::curvature(state);
    REQUIRE(std::abs(genfreq::curvature(rescaled) - kappa) <= 1e-10 * std::max(1.0, kappa));
    REQUIRE(testing::rel_err(genfreq::arc_speed(rescaled.xdot),
                             a * genfreq::arc_speed(state.xdot)) < 1e-13);
  }
}

TEST_CASE("frenet aggregates the individual curve quantities") {
  const CurveState state = circle_state(3.0, 10.0, 0.7);
  const genfreq::FrenetData f = genfreq::frenet(state);
  REQUIRE(f.speed == genfreq::arc_speed(state.xdot));
  REQUIRE(f.curvature == genfreq::curvature(state));
  const VecN t = genfreq::unit_tangent(state.xdot);
  const VecN cv = genfreq::curvature_vector(state);
  for (std::size_t i = 0; i < 2; ++i) {
    REQUIRE(f.unit_tangent[i] == t[i]);
    REQUIRE(f.curvature_vector[i] == cv[i]);
  }
}

TEST_CASE("degenerate states are rejected") {
  const VecN zero{0.0, 0.0};
  const VecN accel{1.0, 2.0};
  REQUIRE_THROWS_AS(genfreq::unit_tangent(zero), genfreq::DegenerateCurve);
  REQUIRE_THROWS_AS(genfreq::curvature(CurveState{zero, accel}),
                    genfreq::DegenerateCurve);
  REQUIRE_THROWS_AS(genfreq::curvature_vector(CurveState{zero, accel}),
                    genfreq::DegenerateCurve);
  REQUIRE_THROWS_AS(genfreq::arc_speed_rate(CurveState{zero, accel}),
                    genfreq::DegenerateCurve);

  // Tiny speeds below the threshold relative to the acceleration scale count
  // as degenerate as well.
  const VecN tiny{1e-14, 0.0};
  REQUIRE_THROWS_AS(genfreq::curvature(CurveState{tiny, accel}),
                    genfreq::DegenerateCurve);
}

TEST_CASE("curve state validates dimensions") {
  REQUIRE_THROWS_AS(CurveState(VecN{1.0, 2.0}, VecN{1.0, 2.0, 3.0}),
                    genfreq::DimensionMismatch);
}
