#include <cmath>
#include <numbers>

#include "doctest.h"
#include "golden.hpp"
#include "levymet/errors.hpp"
#include "levymet/solver2d_iso.hpp"
#include "test_util.hpp"

using namespace levymet;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams make(double alpha, double lambda) {
  ModelParams p;
  p.alpha = alpha;
  p.lambda = lambda;
  return p;
}

}  // namespace

TEST_CASE("isotropic normalisation") {
  CHECK(rel_diff(c_tilde_alpha(0.5), golden::c_alpha_05 / kPi) <= 1e-14);
}

TEST_CASE("angular kernel F1") {
  CHECK(rel_diff(angular_f1(0.5, 0.2, make(0.5, 0.01)), golden::f1_05_02_a05_l001) <= 1e-9);
  CHECK(rel_diff(angular_f1(0.7, 0.5, make(1.5, 0.1)), golden::f1_07_05_a15_l01) <= 1e-9);
  for (double alpha : {0.5, 1.5}) {
    const ModelParams p = make(alpha, 0.3);
    for (double s : {0.05, 0.4, 0.99}) {
      CHECK(rel_diff(angular_f1(s, 0.0, p),
                     kPi * std::exp(-0.3 * s) * std::pow(s, -(alpha + 2.0))) <= 1e-13);
    }
    for (double s : {0.1, 0.35, 0.8}) {
      for (double r : {0.05, 0.3, 0.81, 0.95}) {
        const double a = angular_f1(s, r, p);
        CHECK(a > 0.0);
        CHECK(rel_diff(a, angular_f1(r, s, p)) <= 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(angular_f1(0.3, 0.3, make(0.5, 0.01)), DomainError);
  CHECK_THROWS_AS(angular_f1(0.0, 0.3, make(0.5, 0.01)), DomainError);
}

TEST_CASE("window kernel F2") {
  const ModelParams p = make(0.5, 0.01);
  const double h = 0.02;
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(window_angle(r + h, r, h)) <= 1e-7);
    CHECK(rel_diff(angular_f2(r + h, r, h, p), angular_f1(r + h, r, p)) <= 1e-8);
    CHECK(rel_diff(angular_f2(r - h, r, h, p), angular_f1(r - h, r, p)) <= 1e-8);
    // s = r: law of cosines gives 2 arcsin(h / 2r)
    CHECK(rel_diff(window_angle(r, r, h), 2.0 * std::asin(h / (2.0 * r))) <= 1e-12);
    CHECK(angular_f2(r, r, h, p) > 0.0);
  }
  CHECK(window_angle(0.9, 0.1, 0.01) == 0.0);  // clamp: whole circle outside the ball
  CHECK_THROWS_AS(angular_f2(0.0, 0.5, h, p), DomainError);
}

TEST_CASE("boundary tail") {
  CHECK(rel_diff(boundary_tail(0.5, make(0.5, 0.01)), golden::btail_05_a05_l001) <= 1e-9);
  CHECK(rel_diff(boundary_tail(0.9, make(1.5, 0.01)), golden::btail_09_a15_l001) <= 1e-9);
  for (double r : {0.0, 0.3, 0.7}) {
    CHECK(rel_diff(boundary_distance(r, kPi, 1.0), 1.0 + r) <= 1e-15);
    CHECK(rel_diff(boundary_distance(r, 0.0, 1.0), 1.0 - r) <= 1e-15);
  }
  for (double t : {0.0, 1.0, 2.5}) CHECK(boundary_distance(0.0, t, 1.0) == 1.0);
  // r = 0 matches 2 pi times the 1D tail at x = 0
  for (double alpha : {0.5, 1.5}) {
    for (double lambda : {0.0, 0.01, 0.2}) {
      const ModelParams p = make(alpha, lambda);
      CHECK(rel_diff(boundary_tail(0.0, p), 2.0 * kPi * tail_w(0.0, Side::left, p)) <= 1e-13);
      double prev = 0.0;
      for (double r = 0.0; r < 0.999; r += 0.083) {
        const double v = boundary_tail(r, p);
        CHECK(v > prev);  // closer to the circle, more mass leaves
        prev = v;
      }
    }
  }
  CHECK_THROWS_AS(boundary_tail(1.0, make(0.5, 0.01)), DomainError);
}

TEST_CASE("near-field coefficient") {
  CHECK(rel_diff(c0_coefficient(0.1, make(0.5, 0.0)), golden::near_h01_a05_l0) <= 1e-12);
  CHECK(rel_diff(c0_coefficient(0.1, make(1.5, 0.1)), golden::near_h01_a15_l01) <= 1e-10);
  for (double alpha : {0.5, 1.5}) {
    CHECK(rel_diff(c0_coefficient(0.1, make(alpha, 1e-10)), c0_coefficient(0.1, make(alpha, 0.0))) <=
          1e-8);
    double prev = 0.0;
    for (double h = 0.001; h < 0.5; h *= 1.5) {
      const double c = c0_coefficient(h, make(alpha, 0.05));
      CHECK(c > prev);
      prev = c;
    }
  }
  CHECK_THROWS_AS(c0_coefficient(0.0, make(0.5, 0.01)), DomainError);
}

TEST_CASE("assembled radial system") {
  const linalg::DenseSystem sys = assemble_iso(make(0.5, 0.01), 32);
  CHECK(sys.matrix.rows() == 32);
  CHECK(sys.rhs.size() == 32);
  for (double b : sys.rhs) CHECK(b == -1.0);
  for (double alpha : {0.5, 1.5}) {
    for (double lambda : {0.0, 0.1}) {
      const linalg::DenseMatrix A = assemble_iso(make(alpha, lambda), 24).matrix;
      for (std::size_t i = 0; i < A.rows(); ++i) {
        CHECK(A(i, i) < 0.0);
        for (std::size_t k = 0; k < A.cols(); ++k) {
          if (k != i) CHECK(A(i, k) >= 0.0);
        }
      }
    }
  }
  CHECK_THROWS_AS(assemble_iso(make(0.5, 0.01), 7), InvalidParams);
}

TEST_CASE("radial solution shape") {
  for (double alpha : {0.5, 1.5}) {
    const RadialSolution s = solve_iso(make(alpha, 0.01), 80);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      CHECK(s.values[i] > 0.0);
      if (i > 0) CHECK(s.values[i] < s.values[i - 1]);
    }
    CHECK(s.at(0.0) == s.values[0]);
    CHECK(s.at(1.0) == 0.0);
    CHECK(s.at(1.5) == 0.0);
    CHECK(rel_diff(s.at(0.5 * s.grid.h()), 0.5 * (s.values[0] + s.values[1])) <= 1e-14);
    CHECK(s.revolved(0.3, -0.4) == s.at(0.5));
    CHECK(s.revolved(0.8, 0.8) == 0.0);
  }
}

TEST_CASE("tempering lengthens exit times, more so for small alpha") {
  double effect[2];
  int n = 0;
  for (double alpha : {0.5, 1.5}) {
    const RadialSolution lo = solve_iso(make(alpha, 0.01), 80);
    const RadialSolution hi = solve_iso(make(alpha, 0.1), 80);
    double rel = 0.0;
    for (std::size_t i = 0; i < lo.values.size(); ++i) {
      CHECK(hi.values[i] > lo.values[i]);
      rel = std::max(rel, (hi.values[i] - lo.values[i]) / lo.values[i]);
    }
    effect[n++] = rel;
  }
  CHECK(effect[0] > effect[1]);
}
