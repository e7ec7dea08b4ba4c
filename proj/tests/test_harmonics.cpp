#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rotor/errors.hpp"
#include "rotor/harmonics.hpp"
#include "rotor/oracles.hpp"
#include "test_util.hpp"

using namespace rotor;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd gram(int j, const QuadratureGrid& grid) {
  const Eigen::MatrixXcd t = harmonic_table(j, grid);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(t.rows(), t.rows());
  for (Eigen::Index p = 0; p < t.cols(); ++p) g += grid.weights[static_cast<std::size_t>(p)] * t.col(p) * t.col(p).adjoint();
  return g;
}

}  // namespace

TEST_CASE("assoc_legendre examples") {
  CHECK(assoc_legendre(0, 0, 0.3) == Approx(1.0));
  CHECK(assoc_legendre(1, 0, 0.5) == Approx(0.5));
  // P_1^1(z) = -sqrt(1 - z^2)
  CHECK(assoc_legendre(1, 1, 0.0) == Approx(-1.0));
  CHECK(assoc_legendre(1, 1, 0.6) == Approx(-0.8));
  // P_2^2(z) = 3 (1 - z^2)
  CHECK(assoc_legendre(2, 2, 0.5) == Approx(2.25));
}

TEST_CASE("assoc_legendre argument errors") {
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assoc_legendre(2, -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(assoc_legendre(-1, 0, 0.0), std::invalid_argument);
}

TEST_CASE("assoc_legendre agrees with the explicit sum") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  for (int j = 0; j <= 10; ++j) {
    for (int m = 0; m <= j; ++m) {
      for (int trial = 0; trial < 5; ++trial) {
        const double x = z(rng);
        const double ref = oracle::legendre_direct(j, m, x);
        CHECK(std::abs(assoc_legendre(j, m, x) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("ylm_eval closed forms") {
  const double c0 = 1.0 / std::sqrt(4.0 * kPi);
  for (double th : {0.0, 0.4, 1.9, kPi}) {
    CHECK(std::abs(ylm_eval(BasisIndex(0, 0), th, 2.1) - c0) < 1e-15);
    const cplx y10 = ylm_eval(BasisIndex(1, 0), th, 0.7);
    CHECK(y10.real() == Approx(std::sqrt(3.0 / (4.0 * kPi)) * std::cos(th)));
    CHECK(std::abs(y10.imag()) < 1e-15);
  }
  CHECK_THROWS_AS(ylm_eval(BasisIndex(1, 0), -0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex(1, 2), std::invalid_argument);
}

TEST_CASE("ylm_eval matches direct summation at random points, j <= 6") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2.0 * kPi);
  for (int j = 0; j <= 6; ++j) {
    for (int trial = 0; trial < 20; ++trial) {
      const double t = th(rng), f = ph(rng);
      for (int m = -j; m <= j; ++m) {
        CHECK(std::abs(ylm_eval(BasisIndex(j, m), t, f) - oracle::ylm_direct(j, m, t, f)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("ylm_row agrees with ylm_eval") {
  std::mt19937 rng(3);
  for (int j : {0, 1, 5, 30}) {
    const auto p = test::random_point(rng);
    const Eigen::VectorXcd row = ylm_row(j, p);
    for (int m = -j; m <= j; ++m) CHECK(std::abs(row(m + j) - ylm_eval(BasisIndex(j, m), p)) < 1e-14);
  }
}

TEST_CASE("reflections act pointwise as the matrix actions") {
  std::mt19937 rng(5);
  for (int j = 0; j <= 8; ++j) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = test::random_point(rng);
      const auto r1 = SpherePoint::from_cartesian(-p.x, p.y, p.z);
      const auto r2 = SpherePoint::from_cartesian(p.x, -p.y, p.z);
      const auto r3 = SpherePoint::from_cartesian(p.x, p.y, -p.z);
      for (int m = -j; m <= j; ++m) {
        const double sm = (m % 2 == 0) ? 1.0 : -1.0;
        const double sjm = ((j + m) % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(ylm_eval(BasisIndex(j, m), r1) - ylm_eval(BasisIndex(j, -m), p)) <= 1e-10);
        CHECK(std::abs(ylm_eval(BasisIndex(j, m), r2) - sm * ylm_eval(BasisIndex(j, -m), p)) <= 1e-10);
        CHECK(std::abs(ylm_eval(BasisIndex(j, m), r3) - sjm * ylm_eval(BasisIndex(j, m), p)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("gauss_legendre integrates polynomials up to degree 2n-1") {
  for (int n = 1; n <= 12; ++n) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    CHECK(std::is_sorted(x.begin(), x.end()));
    for (double wi : w) CHECK(wi > 0.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], k);
      const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("build_grid sizes and exactness") {
  const auto g0 = build_grid(0);
  CHECK(g0.theta_nodes.size() == 1);
  CHECK(g0.n_phi >= 2);
  double total = 0.0;
  for (double w : g0.weights) total += w;
  CHECK(std::abs(total - 4.0 * kPi) < 1e-12);

  const auto g5 = build_grid(5);
  CHECK(g5.degree >= 10);
  CHECK(g5.theta_nodes.size() >= 6);
  CHECK(g5.n_phi >= 22);
  CHECK(test::max_abs(gram(5, g5) - Eigen::MatrixXcd::Identity(11, 11)) <= 1e-12);

  const auto g10 = build_grid(10);
  CHECK(std::abs(inner_product(harmonic_function(BasisIndex(3, 2)), harmonic_function(BasisIndex(7, 2)), g10)) <= 1e-12);
  CHECK_THROWS_AS(build_grid(-1), std::invalid_argument);
}

TEST_CASE("Gram matrix of Y_j^m is the identity for j <= 20") {
  for (int j = 0; j <= 20; ++j) {
    const auto g = build_grid(j);
    CHECK(test::max_abs(gram(j, g) - Eigen::MatrixXcd::Identity(2 * j + 1, 2 * j + 1)) <= 1e-12);
  }
}

TEST_CASE("project") {
  const auto grid = build_grid(3);
  const StateVector v = project(harmonic_function(BasisIndex(2, 1)), 2, grid);
  CHECK(test::max_abs(v.coeffs - StateVector::unit(HarmonicSpace(2), 1).coeffs) < 1e-13);

  const SphereFunction f = [](const SpherePoint& p) {
    return (ylm_eval(BasisIndex(1, 1), p) + ylm_eval(BasisIndex(1, -1), p)) / std::sqrt(2.0);
  };
  const StateVector w = project(f, 1, grid);
  CHECK(std::abs(w.coeffs(0) - 1.0 / std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(w.coeffs(1)) < 1e-13);
  CHECK(std::abs(w.coeffs(2) - 1.0 / std::sqrt(2.0)) < 1e-13);
  CHECK(w.is_normalized());

  CHECK(project(harmonic_function(BasisIndex(3, 0)), 2, grid).norm() < 1e-13);
  CHECK_THROWS_AS(project(f, 2, build_grid(1)), ContractViolation);
}

TEST_CASE("inner_product") {
  const auto grid = build_grid(2);
  const auto y11 = harmonic_function(BasisIndex(1, 1));
  CHECK(std::abs(inner_product(y11, y11, grid) - 1.0) < 1e-13);
  CHECK(std::abs(inner_product(y11, harmonic_function(BasisIndex(1, 0)), grid)) < 1e-13);
  const cplx c(0.3, -1.7);
  const auto y22 = harmonic_function(BasisIndex(2, 2));
  const SphereFunction cy = [&](const SpherePoint& p) { return c * y22(p); };
  CHECK(std::abs(inner_product(cy, y22, grid) - c) < 1e-13);
}

TEST_CASE("space and state validation") {
  CHECK_THROWS_AS(HarmonicSpace(-1), std::invalid_argument);
  CHECK(HarmonicSpace(3).dim() == 7);
  CHECK(HarmonicSpace(3).index(-3) == 0);
  CHECK_THROWS_AS(HarmonicSpace(3).index(4), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(HarmonicSpace(1), Eigen::VectorXcd::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(SpherePoint::from_cartesian(0, 0, 0), std::invalid_argument);
}
