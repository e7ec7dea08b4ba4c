#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/eigenbases.hpp"
#include "rotor/errors.hpp"
#include "rotor/oracles.hpp"
#include "rotor/susy.hpp"
#include "test_util.hpp"

using namespace rotor;
using doctest::Approx;

TEST_CASE("recurrence coefficients at N = 2") {
  const auto t = ak::recurrence_coeffs(2);
  REQUIRE(t.A.size() == 3);
  CHECK(t.A[0] == Approx(-0.5));
  CHECK(t.A[1] == Approx(1.25));
  CHECK(t.A[2] == Approx(0.0));
  CHECK(t.C[0] == 0.0);
  CHECK(t.C[1] == Approx(-1.0));
  CHECK(t.C[2] == Approx(0.25));
  CHECK(t.c[1] == Approx(0.5));
  CHECK(t.c[2] == Approx(5.0 / 16.0));
  CHECK_THROWS_AS(ak::recurrence_coeffs(0), std::invalid_argument);
  CHECK_THROWS_AS(ak::recurrence_coeffs(-3), std::invalid_argument);
}

TEST_CASE("spectral grid") {
  const auto g = ak::grid(2);
  REQUIRE(g.x.size() == 3);
  CHECK(g.x[0] == Approx(0.0));
  CHECK(g.x[1] == Approx(-1.0));
  CHECK(g.x[2] == Approx(1.0));
  CHECK(g.y[0] == Approx(0.5));
  CHECK(ak::grid(0).x.size() == 1);
  CHECK_THROWS_AS(ak::grid(-1), std::invalid_argument);
  // the grid is the K3 spectrum on F, shifted
  for (int N = 1; N <= 10; ++N) {
    const auto f = f_basis(HarmonicSpace(N));
    const auto gn = ak::grid(N);
    for (int k = 0; k <= N; ++k) CHECK(gn.y[k] == Approx(f.vectors[k].symmetry_eigenvalue));
  }
}

TEST_CASE("monic polynomials at N = 2") {
  const auto t = ak::recurrence_coeffs(2);
  for (double x : {-1.3, -0.2, 0.0, 0.7, 2.0}) {
    CHECK(ak::eval_monic(t, 0, x) == Approx(1.0));
    CHECK(ak::eval_monic(t, 1, x) == Approx(x - 0.5));
    CHECK(ak::eval_monic(t, 2, x) == Approx(x * x - x / 4.0 - 5.0 / 8.0));
  }
  for (double x : ak::grid(2).x) CHECK(std::abs(ak::eval_monic(t, 3, x)) <= 1e-14);
  CHECK_THROWS_AS(ak::eval_monic(t, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ak::eval_monic(t, -1, 0.0), std::invalid_argument);
}

TEST_CASE("weights at N = 2") {
  const auto w = ak::weights(2);
  REQUIRE(w.derived.size() == 3);
  CHECK(w.derived[0] == Approx(0.25));
  CHECK(w.derived[1] == Approx(0.125));
  CHECK(w.derived[2] == Approx(0.625));
  CHECK(w.norms[0] == Approx(1.0));
  CHECK(w.norms[1] == Approx(0.5));
  CHECK(w.norms[2] == Approx(5.0 / 32.0));
  // closed form for comparison only: (1, -1, 10) is not proportional
  CHECK(w.closed_form[0] == Approx(1.0));
  CHECK(w.closed_form[1] == Approx(-1.0));
  CHECK(w.closed_form[2] == Approx(10.0));
  CHECK(w.discrepant);
}

TEST_CASE("weights agree with Golub-Welsch, N <= 20") {
  for (int N = 1; N <= 20; ++N) {
    const auto t = ak::recurrence_coeffs(N);
    const auto g = ak::grid(N);
    const auto w = ak::weights(N);
    const auto rule = oracle::golub_welsch(t);
    std::vector<std::pair<double, double>> ours;
    for (int k = 0; k <= N; ++k) ours.emplace_back(g.x[k], w.derived[k]);
    std::sort(ours.begin(), ours.end());
    REQUIRE(rule.nodes.size() == ours.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < ours.size(); ++i) {
      CHECK(std::abs(rule.nodes[i] - ours[i].first) <= 1e-10 * N);
      CHECK(std::abs(rule.weights[i] - ours[i].second) <= 1e-10);
      CHECK(ours[i].second > 0.0);
      sum += ours[i].second;
    }
    CHECK(sum == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("polynomial invariants, N <= 20") {
  for (int N = 1; N <= 20; ++N) {
    const auto t = ak::recurrence_coeffs(N);
    const auto g = ak::grid(N);
    const auto w = ak::weights(N);
    CHECK(ak::terminal_residual(t, g) <= 1e-10);
    CHECK(ak::orthogonality_residual(t, g, w) <= 1e-9);
    CHECK(ak::monic_reduction_residual(N) <= 1e-12);
    CHECK(t.C[0] == 0.0);
    for (int n = 1; n <= N; ++n) CHECK(t.c[n] > 0.0);
    for (int n = 1; n <= N; ++n) CHECK(w.norms[n] == Approx(w.norms[n - 1] * t.c[n]));
  }
}

TEST_CASE("Z basis") {
  const auto z2 = ak::z_basis(2, build_grid(2));
  REQUIRE(z2.size() == 3);
  CHECK(z2.vectors[0].symmetry_eigenvalue == Approx(0.5));
  CHECK(z2.vectors[1].symmetry_eigenvalue == Approx(-1.5));
  CHECK(z2.vectors[2].symmetry_eigenvalue == Approx(2.5));
  CHECK_THROWS_AS(ak::z_basis(4, build_grid(1)), ContractViolation);

  for (int N = 0; N <= 12; ++N) {
    const HarmonicSpace s(N);
    const auto z = ak::z_basis(N, build_grid(N));
    const auto ops = build_susy(s);
    const Eigen::MatrixXcd zm = z.matrix();
    CHECK(test::max_abs(zm.adjoint() * zm - Eigen::MatrixXcd::Identity(N + 1, N + 1)) <= 1e-12);
    for (const auto& v : z.vectors) {
      CHECK((ops.K1.matrix * v.state.coeffs - v.symmetry_eigenvalue * v.state.coeffs).norm() <= 1e-9);
      CHECK((ops.Q.matrix * v.state.coeffs + (N + 0.5) * v.state.coeffs).norm() <= 1e-9);
    }
    // K2 acts on Z like K1 acts on F
    const auto data = tridiagonal_extract(ops.K2, z);
    CHECK(data.formula_error <= 1e-9);
  }
}

TEST_CASE("overlaps at N = 2") {
  const auto w = ak::overlaps_via_integral(2, build_grid(2));
  const auto wt = ak::weights(2);
  CHECK(w.unitarity_residual() <= 1e-12);
  const Eigen::VectorXcd om = w.omega();
  for (int k = 0; k <= 2; ++k) CHECK(std::norm(om(k)) == Approx(wt.derived[k]).epsilon(1e-10));
  CHECK(std::abs(om(0)) == Approx(0.5));
  CHECK_THROWS_AS(ak::overlaps_via_integral(3, build_grid(2)), ContractViolation);
  CHECK_THROWS_AS(ak::overlaps_via_integral(0, build_grid(2)), std::invalid_argument);
  std::vector<cplx> short_row(2);
  CHECK_THROWS_AS(ak::overlaps_via_recurrence(2, short_row), std::invalid_argument);
}

TEST_CASE("overlap routes agree and satisfy the recurrence, N <= 20") {
  for (int N = 1; N <= 20; ++N) {
    const auto wi = ak::overlaps_via_integral(N, build_grid(N));
    const Eigen::VectorXcd row0 = wi.omega();
    const auto wr = ak::overlaps_via_recurrence(N, std::span<const cplx>(row0.data(), row0.size()));
    CHECK(wi.unitarity_residual() <= 1e-9);
    CHECK(wr.unitarity_residual() <= 1e-9);
    CHECK(test::max_abs(wi.W - wr.W) <= 1e-8);
    CHECK(ak::recurrence_residual(wi) <= 1e-9);
    // row duality: columns are orthonormal too
    CHECK(test::max_abs(wi.W * wi.W.adjoint() - Eigen::MatrixXcd::Identity(N + 1, N + 1)) <= 1e-9);
    const auto wt = ak::weights(N);
    for (int k = 0; k <= N; ++k) CHECK(std::abs(std::norm(row0(k)) - wt.derived[k]) <= 1e-10);
  }
}

TEST_CASE("Bannai-Ito parameters") {
  const auto p2 = ak::bannai_ito_params(2);
  CHECK(p2.rho1 == 0.0);
  CHECK(p2.rho2 == Approx(1.5));
  CHECK(p2.r1 == 0.0);
  CHECK(p2.r2 == Approx(1.5));
  const auto p3 = ak::bannai_ito_params(3);
  CHECK(p3.rho2 == Approx(-2.0));
  CHECK(p3.r2 == Approx(-2.0));
  for (int N = 1; N <= 20; ++N) {
    const auto p = ak::bannai_ito_params(N);
    CHECK(p.rho2 == p.r2);
    CHECK(std::abs(p.rho2) == Approx((N + 1) / 2.0));
  }
  CHECK_THROWS_AS(ak::bannai_ito_params(0), std::invalid_argument);
}
