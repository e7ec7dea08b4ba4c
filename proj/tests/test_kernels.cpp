#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rotor/eigenbases.hpp"
#include "rotor/quadrature_kernels.hpp"
#include "test_util.hpp"

using namespace rotor;

TEST_CASE("parallel kernels reproduce the serial reference") {
  for (int j : {0, 1, 4, 12, 25}) {
    const auto grid = build_grid(j);
    const auto f = as_function(f_basis(HarmonicSpace(j)).vectors.back().state);

    const auto ts = kernels::table_serial(j, grid.points);
    const auto tp = kernels::table_parallel(j, grid.points);
    CHECK(test::max_abs(ts - tp) == 0.0);

    const auto ss = kernels::sample_serial(f, grid.points);
    const auto sp = kernels::sample_parallel(f, grid.points);
    CHECK(test::max_abs(ss - sp) == 0.0);

    const auto ps = kernels::project_serial(ts, ss, grid.weights);
    const auto pp = kernels::project_parallel(ts, ss, grid.weights);
    CHECK(test::max_abs(ps - pp) <= 1e-13);

    const cplx ds = kernels::weighted_dot_serial(ss, ss, grid.weights);
    const cplx dp = kernels::weighted_dot_parallel(ss, ss, grid.weights);
    CHECK(std::abs(ds - dp) <= 1e-13);
    CHECK(std::abs(ds - 1.0) <= 1e-12);
  }
}

TEST_CASE("kernels reject mismatched sizes") {
  const auto grid = build_grid(2);
  const Eigen::VectorXcd short_samples = Eigen::VectorXcd::Zero(3);
  const auto table = kernels::table_serial(2, grid.points);
  CHECK_THROWS_AS(kernels::project_serial(table, short_samples, grid.weights), std::invalid_argument);
  CHECK_THROWS_AS(kernels::project_parallel(table, short_samples, grid.weights), std::invalid_argument);
  CHECK_THROWS_AS(kernels::weighted_dot_parallel(short_samples, short_samples, grid.weights), std::invalid_argument);
}
