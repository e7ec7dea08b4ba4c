#pragma once

// Data-parallel loops behind the quadrature oracle. Each kernel has an
// OpenMP version used by the library and a serial reference kept for
// tests and benchmarks. Both sum in the same per-point order inside a
// row, so results differ only by the reduction order across threads.

#include <span>

#include <Eigen/Dense>

#include "rotor/harmonics.hpp"

namespace rotor::kernels {

Eigen::VectorXcd sample_serial(const SphereFunction& f, std::span<const SpherePoint> points);
Eigen::VectorXcd sample_parallel(const SphereFunction& f, std::span<const SpherePoint> points);

// out_m = sum_p w_p s_p conj(table(m, p))
Eigen::VectorXcd project_serial(const Eigen::MatrixXcd& table, const Eigen::VectorXcd& samples,
                                std::span<const double> weights);
Eigen::VectorXcd project_parallel(const Eigen::MatrixXcd& table, const Eigen::VectorXcd& samples,
                                  std::span<const double> weights);

// sum_p w_p a_p conj(b_p)
cplx weighted_dot_serial(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                         std::span<const double> weights);
cplx weighted_dot_parallel(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                           std::span<const double> weights);

Eigen::MatrixXcd table_serial(int j, std::span<const SpherePoint> points);
Eigen::MatrixXcd table_parallel(int j, std::span<const SpherePoint> points);

}  // namespace rotor::kernels
