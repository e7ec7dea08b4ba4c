#include "rotor/quadrature_kernels.hpp"

#include <stdexcept>

#include <omp.h>

namespace rotor::kernels {
namespace {

void check_sizes(Eigen::Index n, std::size_t weights) {
  if (static_cast<std::size_t>(n) != weights) {
    throw std::invalid_argument("kernel: sample count does not match weight count");
  }
}

}  // namespace

Eigen::VectorXcd sample_serial(const SphereFunction& f, std::span<const SpherePoint> points) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    out(static_cast<Eigen::Index>(p)) = f(points[p]);
  }
  return out;
}

Eigen::VectorXcd sample_parallel(const SphereFunction& f, std::span<const SpherePoint> points) {
  const auto n = static_cast<long>(points.size());
  Eigen::VectorXcd out(n);
#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p) {
    out(p) = f(points[static_cast<std::size_t>(p)]);
  }
  return out;
}

Eigen::VectorXcd project_serial(const Eigen::MatrixXcd& table, const Eigen::VectorXcd& samples,
                                std::span<const double> weights) {
  check_sizes(samples.size(), weights.size());
  check_sizes(table.cols(), weights.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(table.rows());
  for (Eigen::Index m = 0; m < table.rows(); ++m) {
    cplx acc = 0.0;
    for (Eigen::Index p = 0; p < table.cols(); ++p) {
      acc += weights[static_cast<std::size_t>(p)] * samples(p) * std::conj(table(m, p));
    }
    out(m) = acc;
  }
  return out;
}

Eigen::VectorXcd project_parallel(const Eigen::MatrixXcd& table, const Eigen::VectorXcd& samples,
                                  std::span<const double> weights) {
  check_sizes(samples.size(), weights.size());
  check_sizes(table.cols(), weights.size());
  const long rows = static_cast<long>(table.rows());
  const long cols = static_cast<long>(table.cols());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rows);
  // One row per task: rows are few (2j+1) but long, so parallelize the
  // point loop inside each row with a complex reduction split into parts.
  for (long m = 0; m < rows; ++m) {
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (long p = 0; p < cols; ++p) {
      const cplx term = weights[static_cast<std::size_t>(p)] * samples(p) * std::conj(table(m, p));
      re += term.real();
      im += term.imag();
    }
    out(m) = cplx(re, im);
  }
  return out;
}

cplx weighted_dot_serial(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                         std::span<const double> weights) {
  check_sizes(a.size(), weights.size());
  check_sizes(b.size(), weights.size());
  cplx acc = 0.0;
  for (Eigen::Index p = 0; p < a.size(); ++p) {
    acc += weights[static_cast<std::size_t>(p)] * a(p) * std::conj(b(p));
  }
  return acc;
}

cplx weighted_dot_parallel(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                           std::span<const double> weights) {
  check_sizes(a.size(), weights.size());
  check_sizes(b.size(), weights.size());
  const long n = static_cast<long>(a.size());
  double re = 0.0;
  double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (long p = 0; p < n; ++p) {
    const cplx term = weights[static_cast<std::size_t>(p)] * a(p) * std::conj(b(p));
    re += term.real();
    im += term.imag();
  }
  return {re, im};
}

Eigen::MatrixXcd table_serial(int j, std::span<const SpherePoint> points) {
  Eigen::MatrixXcd out(2 * j + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t p = 0; p < points.size(); ++p) {
    out.col(static_cast<Eigen::Index>(p)) = ylm_row(j, points[p]);
  }
  return out;
}

Eigen::MatrixXcd table_parallel(int j, std::span<const SpherePoint> points) {
  const long n = static_cast<long>(points.size());
  Eigen::MatrixXcd out(2 * j + 1, n);
#pragma omp parallel for schedule(static)
  for (long p = 0; p < n; ++p) {
    out.col(p) = ylm_row(j, points[static_cast<std::size_t>(p)]);
  }
  return out;
}

}  // namespace rotor::kernels
