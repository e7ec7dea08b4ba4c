#include "rotor/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rotor::oracle {
namespace {

constexpr cplx kI(0.0, 1.0);

SpherePoint rotate(int axis, double t, const SpherePoint& p) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  switch (axis) {
    case 1:
      return SpherePoint::from_cartesian(p.x, c * p.y - s * p.z, s * p.y + c * p.z);
    case 2:
      return SpherePoint::from_cartesian(c * p.x + s * p.z, p.y, -s * p.x + c * p.z);
    case 3:
      return SpherePoint::from_cartesian(c * p.x - s * p.y, s * p.x + c * p.y, p.z);
    default:
      throw std::invalid_argument("rotate: axis must be 1, 2 or 3");
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double falling(int p, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= p - i;
  return r;
}

}  // namespace

PointwiseOperator rotation_generator(int axis, double h) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("rotation_generator: axis must be 1, 2 or 3");
  return [axis, h](const SphereFunction& f) -> SphereFunction {
    return [axis, h, f](const SpherePoint& p) {
      const cplx d = (f(rotate(axis, -2 * h, p)) - 8.0 * f(rotate(axis, -h, p)) + 8.0 * f(rotate(axis, h, p)) -
                      f(rotate(axis, 2 * h, p))) /
                     (12.0 * h);
      return -kI * d;
    };
  };
}

PointwiseOperator raising(double h) {
  return [h](const SphereFunction& f) -> SphereFunction {
    const SphereFunction a = rotation_generator(1, h)(f);
    const SphereFunction b = rotation_generator(2, h)(f);
    return [a, b](const SpherePoint& p) { return a(p) + kI * b(p); };
  };
}

PointwiseOperator lowering(double h) {
  return [h](const SphereFunction& f) -> SphereFunction {
    const SphereFunction a = rotation_generator(1, h)(f);
    const SphereFunction b = rotation_generator(2, h)(f);
    return [a, b](const SpherePoint& p) { return a(p) - kI * b(p); };
  };
}

PointwiseOperator reflect(int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("reflect: axis must be 1, 2 or 3");
  return [axis](const SphereFunction& f) -> SphereFunction {
    return [axis, f](const SpherePoint& p) {
      return f(SpherePoint::from_cartesian(axis == 1 ? -p.x : p.x, axis == 2 ? -p.y : p.y, axis == 3 ? -p.z : p.z));
    };
  };
}

Operator matrix_by_quadrature(int j, const PointwiseOperator& a, const QuadratureGrid& grid) {
  const HarmonicSpace s(j);
  Operator out(s);
  for (int m = -j; m <= j; ++m) {
    out.matrix.col(s.index(m)) = project(a(harmonic_function(BasisIndex(j, m))), j, grid).coeffs;
  }
  return out;
}

double legendre_direct(int j, int m, double z) {
  if (m < 0 || m > j) throw std::invalid_argument("legendre_direct: need 0 <= m <= j");
  double deriv = 0.0;
  for (int k = 0; 2 * k <= j; ++k) {
    const int p = j - 2 * k;
    if (p < m) continue;
    const double coeff = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(j, k) * binomial(2 * j - 2 * k, j);
    deriv += coeff * falling(p, m) * std::pow(z, p - m);
  }
  deriv /= std::pow(2.0, j);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(1.0 - z * z, 0.5 * m) * deriv;
}

cplx ylm_direct(int j, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double norm = std::sqrt((2.0 * j + 1.0) / (4.0 * std::numbers::pi) * std::tgamma(j - am + 1.0) /
                                std::tgamma(j + am + 1.0));
  const cplx pos = norm * legendre_direct(j, am, std::cos(theta)) * std::exp(kI * double(am) * phi);
  if (m >= 0) return pos;
  return ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(pos);
}

GaussRule golub_welsch(const ak::RecurrenceTable& t) {
  const int n = t.N + 1;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    jac(i, i) = t.b[i];
    if (i + 1 < n) {
      if (!(t.c[i + 1] > 0.0)) throw std::domain_error("golub_welsch: recurrence is not positive definite");
      jac(i, i + 1) = jac(i + 1, i) = std::sqrt(t.c[i + 1]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
  GaussRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(solver.eigenvalues()(i));
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights.push_back(v0 * v0);
  }
  return rule;
}

}  // namespace rotor::oracle
