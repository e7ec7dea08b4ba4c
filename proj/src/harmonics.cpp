#include "rotor/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rotor/errors.hpp"
#include "rotor/quadrature_kernels.hpp"

namespace rotor {
namespace {

constexpr double kPi = std::numbers::pi;

// sqrt((2j+1)/(4 pi) (j-m)!/(j+m)!) P_j^m(z), m >= 0, built by the
// normalized upward recurrence so that large j does not overflow the
// factorial ratio.
double normalized_legendre(int j, int m, double z) {
  const double s2 = std::max(0.0, (1.0 - z) * (1.0 + z));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) {
    pmm *= (2.0 * k - 1.0) / (2.0 * k);
  }
  pmm = std::sqrt((2.0 * m + 1.0) / (4.0 * kPi) * pmm) * std::pow(s2, 0.5 * m);
  if (m % 2 == 1) pmm = -pmm;
  if (j == m) return pmm;

  double prev = pmm;
  double cur = z * std::sqrt(2.0 * m + 3.0) * pmm;
  double a_prev = std::sqrt(2.0 * m + 3.0);
  for (int l = m + 2; l <= j; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double next = a * (z * cur - prev / a_prev);
    prev = cur;
    cur = next;
    a_prev = a;
  }
  return cur;
}

cplx ylm_from_parts(int j, int m, double z, double phi) {
  const int am = std::abs(m);
  const double p = normalized_legendre(j, am, z);
  // Negative m: Y_j^{-m}(theta, phi) = Y_j^m(theta, pi - phi).
  const double sign = (m < 0 && am % 2 == 1) ? -1.0 : 1.0;
  const double angle = (m < 0 ? -am : am) * phi;
  return sign * p * cplx(std::cos(angle), std::sin(angle));
}

}  // namespace

BasisIndex::BasisIndex(int j_, int m_) : j(j_), m(m_) {
  if (j < 0 || m < -j || m > j) {
    throw std::invalid_argument("BasisIndex: need j >= 0 and -j <= m <= j, got j=" +
                                std::to_string(j) + " m=" + std::to_string(m));
  }
}

HarmonicSpace::HarmonicSpace(int j) : j_(j) {
  if (j < 0) throw std::invalid_argument("HarmonicSpace: j must be non-negative");
}

int HarmonicSpace::index(int m) const {
  if (m < -j_ || m > j_) throw std::invalid_argument("HarmonicSpace: m out of range");
  return m + j_;
}

StateVector::StateVector(HarmonicSpace s) : space(s), coeffs(Eigen::VectorXcd::Zero(s.dim())) {}

StateVector::StateVector(HarmonicSpace s, Eigen::VectorXcd c) : space(s), coeffs(std::move(c)) {
  if (coeffs.size() != space.dim()) {
    throw std::invalid_argument("StateVector: coefficient count does not match 2j+1");
  }
}

StateVector StateVector::unit(HarmonicSpace s, int m) {
  StateVector v(s);
  v.coeffs(s.index(m)) = 1.0;
  return v;
}

bool StateVector::is_normalized(double tol) const { return std::abs(coeffs.squaredNorm() - 1.0) <= tol; }

SpherePoint SpherePoint::from_angles(double theta, double phi) {
  SpherePoint p;
  p.theta = theta;
  p.phi = phi;
  p.x = std::sin(theta) * std::cos(phi);
  p.y = std::sin(theta) * std::sin(phi);
  p.z = std::cos(theta);
  return p;
}

SpherePoint SpherePoint::from_cartesian(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (!(r > 0.0)) throw std::invalid_argument("SpherePoint: zero vector");
  SpherePoint p;
  p.x = x / r;
  p.y = y / r;
  p.z = z / r;
  p.theta = std::acos(std::clamp(p.z, -1.0, 1.0));
  p.phi = std::atan2(p.y, p.x);
  return p;
}

double assoc_legendre(int j, int m, double z) {
  if (j < 0 || m < 0 || m > j) {
    throw std::invalid_argument("assoc_legendre: need 0 <= m <= j");
  }
  if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("assoc_legendre: |z| must be <= 1");

  double pmm = 1.0;
  if (m > 0) {
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    double odd = 1.0;
    for (int k = 1; k <= m; ++k) {
      pmm *= -odd * s;
      odd += 2.0;
    }
  }
  if (j == m) return pmm;
  double prev = pmm;
  double cur = z * (2.0 * m + 1.0) * pmm;
  for (int l = m + 2; l <= j; ++l) {
    const double next = ((2.0 * l - 1.0) * z * cur - (l + m - 1.0) * prev) / (l - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx ylm_eval(const BasisIndex& idx, double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("ylm_eval: theta must lie in [0, pi]");
  return ylm_from_parts(idx.j, idx.m, std::cos(theta), phi);
}

cplx ylm_eval(const BasisIndex& idx, const SpherePoint& p) { return ylm_from_parts(idx.j, idx.m, p.z, p.phi); }

Eigen::VectorXcd ylm_row(int j, const SpherePoint& p) {
  Eigen::VectorXcd row(2 * j + 1);
  for (int m = 0; m <= j; ++m) {
    const double leg = normalized_legendre(j, m, p.z);
    const cplx e(std::cos(m * p.phi), std::sin(m * p.phi));
    const cplx pos = leg * e;
    row(j + m) = pos;
    if (m > 0) row(j - m) = (m % 2 == 1 ? -1.0 : 1.0) * std::conj(pos);
  }
  return row;
}

cplx evaluate(const StateVector& v, const SpherePoint& p) {
  return ylm_row(v.space.j(), p).transpose() * v.coeffs;
}

SphereFunction as_function(const StateVector& v) {
  return [v](const SpherePoint& p) { return evaluate(v, p); };
}

SphereFunction harmonic_function(const BasisIndex& idx) {
  return [idx](const SpherePoint& p) { return ylm_eval(idx, p); };
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

QuadratureGrid build_grid(int j_max) {
  if (j_max < 0) throw std::invalid_argument("build_grid: j_max must be non-negative");
  QuadratureGrid g;
  const int n_theta = j_max + 1;
  gauss_legendre(n_theta, g.theta_nodes, g.theta_weights);
  g.n_phi = 4 * j_max + 2;
  g.degree = std::min(2 * n_theta - 1, g.n_phi - 1);

  const double dphi = 2.0 * kPi / g.n_phi;
  g.points.reserve(static_cast<std::size_t>(n_theta * g.n_phi));
  g.weights.reserve(static_cast<std::size_t>(n_theta * g.n_phi));
  for (int t = 0; t < n_theta; ++t) {
    const double theta = std::acos(g.theta_nodes[static_cast<std::size_t>(t)]);
    for (int f = 0; f < g.n_phi; ++f) {
      g.points.push_back(SpherePoint::from_angles(theta, f * dphi));
      g.weights.push_back(g.theta_weights[static_cast<std::size_t>(t)] * dphi);
    }
  }
  return g;
}

Eigen::MatrixXcd harmonic_table(int j, const QuadratureGrid& grid) {
  return kernels::table_parallel(j, grid.points);
}

StateVector project(const SphereFunction& f, int j, const QuadratureGrid& grid) {
  if (j < 0) throw std::invalid_argument("project: j must be non-negative");
  if (grid.degree < 2 * j) {
    throw ContractViolation("project: grid degree " + std::to_string(grid.degree) +
                            " cannot resolve band limit j=" + std::to_string(j));
  }
  const Eigen::VectorXcd samples = kernels::sample_parallel(f, grid.points);
  const Eigen::MatrixXcd table = kernels::table_parallel(j, grid.points);
  return StateVector(HarmonicSpace(j), kernels::project_parallel(table, samples, grid.weights));
}

cplx inner_product(const SphereFunction& f, const SphereFunction& g, const QuadratureGrid& grid) {
  const Eigen::VectorXcd a = kernels::sample_parallel(f, grid.points);
  const Eigen::VectorXcd b = kernels::sample_parallel(g, grid.points);
  return kernels::weighted_dot_parallel(a, b, grid.weights);
}

}  // namespace rotor
