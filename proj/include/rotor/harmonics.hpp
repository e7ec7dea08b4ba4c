#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rotor {

using cplx = std::complex<double>;

/// Label (j, m) of a spherical harmonic. Flat index i = m + j.
struct BasisIndex {
  int j = 0;
  int m = 0;

  BasisIndex(int j_, int m_);
  int flat() const { return m + j; }
};

/// The (2j+1)-dimensional span of {Y_j^m : m = -j..j}, m ascending.
class HarmonicSpace {
 public:
  explicit HarmonicSpace(int j);

  int j() const { return j_; }
  int dim() const { return 2 * j_ + 1; }
  int index(int m) const;  // m + j, validated
  int m_of(int index) const { return index - j_; }

  bool operator==(const HarmonicSpace&) const = default;

 private:
  int j_;
};

/// Coefficients over Y_j^m, m ascending.
struct StateVector {
  HarmonicSpace space;
  Eigen::VectorXcd coeffs;

  explicit StateVector(HarmonicSpace s);
  StateVector(HarmonicSpace s, Eigen::VectorXcd c);

  static StateVector unit(HarmonicSpace s, int m);

  double norm() const { return coeffs.norm(); }
  bool is_normalized(double tol = 1e-12) const;
};

/// Point on the unit sphere, stored both ways.
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  static SpherePoint from_angles(double theta, double phi);
  static SpherePoint from_cartesian(double x, double y, double z);  // normalizes
};

using SphereFunction = std::function<cplx(const SpherePoint&)>;

/// P_j^m(z) with the Condon–Shortley phase, 0 <= m <= j, |z| <= 1.
/// Upward recurrence in j from P_m^m.
double assoc_legendre(int j, int m, double z);

cplx ylm_eval(const BasisIndex& idx, double theta, double phi);
cplx ylm_eval(const BasisIndex& idx, const SpherePoint& p);

/// All Y_j^m(p) for m = -j..j in one pass.
Eigen::VectorXcd ylm_row(int j, const SpherePoint& p);

/// Pointwise value of sum_m c_m Y_j^m.
cplx evaluate(const StateVector& v, const SpherePoint& p);
SphereFunction as_function(const StateVector& v);
SphereFunction harmonic_function(const BasisIndex& idx);

/// Gauss–Legendre in cos(theta) times uniform trapezoid in phi.
///
/// With n theta nodes and n_phi azimuthal nodes the rule integrates
/// z^a e^{i k phi} exactly for a <= 2n-1 and |k| < n_phi, so `degree`
/// is min(2n - 1, n_phi - 1) in the total spherical-polynomial sense.
struct QuadratureGrid {
  std::vector<double> theta_nodes;    // cos(theta) abscissae, ascending
  std::vector<double> theta_weights;  // sum to 2
  int n_phi = 0;
  int degree = 0;

  // Flattened tensor grid: point (t, f) lives at t * n_phi + f.
  std::vector<SpherePoint> points;
  std::vector<double> weights;  // sum to 4 pi

  std::size_t size() const { return points.size(); }
};

/// Gauss–Legendre nodes and weights on [-1, 1], n >= 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Grid exact for all products Y_j^m conj(Y_j'^m') with j, j' <= j_max.
QuadratureGrid build_grid(int j_max);

/// Y_j^m at every grid point: row m + j, column point index.
Eigen::MatrixXcd harmonic_table(int j, const QuadratureGrid& grid);

/// c_m = \int f conj(Y_j^m) dOmega. Requires grid.degree >= 2j.
StateVector project(const SphereFunction& f, int j, const QuadratureGrid& grid);

/// \int f conj(g) dOmega.
cplx inner_product(const SphereFunction& f, const SphereFunction& g,
                   const QuadratureGrid& grid);

}  // namespace rotor
