#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rotor/harmonics.hpp"

namespace rotor {

/// Dense complex matrix on a HarmonicSpace. Column c holds the image of
/// Y_j^{c-j}, so matrix(r, c) = <Y_j^{r-j}| A |Y_j^{c-j}>.
struct Operator {
  HarmonicSpace space;
  Eigen::MatrixXcd matrix;

  explicit Operator(HarmonicSpace s);  // zero
  Operator(HarmonicSpace s, Eigen::MatrixXcd m);

  static Operator identity(HarmonicSpace s);

  int dim() const { return space.dim(); }
  cplx operator()(int m_row, int m_col) const;  // indexed by m labels
  StateVector apply(const StateVector& v) const;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // distinct, ascending
  std::vector<int> multiplicities;
  double max_imag = 0.0;            // largest |Im| seen when not self-adjoint

  int total() const;
};

Operator j3(HarmonicSpace s);
Operator jplus(HarmonicSpace s);
Operator jminus(HarmonicSpace s);
Operator j1(HarmonicSpace s);
Operator j2(HarmonicSpace s);

/// R_1: Y^m -> Y^{-m};  R_2: Y^m -> (-1)^m Y^{-m};  R_3: Y^m -> (-1)^{j+m} Y^m.
Operator reflection(int axis, HarmonicSpace s);

/// J_1^2 + J_2^2 + J_3^2 + 1/4.
Operator hamiltonian(HarmonicSpace s);

Operator compose(const Operator& a, const Operator& b);
Operator add(const Operator& a, const Operator& b);
Operator scale(cplx c, const Operator& a);
Operator adjoint(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Frobenius norm.
double op_norm(const Operator& a);

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cplx c, const Operator& a);
Operator operator*(double c, const Operator& a);

bool is_self_adjoint(const Operator& a, double tol);

/// Eigenvalues grouped at `cluster_tol`. With `self_adjoint` set the input
/// must be Hermitian within 1e-10 (Frobenius), else ContractViolation.
SpectrumReport spectrum(const Operator& a, bool self_adjoint, double cluster_tol = 1e-8);

/// Groups an ascending list of reals into clusters of width `tol`.
SpectrumReport group_eigenvalues(std::vector<double> sorted, double tol);

}  // namespace rotor
