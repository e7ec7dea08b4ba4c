#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotor/operators.hpp"

namespace rotor {

enum class BasisFamily { M, F, G, Z, Joint };

const char* to_string(BasisFamily f);

/// M vectors are labelled (m, epsilon); F, G, Z and joint vectors (k, 0).
/// For Joint vectors `sign` holds the sign of the Q eigenvalue.
struct BasisLabel {
  int index = 0;
  int sign = 0;
};

struct BasisVector {
  BasisLabel label;
  StateVector state;
  std::optional<double> q_eigenvalue;
  double symmetry_eigenvalue = 0.0;  // K3 for M/F/G/Joint, K1 for Z
};

struct LabeledBasis {
  HarmonicSpace space;
  BasisFamily family;
  std::vector<BasisVector> vectors;

  std::size_t size() const { return vectors.size(); }
  /// Coefficient vectors as columns.
  Eigen::MatrixXcd matrix() const;
};

/// (Y^{-m} + i eps Y^m) / sqrt(2); for m = 0 only eps = +1.
StateVector m_vector(HarmonicSpace s, int m, int eps);

/// Ordering (0,+), (1,+), (1,-), (2,+), (2,-), ...
int m_basis_position(int m, int eps);
LabeledBasis m_basis(HarmonicSpace s);

/// Q in the M basis from the three-term action formula, rows and columns
/// in m_basis order.
Eigen::MatrixXcd q_action_on_m(HarmonicSpace s);

/// B^H A B for the columns B of `basis`.
Eigen::MatrixXcd in_basis(const Operator& a, const LabeledBasis& basis);

/// Orthonormal joint eigenvectors of commuting Q and K3. Ordered by Q
/// eigenvalue, then by |K3 eigenvalue|, so that within each Q block the
/// index k matches K3 = (-1)^k (k + 1/2). Phase: first M-basis coefficient
/// above 1e-8 in modulus is made positive real.
LabeledBasis joint_diagonalize(const Operator& Q, const Operator& K3);

/// Closed-form F_j^k, k = 0..j, with Q = -(j+1/2), K3 = (-1)^k (k+1/2).
LabeledBasis f_basis(HarmonicSpace s);

/// Closed-form G_j^k, k = 0..j-1, with Q = +(j+1/2).
LabeledBasis g_basis(HarmonicSpace s);

struct TridiagonalCoefficients {
  std::vector<double> diag;  // B_k / C_k
  std::vector<double> off;   // off[k-1] = U_k / V_k, k >= 1
};

TridiagonalCoefficients f_coefficients(int j);  // U_k, B_k
TridiagonalCoefficients g_coefficients(int j);  // V_k, C_k

struct TridiagonalData {
  TridiagonalCoefficients extracted;
  TridiagonalCoefficients expected;
  double band_residual = 0.0;   // largest |entry| outside the three diagonals
  double imag_residual = 0.0;   // largest |Im| on the three diagonals
  double formula_error = 0.0;   // max deviation from `expected`
};

/// <b_k'| op |b_k> over the basis. Expected coefficients: F and Z use
/// U/B at j, G uses V/C. Throws FormulaMismatch when the matrix is not
/// tridiagonal within 1e-10.
TridiagonalData tridiagonal_extract(const Operator& op, const LabeledBasis& basis);

struct DecompositionReport {
  int j = 0;
  int f_dim = 0;
  int g_dim = 0;
  double f_g_overlap = 0.0;    // ||G^H F||
  int rank = 0;                // of [F G]
  // ||G^H X F|| for X = K1, K2, K3, Q: leakage between the blocks
  double leak_k1 = 0.0;
  double leak_k2 = 0.0;
  double leak_k3 = 0.0;
  double leak_q = 0.0;
  TridiagonalData f_data;
  std::optional<TridiagonalData> g_data;
  bool f_irreducible = false;
  bool g_irreducible = false;
  std::vector<std::string> notes;
};

DecompositionReport decompose(HarmonicSpace s);

}  // namespace rotor
