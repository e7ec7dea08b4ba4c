#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rotor/eigenbases.hpp"
#include "rotor/harmonics.hpp"

namespace rotor::ak {

/// Coefficients of x P_n = P_{n+1} - (A_n + C_n) P_n + A_{n-1} C_n P_{n-1}.
struct RecurrenceTable {
  int N = 0;
  std::vector<double> A;  // A_0..A_N
  std::vector<double> C;  // C_0..C_N, C_0 = 0
  std::vector<double> b;  // b_n = -(A_n + C_n)
  std::vector<double> c;  // c_n = A_{n-1} C_n, c_0 = 0
};

/// x_k = y_k / 2 - 1/4 with y_k = (-1)^k (k + 1/2).
struct SpectralGrid {
  std::vector<double> x;
  std::vector<double> y;
};

struct WeightTable {
  std::vector<double> derived;          // moment-system solution, sums to 1
  std::vector<double> closed_form;      // unnormalized, informational
  std::vector<double> norms;            // u_0 = 1, u_n = c_1 ... c_n
  bool discrepant = false;              // closed form not proportional to `derived`
  double proportionality_error = 0.0;   // max |ratio_k / ratio_0 - 1|
};

struct OverlapMatrix {
  int N = 0;
  Eigen::MatrixXcd W;  // W(n, k) = W_n(k)

  double unitarity_residual() const;
  Eigen::VectorXcd omega() const { return W.row(0).transpose(); }
};

struct BannaiItoParams {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

RecurrenceTable recurrence_coeffs(int N);
SpectralGrid grid(int N);

/// Monic P_n(x), 0 <= n <= N + 1.
double eval_monic(const RecurrenceTable& t, int n, double x);
/// P_0(x) .. P_{N+1}(x).
std::vector<double> eval_all(const RecurrenceTable& t, double x);

WeightTable weights(int N);

/// Z_N^k(x1, x2, x3) = F_N^k(x2, x3, (-1)^{N+1} x1), re-projected onto Y_N^m.
/// Checks K1 Z = (-1)^k (k + 1/2) Z and Q Z = -(N + 1/2) Z at 1e-9.
LabeledBasis z_basis(int N, const QuadratureGrid& quad);

/// W_n(k) = \int F_N^n conj(Z_N^k) dOmega, with both functions sampled
/// pointwise on the grid.
OverlapMatrix overlaps_via_integral(int N, const QuadratureGrid& quad);

/// W_n(k) = omega_k (2^n / (U_1 ... U_n)) P_n(x_k) with |omega_k| = sqrt(w_k)
/// from the derived weights and arg(omega_k) from `reference_row0`.
OverlapMatrix overlaps_via_recurrence(int N, std::span<const std::complex<double>> reference_row0);

BannaiItoParams bannai_ito_params(int N);

// Residuals shared by the verify runner and the tests.

/// max_k |P_{N+1}(x_k)| / max over [min x, max x] of |P_{N+1}|.
double terminal_residual(const RecurrenceTable& t, const SpectralGrid& g, int hull_samples = 4001);

/// max_{n,m} |sum_k w_k P_n P_m - u_n delta_nm| / sqrt(u_n u_m).
double orthogonality_residual(const RecurrenceTable& t, const SpectralGrid& g, const WeightTable& w);

/// max over n of |-(A_n + C_n) - (B_n - 1/2)/2| and |A_{n-1} C_n - U_n^2 / 4|,
/// with U_n, B_n at j = N.
double monic_reduction_residual(int N);

/// max |y_k W_n(k) - U_{n+1} W_{n+1}(k) - B_n W_n(k) - U_n W_{n-1}(k)|.
double recurrence_residual(const OverlapMatrix& w);

}  // namespace rotor::ak
