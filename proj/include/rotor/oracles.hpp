#pragma once

// Independent reference computations. Nothing in the main construction
// path calls into this header; the verify runner and the tests use it
// to cross-check the closed forms.

#include <vector>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/harmonics.hpp"
#include "rotor/operators.hpp"

namespace rotor::oracle {

using PointwiseOperator = std::function<SphereFunction(const SphereFunction&)>;

/// J_axis f (p) = -i d/dt f(Rot_axis(t) p) at t = 0, fourth-order central
/// difference with step h.
PointwiseOperator rotation_generator(int axis, double h = 5e-4);

/// J_+ and J_- as J_1 +- i J_2 applied pointwise.
PointwiseOperator raising(double h = 5e-4);
PointwiseOperator lowering(double h = 5e-4);

/// (R_axis f)(x) = f(x with coordinate `axis` negated).
PointwiseOperator reflect(int axis);

/// <Y_j^{m'}| A |Y_j^m> by quadrature of A applied pointwise to Y_j^m.
Operator matrix_by_quadrature(int j, const PointwiseOperator& a, const QuadratureGrid& grid);

/// P_j^m(z) from the explicit sum for P_j and termwise differentiation,
/// Condon–Shortley phase included.
double legendre_direct(int j, int m, double z);

/// Y_j^m from legendre_direct and the factorial prefactor.
cplx ylm_direct(int j, int m, double theta, double phi);

/// Weights as squared first components of the symmetrized Jacobi matrix
/// eigenvectors, matched to ascending nodes.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule golub_welsch(const ak::RecurrenceTable& t);

}  // namespace rotor::oracle
