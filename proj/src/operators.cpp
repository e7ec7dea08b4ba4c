#include "rotor/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "rotor/errors.hpp"

namespace rotor {
namespace {

constexpr cplx kI(0.0, 1.0);

void require_same_space(const Operator& a, const Operator& b, const char* who) {
  if (!(a.space == b.space)) {
    throw std::invalid_argument(std::string(who) + ": operators act on different spaces");
  }
}

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace

Operator::Operator(HarmonicSpace s) : space(s), matrix(Eigen::MatrixXcd::Zero(s.dim(), s.dim())) {}

Operator::Operator(HarmonicSpace s, Eigen::MatrixXcd m) : space(s), matrix(std::move(m)) {
  if (matrix.rows() != space.dim() || matrix.cols() != space.dim()) {
    throw std::invalid_argument("Operator: matrix shape does not match 2j+1");
  }
}

Operator Operator::identity(HarmonicSpace s) {
  return Operator(s, Eigen::MatrixXcd::Identity(s.dim(), s.dim()));
}

cplx Operator::operator()(int m_row, int m_col) const {
  return matrix(space.index(m_row), space.index(m_col));
}

StateVector Operator::apply(const StateVector& v) const {
  if (!(v.space == space)) throw std::invalid_argument("Operator::apply: space mismatch");
  return StateVector(space, matrix * v.coeffs);
}

int SpectrumReport::total() const {
  int n = 0;
  for (int m : multiplicities) n += m;
  return n;
}

Operator j3(HarmonicSpace s) {
  Operator op(s);
  for (int m = -s.j(); m <= s.j(); ++m) op.matrix(s.index(m), s.index(m)) = static_cast<double>(m);
  return op;
}

Operator jplus(HarmonicSpace s) {
  Operator op(s);
  const int j = s.j();
  for (int m = -j; m < j; ++m) {
    op.matrix(s.index(m + 1), s.index(m)) = std::sqrt(static_cast<double>((j - m) * (j + m + 1)));
  }
  return op;
}

Operator jminus(HarmonicSpace s) { return adjoint(jplus(s)); }

Operator j1(HarmonicSpace s) { return 0.5 * (jplus(s) + jminus(s)); }

Operator j2(HarmonicSpace s) { return (1.0 / (2.0 * kI)) * (jplus(s) - jminus(s)); }

Operator reflection(int axis, HarmonicSpace s) {
  Operator op(s);
  const int j = s.j();
  for (int m = -j; m <= j; ++m) {
    switch (axis) {
      case 1:
        op.matrix(s.index(-m), s.index(m)) = 1.0;
        break;
      case 2:
        op.matrix(s.index(-m), s.index(m)) = static_cast<double>(parity(m));
        break;
      case 3:
        op.matrix(s.index(m), s.index(m)) = static_cast<double>(parity(j + m));
        break;
      default:
        throw std::invalid_argument("reflection: axis must be 1, 2 or 3");
    }
  }
  return op;
}

Operator hamiltonian(HarmonicSpace s) {
  const Operator a = j1(s);
  const Operator b = j2(s);
  const Operator c = j3(s);
  return a * a + b * b + c * c + 0.25 * Operator::identity(s);
}

Operator compose(const Operator& a, const Operator& b) {
  require_same_space(a, b, "compose");
  return Operator(a.space, a.matrix * b.matrix);
}

Operator add(const Operator& a, const Operator& b) {
  require_same_space(a, b, "add");
  return Operator(a.space, a.matrix + b.matrix);
}

Operator scale(cplx c, const Operator& a) { return Operator(a.space, c * a.matrix); }

Operator adjoint(const Operator& a) { return Operator(a.space, a.matrix.adjoint()); }

Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a, b, "commutator");
  return Operator(a.space, a.matrix * b.matrix - b.matrix * a.matrix);
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_space(a, b, "anticommutator");
  return Operator(a.space, a.matrix * b.matrix + b.matrix * a.matrix);
}

double op_norm(const Operator& a) { return a.matrix.norm(); }

Operator operator*(const Operator& a, const Operator& b) { return compose(a, b); }
Operator operator+(const Operator& a, const Operator& b) { return add(a, b); }
Operator operator-(const Operator& a, const Operator& b) { return add(a, scale(-1.0, b)); }
Operator operator*(cplx c, const Operator& a) { return scale(c, a); }
Operator operator*(double c, const Operator& a) { return scale(cplx(c, 0.0), a); }

bool is_self_adjoint(const Operator& a, double tol) { return (a.matrix - a.matrix.adjoint()).norm() <= tol; }

SpectrumReport group_eigenvalues(std::vector<double> sorted, double tol) {
  std::sort(sorted.begin(), sorted.end());
  SpectrumReport rep;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double start = sorted[i];
    double sum = 0.0;
    int count = 0;
    while (i < sorted.size() && sorted[i] - start <= tol) {
      sum += sorted[i];
      ++count;
      ++i;
    }
    rep.eigenvalues.push_back(sum / count);
    rep.multiplicities.push_back(count);
  }
  return rep;
}

SpectrumReport spectrum(const Operator& a, bool self_adjoint, double cluster_tol) {
  std::vector<double> values;
  double max_imag = 0.0;
  if (self_adjoint) {
    if (!is_self_adjoint(a, 1e-10)) {
      throw ContractViolation("spectrum: operator flagged self-adjoint is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = solver.eigenvalues();
    values.assign(ev.data(), ev.data() + ev.size());
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.matrix, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      values.push_back(solver.eigenvalues()(i).real());
      max_imag = std::max(max_imag, std::abs(solver.eigenvalues()(i).imag()));
    }
  }
  SpectrumReport rep = group_eigenvalues(std::move(values), cluster_tol);
  rep.max_imag = max_imag;
  return rep;
}

}  // namespace rotor
