#include "rotor/anti_krawtchouk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rotor/errors.hpp"
#include "rotor/quadrature_kernels.hpp"
#include "rotor/susy.hpp"

namespace rotor::ak {
namespace {

int parity(int n) { return (n % 2 == 0) ? 1 : -1; }

void require_positive(int N, const char* who) {
  if (N < 1) throw std::invalid_argument(std::string(who) + ": N must be a positive integer");
}

void require_degree(int N, const QuadratureGrid& quad, const char* who) {
  if (quad.degree < 2 * N) {
    throw ContractViolation(std::string(who) + ": quadrature degree " + std::to_string(quad.degree) +
                            " is below 2N = " + std::to_string(2 * N));
  }
}

// Pochhammer (a)_n.
double rising(double a, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= a + i;
  return r;
}

// (x1, x2, x3) -> (x2, x3, (-1)^{N+1} x1)
SpherePoint permuted(const SpherePoint& p, int N) {
  return SpherePoint::from_cartesian(p.y, p.z, parity(N + 1) * p.x);
}

SphereFunction z_function(const StateVector& f, int N) {
  return [f, N](const SpherePoint& p) { return evaluate(f, permuted(p, N)); };
}

}  // namespace

double OverlapMatrix::unitarity_residual() const {
  const auto n = W.rows();
  return (W.adjoint() * W - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

RecurrenceTable recurrence_coeffs(int N) {
  require_positive(N, "recurrence_coeffs");
  RecurrenceTable t;
  t.N = N;
  for (int n = 0; n <= N; ++n) {
    t.A.push_back((parity(n + N + 1) * (N + 1.0) + n + 1.0) / 4.0);
    t.C.push_back(n == 0 ? 0.0 : (parity(N + n) * (N + 1.0) - n) / 4.0);
  }
  for (int n = 0; n <= N; ++n) {
    t.b.push_back(-(t.A[n] + t.C[n]));
    t.c.push_back(n == 0 ? 0.0 : t.A[n - 1] * t.C[n]);
  }
  return t;
}

SpectralGrid grid(int N) {
  if (N < 0) throw std::invalid_argument("grid: N must be non-negative");
  SpectralGrid g;
  for (int k = 0; k <= N; ++k) {
    const double y = parity(k) * (k + 0.5);
    g.y.push_back(y);
    g.x.push_back(y / 2.0 - 0.25);
  }
  return g;
}

std::vector<double> eval_all(const RecurrenceTable& t, double x) {
  std::vector<double> p(static_cast<std::size_t>(t.N + 2));
  p[0] = 1.0;
  p[1] = x - t.b[0];
  for (int n = 1; n <= t.N; ++n) p[n + 1] = (x - t.b[n]) * p[n] - t.c[n] * p[n - 1];
  return p;
}

double eval_monic(const RecurrenceTable& t, int n, double x) {
  if (n < 0 || n > t.N + 1) throw std::invalid_argument("eval_monic: degree must lie in [0, N+1]");
  return eval_all(t, x)[static_cast<std::size_t>(n)];
}

WeightTable weights(int N) {
  const RecurrenceTable t = recurrence_coeffs(N);
  const SpectralGrid g = grid(N);
  const int n = N + 1;

  // Moment conditions sum_k w_k P_m(x_k) = delta_{m0}, m = 0..N.
  Eigen::MatrixXd v(n, n);
  for (int k = 0; k < n; ++k) {
    const auto p = eval_all(t, g.x[k]);
    for (int m = 0; m < n; ++m) v(m, k) = p[m];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible()) throw std::logic_error("weights: moment system is singular");
  const Eigen::VectorXd w = lu.solve(Eigen::VectorXd::Unit(n, 0));

  WeightTable out;
  out.derived.assign(w.data(), w.data() + n);

  const double alpha = parity(N) * (N + 1.0);
  for (int k = 0; k < n; ++k) {
    const int e = (k % 2 == 0) ? k : k - 1;
    out.closed_form.push_back(parity(k) * rising(1.0 + alpha, e) / rising(1.0 - alpha, e));
  }

  out.norms.push_back(1.0);
  for (int m = 1; m <= N; ++m) out.norms.push_back(out.norms.back() * t.c[m]);

  const double r0 = out.closed_form[0] / out.derived[0];
  for (int k = 0; k < n; ++k) {
    const double r = out.closed_form[k] / out.derived[k];
    out.proportionality_error = std::max(out.proportionality_error, std::abs(r / r0 - 1.0));
  }
  out.discrepant = out.proportionality_error > 1e-8;
  return out;
}

LabeledBasis z_basis(int N, const QuadratureGrid& quad) {
  if (N < 0) throw std::invalid_argument("z_basis: N must be non-negative");
  require_degree(N, quad, "z_basis");
  const HarmonicSpace s(N);
  const LabeledBasis f = f_basis(s);
  const auto sy = build_susy(s);

  LabeledBasis z{s, BasisFamily::Z, {}};
  for (const auto& fv : f.vectors) {
    const int k = fv.label.index;
    StateVector coeffs = project(z_function(fv.state, N), N, quad);
    const double yk = parity(k) * (k + 0.5);
    const double res_k1 = (sy.K1.matrix * coeffs.coeffs - yk * coeffs.coeffs).norm();
    const double res_q = (sy.Q.matrix * coeffs.coeffs + (N + 0.5) * coeffs.coeffs).norm();
    if (res_k1 > 1e-9 || res_q > 1e-9) {
      std::ostringstream msg;
      msg << "z_basis: N=" << N << " k=" << k << " fails eigen-verification (|K1 Z - y Z| = " << res_k1
          << ", |Q Z + (N+1/2) Z| = " << res_q << ")";
      throw FormulaMismatch(msg.str());
    }
    z.vectors.push_back(BasisVector{{k, 0}, std::move(coeffs), -(N + 0.5), yk});
  }
  return z;
}

OverlapMatrix overlaps_via_integral(int N, const QuadratureGrid& quad) {
  require_positive(N, "overlaps_via_integral");
  require_degree(N, quad, "overlaps_via_integral");
  const HarmonicSpace s(N);
  const LabeledBasis f = f_basis(s);
  std::vector<Eigen::VectorXcd> f_samples;
  std::vector<Eigen::VectorXcd> z_samples;
  for (const auto& v : f.vectors) {
    f_samples.push_back(kernels::sample_parallel(as_function(v.state), quad.points));
    z_samples.push_back(kernels::sample_parallel(z_function(v.state, N), quad.points));
  }
  OverlapMatrix out;
  out.N = N;
  out.W.resize(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int k = 0; k <= N; ++k) {
      out.W(n, k) = kernels::weighted_dot_parallel(f_samples[n], z_samples[k], quad.weights);
    }
  }
  return out;
}

OverlapMatrix overlaps_via_recurrence(int N, std::span<const std::complex<double>> reference_row0) {
  require_positive(N, "overlaps_via_recurrence");
  if (static_cast<int>(reference_row0.size()) != N + 1) {
    throw std::invalid_argument("overlaps_via_recurrence: reference row must have N+1 entries");
  }
  const RecurrenceTable t = recurrence_coeffs(N);
  const SpectralGrid g = grid(N);
  const WeightTable w = weights(N);
  const auto u = f_coefficients(N).off;  // U_1..U_N

  OverlapMatrix out;
  out.N = N;
  out.W.resize(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    const cplx ref = reference_row0[static_cast<std::size_t>(k)];
    const cplx phase = std::abs(ref) > 0.0 ? ref / std::abs(ref) : cplx(1.0, 0.0);
    const cplx omega = std::sqrt(w.derived[k]) * phase;
    const auto p = eval_all(t, g.x[k]);
    double scale = 1.0;  // 2^n / (U_1 ... U_n)
    for (int n = 0; n <= N; ++n) {
      if (n > 0) scale *= 2.0 / u[n - 1];
      out.W(n, k) = omega * scale * p[n];
    }
  }
  return out;
}

BannaiItoParams bannai_ito_params(int N) {
  require_positive(N, "bannai_ito_params");
  const double v = parity(N) * (N + 1.0) / 2.0;
  return BannaiItoParams{0.0, v, 0.0, v};
}

double terminal_residual(const RecurrenceTable& t, const SpectralGrid& g, int hull_samples) {
  const auto [lo, hi] = std::minmax_element(g.x.begin(), g.x.end());
  double hull_max = 0.0;
  for (int i = 0; i < hull_samples; ++i) {
    const double x = *lo + (*hi - *lo) * i / (hull_samples - 1.0);
    hull_max = std::max(hull_max, std::abs(eval_monic(t, t.N + 1, x)));
  }
  double worst = 0.0;
  for (double x : g.x) worst = std::max(worst, std::abs(eval_monic(t, t.N + 1, x)));
  return worst / hull_max;
}

double orthogonality_residual(const RecurrenceTable& t, const SpectralGrid& g, const WeightTable& w) {
  const int n = t.N + 1;
  std::vector<std::vector<double>> p;
  for (double x : g.x) p.push_back(eval_all(t, x));
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += w.derived[k] * p[k][a] * p[k][b];
      const double target = (a == b) ? w.norms[a] : 0.0;
      worst = std::max(worst, std::abs(sum - target) / std::sqrt(w.norms[a] * w.norms[b]));
    }
  }
  return worst;
}

double monic_reduction_residual(int N) {
  const RecurrenceTable t = recurrence_coeffs(N);
  const auto ub = f_coefficients(N);
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) {
    worst = std::max(worst, std::abs(-(t.A[n] + t.C[n]) - (ub.diag[n] - 0.5) / 2.0));
    if (n >= 1) {
      const double un = ub.off[n - 1];
      worst = std::max(worst, std::abs(t.A[n - 1] * t.C[n] - un * un / 4.0));
    }
  }
  return worst;
}

double recurrence_residual(const OverlapMatrix& w) {
  const int N = w.N;
  const auto ub = f_coefficients(N);
  const SpectralGrid g = grid(N);
  auto U = [&](int n) { return (n >= 1 && n <= N) ? ub.off[n - 1] : 0.0; };
  double worst = 0.0;
  for (int k = 0; k <= N; ++k) {
    for (int n = 0; n <= N; ++n) {
      cplx r = g.y[k] * w.W(n, k) - ub.diag[n] * w.W(n, k);
      if (n + 1 <= N) r -= U(n + 1) * w.W(n + 1, k);
      if (n >= 1) r -= U(n) * w.W(n - 1, k);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

}  // namespace rotor::ak
