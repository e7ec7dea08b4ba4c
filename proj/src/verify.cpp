#include "rotor/verify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/eigenbases.hpp"
#include "rotor/harmonics.hpp"
#include "rotor/operators.hpp"
#include "rotor/oracles.hpp"
#include "rotor/susy.hpp"

namespace rotor {
namespace {

constexpr cplx kI(0.0, 1.0);

class Recorder {
 public:
  Recorder(std::string suite, int j, double scale) : suite_(std::move(suite)), j_(j), scale_(scale) {}

  // residual <= base_tol * scale passes
  void check(const std::string& name, double base_tol, const std::function<double()>& residual) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{suite_, name, j_, CheckStatus::Pass, 0.0, base_tol * scale_, 0.0, {}};
    try {
      r.residual = residual();
      r.status = (r.residual <= r.tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
      r.status = CheckStatus::Fail;
      r.residual = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    r.elapsed_ms = elapsed(t0);
    results_.push_back(std::move(r));
  }

  // lower bound checks: value >= threshold passes; residual stores the value
  void at_least(const std::string& name, double threshold, double value) {
    CheckResult r{suite_, name, j_, value >= threshold ? CheckStatus::Pass : CheckStatus::Fail, value, threshold, 0.0,
                  "lower bound"};
    results_.push_back(std::move(r));
  }

  void info(const std::string& name, double value, std::string detail) {
    results_.push_back(CheckResult{suite_, name, j_, CheckStatus::Info, value, 0.0, 0.0, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  static double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string suite_;
  int j_;
  double scale_;
  std::vector<CheckResult> results_;
};

double spectrum_mismatch(const SpectrumReport& rep, const std::vector<double>& values, const std::vector<int>& mult) {
  if (rep.eigenvalues.size() != values.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (rep.multiplicities[i] != mult[i]) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(rep.eigenvalues[i] - values[i]));
  }
  return worst;
}

void harmonics_suite(Recorder& rec, int j) {
  const QuadratureGrid grid = build_grid(j);
  rec.check("gram_identity", 1e-12, [&] {
    const Eigen::MatrixXcd t = harmonic_table(j, grid);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(t.rows(), t.rows());
    for (Eigen::Index p = 0; p < t.cols(); ++p) g += grid.weights[static_cast<std::size_t>(p)] * t.col(p) * t.col(p).adjoint();
    return (g - Eigen::MatrixXcd::Identity(t.rows(), t.rows())).cwiseAbs().maxCoeff();
  });
  rec.check("constant_integrates_to_4pi", 1e-12, [&] {
    double s = 0.0;
    for (double w : grid.weights) s += w;
    return std::abs(s - 4.0 * std::numbers::pi);
  });
  if (j <= 8) {
    rec.check("parity_R1_pointwise", 1e-10, [&] {
      std::mt19937 rng(1234u + static_cast<unsigned>(j));
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const auto p = SpherePoint::from_cartesian(u(rng), u(rng), u(rng));
        const auto q = SpherePoint::from_cartesian(-p.x, p.y, p.z);
        for (int m = -j; m <= j; ++m) {
          worst = std::max(worst, std::abs(ylm_eval(BasisIndex(j, m), q) - ylm_eval(BasisIndex(j, -m), p)));
        }
      }
      return worst;
    });
  }
  if (j <= 6) {
    rec.check("ylm_vs_direct_sum", 1e-10, [&] {
      std::mt19937 rng(99u + static_cast<unsigned>(j));
      std::uniform_real_distribution<double> th(0.0, std::numbers::pi);
      std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const double t = th(rng);
        const double f = ph(rng);
        for (int m = -j; m <= j; ++m) {
          worst = std::max(worst, std::abs(ylm_eval(BasisIndex(j, m), t, f) - oracle::ylm_direct(j, m, t, f)));
        }
      }
      return worst;
    });
  }
}

void operators_suite(Recorder& rec, int j) {
  const HarmonicSpace s(j);
  const double tol = 1e-12 * s.dim();
  const Operator a = j1(s), b = j2(s), c = j3(s);
  const Operator id = Operator::identity(s);
  rec.check("so3_[J1,J2]=iJ3", tol, [&] { return op_norm(commutator(a, b) - kI * c); });
  rec.check("so3_[J2,J3]=iJ1", tol, [&] { return op_norm(commutator(b, c) - kI * a); });
  rec.check("so3_[J3,J1]=iJ2", tol, [&] { return op_norm(commutator(c, a) - kI * b); });
  rec.check("[J+,J-]=2J3", tol, [&] { return op_norm(commutator(jplus(s), jminus(s)) - 2.0 * c); });
  rec.check("hamiltonian_scalar", tol, [&] { return op_norm(hamiltonian(s) - (j + 0.5) * (j + 0.5) * id); });
  rec.check("reflection_algebra", tol, [&] {
    const std::array<Operator, 3> r{reflection(1, s), reflection(2, s), reflection(3, s)};
    const std::array<const Operator*, 3> js{&a, &b, &c};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, op_norm(r[i] * r[i] - id));
      worst = std::max(worst, op_norm(r[i] - adjoint(r[i])));
      worst = std::max(worst, op_norm(commutator(*js[i], r[i])));
      for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, op_norm(commutator(r[i], r[k])));
        if (k != i) worst = std::max(worst, op_norm(anticommutator(*js[i], r[k])));
      }
    }
    return worst;
  });
  rec.check("[H,J_i]=[H,R_i]=0", tol, [&] {
    const Operator h = hamiltonian(s);
    double worst = 0.0;
    for (const Operator* x : {&a, &b, &c}) worst = std::max(worst, op_norm(commutator(h, *x)));
    for (int i = 1; i <= 3; ++i) worst = std::max(worst, op_norm(commutator(h, reflection(i, s))));
    return worst;
  });
}

void susy_suite(Recorder& rec, int j) {
  const HarmonicSpace s(j);
  const double tol = 1e-12 * s.dim();
  const SusyOperators o = build_susy(s);
  const Operator h = hamiltonian(s);
  rec.check("Q^2=H", tol, [&] { return op_norm(o.Q * o.Q - h); });
  rec.check("Qalt^2=H", tol, [&] { return op_norm(o.Q_alt * o.Q_alt - h); });
  rec.check("self_adjoint_Q_K", tol, [&] {
    double worst = 0.0;
    for (const Operator* x : {&o.Q, &o.K1, &o.K2, &o.K3}) worst = std::max(worst, op_norm(*x - adjoint(*x)));
    return worst;
  });
  rec.check("{K1,K2}=K3", tol, [&] { return op_norm(anticommutator(o.K1, o.K2) - o.K3); });
  rec.check("{K2,K3}=K1", tol, [&] { return op_norm(anticommutator(o.K2, o.K3) - o.K1); });
  rec.check("{K3,K1}=K2", tol, [&] { return op_norm(anticommutator(o.K3, o.K1) - o.K2); });
  rec.check("[K_i,Q]=0", tol, [&] {
    double worst = 0.0;
    for (const Operator* x : {&o.K1, &o.K2, &o.K3}) worst = std::max(worst, op_norm(commutator(*x, o.Q)));
    return worst;
  });
  rec.check("C=Q^2-Q", tol, [&] { return op_norm(o.C - o.Q * o.Q + o.Q); });
  rec.check("[C,K_i]=0", tol, [&] {
    double worst = 0.0;
    for (const Operator* x : {&o.K1, &o.K2, &o.K3}) worst = std::max(worst, op_norm(commutator(o.C, *x)));
    return worst;
  });
  const double q = j + 0.5;
  rec.check("spectrum_Q", 1e-8, [&] {
    if (j == 0) return spectrum_mismatch(spectrum(o.Q, true), {-q}, {1});
    return spectrum_mismatch(spectrum(o.Q, true), {-q, q}, {j + 1, j});
  });
  rec.check("spectrum_H", 1e-8, [&] { return spectrum_mismatch(spectrum(h, true), {q * q}, {2 * j + 1}); });
  {
    const SpectrumReport alt = spectrum(o.Q_alt, true);
    std::ostringstream d;
    for (std::size_t i = 0; i < alt.eigenvalues.size(); ++i) {
      d << (i ? ", " : "") << alt.eigenvalues[i] << " x" << alt.multiplicities[i];
    }
    rec.info("spectrum_Qalt_measured", 0.0, d.str());
  }
  if (j >= 1) {
    const NonSymmetryReport ns = non_symmetry_report(s);
    rec.at_least("min_i ||[J_i,Q]|| > 0", 1e-6, ns.min_j());
    rec.at_least("min_i ||[R_i,Q]|| > 0", 1e-6, ns.min_r());
    rec.check("[H,K_i]=0", tol, [&] {
      return *std::max_element(ns.h_commutators.begin(), ns.h_commutators.end());
    });
  }
}

void eigenbases_suite(Recorder& rec, int j) {
  const HarmonicSpace s(j);
  const SusyOperators o = build_susy(s);
  LabeledBasis f{s, BasisFamily::F, {}}, g{s, BasisFamily::G, {}};
  try {
    f = f_basis(s);
    g = g_basis(s);
  } catch (const std::exception& e) {
    rec.check("closed_form_bases", 0.0, [&]() -> double { throw std::runtime_error(e.what()); });
    return;
  }
  rec.check("m_basis_K3_eigen", 1e-10, [&] {
    double worst = 0.0;
    for (const auto& v : m_basis(s).vectors) {
      worst = std::max(worst, (o.K3.matrix * v.state.coeffs - v.symmetry_eigenvalue * v.state.coeffs).norm());
    }
    return worst;
  });
  rec.check("q_action_on_m_formula", 1e-12, [&] {
    return (in_basis(o.Q, m_basis(s)) - q_action_on_m(s)).cwiseAbs().maxCoeff();
  });
  rec.check("F_G_eigen_equations", 1e-10, [&] {
    double worst = 0.0;
    for (const LabeledBasis* b : {&f, &g}) {
      for (const auto& v : b->vectors) {
        worst = std::max(worst, (o.Q.matrix * v.state.coeffs - *v.q_eigenvalue * v.state.coeffs).norm());
        worst = std::max(worst, (o.K3.matrix * v.state.coeffs - v.symmetry_eigenvalue * v.state.coeffs).norm());
      }
    }
    return worst;
  });
  rec.check("closed_form_matches_oracle", 1e-10, [&] {
    const LabeledBasis joint = joint_diagonalize(o.Q, o.K3);
    double worst = 0.0;
    for (const LabeledBasis* b : {&f, &g}) {
      const int sign = (b == &f) ? -1 : 1;
      for (const auto& v : b->vectors) {
        bool found = false;
        for (const auto& w : joint.vectors) {
          if (w.label.sign == sign && w.label.index == v.label.index) {
            worst = std::max(worst, std::abs(std::abs(w.state.coeffs.dot(v.state.coeffs)) - 1.0));
            found = true;
          }
        }
        if (!found) return std::numeric_limits<double>::infinity();
      }
    }
    return worst;
  });
  rec.check("tridiagonal_F_vs_closed_form", 1e-10, [&] { return tridiagonal_extract(o.K1, f).formula_error; });
  if (j >= 1) {
    rec.check("tridiagonal_G_vs_closed_form", 1e-10, [&] { return tridiagonal_extract(o.K1, g).formula_error; });
  }
  rec.check("decomposition_blocks", 1e-10, [&] {
    const DecompositionReport d = decompose(s);
    if (d.f_dim != j + 1 || d.g_dim != j || d.rank != 2 * j + 1 || !d.f_irreducible || (j > 0 && !d.g_irreducible)) {
      return std::numeric_limits<double>::infinity();
    }
    return std::max({d.f_g_overlap, d.leak_k1, d.leak_k2, d.leak_k3, d.leak_q});
  });
}

void anti_krawtchouk_suite(Recorder& rec, int N) {
  if (N < 1) return;
  const ak::RecurrenceTable t = ak::recurrence_coeffs(N);
  const ak::SpectralGrid g = ak::grid(N);
  const ak::WeightTable w = ak::weights(N);
  rec.check("P_{N+1}_vanishes_on_grid", 1e-8, [&] { return ak::terminal_residual(t, g); });
  rec.check("discrete_orthogonality", 1e-9, [&] { return ak::orthogonality_residual(t, g, w); });
  rec.check("monic_reduction", 1e-12, [&] { return ak::monic_reduction_residual(N); });
  rec.check("weights_positive_sum_one", 1e-12, [&] {
    double sum = 0.0;
    for (double x : w.derived) {
      if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
      sum += x;
    }
    return std::abs(sum - 1.0);
  });
  rec.check("weights_vs_golub_welsch", 1e-10, [&] {
    const auto rule = oracle::golub_welsch(t);
    std::vector<std::pair<double, double>> ours;
    for (int k = 0; k <= N; ++k) ours.emplace_back(g.x[k], w.derived[k]);
    std::sort(ours.begin(), ours.end());
    double worst = 0.0;
    for (int k = 0; k <= N; ++k) {
      worst = std::max(worst, std::abs(ours[k].first - rule.nodes[k]));
      worst = std::max(worst, std::abs(ours[k].second - rule.weights[k]));
    }
    return worst;
  });
  {
    std::ostringstream d;
    d << (w.discrepant ? "discrepant" : "proportional") << "; proportionality error " << w.proportionality_error;
    rec.info("closed_form_weight_column", w.proportionality_error, d.str());
  }
}

void overlaps_suite(Recorder& rec, int N) {
  if (N < 1) return;
  const QuadratureGrid quad = build_grid(N);
  const HarmonicSpace s(N);
  const SusyOperators o = build_susy(s);
  LabeledBasis z{s, BasisFamily::Z, {}};
  try {
    z = ak::z_basis(N, quad);
  } catch (const std::exception& e) {
    rec.check("z_basis", 0.0, [&]() -> double { throw std::runtime_error(e.what()); });
    return;
  }
  rec.check("z_orthonormal", 1e-9, [&] {
    const Eigen::MatrixXcd zm = z.matrix();
    return (zm.adjoint() * zm - Eigen::MatrixXcd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff();
  });
  rec.check("z_K2_tridiagonal", 1e-10, [&] { return tridiagonal_extract(o.K2, z).formula_error; });
  const ak::OverlapMatrix wi = ak::overlaps_via_integral(N, quad);
  const Eigen::VectorXcd row0 = wi.omega();
  const ak::OverlapMatrix wr = ak::overlaps_via_recurrence(N, {row0.data(), static_cast<std::size_t>(row0.size())});
  const ak::WeightTable w = ak::weights(N);
  rec.check("W_unitary_integral", 1e-9, [&] { return wi.unitarity_residual(); });
  rec.check("W_unitary_recurrence", 1e-9, [&] { return wr.unitarity_residual(); });
  rec.check("W_integral_vs_recurrence", 1e-8, [&] { return (wi.W - wr.W).cwiseAbs().maxCoeff(); });
  rec.check("|omega_k|^2=w_k", 1e-8, [&] {
    double worst = 0.0;
    for (int k = 0; k <= N; ++k) worst = std::max(worst, std::abs(std::norm(row0(k)) - w.derived[k]));
    return worst;
  });
  rec.check("W_recurrence_residual", 1e-9, [&] { return ak::recurrence_residual(wi); });
}

void oracle_suite(Recorder& rec, int j) {
  if (j > 8) return;
  const HarmonicSpace s(j);
  const QuadratureGrid grid = build_grid(j);
  auto entry = [&](const std::string& name, const oracle::PointwiseOperator& pw, const Operator& analytic) {
    rec.check(name, 1e-8, [&] {
      return (oracle::matrix_by_quadrature(j, pw, grid).matrix - analytic.matrix).cwiseAbs().maxCoeff();
    });
  };
  entry("J3_by_quadrature", oracle::rotation_generator(3), j3(s));
  entry("J+_by_quadrature", oracle::raising(), jplus(s));
  entry("J-_by_quadrature", oracle::lowering(), jminus(s));
  for (int axis = 1; axis <= 3; ++axis) {
    entry("R" + std::to_string(axis) + "_by_quadrature", oracle::reflect(axis), reflection(axis, s));
  }
}

using SuiteFn = void (*)(Recorder&, int);

struct Suite {
  std::string name;
  SuiteFn fn;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"harmonics", harmonics_suite}, {"operators", operators_suite},
      {"susy", susy_suite},           {"eigenbases", eigenbases_suite},
      {"anti-krawtchouk", anti_krawtchouk_suite}, {"overlaps", overlaps_suite},
      {"oracle", oracle_suite},
  };
  return all;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Info:
      return "info";
  }
  return "?";
}

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.name);
    return n;
  }();
  return names;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.j_max < 0) throw std::invalid_argument("run_verify: j_max must be non-negative");
  if (!(options.tolerance_scale > 0.0)) throw std::invalid_argument("run_verify: tolerance scale must be positive");
  std::vector<const Suite*> selected;
  for (const auto& s : suites()) {
    if (options.suites.empty() ||
        std::find(options.suites.begin(), options.suites.end(), s.name) != options.suites.end()) {
      selected.push_back(&s);
    }
  }
  for (const auto& name : options.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw std::invalid_argument("run_verify: unknown suite '" + name + "'");
    }
  }

  const int n_j = options.j_max + 1;
  const int n_tasks = static_cast<int>(selected.size()) * n_j;
  std::vector<std::vector<CheckResult>> per_task(static_cast<std::size_t>(n_tasks));
#pragma omp parallel for schedule(dynamic)
  for (int task = 0; task < n_tasks; ++task) {
    const Suite& suite = *selected[static_cast<std::size_t>(task / n_j)];
    const int j = task % n_j;
    Recorder rec(suite.name, j, options.tolerance_scale);
    suite.fn(rec, j);
    per_task[static_cast<std::size_t>(task)] = rec.take();
  }

  VerifyReport report;
  report.j_max = options.j_max;
  report.tolerance_scale = options.tolerance_scale;
  for (auto& chunk : per_task) {
    for (auto& c : chunk) report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace rotor
