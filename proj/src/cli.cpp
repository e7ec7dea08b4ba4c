#include "rotor/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/eigenbases.hpp"
#include "rotor/export.hpp"
#include "rotor/susy.hpp"
#include "rotor/verify.hpp"

namespace rotor {
namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string format;
  std::string output;
  double tolerance_scale = 1.0;
};

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

Operator named_operator(const std::string& name, HarmonicSpace s) {
  if (name == "H") return hamiltonian(s);
  if (name == "J3") return j3(s);
  if (name == "Q") return supercharge(s);
  if (name == "Qalt") return supercharge_alt(s);
  if (name == "C") return casimir(s);
  const auto k = symmetry_generators(s);
  if (name == "K1") return k.K1;
  if (name == "K2") return k.K2;
  if (name == "K3") return k.K3;
  throw UsageError("unknown operator '" + name + "' (expected H, Q, Qalt, K1, K2, K3, C, J3)");
}

const std::string& resolved_format(const Globals& g, const std::string& fallback) {
  return g.format.empty() ? fallback : g.format;
}

int cmd_verify(const Globals& g, int j_max, const std::vector<std::string>& suite_args, std::ostream& out) {
  if (j_max < 0) throw UsageError("--jmax must be non-negative");
  VerifyOptions opt;
  opt.j_max = j_max;
  opt.tolerance_scale = g.tolerance_scale;
  for (const auto& arg : suite_args) {
    std::stringstream ss(arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
        throw UsageError("unknown suite '" + name + "'");
      }
      opt.suites.push_back(name);
    }
  }
  const VerifyReport rep = run_verify(opt);
  const std::string fmt = resolved_format(g, g.output.empty() ? "table" : "json");
  Sink sink(g.output, out);
  if (fmt == "json") {
    sink.stream() << io::report_json(rep).dump(2) << '\n';
  } else if (fmt == "csv") {
    io::report_csv(sink.stream(), rep);
  } else {
    io::report_table(sink.stream(), rep);
  }
  if (!g.output.empty()) {
    out << (rep.passed() ? "all checks passed" : "verification failed") << " (" << rep.checks.size() << " checks, "
        << rep.failures() << " failures); report written to " << g.output << '\n';
  }
  return rep.passed() ? kOk : kFail;
}

int cmd_spectrum(const Globals& g, int j, const std::string& op_name, std::ostream& out) {
  if (j < 0) throw UsageError("--j must be non-negative");
  const HarmonicSpace s(j);
  const Operator op = named_operator(op_name, s);
  const SpectrumReport rep = spectrum(op, true);
  Sink sink(g.output, out);
  const std::string fmt = resolved_format(g, "json");
  if (fmt == "json") {
    sink.stream() << io::spectrum_json(rep, j, op_name).dump(2) << '\n';
  } else if (fmt == "csv") {
    io::spectrum_csv(sink.stream(), rep);
  } else {
    io::spectrum_table(sink.stream(), rep);
  }
  return kOk;
}

int cmd_basis(const Globals& g, int j, const std::string& family, std::ostream& out) {
  if (j < 0) throw UsageError("--j must be non-negative");
  const HarmonicSpace s(j);
  LabeledBasis b{s, BasisFamily::M, {}};
  if (family == "M") {
    b = m_basis(s);
  } else if (family == "F") {
    b = f_basis(s);
  } else if (family == "G") {
    b = g_basis(s);
  } else if (family == "Z") {
    b = ak::z_basis(j, build_grid(j));
  } else {
    throw UsageError("unknown basis family '" + family + "' (expected M, F, G, Z)");
  }
  Sink sink(g.output, out);
  const std::string fmt = resolved_format(g, "json");
  if (fmt == "json") {
    sink.stream() << io::basis_json(b).dump(2) << '\n';
  } else if (fmt == "csv") {
    io::basis_csv(sink.stream(), b);
  } else {
    io::basis_table(sink.stream(), b);
  }
  return kOk;
}

int cmd_poly(const Globals& g, int N, const std::string& what, std::ostream& out) {
  if (N < 1) throw UsageError("--N must be a positive integer");
  const auto t = ak::recurrence_coeffs(N);
  const auto grid = ak::grid(N);
  Sink sink(g.output, out);
  std::ostream& o = sink.stream();
  const std::string fmt = resolved_format(g, "json");
  if (what == "coeffs") {
    if (fmt == "json") o << io::recurrence_json(t, grid).dump(2) << '\n';
    else if (fmt == "csv") io::recurrence_csv(o, t, grid);
    else io::recurrence_table(o, t, grid);
  } else if (what == "values") {
    if (fmt == "json") o << io::values_json(t, grid).dump(2) << '\n';
    else if (fmt == "csv") io::values_csv(o, t, grid);
    else io::values_table(o, t, grid);
  } else if (what == "weights") {
    const auto w = ak::weights(N);
    if (fmt == "json") o << io::weights_json(N, w, grid).dump(2) << '\n';
    else if (fmt == "csv") io::weights_csv(o, w, grid);
    else io::weights_table(o, w, grid);
  } else if (what == "params") {
    const auto p = ak::bannai_ito_params(N);
    if (fmt == "json") o << io::params_json(N, p).dump(2) << '\n';
    else if (fmt == "csv") io::params_csv(o, p);
    else io::params_table(o, p);
  } else {
    throw UsageError("unknown --what '" + what + "' (expected coeffs, values, weights, params)");
  }
  return kOk;
}

int cmd_overlaps(const Globals& g, int N, const std::string& method, std::ostream& out) {
  if (N < 1) throw UsageError("--N must be a positive integer");
  if (method != "integral" && method != "recurrence" && method != "both") {
    throw UsageError("unknown --method '" + method + "' (expected integral, recurrence, both)");
  }
  // The recurrence route needs the phase of omega_k, which only the
  // integral route provides.
  const ak::OverlapMatrix wi = ak::overlaps_via_integral(N, build_grid(N));
  const Eigen::VectorXcd row0 = wi.omega();
  const ak::OverlapMatrix wr = ak::overlaps_via_recurrence(N, {row0.data(), static_cast<std::size_t>(row0.size())});
  const ak::OverlapMatrix* integral = method != "recurrence" ? &wi : nullptr;
  const ak::OverlapMatrix* recurrence = method != "integral" ? &wr : nullptr;

  Sink sink(g.output, out);
  std::ostream& o = sink.stream();
  const std::string fmt = resolved_format(g, "json");
  if (fmt == "json") {
    o << io::overlaps_json(integral, recurrence).dump(2) << '\n';
  } else {
    for (const auto& [w, name] : {std::pair{integral, "integral"}, std::pair{recurrence, "recurrence"}}) {
      if (w == nullptr) continue;
      if (fmt == "csv") io::overlaps_csv(o, *w, name);
      else io::overlaps_table(o, *w);
    }
    if (integral && recurrence && fmt == "table") {
      o << "max deviation between methods: " << (wi.W - wr.W).cwiseAbs().maxCoeff() << '\n';
    }
  }

  const double scale = g.tolerance_scale;
  bool ok = true;
  if (integral) ok = ok && wi.unitarity_residual() <= 1e-9 * scale;
  if (recurrence) ok = ok && wr.unitarity_residual() <= 1e-9 * scale;
  if (integral && recurrence) ok = ok && (wi.W - wr.W).cwiseAbs().maxCoeff() <= 1e-8 * scale;
  return ok ? kOk : kFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supersymmetric quantum rotor: operator identities, so(3)_{-1} bases and anti-Krawtchouk tables",
               "rotor"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--output", g.output, "Write output to PATH instead of standard output");
  app.add_option("--tolerance-scale", g.tolerance_scale, "Multiply all default tolerances")
      ->check(CLI::PositiveNumber);

  int j_max = 20;
  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites for j = 0..jmax");
  verify->add_option("--jmax", j_max, "Largest j (default 20)");
  verify->add_option("--suite", suites, "Restrict to suites (comma separated): harmonics, operators, susy, "
                                        "eigenbases, anti-krawtchouk, overlaps, oracle");

  int j = 0;
  std::string op_name;
  auto* spec = app.add_subcommand("spectrum", "Eigenvalues and multiplicities of an operator on V_j");
  spec->add_option("--j", j, "Angular momentum j")->required();
  spec->add_option("--op", op_name, "H, Q, Qalt, K1, K2, K3, C or J3")->required();

  std::string family;
  auto* basis = app.add_subcommand("basis", "Export the M, F, G or Z basis on V_j");
  basis->add_option("--j", j, "Angular momentum j")->required();
  basis->add_option("--family", family, "M, F, G or Z")->required();

  int N = 0;
  std::string what;
  auto* poly = app.add_subcommand("poly", "Anti-Krawtchouk recurrence tables");
  poly->add_option("--N", N, "Degree parameter N >= 1")->required();
  poly->add_option("--what", what, "coeffs, values, weights or params")->required();

  std::string method = "both";
  auto* overlaps = app.add_subcommand("overlaps", "Overlap matrix between the F and Z bases");
  overlaps->add_option("--N", N, "N >= 1")->required();
  overlaps->add_option("--method", method, "integral, recurrence or both (default both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(g, j_max, suites, out);
    if (*spec) return cmd_spectrum(g, j, op_name, out);
    if (*basis) return cmd_basis(g, j, family, out);
    if (*poly) return cmd_poly(g, N, what, out);
    if (*overlaps) return cmd_overlaps(g, N, method, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace rotor
