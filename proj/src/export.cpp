#include "rotor/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rotor::io {
namespace {

const char* kIndexOrdering = "coefficients over Y_j^m with m ascending; flat index i = m + j";

std::string phase_rule_for(BasisFamily f) {
  switch (f) {
    case BasisFamily::M:
      return "M^{m,eps} = (Y^{-m} + i eps Y^m)/sqrt(2); m = 0 carries eps = +1 only";
    case BasisFamily::F:
    case BasisFamily::G:
      return "closed form: real coefficient on M^{k+1,(-1)^k}, imaginary coefficient on M^{k,(-1)^k}";
    case BasisFamily::Z:
      return "Z^k(x1,x2,x3) = F^k(x2,x3,(-1)^{N+1} x1), re-projected onto Y_N^m";
    case BasisFamily::Joint:
      return "first M-basis coefficient with modulus above 1e-8 is positive real";
  }
  return "";
}

BasisFamily family_from_string(const std::string& s) {
  for (BasisFamily f : {BasisFamily::M, BasisFamily::F, BasisFamily::G, BasisFamily::Z, BasisFamily::Joint}) {
    if (s == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown basis family '" + s + "'");
}

json complex_vector(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

json complex_matrix(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(complex_vector(m.row(r).transpose()));
  return rows;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad numeric field '" + s + "'");
  return v;
}

// "-1.5" style column for aligned output
std::string fixed(double x, int width = 22) {
  std::ostringstream o;
  o << std::setw(width) << std::setprecision(15) << x;
  return o.str();
}

std::string cplx_text(cplx z) {
  std::ostringstream o;
  o << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return o.str();
}

double max_deviation(const ak::OverlapMatrix& a, const ak::OverlapMatrix& b) {
  return (a.W - b.W).cwiseAbs().maxCoeff();
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json conventions(const std::string& phase_rule) {
  return json{{"index_ordering", kIndexOrdering},
              {"phase_rule", phase_rule},
              {"condon_shortley", true},
              {"complex_encoding", "[re, im]"}};
}

json envelope(const std::string& kind, json metadata, json payload) {
  if (!metadata.contains("conventions")) metadata["conventions"] = conventions("not applicable");
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"metadata", std::move(metadata)},
              {"payload", std::move(payload)}};
}

std::string validate_envelope(const json& doc) {
  static const std::vector<std::string> kinds{"spectrum", "basis",    "operator", "recurrence",
                                              "weights",  "overlaps", "report",   "values",
                                              "params"};
  if (!doc.is_object()) return "document is not an object";
  for (const char* key : {"schema_version", "kind", "metadata", "payload"}) {
    if (!doc.contains(key)) return std::string("missing key '") + key + "'";
  }
  if (doc["schema_version"] != kSchemaVersion) return "unsupported schema_version";
  if (!doc["kind"].is_string() ||
      std::find(kinds.begin(), kinds.end(), doc["kind"].get<std::string>()) == kinds.end()) {
    return "unknown payload kind";
  }
  const json& meta = doc["metadata"];
  if (!meta.is_object() || !meta.contains("conventions")) return "metadata lacks conventions";
  const json& conv = meta["conventions"];
  for (const char* key : {"index_ordering", "phase_rule", "condon_shortley"}) {
    if (!conv.contains(key)) return std::string("conventions lack '") + key + "'";
  }
  if (!doc["payload"].is_object() && !doc["payload"].is_array()) return "payload is not structured";
  return {};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json spectrum_json(const SpectrumReport& rep, int j, const std::string& op_name) {
  json values = json::array();
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    values.push_back(json{{"eigenvalue", rep.eigenvalues[i]}, {"multiplicity", rep.multiplicities[i]}});
  }
  json meta{{"j", j}, {"operator", op_name}, {"conventions", conventions("not applicable")}};
  return envelope("spectrum", std::move(meta), json{{"values", values}, {"dimension", rep.total()}});
}

json operator_json(const Operator& op, const std::string& op_name) {
  json meta{{"j", op.space.j()}, {"operator", op_name},
            {"conventions", conventions("matrix(r, c) = <Y^{r-j}| A |Y^{c-j}>")}};
  return envelope("operator", std::move(meta), json{{"matrix", complex_matrix(op.matrix)}});
}

json basis_json(const LabeledBasis& basis) {
  const bool z_family = basis.family == BasisFamily::Z;
  json vecs = json::array();
  for (const auto& v : basis.vectors) {
    vecs.push_back(json{{"label", json{{"index", v.label.index}, {"sign", v.label.sign}}},
                        {"q_eigenvalue", v.q_eigenvalue ? json(*v.q_eigenvalue) : json(nullptr)},
                        {"symmetry_eigenvalue", v.symmetry_eigenvalue},
                        {"symmetry_operator", z_family ? "K1" : "K3"},
                        {"coeffs", complex_vector(v.state.coeffs)}});
  }
  json meta{{"j", basis.space.j()}, {"family", to_string(basis.family)},
            {"conventions", conventions(phase_rule_for(basis.family))}};
  return envelope("basis", std::move(meta),
                  json{{"family", to_string(basis.family)}, {"j", basis.space.j()}, {"vectors", vecs}});
}

LabeledBasis basis_from_json(const json& doc) {
  const std::string problem = validate_envelope(doc);
  if (!problem.empty()) throw std::invalid_argument("basis_from_json: " + problem);
  if (doc["kind"] != "basis") throw std::invalid_argument("basis_from_json: payload kind is not 'basis'");
  const json& p = doc["payload"];
  const HarmonicSpace s(p.at("j").get<int>());
  LabeledBasis b{s, family_from_string(p.at("family").get<std::string>()), {}};
  for (const json& v : p.at("vectors")) {
    const json& coeffs = v.at("coeffs");
    Eigen::VectorXcd c(static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) c(static_cast<Eigen::Index>(i)) = complex_from_json(coeffs[i]);
    std::optional<double> q;
    if (!v.at("q_eigenvalue").is_null()) q = v["q_eigenvalue"].get<double>();
    b.vectors.push_back(BasisVector{{v.at("label").at("index").get<int>(), v.at("label").at("sign").get<int>()},
                                    StateVector(s, std::move(c)), q, v.at("symmetry_eigenvalue").get<double>()});
  }
  return b;
}

json recurrence_json(const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  json meta{{"N", t.N}, {"conventions", conventions("not applicable")}};
  return envelope("recurrence", std::move(meta),
                  json{{"A", t.A}, {"C", t.C}, {"b", t.b}, {"c", t.c}, {"x", g.x}, {"y", g.y}});
}

json values_json(const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  json rows = json::array();
  for (int n = 0; n <= t.N + 1; ++n) {
    json row = json::array();
    for (double x : g.x) row.push_back(ak::eval_monic(t, n, x));
    rows.push_back(row);
  }
  json meta{{"N", t.N}, {"conventions", conventions("monic P_n, P[n][k] = P_n(x_k)")}};
  return envelope("values", std::move(meta), json{{"x", g.x}, {"P", rows}});
}

json weights_json(int N, const ak::WeightTable& w, const ak::SpectralGrid& g) {
  json meta{{"N", N}, {"conventions", conventions("derived weights normalized to sum 1")}};
  return envelope("weights", std::move(meta),
                  json{{"x", g.x},
                       {"derived", w.derived},
                       {"closed_form", w.closed_form},
                       {"norms", w.norms},
                       {"discrepant", w.discrepant},
                       {"flag", w.discrepant ? "discrepant" : "proportional"},
                       {"proportionality_error", w.proportionality_error}});
}

json params_json(int N, const ak::BannaiItoParams& p) {
  json meta{{"N", N}, {"conventions", conventions("not applicable")}};
  return envelope("params", std::move(meta), json{{"rho1", p.rho1}, {"rho2", p.rho2}, {"r1", p.r1}, {"r2", p.r2}});
}

json overlaps_json(const ak::OverlapMatrix* integral, const ak::OverlapMatrix* recurrence) {
  if (integral == nullptr && recurrence == nullptr) throw std::invalid_argument("overlaps_json: nothing to export");
  const ak::OverlapMatrix& primary = integral ? *integral : *recurrence;
  json payload{{"N", primary.N}};
  std::string method;
  if (integral) {
    payload["W"] = complex_matrix(integral->W);
    payload["omega"] = complex_vector(integral->omega());
    payload["unitarity_residual"] = integral->unitarity_residual();
    method = "integral";
  }
  if (recurrence) {
    payload[integral ? "W_recurrence" : "W"] = complex_matrix(recurrence->W);
    payload[integral ? "unitarity_residual_recurrence" : "unitarity_residual"] = recurrence->unitarity_residual();
    if (!integral) payload["omega"] = complex_vector(recurrence->omega());
    method = integral ? "both" : "recurrence";
  }
  if (integral && recurrence) payload["max_deviation"] = max_deviation(*integral, *recurrence);
  payload["method"] = method;
  json meta{{"N", primary.N}, {"method", method},
            {"conventions", conventions("W[n][k] = integral of F^n conj(Z^k); F closed form, Z from F by coordinate map")}};
  return envelope("overlaps", std::move(meta), std::move(payload));
}

json report_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back(json{{"suite", c.suite},
                          {"name", c.name},
                          {"j", c.j},
                          {"status", to_string(c.status)},
                          {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"elapsed_ms", c.elapsed_ms},
                          {"detail", c.detail}});
  }
  json meta{{"j_range", json::array({rep.j_min, rep.j_max})},
            {"tolerance_scale", rep.tolerance_scale},
            {"conventions", conventions("see individual payload kinds")}};
  return envelope("report", std::move(meta),
                  json{{"passed", rep.passed()}, {"failures", rep.failures()}, {"checks", checks}});
}

void spectrum_csv(std::ostream& out, const SpectrumReport& rep) {
  out << "eigenvalue,multiplicity\n";
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    out << format_double(rep.eigenvalues[i]) << ',' << rep.multiplicities[i] << '\n';
  }
}

void basis_csv(std::ostream& out, const LabeledBasis& basis) {
  // keeps the family when there are no rows (G at j = 0)
  out << "# family=" << to_string(basis.family) << '\n';
  out << "family,j,index,sign,q_eigenvalue,symmetry_eigenvalue";
  for (int m = -basis.space.j(); m <= basis.space.j(); ++m) out << ",re_m" << m << ",im_m" << m;
  out << '\n';
  for (const auto& v : basis.vectors) {
    out << to_string(basis.family) << ',' << basis.space.j() << ',' << v.label.index << ',' << v.label.sign << ','
        << (v.q_eigenvalue ? format_double(*v.q_eigenvalue) : "") << ',' << format_double(v.symmetry_eigenvalue);
    for (Eigen::Index i = 0; i < v.state.coeffs.size(); ++i) {
      out << ',' << format_double(v.state.coeffs(i).real()) << ',' << format_double(v.state.coeffs(i).imag());
    }
    out << '\n';
  }
}

LabeledBasis basis_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("basis_from_csv: empty input");
  std::optional<BasisFamily> declared;
  if (line.rfind("# family=", 0) == 0) {
    declared = family_from_string(line.substr(9));
    if (!std::getline(in, line)) throw std::invalid_argument("basis_from_csv: missing header");
  }
  const auto header = split_csv_line(line);
  if (header.size() < 6 || header[0] != "family") throw std::invalid_argument("basis_from_csv: bad header");
  const int dim = static_cast<int>(header.size() - 6) / 2;
  if (dim < 1 || (header.size() - 6) % 2 != 0) throw std::invalid_argument("basis_from_csv: bad coefficient columns");
  const HarmonicSpace s((dim - 1) / 2);
  std::optional<LabeledBasis> b;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::invalid_argument("basis_from_csv: ragged row");
    if (!b) b = LabeledBasis{s, family_from_string(cells[0]), {}};
    if (declared && b->family != *declared) throw std::invalid_argument("basis_from_csv: family column disagrees");
    Eigen::VectorXcd c(dim);
    for (int i = 0; i < dim; ++i) c(i) = cplx(parse_double(cells[6 + 2 * i]), parse_double(cells[7 + 2 * i]));
    std::optional<double> q;
    if (!cells[4].empty()) q = parse_double(cells[4]);
    b->vectors.push_back(BasisVector{{std::stoi(cells[2]), std::stoi(cells[3])}, StateVector(s, std::move(c)), q,
                                     parse_double(cells[5])});
  }
  if (!b && declared) return LabeledBasis{s, *declared, {}};
  if (!b) throw std::invalid_argument("basis_from_csv: no rows (family unknown)");
  return *b;
}

void recurrence_csv(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  out << "n,A,C,b,c,x,y\n";
  for (int n = 0; n <= t.N; ++n) {
    out << n << ',' << format_double(t.A[n]) << ',' << format_double(t.C[n]) << ',' << format_double(t.b[n]) << ','
        << format_double(t.c[n]) << ',' << format_double(g.x[n]) << ',' << format_double(g.y[n]) << '\n';
  }
}

void values_csv(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  out << "n";
  for (std::size_t k = 0; k < g.x.size(); ++k) out << ",P_n(x_" << k << ")";
  out << '\n';
  for (int n = 0; n <= t.N + 1; ++n) {
    out << n;
    for (double x : g.x) out << ',' << format_double(ak::eval_monic(t, n, x));
    out << '\n';
  }
}

void weights_csv(std::ostream& out, const ak::WeightTable& w, const ak::SpectralGrid& g) {
  out << "k,x,derived,closed_form,flag\n";
  for (std::size_t k = 0; k < w.derived.size(); ++k) {
    out << k << ',' << format_double(g.x[k]) << ',' << format_double(w.derived[k]) << ','
        << format_double(w.closed_form[k]) << ',' << (w.discrepant ? "discrepant" : "proportional") << '\n';
  }
}

void params_csv(std::ostream& out, const ak::BannaiItoParams& p) {
  out << "rho1,rho2,r1,r2\n"
      << format_double(p.rho1) << ',' << format_double(p.rho2) << ',' << format_double(p.r1) << ','
      << format_double(p.r2) << '\n';
}

void overlaps_csv(std::ostream& out, const ak::OverlapMatrix& w, const std::string& method) {
  out << "method,n";
  for (int k = 0; k <= w.N; ++k) out << ",re_k" << k << ",im_k" << k;
  out << '\n';
  for (int n = 0; n <= w.N; ++n) {
    out << method << ',' << n;
    for (int k = 0; k <= w.N; ++k) out << ',' << format_double(w.W(n, k).real()) << ',' << format_double(w.W(n, k).imag());
    out << '\n';
  }
}

void report_csv(std::ostream& out, const VerifyReport& rep) {
  out << "suite,name,j,status,residual,tolerance,elapsed_ms\n";
  for (const auto& c : rep.checks) {
    out << c.suite << ',' << '"' << c.name << '"' << ',' << c.j << ',' << to_string(c.status) << ','
        << format_double(c.residual) << ',' << format_double(c.tolerance) << ',' << format_double(c.elapsed_ms) << '\n';
  }
}

void spectrum_table(std::ostream& out, const SpectrumReport& rep) {
  out << std::setw(22) << "eigenvalue" << std::setw(14) << "multiplicity" << '\n';
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    out << fixed(rep.eigenvalues[i]) << std::setw(14) << rep.multiplicities[i] << '\n';
  }
}

void basis_table(std::ostream& out, const LabeledBasis& basis) {
  out << to_string(basis.family) << " basis, j = " << basis.space.j() << ", " << basis.size() << " vectors\n";
  for (const auto& v : basis.vectors) {
    out << "  [" << v.label.index << (v.label.sign ? (v.label.sign > 0 ? ",+" : ",-") : "") << "]";
    if (v.q_eigenvalue) out << "  Q = " << *v.q_eigenvalue;
    out << "  " << (basis.family == BasisFamily::Z ? "K1" : "K3") << " = " << v.symmetry_eigenvalue << '\n';
    for (Eigen::Index i = 0; i < v.state.coeffs.size(); ++i) {
      if (std::abs(v.state.coeffs(i)) < 1e-14) continue;
      out << "      Y^" << basis.space.m_of(static_cast<int>(i)) << " : " << cplx_text(v.state.coeffs(i)) << '\n';
    }
  }
}

void recurrence_table(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  out << std::setw(4) << "n" << std::setw(22) << "A" << std::setw(22) << "C" << std::setw(22) << "b" << std::setw(22)
      << "c" << std::setw(22) << "x" << '\n';
  for (int n = 0; n <= t.N; ++n) {
    out << std::setw(4) << n << fixed(t.A[n]) << fixed(t.C[n]) << fixed(t.b[n]) << fixed(t.c[n]) << fixed(g.x[n])
        << '\n';
  }
}

void values_table(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g) {
  out << std::setw(4) << "n";
  for (double x : g.x) out << std::setw(22) << ("x=" + format_double(x));
  out << '\n';
  for (int n = 0; n <= t.N + 1; ++n) {
    out << std::setw(4) << n;
    for (double x : g.x) out << fixed(ak::eval_monic(t, n, x));
    out << '\n';
  }
}

void weights_table(std::ostream& out, const ak::WeightTable& w, const ak::SpectralGrid& g) {
  out << std::setw(4) << "k" << std::setw(22) << "x" << std::setw(22) << "derived" << std::setw(22) << "closed form"
      << '\n';
  for (std::size_t k = 0; k < w.derived.size(); ++k) {
    out << std::setw(4) << k << fixed(g.x[k]) << fixed(w.derived[k]) << fixed(w.closed_form[k]) << '\n';
  }
  out << "closed form vs derived: " << (w.discrepant ? "discrepant" : "proportional")
      << " (proportionality error " << w.proportionality_error << ")\n";
}

void params_table(std::ostream& out, const ak::BannaiItoParams& p) {
  out << "rho1 = " << p.rho1 << "\nrho2 = " << p.rho2 << "\nr1   = " << p.r1 << "\nr2   = " << p.r2 << '\n';
}

void overlaps_table(std::ostream& out, const ak::OverlapMatrix& w) {
  out << "W_n(k), N = " << w.N << " (rows n, columns k)\n";
  for (int n = 0; n <= w.N; ++n) {
    for (int k = 0; k <= w.N; ++k) out << std::setw(34) << cplx_text(w.W(n, k));
    out << '\n';
  }
  out << "unitarity residual: " << w.unitarity_residual() << '\n';
}

void report_table(std::ostream& out, const VerifyReport& rep) {
  for (const auto& c : rep.checks) {
    out << std::left << std::setw(6) << to_string(c.status) << std::setw(17) << c.suite << std::setw(34) << c.name
        << " j=" << std::setw(3) << c.j << std::right << " residual " << std::setw(12) << std::setprecision(3)
        << c.residual << "  tol " << std::setw(10) << c.tolerance;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (rep.passed() ? "ALL PASS" : "FAILURES: " + std::to_string(rep.failures())) << " (" << rep.checks.size()
      << " checks, j = " << rep.j_min << ".." << rep.j_max << ")\n";
}

}  // namespace rotor::io
