#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/cli.hpp"
#include "rotor/eigenbases.hpp"
#include "rotor/export.hpp"
#include "rotor/susy.hpp"
#include "test_util.hpp"

using namespace rotor;
using nlohmann::json;
using doctest::Approx;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "rotor");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(io::validate_envelope(doc).empty());
  return doc;
}

double orthonormality(const LabeledBasis& b) {
  const Eigen::MatrixXcd m = b.matrix();
  return test::max_abs(m.adjoint() * m - Eigen::MatrixXcd::Identity(m.cols(), m.cols()));
}

}  // namespace

TEST_CASE("format_double round-trips doubles") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = (i % 3 == 0) ? u(rng) * 1e-300 : u(rng);
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(std::stod(io::format_double(0.1)) == 0.1);
}

TEST_CASE("complex json encoding") {
  const cplx z(1.25, -3.5);
  CHECK(io::complex_from_json(io::complex_to_json(z)) == z);
  CHECK_THROWS_AS(io::complex_from_json(json::array({1.0})), std::invalid_argument);
}

TEST_CASE("envelope validation") {
  const json ok = io::envelope("spectrum", json::object(), json::object());
  CHECK(io::validate_envelope(ok).empty());
  json bad = ok;
  bad.erase("metadata");
  CHECK_FALSE(io::validate_envelope(bad).empty());
  bad = ok;
  bad["kind"] = "mystery";
  CHECK_FALSE(io::validate_envelope(bad).empty());
  bad = ok;
  bad["schema_version"] = "0";
  CHECK_FALSE(io::validate_envelope(bad).empty());
  CHECK_FALSE(io::validate_envelope(json::array()).empty());
}

TEST_CASE("basis round-trips through json and csv") {
  for (int j : {0, 1, 4, 9}) {
    const HarmonicSpace s(j);
    for (const LabeledBasis& b : {m_basis(s), f_basis(s), g_basis(s), ak::z_basis(j, build_grid(j))}) {
      const json doc = io::basis_json(b);
      CHECK(io::validate_envelope(doc).empty());
      const LabeledBasis back = io::basis_from_json(json::parse(doc.dump()));
      CHECK(back.size() == b.size());
      CHECK(back.family == b.family);
      if (b.size() > 0) {
        CHECK(test::max_abs(back.matrix() - b.matrix()) == 0.0);
        CHECK(orthonormality(back) <= 1e-12);
      }

      std::stringstream csv;
      io::basis_csv(csv, b);
      const LabeledBasis from_csv = io::basis_from_csv(csv);
      CHECK(from_csv.size() == b.size());
      if (b.size() > 0) CHECK(test::max_abs(from_csv.matrix() - b.matrix()) == 0.0);
    }
  }
}

TEST_CASE("exports are deterministic") {
  const HarmonicSpace s(6);
  CHECK(io::basis_json(f_basis(s)).dump() == io::basis_json(f_basis(s)).dump());
  CHECK(run({"overlaps", "--N", "5"}).out == run({"overlaps", "--N", "5"}).out);
  std::ostringstream a, b;
  io::weights_csv(a, ak::weights(7), ak::grid(7));
  io::weights_csv(b, ak::weights(7), ak::grid(7));
  CHECK(a.str() == b.str());
}

TEST_CASE("cli verify") {
  CHECK(run({"verify", "--jmax", "0"}).code == 0);
  CHECK(run({"verify", "--jmax", "-1"}).code == 2);
  CHECK(run({"verify", "--jmax", "3", "--suite", "nonsense"}).code == 2);
  const auto r = run({"--format", "json", "verify", "--jmax", "4", "--suite", "susy,eigenbases"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["kind"] == "report");
  CHECK(doc["payload"]["passed"] == true);
  // tightening every tolerance far below roundoff must fail
  CHECK(run({"--tolerance-scale", "1e-30", "verify", "--jmax", "3"}).code == 1);
}

TEST_CASE("cli spectrum") {
  const json q = run_json({"spectrum", "--j", "2", "--op", "Q"});
  const auto& vals = q["payload"]["values"];
  REQUIRE(vals.size() == 2);
  CHECK(vals[0]["eigenvalue"].get<double>() == Approx(-2.5));
  CHECK(vals[0]["multiplicity"] == 3);
  CHECK(vals[1]["eigenvalue"].get<double>() == Approx(2.5));
  CHECK(vals[1]["multiplicity"] == 2);

  const json c = run_json({"spectrum", "--j", "0", "--op", "C"});
  CHECK(c["payload"]["values"][0]["eigenvalue"].get<double>() == Approx(0.75));

  const json h = run_json({"spectrum", "--j", "3", "--op", "H"});
  CHECK(h["payload"]["values"][0]["multiplicity"] == 7);

  for (const char* op : {"Qalt", "K1", "K2", "K3", "J3"}) CHECK(run({"spectrum", "--j", "2", "--op", op}).code == 0);
  CHECK(run({"spectrum", "--j", "2", "--op", "Gamma"}).code == 2);
  CHECK(run({"spectrum", "--j", "-2", "--op", "Q"}).code == 2);
  CHECK(run({"spectrum", "--op", "Q"}).code == 2);

  const auto csv = run({"--format", "csv", "spectrum", "--j", "1", "--op", "J3"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("eigenvalue") != std::string::npos);
}

TEST_CASE("cli basis") {
  const json f = run_json({"basis", "--j", "1", "--family", "F"});
  const auto& vecs = f["payload"]["vectors"];
  REQUIRE(vecs.size() == 2);
  for (const auto& v : vecs) CHECK(v["q_eigenvalue"].get<double>() == Approx(-1.5));

  const json g0 = run_json({"basis", "--j", "0", "--family", "G"});
  CHECK(g0["payload"]["vectors"].empty());

  const json z = run_json({"basis", "--j", "3", "--family", "Z"});
  CHECK(io::basis_from_json(z).size() == 4);
  CHECK(orthonormality(io::basis_from_json(z)) <= 1e-12);

  CHECK(run({"basis", "--j", "2", "--family", "X"}).code == 2);
  CHECK(run({"basis", "--j", "-1", "--family", "M"}).code == 2);
  CHECK(run({"--format", "table", "basis", "--j", "2", "--family", "M"}).code == 0);
}

TEST_CASE("cli poly") {
  const json t = run_json({"poly", "--N", "2", "--what", "coeffs"});
  CHECK(t["payload"]["A"][1].get<double>() == Approx(1.25));
  CHECK(t["payload"]["C"][0].get<double>() == 0.0);
  const json w = run_json({"poly", "--N", "2", "--what", "weights"});
  CHECK(w["payload"]["derived"][2].get<double>() == Approx(0.625));
  CHECK(w["payload"]["flag"] == "discrepant");
  const json p = run_json({"poly", "--N", "3", "--what", "params"});
  CHECK(p["payload"]["r2"].get<double>() == Approx(-2.0));
  const json v = run_json({"poly", "--N", "2", "--what", "values"});
  CHECK(v["payload"]["P"].size() == 4);
  CHECK(run({"poly", "--N", "0", "--what", "coeffs"}).code == 2);
  CHECK(run({"poly", "--N", "2", "--what", "moments"}).code == 2);
}

TEST_CASE("cli overlaps") {
  const json o = run_json({"overlaps", "--N", "6", "--method", "both"});
  CHECK(o["payload"]["max_deviation"].get<double>() <= 1e-8);
  CHECK(o["payload"]["unitarity_residual"].get<double>() <= 1e-9);
  CHECK(run({"overlaps", "--N", "3", "--method", "integral"}).code == 0);
  CHECK(run({"overlaps", "--N", "3", "--method", "recurrence"}).code == 0);
  CHECK(run({"overlaps", "--N", "3", "--method", "guess"}).code == 2);
  CHECK(run({"overlaps", "--N", "0"}).code == 2);
}

TEST_CASE("cli output file and usage errors") {
  const auto path = std::filesystem::temp_directory_path() / "rotor_cli_test_basis.json";
  std::filesystem::remove(path);
  const auto r = run({"--output", path.string(), "basis", "--j", "2", "--family", "F"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  CHECK(io::validate_envelope(doc).empty());
  CHECK(io::basis_from_json(doc).size() == 3);
  std::filesystem::remove(path);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--format", "xml", "spectrum", "--j", "1", "--op", "H"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const auto bad = run({"spectrum", "--j", "x", "--op", "H"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
}
