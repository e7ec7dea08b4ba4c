#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rotor/anti_krawtchouk.hpp"
#include "rotor/eigenbases.hpp"
#include "rotor/operators.hpp"
#include "rotor/verify.hpp"

namespace rotor::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Index, phase and Legendre conventions carried by every payload.
json conventions(const std::string& phase_rule);

/// {"schema_version", "kind", "metadata": {...conventions...}, "payload"}
json envelope(const std::string& kind, json metadata, json payload);

/// Envelope shape check; returns an empty string when valid, else the first problem.
std::string validate_envelope(const json& doc);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json spectrum_json(const SpectrumReport& rep, int j, const std::string& op_name);
json operator_json(const Operator& op, const std::string& op_name);
json basis_json(const LabeledBasis& basis);
json recurrence_json(const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
json values_json(const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
json weights_json(int N, const ak::WeightTable& w, const ak::SpectralGrid& g);
json params_json(int N, const ak::BannaiItoParams& p);
/// Either pointer may be null; with both present the payload also carries
/// the entrywise deviation between them.
json overlaps_json(const ak::OverlapMatrix* integral, const ak::OverlapMatrix* recurrence);
json report_json(const VerifyReport& rep);

/// Inverse of basis_json.
LabeledBasis basis_from_json(const json& doc);

/// Full-precision (17 significant digit) CSV writers.
void spectrum_csv(std::ostream& out, const SpectrumReport& rep);
void basis_csv(std::ostream& out, const LabeledBasis& basis);
void recurrence_csv(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
void values_csv(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
void weights_csv(std::ostream& out, const ak::WeightTable& w, const ak::SpectralGrid& g);
void params_csv(std::ostream& out, const ak::BannaiItoParams& p);
void overlaps_csv(std::ostream& out, const ak::OverlapMatrix& w, const std::string& method);
void report_csv(std::ostream& out, const VerifyReport& rep);

/// Inverse of basis_csv.
LabeledBasis basis_from_csv(std::istream& in);

/// Human-readable aligned tables.
void spectrum_table(std::ostream& out, const SpectrumReport& rep);
void basis_table(std::ostream& out, const LabeledBasis& basis);
void recurrence_table(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
void values_table(std::ostream& out, const ak::RecurrenceTable& t, const ak::SpectralGrid& g);
void weights_table(std::ostream& out, const ak::WeightTable& w, const ak::SpectralGrid& g);
void params_table(std::ostream& out, const ak::BannaiItoParams& p);
void overlaps_table(std::ostream& out, const ak::OverlapMatrix& w);
void report_table(std::ostream& out, const VerifyReport& rep);

std::string format_double(double x);  // %.17g

}  // namespace rotor::io
