#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tprodlab/bounds.hpp"
#include "tprodlab/ensemble.hpp"
#include "tprodlab/report.hpp"
#include "tprodlab/spectral.hpp"
#include "tprodlab/tensor.hpp"

namespace tprod {

using json = nlohmann::json;

/// Malformed input. The message names the offending field, e.g. "support[1].tensor.real".
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kReportSchemaVersion = 1;

// Tensors: {"m","n","p","real":[...],"imag":[...]}, slice by slice, row-major
// inside each slice. Doubles are written in shortest round-trip form, so
// write-then-read is bit-exact. Non-finite entries are rejected.
json tensor_to_json(const Tensor3& t);
Tensor3 tensor_from_json(const json& j, const std::string& where = "tensor");

json tube_to_json(const Tube& t);
Tube tube_from_json(const json& j, const std::string& where = "tube");

// Ensembles: {"m","p","support":[{"weight":w,"tensor":{...}}, ...]}.
json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j, const std::string& where = "ensemble");

// Check configurations: {name, m, n_family, p, trials, seed, scale, tol, functions}.
// Missing fields keep their defaults.
json config_to_json(const CheckConfig& c);
CheckConfig config_from_json(const json& j, const std::string& where = "config");

/// Non-finite margins are written as the strings "inf", "-inf" and "nan".
json check_report_to_json(const CheckReport& r);
CheckReport check_report_from_json(const json& j, const std::string& where = "check");

json bound_trace_to_json(const BoundTrace& t);

/// Singular tubes, eigenvalues, eigentuples and definiteness verdicts.
json spectrum_to_json(const Tensor3& c, const Spectrum& s);

/// Envelope shared by every report: schema, version, command, timestamp.
json report_envelope(const std::string& command);
/// Current UTC time, ISO 8601.
std::string utc_timestamp();

json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const json& j);

Tensor3 read_tensor(const std::string& path);
void write_tensor(const std::string& path, const Tensor3& t);
Ensemble read_ensemble(const std::string& path);
void write_ensemble(const std::string& path, const Ensemble& e);

}  // namespace tprod
