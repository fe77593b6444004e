#include "tprodlab/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "tprodlab/algebra.hpp"

namespace tprod {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw FormatError(where + ": " + what); }

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

Index positive_index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) fail(where, "expected a positive integer");
  return static_cast<Index>(j.get<long long>());
}

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

std::vector<double> number_array(const json& j, std::size_t size, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (j.size() != size) fail(where, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = finite_number(j[i], where + "[" + std::to_string(i) + "]");
  return out;
}

json real_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_number_from(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    fail(where, "unrecognized number string '" + s + "'");
  }
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

void require_finite(double v, const std::string& where) {
  if (!std::isfinite(v)) fail(where, "non-finite value cannot be serialized");
}

json real_matrix_rows(const RealMatrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json tensor_to_json(const Tensor3& t) {
  json re = json::array(), im = json::array();
  for (const cplx& z : t.data()) {
    require_finite(z.real(), "tensor.real");
    require_finite(z.imag(), "tensor.imag");
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return json{{"m", t.m()}, {"n", t.n()}, {"p", t.p()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

Tensor3 tensor_from_json(const json& j, const std::string& where) {
  const Index m = positive_index(field(j, "m", where), where + ".m");
  const Index n = positive_index(field(j, "n", where), where + ".n");
  const Index p = positive_index(field(j, "p", where), where + ".p");
  const auto size = static_cast<std::size_t>(m * n * p);
  const auto re = number_array(field(j, "real", where), size, where + ".real");
  std::vector<double> im(size, 0.0);
  if (j.contains("imag")) im = number_array(j.at("imag"), size, where + ".imag");
  std::vector<cplx> entries(size);
  for (std::size_t i = 0; i < size; ++i) entries[i] = cplx(re[i], im[i]);
  return Tensor3(m, n, p, std::move(entries));
}

json tube_to_json(const Tube& t) {
  json re = json::array(), im = json::array();
  for (Index k = 0; k < t.size(); ++k) {
    re.push_back(real_number(t[k].real()));
    im.push_back(real_number(t[k].imag()));
  }
  return json{{"real", std::move(re)}, {"imag", std::move(im)}};
}

Tube tube_from_json(const json& j, const std::string& where) {
  // A bare array is accepted as a real tube.
  if (j.is_array()) {
    const auto re = number_array(j, j.size(), where);
    if (re.empty()) fail(where, "empty tube");
    Tube t(static_cast<Index>(re.size()));
    for (std::size_t k = 0; k < re.size(); ++k) t[static_cast<Index>(k)] = re[k];
    return t;
  }
  const json& rj = field(j, "real", where);
  if (!rj.is_array() || rj.empty()) fail(where + ".real", "expected a non-empty array");
  const auto re = number_array(rj, rj.size(), where + ".real");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("imag")) im = number_array(j.at("imag"), re.size(), where + ".imag");
  Tube t(static_cast<Index>(re.size()));
  for (std::size_t k = 0; k < re.size(); ++k) t[static_cast<Index>(k)] = cplx(re[k], im[k]);
  return t;
}

json ensemble_to_json(const Ensemble& e) {
  json support = json::array();
  for (std::size_t s = 0; s < e.size(); ++s)
    support.push_back(json{{"weight", e.weights[s]}, {"tensor", tensor_to_json(e.support[s])}});
  return json{{"m", e.m}, {"p", e.p}, {"support", std::move(support)}};
}

Ensemble ensemble_from_json(const json& j, const std::string& where) {
  const Index m = positive_index(field(j, "m", where), where + ".m");
  const Index p = positive_index(field(j, "p", where), where + ".p");
  const json& sup = field(j, "support", where);
  if (!sup.is_array() || sup.empty()) fail(where + ".support", "expected a non-empty array");
  std::vector<double> weights;
  std::vector<Tensor3> support;
  for (std::size_t s = 0; s < sup.size(); ++s) {
    const std::string at = where + ".support[" + std::to_string(s) + "]";
    const double w = finite_number(field(sup[s], "weight", at), at + ".weight");
    if (!(w > 0.0)) fail(at + ".weight", "weights must be positive");
    Tensor3 t = tensor_from_json(field(sup[s], "tensor", at), at + ".tensor");
    if (t.m() != m || t.n() != m || t.p() != p)
      fail(at + ".tensor", "shape differs from the ensemble's m x m x p");
    if (!is_hermitian(t, 1e-9 * (1.0 + t.max_abs()))) fail(at + ".tensor", "tensor is not Hermitian");
    weights.push_back(w);
    support.push_back(std::move(t));
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-12) fail(where + ".support", "weights must sum to 1");
  try {
    return Ensemble::from_support(std::move(weights), std::move(support));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

json config_to_json(const CheckConfig& c) {
  return json{{"name", c.name},   {"m", c.m},         {"n_family", c.n_family},
              {"p", c.p},         {"trials", c.trials}, {"seed", c.seed},
              {"scale", c.scale}, {"tol", c.tol},       {"functions", c.functions}};
}

CheckConfig config_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  static const std::vector<std::string> known{"name", "m", "n_family", "p", "trials", "seed", "scale", "tol", "functions"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(where + "." + key, "unknown field");
  CheckConfig c;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(where + ".name", "expected a string");
    c.name = j["name"].get<std::string>();
  }
  if (j.contains("m")) c.m = positive_index(j["m"], where + ".m");
  if (j.contains("p")) c.p = positive_index(j["p"], where + ".p");
  if (j.contains("n_family")) {
    const json& nf = j["n_family"];
    if (!nf.is_array() || nf.empty()) fail(where + ".n_family", "expected a non-empty array");
    c.n_family.clear();
    for (std::size_t i = 0; i < nf.size(); ++i) c.n_family.push_back(positive_index(nf[i], where + ".n_family[" + std::to_string(i) + "]"));
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_unsigned()) fail(where + ".trials", "expected a non-negative integer");
    c.trials = j["trials"].get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(where + ".seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("scale")) {
    c.scale = finite_number(j["scale"], where + ".scale");
    if (!(c.scale > 0.0)) fail(where + ".scale", "expected a positive number");
  }
  if (j.contains("tol")) {
    c.tol = finite_number(j["tol"], where + ".tol");
    if (c.tol < 0.0) fail(where + ".tol", "expected a non-negative number");
  }
  if (j.contains("functions")) {
    const json& fs = j["functions"];
    if (!fs.is_array()) fail(where + ".functions", "expected an array of names");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!fs[i].is_string()) fail(where + ".functions[" + std::to_string(i) + "]", "expected a string");
      c.functions.push_back(fs[i].get<std::string>());
    }
  }
  return c;
}

json check_report_to_json(const CheckReport& r) {
  json stats = json::object();
  for (const auto& [k, v] : r.stats) stats[k] = real_number(v);
  return json{{"name", r.name},
              {"anchor", r.anchor},
              {"m", r.m},
              {"p", r.p},
              {"seed", r.seed},
              {"trials", r.trials},
              {"tolerance", r.tolerance},
              {"worst_margin", real_number(r.worst_margin)},
              {"worst_seed", r.worst_seed},
              {"max_equality_gap", real_number(r.max_equality_gap)},
              {"equality_tolerance", r.equality_tolerance},
              {"failing_seeds", r.failing_seeds},
              {"stats", std::move(stats)},
              {"note", r.note},
              {"pass", r.pass}};
}

CheckReport check_report_from_json(const json& j, const std::string& where) {
  CheckReport r;
  try {
    r.name = field(j, "name", where).get<std::string>();
    r.anchor = field(j, "anchor", where).get<std::string>();
    r.m = field(j, "m", where).get<Index>();
    r.p = field(j, "p", where).get<Index>();
    r.seed = field(j, "seed", where).get<std::uint64_t>();
    r.trials = field(j, "trials", where).get<std::size_t>();
    r.tolerance = field(j, "tolerance", where).get<double>();
    r.worst_margin = real_number_from(field(j, "worst_margin", where), where + ".worst_margin");
    r.worst_seed = field(j, "worst_seed", where).get<std::uint64_t>();
    r.max_equality_gap = real_number_from(field(j, "max_equality_gap", where), where + ".max_equality_gap");
    r.equality_tolerance = field(j, "equality_tolerance", where).get<double>();
    r.failing_seeds = field(j, "failing_seeds", where).get<std::vector<std::uint64_t>>();
    for (const auto& [k, v] : field(j, "stats", where).items()) r.stats[k] = real_number_from(v, where + ".stats." + k);
    r.note = field(j, "note", where).get<std::string>();
    r.pass = field(j, "pass", where).get<bool>();
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
  return r;
}

json bound_trace_to_json(const BoundTrace& t) {
  json logs = json::array();
  for (double v : t.log_values) logs.push_back(real_number(v));
  return json{{"name", t.name},
              {"t", t.t},
              {"log_values", std::move(logs)},
              {"bound", real_number(t.bound)},
              {"best_t", t.best_t},
              {"defined_points", t.defined_points}};
}

json spectrum_to_json(const Tensor3& c, const Spectrum& s) {
  json tuples = json::array();
  for (const auto& d : s.eigentuples) tuples.push_back(tube_to_json(d));
  const TSVD svd = tsvd(c);
  json singular = json::array();
  for (Index j = 0; j < std::min(svd.S.m(), svd.S.n()); ++j) {
    Tube t(svd.S.p());
    for (Index k = 0; k < svd.S.p(); ++k) t[k] = svd.S(j, j, k);
    singular.push_back(tube_to_json(t));
  }
  const bool tpd = is_tpd(c), tpsd = is_tpsd(c);
  const RealVector ev = s.eigenvalues();
  return json{{"m", s.m},
              {"p", s.p},
              {"frequency_eigenvalues", real_matrix_rows(s.lambda)},
              {"eigenvalues", std::vector<double>(ev.data(), ev.data() + ev.size())},
              {"lambda_max", s.lambda_max},
              {"lambda_min", s.lambda_min},
              {"eigentuples", std::move(tuples)},
              {"singular_tubes", std::move(singular)},
              {"verdict", tpd ? "TPD" : (tpsd ? "TPSD" : "indefinite")},
              {"tpsd_by_eigentuple", is_tpsd_eigentuple(c)}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json report_envelope(const std::string& command) {
  return json{{"schema", "tprodlab.report"},
              {"schema_version", kReportSchemaVersion},
              {"command", command},
              {"generated_at", utc_timestamp()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

Tensor3 read_tensor(const std::string& path) { return tensor_from_json(read_json_file(path), path); }

void write_tensor(const std::string& path, const Tensor3& t) { write_json_file(path, tensor_to_json(t)); }

Ensemble read_ensemble(const std::string& path) { return ensemble_from_json(read_json_file(path), path); }

void write_ensemble(const std::string& path, const Ensemble& e) { write_json_file(path, ensemble_to_json(e)); }

}  // namespace tprod
