#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <limits>

#include "tprodlab/generators.hpp"
#include "tprodlab/io.hpp"

using namespace tprod;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tprodlab_io_" + name)).string();
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(TensorJson, BitExactRoundtrip) {
  Tensor3 t = gen_complex_tensor(2, 3, 4, 1);
  t(0, 0, 0) = cplx(0.1, -0.0);
  t(1, 2, 3) = cplx(std::numeric_limits<double>::denorm_min(), 1e308);
  t(0, 1, 2) = cplx(1.0 / 3.0, -2.0 / 7.0);
  const std::string path = temp_path("tensor.json");
  write_tensor(path, t);
  const Tensor3 back = read_tensor(path);
  ASSERT_TRUE(back.same_shape(t));
  for (std::size_t i = 0; i < t.data().size(); ++i) {
    EXPECT_TRUE(bit_equal(back.data()[i].real(), t.data()[i].real()));
    EXPECT_TRUE(bit_equal(back.data()[i].imag(), t.data()[i].imag()));
  }
  std::filesystem::remove(path);
}

TEST(TensorJson, LayoutIsSliceBySliceRowMajor) {
  Tensor3 t(2, 2, 2);
  t(0, 1, 0) = 1.0;
  t(1, 0, 1) = 2.0;
  const json j = tensor_to_json(t);
  EXPECT_EQ(j["real"][1].get<double>(), 1.0);
  EXPECT_EQ(j["real"][6].get<double>(), 2.0);
}

TEST(TensorJson, DiagnosticsNameTheField) {
  json j = tensor_to_json(gen_tensor(2, 2, 2, 1));
  j["real"].erase(0);
  EXPECT_NE(message_of([&] { tensor_from_json(j); }).find("tensor.real"), std::string::npos);
  json k = tensor_to_json(gen_tensor(2, 2, 2, 1));
  k.erase("p");
  EXPECT_NE(message_of([&] { tensor_from_json(k); }).find("tensor.p"), std::string::npos);
  json s = tensor_to_json(gen_tensor(2, 2, 2, 1));
  s["imag"][3] = "x";
  EXPECT_NE(message_of([&] { tensor_from_json(s); }).find("tensor.imag[3]"), std::string::npos);
}

TEST(TensorJson, NonFiniteEntriesAreRejected) {
  Tensor3 t(1, 1, 1);
  t(0, 0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(tensor_to_json(t), FormatError);
}

TEST(EnsembleJson, RoundtripAndValidation) {
  const Ensemble e = Ensemble::from_support({0.25, 0.75}, {gen_hermitian(2, 3, 1), gen_hermitian(2, 3, 2)});
  const Ensemble back = ensemble_from_json(ensemble_to_json(e));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.weights, e.weights);
  EXPECT_EQ(back.support[1].frobenius_norm(), e.support[1].frobenius_norm());

  json bad = ensemble_to_json(e);
  bad["support"][1]["weight"] = 0.5;
  EXPECT_NE(message_of([&] { ensemble_from_json(bad); }).find("support"), std::string::npos);
  json nonherm = ensemble_to_json(e);
  nonherm["support"][0]["tensor"] = tensor_to_json(gen_tensor(2, 2, 3, 4));
  EXPECT_NE(message_of([&] { ensemble_from_json(nonherm); }).find("support[0].tensor"), std::string::npos);
}

TEST(ConfigJson, RoundtripAndUnknownFields) {
  CheckConfig c;
  c.name = "klein";
  c.m = 2;
  c.n_family = {4};
  c.trials = 11;
  c.seed = 123456789012345ULL;
  c.tol = 1e-7;
  c.functions = {"exp", "square"};
  const CheckConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.name, c.name);
  EXPECT_EQ(back.n_family, c.n_family);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.functions, c.functions);
  EXPECT_EQ(back.tol, c.tol);
  EXPECT_THROW(config_from_json(json{{"trails", 3}}), FormatError);
  EXPECT_THROW(config_from_json(json{{"m", 0}}), FormatError);
}

TEST(ReportJson, RoundtripKeepsNonFiniteMargins) {
  CheckReport r;
  r.name = "x";
  r.anchor = "a statement";
  r.worst_margin = std::numeric_limits<double>::infinity();
  r.stats["nan_stat"] = std::numeric_limits<double>::quiet_NaN();
  r.failing_seeds = {1, 2};
  const json j = check_report_to_json(r);
  EXPECT_EQ(j["worst_margin"], "inf");
  const CheckReport back = check_report_from_json(j);
  EXPECT_TRUE(std::isinf(back.worst_margin));
  EXPECT_TRUE(std::isnan(back.stats.at("nan_stat")));
  EXPECT_EQ(back.failing_seeds, r.failing_seeds);
  EXPECT_EQ(back.anchor, r.anchor);
}

TEST(ReportJson, EnvelopeIsVersioned) {
  const json env = report_envelope("verify");
  EXPECT_EQ(env["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(env["command"], "verify");
  EXPECT_TRUE(env.contains("generated_at"));
}
