#include <gtest/gtest.h>

#include <filesystem>

#include "g2jet/g2/structure.hpp"
#include "g2jet/io/form_file.hpp"
#include "g2jet/io/report.hpp"
#include "g2jet/verify/random.hpp"
#include "support.hpp"

using namespace g2jet;
using F = Form<Rational>;

namespace {

F roundtrip(const F& a) { return form_from_json<Rational>(parse_json(dump_form_file(form_to_json(a)), "test")); }

nlohmann::json e123_file() {
  return form_to_json(F::basis(3, {1, 2, 3}));
}

void expect_parse_error(const nlohmann::json& j, const std::string& fragment) {
  try {
    (void)form_from_json<Rational>(j);
    ADD_FAILURE() << "accepted: " << j.dump();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(FormFile, RoundTripIsExactAndByteStable) {
  Rng rng(11);
  for (int n = 0; n < 20; ++n) {
    const F a = rng.form(static_cast<int>(rng.uniform(0, 7)), 4, 6);
    const F b = roundtrip(a);
    EXPECT_EQ(a, b);
    EXPECT_EQ(b.effective_order(), a.effective_order());
    EXPECT_EQ(b.is_exact(), a.is_exact());
    EXPECT_EQ(dump_form_file(form_to_json(a)), dump_form_file(form_to_json(b)));
  }
}

TEST(FormFile, KeepsEffectiveOrderOfSeries) {
  Rng rng(12);
  const F phi = sigma_can<Rational>(4) + rng.closed_form(3, 4, 3, 2, 3);
  const F lap = G2Structure<Rational>(phi).self_laplacian();
  ASSERT_FALSE(lap.is_exact());
  const F back = roundtrip(lap);
  EXPECT_EQ(back, lap);
  EXPECT_EQ(back.effective_order(), lap.effective_order());
  EXPECT_FALSE(back.is_exact());
}

TEST(FormFile, VectorFieldRoundTrip) {
  Rng rng(13);
  VectorField<Rational> v(3);
  for (int i = 0; i < kDim; ++i) v.comp[i] = rng.jet(3, 4);
  const auto j = field_to_json(v);
  EXPECT_EQ(j["kind"], "vector_field");
  const auto w = field_from_json<Rational>(parse_json(dump_form_file(j), "test"));
  for (int i = 0; i < kDim; ++i) EXPECT_EQ(w.comp[i], v.comp[i]);
}

TEST(FormFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_json("{\"format\": ", "x"), ParseError);

  auto j = e123_file();
  j["format"] = "other";
  expect_parse_error(j, "not a g2jet form file");

  j = e123_file();
  j["version"] = 2;
  expect_parse_error(j, "version");

  j = e123_file();
  j["backend"] = "radical:2:2";
  expect_parse_error(j, "does not match");

  j = e123_file();
  j["terms"][0]["indices"] = {2, 1, 3};
  expect_parse_error(j, "strictly increasing");

  j = e123_file();
  j["terms"][0]["indices"] = {1, 2};
  expect_parse_error(j, "indices, degree is 3");

  j = e123_file();
  j["terms"][0]["exponents"] = {4, 0, 0, 0, 0, 0, 0};
  expect_parse_error(j, "above the truncation order");

  j = e123_file();
  j["terms"].push_back(j["terms"][0]);
  expect_parse_error(j, "repeated term");

  j = e123_file();
  j["terms"][0]["coeff"] = "0";
  expect_parse_error(j, "zero coefficient");

  j = e123_file();
  j["terms"][0]["coeff"] = 1;
  expect_parse_error(j, "coeff must be a string");

  j = e123_file();
  j.erase("order");
  expect_parse_error(j, "missing field 'order'");
}

TEST(FormFile, BackendSpecs) {
  EXPECT_EQ(parse_backend("rational").kind, BackendSpec::Kind::rational);
  const auto r = parse_backend("radical:3:2");
  EXPECT_EQ(r.kind, BackendSpec::Kind::radical);
  EXPECT_EQ(r.degree, 3);
  EXPECT_EQ(r.to_string(), "radical:3:2");
  EXPECT_EQ(parse_backend("bigfloat:256").bits, 256);
  EXPECT_THROW(parse_backend("radical:3"), Error);
  EXPECT_THROW(parse_backend("float"), Error);
}

TEST(FormFile, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "g2jet_test_io";
  std::filesystem::create_directories(dir);
  const auto path = dir / "e123.json";
  const std::string text = dump_form_file(e123_file());
  write_file_atomic(path, text);
  EXPECT_EQ(read_file(path), text);
  EXPECT_FALSE(std::filesystem::exists(dir / "e123.json.tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Report, DigestAndDeterminism) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");

  Report r;
  r.command = "verify test";
  r.inputs = "seed=1";
  Section s;
  s.name = "demo";
  s.claims.push_back({"one", "1 = 1", true, "ignored"});
  s.claims.push_back({"two", "1 = 2", false, "1 != 2"});
  s.findings.push_back({"k", "4"});
  s.seconds = 1.5;
  r.sections.push_back(s);
  r.exit_code = 1;

  const auto j = r.to_json();
  EXPECT_FALSE(j.contains("error"));
  EXPECT_FALSE(j["sections"][0].contains("seconds"));
  EXPECT_FALSE(j["sections"][0]["claims"][0].contains("witness"));
  EXPECT_EQ(j["sections"][0]["claims"][1]["witness"], "1 != 2");
  EXPECT_EQ(j["summary"]["claims"], 2);
  EXPECT_EQ(j["summary"]["passed"], 1);
  EXPECT_EQ(j["summary"]["all_pass"], false);
  EXPECT_EQ(j["inputs_digest"], fnv1a_hex("seed=1"));
  EXPECT_EQ(dump_json(j), dump_json(r.to_json()));
  EXPECT_EQ(r.to_json(true)["sections"][0]["seconds"], 1.5);

  const std::string text = r.to_text();
  EXPECT_NE(text.find("PASS one"), std::string::npos);
  EXPECT_NE(text.find("FAIL two"), std::string::npos);
  EXPECT_NE(text.find("1/2 claims pass"), std::string::npos);
}
