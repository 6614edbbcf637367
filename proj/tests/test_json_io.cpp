#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "stbc/json_io.hpp"

using namespace stbc;
using nlohmann::json;

namespace {

void expect_same_spec(const CodeSpec& a, const CodeSpec& b) {
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.base, b.base);
  EXPECT_EQ(a.method, b.method);
  EXPECT_EQ(a.conductor, b.conductor);
  EXPECT_EQ(a.sigma_exponent, b.sigma_exponent);
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.gamma_den, b.gamma_den);
  EXPECT_EQ(a.basis, b.basis);
  EXPECT_EQ(a.fixing, b.fixing);
  EXPECT_EQ(a.e0, b.e0);
  EXPECT_EQ(a.n1, b.n1);
  EXPECT_EQ(a.odd_prime_power, b.odd_prime_power);
}

const char* kConfig = R"({
  "code": {"method": "A", "n": 2},
  "M": 2,
  "n_r": 2,
  "snr_db": [6, 10],
  "trials": 100,
  "seed": 4
})";

}  // namespace

TEST(CodeSpecJson, RoundTrip) {
  for (const CodeSpec& s : {construct_A(2), construct_B(5), construct_HEX(3), perfect_3x3_spec(), construct_A(14)}) {
    const std::string text = code_spec_to_json(s);
    expect_same_spec(code_spec_from_json(text), s);
    EXPECT_EQ(code_spec_to_json(code_spec_from_json(text)), text);
  }
}

TEST(CodeSpecJson, RejectsUnknownFieldsAndGarbage) {
  json j = json::parse(code_spec_to_json(construct_A(2)));
  j["colour"] = "blue";
  EXPECT_THROW(code_spec_from_json(j.dump()), ConfigError);
  EXPECT_THROW(code_spec_from_json("{not json"), ConfigError);
}

TEST(CodebookJson, RoundTrip) {
  for (const Codebook& b : {build_codebook(construct_A(2), 4), row_delete(build_codebook(perfect_3x3_spec(), 2), {0}),
                            cartesian_product({build_codebook(construct_A(2), 2), build_codebook(construct_B(2), 2)})}) {
    const std::string text = codebook_to_json(b);
    const json j = json::parse(text);
    EXPECT_EQ(j.at("n_t"), b.n_t);
    EXPECT_EQ(j.at("T"), b.T);
    EXPECT_EQ(j.at("M"), b.constellation.M);
    EXPECT_TRUE(j.contains("theta_rule"));
    EXPECT_EQ(j.at("generator").size(), static_cast<std::size_t>(b.generator.size()));
    const Codebook back = codebook_from_json(text);
    EXPECT_EQ(back.n_t, b.n_t);
    EXPECT_EQ(back.T, b.T);
    EXPECT_LT((back.generator - b.generator).norm(), 1e-12);
    EXPECT_DOUBLE_EQ(back.e_max, b.e_max);
  }
}

TEST(CodebookJson, GeneratorIsRowMajorPairs) {
  const Codebook b = build_codebook(construct_A(2), 2);
  const json j = json::parse(codebook_to_json(b));
  const int cols = j.at("generator_cols");
  const auto& g = j.at("generator");
  for (int r = 0; r < b.generator.rows(); ++r)
    for (int c = 0; c < cols; ++c) {
      EXPECT_NEAR(g[r * cols + c][0].get<double>(), b.generator(r, c).real(), 1e-15);
      EXPECT_NEAR(g[r * cols + c][1].get<double>(), b.generator(r, c).imag(), 1e-15);
    }
}

TEST(CodebookJson, TamperedGeneratorIsRejected) {
  json j = json::parse(codebook_to_json(build_codebook(construct_A(2), 2)));
  j["generator"][0][0] = j["generator"][0][0].get<double>() + 0.5;
  EXPECT_THROW(codebook_from_json(j.dump()), ConfigError);
}

TEST(RunConfigJson, ParsesDefaultsAndRoundTrips) {
  const RunConfig c = run_config_from_json(kConfig);
  EXPECT_EQ(c.code.method, "A");
  EXPECT_EQ(c.code.n, 2);
  EXPECT_EQ(c.M, 2);
  EXPECT_FALSE(c.rate_bpcu.has_value());
  EXPECT_EQ(c.snr_db, (std::vector<double>{6, 10}));
  EXPECT_EQ(c.decoder, "sphere");
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(run_config_from_json(run_config_to_json(c)), c);
  EXPECT_EQ(resolve_constellation(c), 2);
}

TEST(RunConfigJson, RejectsInvalidConfigs) {
  const json base = json::parse(kConfig);
  auto with = [&](const std::string& key, const json& v) {
    json j = base;
    j[key] = v;
    return j.dump();
  };
  EXPECT_THROW(run_config_from_json(with("trails", 10)), ConfigError);
  EXPECT_THROW(run_config_from_json(with("trials", 0)), ConfigError);
  EXPECT_THROW(run_config_from_json(with("snr_db", json::array())), ConfigError);
  EXPECT_THROW(run_config_from_json(with("rate_bpcu", 4)), ConfigError);
  json neither = base;
  neither.erase("M");
  EXPECT_THROW(run_config_from_json(neither.dump()), ConfigError);
  json nested = base;
  nested["code"]["extra"] = 1;
  EXPECT_THROW(run_config_from_json(nested.dump()), ConfigError);
  json missing = base;
  missing.erase("trials");
  EXPECT_THROW(run_config_from_json(missing.dump()), ConfigError);
}

TEST(RunConfigJson, RateSelectsConstellation) {
  json j = json::parse(kConfig);
  j.erase("M");
  j["rate_bpcu"] = 4;
  EXPECT_EQ(resolve_constellation(run_config_from_json(j.dump())), 2);
  j["rate_bpcu"] = 8;
  EXPECT_EQ(resolve_constellation(run_config_from_json(j.dump())), 4);
  j["rate_bpcu"] = 9;
  EXPECT_EQ(resolve_constellation(run_config_from_json(j.dump())), 6);
  j["code"] = json{{"method", "perfect3x3"}, {"n", 3}, {"delete_rows", {0}}};
  j["rate_bpcu"] = 6;
  EXPECT_EQ(resolve_constellation(run_config_from_json(j.dump())), 2);
}

TEST(RunConfigJson, ShippedConfigsParse) {
  for (const char* name : {"golden_2x2_4bpcu.json", "golden_2x2_4bpcu_exhaustive.json", "rect_2x3_6bpcu.json"}) {
    const RunConfig c = run_config_from_json(read_text_file(std::string(STBC_CONFIG_DIR) + "/" + name));
    const Codebook b = build_from_ref(c.code, resolve_constellation(c));
    EXPECT_GT(b.log2_size(), 0) << name;
  }
}

TEST(Reports, SimResultJson) {
  SimResult r;
  r.code = "A(2)";
  SimPoint p;
  p.snr_db = 10;
  p.trials = 100;
  p.errors = 10;
  r.points = {p};
  const json j = json::parse(sim_result_to_json(r));
  EXPECT_EQ(j.at("points").size(), 1u);
  EXPECT_TRUE(j.contains("diversity_slope"));
}

TEST(Files, ReadWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "stbc_json_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  const std::string path = (dir / "x.txt").string();
  write_text_file(path, "hello");
  EXPECT_EQ(read_text_file(path), "hello\n");
  write_text_file(path, "a\nb\n");
  EXPECT_EQ(read_text_file(path), "a\nb\n");
  std::filesystem::remove_all(dir.parent_path());
  EXPECT_THROW(read_text_file(path), ConfigError);
}
