#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdl/mdl.h"

using nlohmann::json;

namespace {

struct SystemDeleter {
  void operator()(mdl_system* s) const { mdl_system_destroy(s); }
};
using System = std::unique_ptr<mdl_system, SystemDeleter>;

System make(const char* beta, const char* type, const char* p1 = "1/3", const char* p2 = "2/3") {
  mdl_system* s = nullptr;
  EXPECT_EQ(mdl_system_create(p1, p2, beta, type, 0, &s), MDL_OK) << mdl_last_error();
  return System(s);
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  mdl_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, Version) { EXPECT_STREQ(mdl_version(), "1.0.0"); }

TEST(CApi, CreateRejectsBadInput) {
  mdl_system* s = nullptr;
  EXPECT_EQ(mdl_system_create("1/2", "1/2", "1", "+++", 0, &s), MDL_INVALID_ARGUMENT);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(mdl_last_error()).find("partition"), std::string::npos);
  EXPECT_EQ(mdl_system_create("1/3", "2/3", "abc", "+++", 0, &s), MDL_INVALID_ARGUMENT);
  EXPECT_EQ(mdl_system_create("1/3", "2/3", "1", "+*+", 0, &s), MDL_INVALID_ARGUMENT);
  EXPECT_EQ(mdl_system_create("1/3", "2/3", "3", "+++", 0, &s), MDL_INVALID_ARGUMENT);
  EXPECT_EQ(mdl_system_create("1/3", "2/3", "3", "+++", 1, &s), MDL_OK);
  mdl_system_destroy(s);
  EXPECT_EQ(mdl_system_create(nullptr, "2/3", "1", "+++", 0, &s), MDL_INVALID_ARGUMENT);
  EXPECT_EQ(mdl_system_create("1/3", "2/3", "1", "+++", 0, nullptr), MDL_INVALID_ARGUMENT);
  mdl_system_destroy(nullptr);
}

TEST(CApi, JsonRoundTrip) {
  const System s = make("1", "+-+");
  char* text = nullptr;
  ASSERT_EQ(mdl_system_to_json(s.get(), &text), MDL_OK);
  const std::string js = take(text);
  EXPECT_EQ(json::parse(js), json::parse(R"({"p1":"1/3","p2":"2/3","beta":"1","type":"+-+"})"));
  mdl_system* back = nullptr;
  ASSERT_EQ(mdl_system_from_json(js.c_str(), &back), MDL_OK);
  char* again = nullptr;
  ASSERT_EQ(mdl_system_to_json(back, &again), MDL_OK);
  EXPECT_EQ(take(again), js);
  mdl_system_destroy(back);
  EXPECT_EQ(mdl_system_from_json("{not json", &back), MDL_INVALID_ARGUMENT);
}

TEST(CApi, Reflect) {
  const System s = make("1", "+--");
  mdl_system* r = nullptr;
  int oor = -1;
  ASSERT_EQ(mdl_system_reflect(s.get(), &r, &oor), MDL_OK);
  EXPECT_EQ(oor, 0);
  char* text = nullptr;
  ASSERT_EQ(mdl_system_to_json(r, &text), MDL_OK);
  EXPECT_EQ(json::parse(take(text)), json::parse(R"({"p1":"1/3","p2":"2/3","beta":"-1/2","type":"--+"})"));
  mdl_system_destroy(r);
}

TEST(CApi, ForwardMap) {
  const System s = make("1", "+++");
  double y = -1;
  ASSERT_EQ(mdl_forward_map(s.get(), MDL_MAP_T, 0.0, &y), MDL_OK);
  EXPECT_DOUBLE_EQ(y, 1.0 / 3);
  EXPECT_EQ(mdl_forward_map(s.get(), MDL_MAP_T, 1.5, &y), MDL_DOMAIN_ERROR);
}

TEST(CApi, DetAndAnalyze) {
  char* det = nullptr;
  ASSERT_EQ(mdl_det_system(make("1", "+++").get(), &det), MDL_OK);
  EXPECT_EQ(take(det), "0");
  char* out = nullptr;
  EXPECT_EQ(mdl_analyze(make("1", "+-+").get(), MDL_FORMAT_JSON, &out), MDL_OK);
  const json j = json::parse(take(out));
  EXPECT_EQ(j["dual"]["status"], "found");
  EXPECT_EQ(j["density"]["den"], json::parse(R"(["20","27","9"])"));
  EXPECT_EQ(mdl_analyze(make("1", "++-").get(), MDL_FORMAT_TEXT, &out), MDL_NO_DUAL);
  EXPECT_NE(take(out).find("dual: none"), std::string::npos);
}

TEST(CApi, DetscanAndConic) {
  char* out = nullptr;
  ASSERT_EQ(mdl_detscan("1/2", "3/4", "+++", &out), MDL_OK);
  const json scan = json::parse(take(out));
  EXPECT_EQ(scan["roots"].size(), 2u);
  EXPECT_EQ(mdl_detscan("3/4", "1/2", "+++", &out), MDL_INVALID_ARGUMENT);

  const char* ts[] = {"3", "2", "3/2"};
  ASSERT_EQ(mdl_conic(ts, 3, &out), MDL_OK);
  const json table = json::parse(take(out));
  EXPECT_EQ(table["entries"][0]["p1"], "4/7");
  EXPECT_EQ(table["entries"][2]["p2"], "3/7");
  ASSERT_EQ(mdl_conic_range("5", 1, &out), MDL_OK);
  EXPECT_EQ(json::parse(take(out))["entries"].size(), 4u);
}

TEST(CApi, Verify) {
  char* out = nullptr;
  EXPECT_EQ(mdl_verify(make("2", "+++").get(), &out), MDL_OK);
  EXPECT_NE(take(out).find("non-normalizable"), std::string::npos);
  EXPECT_EQ(mdl_verify(make("1", "+--").get(), &out), MDL_VERIFY_FAILED);
  EXPECT_NE(take(out).find("no candidate density"), std::string::npos);
}

TEST(CApi, Simulate) {
  const System s = make("1", "+-+");
  mdl_sim_config cfg = mdl_sim_config_default();
  EXPECT_EQ(cfg.map, MDL_MAP_S);
  EXPECT_EQ(cfg.iterations, 1000000u);
  EXPECT_EQ(cfg.bins, 50u);
  EXPECT_DOUBLE_EQ(cfg.ks_threshold, 0.02);
  cfg.iterations = 200000;
  const auto csv = std::filesystem::temp_directory_path() / "mdl_capi_hist.csv";
  char* summary = nullptr;
  double ks = -1;
  ASSERT_EQ(mdl_simulate(s.get(), &cfg, csv.c_str(), &summary, &ks), MDL_OK) << mdl_last_error();
  EXPECT_GE(ks, 0.0);
  EXPECT_LT(ks, 0.02);
  EXPECT_EQ(json::parse(take(summary))["pass"], true);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "bin_lo,bin_hi,empirical,analytic");
  std::filesystem::remove(csv);

  cfg.ks_threshold = 1e-6;
  EXPECT_EQ(mdl_simulate(s.get(), &cfg, nullptr, &summary, &ks), MDL_KS_FAILED);
  mdl_string_free(summary);

  const System ray = make("2", "+++");
  cfg = mdl_sim_config_default();
  cfg.iterations = 50000;
  EXPECT_EQ(mdl_simulate(ray.get(), &cfg, nullptr, &summary, &ks), MDL_NOT_NORMALIZABLE);
  cfg.restrict_lo = "1/10";
  EXPECT_EQ(mdl_simulate(ray.get(), &cfg, nullptr, &summary, &ks), MDL_OK) << mdl_last_error();
  mdl_string_free(summary);
  cfg.bins = 3;
  EXPECT_EQ(mdl_simulate(ray.get(), &cfg, nullptr, &summary, &ks), MDL_INVALID_ARGUMENT);
}

TEST(CApi, LastErrorIsThreadLocal) {
  mdl_system* s = nullptr;
  EXPECT_EQ(mdl_system_create("1/2", "1/2", "1", "+++", 0, &s), MDL_INVALID_ARGUMENT);
  const std::string here = mdl_last_error();
  std::thread([] {
    mdl_system* t = nullptr;
    EXPECT_EQ(mdl_system_create("1/3", "2/3", "zz", "+++", 0, &t), MDL_INVALID_ARGUMENT);
  }).join();
  EXPECT_EQ(std::string(mdl_last_error()), here);
}

TEST(CApi, ConcurrentAnalyze) {
  std::vector<std::thread> threads;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([i, &ok] {
      const System s = make(i % 2 ? "1" : "1/2", i % 2 ? "+++" : "+-+");
      char* out = nullptr;
      ok[static_cast<std::size_t>(i)] = mdl_analyze(s.get(), MDL_FORMAT_JSON, &out) == MDL_OK;
      mdl_string_free(out);
    });
  for (auto& t : threads) t.join();
  for (int v : ok) EXPECT_EQ(v, 1);
}
