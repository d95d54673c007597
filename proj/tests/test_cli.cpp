#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation tatecalc(const std::string& args) {
  Invocation r;
  FILE* p = popen((std::string(TATECALC_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_input(const std::string& name, const json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("tatecalc_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

std::string scenario(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name + ".json"; }

json split_inert(const json& lambda) {
  return {{"group", {{"catalog", "cyclic"}, {"n", 2}}},
          {"places", {{"points", 3}, {"images", {{1, 0, 2}}}}},
          {"lambda", lambda}};
}

}  // namespace

TEST(Cli, GlobalDocument) {
  const Invocation r = tatecalc("global --json --input " + scenario("split_inert_pgl2"));
  ASSERT_EQ(r.code, 0);
  const json d = json::parse(r.out);
  EXPECT_EQ(d["tool"]["version"], "1.0.0");
  EXPECT_EQ(d["window"], json({-3, 3}));
  EXPECT_EQ(d["result"]["A"]["text"], "Z/2");
  EXPECT_EQ(d["result"]["places"][1]["representative"], 2);
  EXPECT_EQ(d["result"]["places"][1]["localization"]["matrix"], json({{1}}));
}

TEST(Cli, TrivialLambdaGivesFreeA) {
  const Invocation r = tatecalc("global --json --input " + write_input("gl1", split_inert({{"catalog", "gl"}, {"n", 1}})));
  ASSERT_EQ(r.code, 0);
  const json d = json::parse(r.out);
  EXPECT_EQ(d["result"]["A"]["text"], "Z");
  EXPECT_EQ(d["result"]["h1"]["text"], "0");
}

TEST(Cli, ObstructionVerdicts) {
  json in = split_inert({{"rank", 1}, {"coroots", {{2}}}});
  in["locals"] = {{1}, {0}};
  json d = json::parse(tatecalc("obstruction --json --input " + write_input("obs10", in)).out);
  EXPECT_FALSE(d["result"]["in_image"].get<bool>());
  EXPECT_EQ(d["result"]["obstruction"], json({1}));
  in["locals"] = {{1}, {1}};
  d = json::parse(tatecalc("obstruction --json --input " + write_input("obs11", in)).out);
  EXPECT_TRUE(d["result"]["in_image"].get<bool>());
  EXPECT_EQ(d["result"]["certificate"], json({1}));
  in["locals"] = json::array();
  d = json::parse(tatecalc("obstruction --json --input " + write_input("obs00", in)).out);
  EXPECT_TRUE(d["result"]["in_image"].get<bool>());
}

TEST(Cli, TateAndTn) {
  const json t = {{"group", {{"catalog", "cyclic"}, {"n", 3}}}, {"module", {{"free_rank", 1}}}, {"degree", 2}};
  json d = json::parse(tatecalc("tate --json --input " + write_input("tate", t)).out);
  EXPECT_EQ(d["result"]["group"]["text"], "Z/3");
  d = json::parse(tatecalc("tn --json --input " + scenario("carry_triple_c4")).out);
  EXPECT_TRUE(d["result"]["weak_tn"].get<bool>());
  EXPECT_TRUE(d["result"]["rigid"].get<bool>());
  EXPECT_EQ(d["window"], json({-2, 1}));
  const json zero = {{"triple", {{"builtin", "cyclic_carry"}, {"n", 2}, {"multiple", 0}}}};
  d = json::parse(tatecalc("tn --json --input " + write_input("zero", zero)).out);
  EXPECT_FALSE(d["result"]["weak_tn"].get<bool>());
}

TEST(Cli, ExitCodes) {
  json bad_images = split_inert({{"catalog", "gl"}, {"n", 1}});
  bad_images["places"]["images"] = {{1, 0}};
  EXPECT_EQ(tatecalc("global --input " + write_input("bad_images", bad_images)).code, 2);
  json big = split_inert({{"catalog", "gl"}, {"n", 1}});
  big["group"]["n"] = 30;
  big["places"] = {{"points", 1}, {"images", {{0}}}};
  const Invocation guarded = tatecalc("global --json --input " + write_input("big", big));
  EXPECT_EQ(guarded.code, 3);
  EXPECT_TRUE(guarded.out.empty());
  EXPECT_EQ(tatecalc("tate --input " + scenario("tate_sign_c2") + " --degree 5").code, 2);
  EXPECT_EQ(tatecalc("tate --input " + scenario("tate_sign_c2") + " --degree 5 --window -5 5").code, 0);
  json bad_locals = split_inert({{"rank", 1}, {"coroots", {{2}}}});
  bad_locals["locals"] = {{2}, {0}};
  EXPECT_EQ(tatecalc("obstruction --input " + write_input("bad_locals", bad_locals)).code, 2);
  EXPECT_EQ(tatecalc("tn --input " + scenario("carry_triple_c4") + " --max-group-order 3").code, 3);
  EXPECT_EQ(tatecalc("local").code, 2);
}

TEST(Cli, TowerReportsScaling) {
  const json d = json::parse(tatecalc("tower --json --input " + scenario("quadratic_tower")).out);
  EXPECT_EQ(d["result"]["degree"], 2);
  EXPECT_EQ(d["result"]["map"]["matrix"], json({{2}}));
  EXPECT_FALSE(d["result"]["bijective"].get<bool>());
  EXPECT_EQ(d["result"]["local_degrees"], json({1, 1, 2}));
}
