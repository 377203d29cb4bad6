#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "toeplitz_chains/cli.hpp"

using nlohmann::json;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"toeplitz-chains"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return toeplitz_chains::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/tc_cli_" + name;
  std::ofstream os(path);
  os << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kQuartic =
    R"({"class":"BDI","sigma":1,"n_P":2,"zeros_inside":[[0.5,0]],"zeros_outside":[[3.0,0]]})";

}  // namespace

TEST_CASE("analyze emits the envelope with the core quantities") {
  const std::string model = write_temp("model.json", kQuartic);
  const std::string out = "/tmp/tc_cli_analyze.json";
  CHECK(run({"analyze", model, "--out", out}) == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("schema") == "toeplitz-chains/1");
  CHECK(doc.at("command") == "analyze");
  CHECK(doc.at("model_digest").get<std::string>().size() == 16);
  const json& p = doc.at("payload");
  CHECK(p.at("omega") == 0);
  CHECK(p.at("genericity").at("strongly_generic") == true);
  CHECK(p.at("chi").at("lower") == 2);
  CHECK(p.at("chi").at("upper") == 2);
  CHECK(p.at("order_parameter").get<double>() == doctest::Approx(0.96));
}

TEST_CASE("string-corr CSV output is deterministic") {
  const std::string model = write_temp("model.json", kQuartic);
  const std::string out1 = "/tmp/tc_cli_sc1.csv";
  const std::string out2 = "/tmp/tc_cli_sc2.csv";
  CHECK(run({"string-corr", model, "--alpha", "0", "--N", "1..8", "--csv", out1}) == 0);
  CHECK(run({"string-corr", model, "--alpha", "0", "--N", "1..8", "--csv", out2}) == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));
  CHECK(a.rfind("N,value,dominant_rM\n", 0) == 0);
  // 8 data rows
  CHECK(std::count(a.begin(), a.end(), '\n') == 9);
}

TEST_CASE("corr-matrix and efp run end to end") {
  const std::string model = write_temp("model.json", kQuartic);
  const std::string out = "/tmp/tc_cli_cm.csv";
  CHECK(run({"corr-matrix", model, "--N", "1..6", "--format", "csv", "--out", out}) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("N,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  const std::string efp_model = write_temp(
      "efp.json", R"({"class":"BDI","n_P":2,"zeros_inside":[[0.5,0]],"zeros_outside":[[4.0,0]]})");
  const std::string out2 = "/tmp/tc_cli_efp.json";
  CHECK(run({"efp", efp_model, "--N", "1..5", "--out", out2}) == 0);
  const json doc = json::parse(slurp(out2));
  CHECK(doc.at("payload").size() == 5);
  CHECK(doc.at("payload")[0].at("value").get<double>() == doctest::Approx(1.0 / 28.0));
}

TEST_CASE("transfer and approximate subcommands") {
  const std::string model = write_temp("model.json", kQuartic);
  const std::string out = "/tmp/tc_cli_transfer.json";
  CHECK(run({"transfer", model, "--out", out}) == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc.at("payload").at("spectrum").size() == 4);
  CHECK(doc.at("payload").at("injective") == true);

  const std::string target = write_temp(
      "target.json",
      R"({"class":"BDI","n_P":1,"multiplicity":1,"zeros_inside":[[0.4,0]],"zeros_outside":[[2.6,0]]})");
  const std::string out2 = "/tmp/tc_cli_approx.csv";
  CHECK(run({"approximate", target, "--m", "1..6", "--csv", out2}) == 0);
  CHECK(slurp(out2).rfind("m,error,log_error\n", 0) == 0);
}

TEST_CASE("verify reports a clean matrix on a generic model") {
  const std::string model = write_temp("model.json", kQuartic);
  const std::string out = "/tmp/tc_cli_verify.json";
  CHECK(run({"verify", model, "--alpha", "-3..3", "--N", "1..10", "--out", out}) == 0);
  const json doc = json::parse(slurp(out));
  for (const json& row : doc.at("payload")) CHECK(row.at("pass") == true);
}

TEST_CASE("exit codes") {
  SUBCASE("usage errors exit 2") {
    CHECK(run({"string-corr", "/tmp/does_not_exist.json", "--alpha", "1", "--N", "1..3"}) == 2);
    CHECK(run({"nonsense"}) == 2);
    const std::string bad = write_temp("bad.json", R"({"class":"BDI","zeros_inside":[[1.0,0]]})");
    CHECK(run({"analyze", bad}) == 2);
  }
  SUBCASE("strict mode turns warnings into exit 3") {
    const std::string inverse = write_temp(
        "inv.json", R"({"class":"BDI","n_P":2,"zeros_inside":[[0.5,0]],"zeros_outside":[[2.0,0]]})");
    CHECK(run({"analyze", inverse, "--out", "/tmp/tc_cli_warn.json"}) == 0);
    CHECK(run({"analyze", inverse, "--strict", "--out", "/tmp/tc_cli_warn.json"}) == 3);
  }
}
