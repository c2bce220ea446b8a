#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "teich/cli.hpp"
#include "teich/error.hpp"
#include "teich/output.hpp"

using namespace teich;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  return {code, o.str(), e.str()};
}

std::string data(const std::string& name) { return std::string(TEICH_TEST_DATA) + "/" + name; }

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  for (std::string x; is >> x;) w.push_back(x);
  return w;
}

// Arguments reconstructed from the header of a JSON artifact.
std::vector<std::string> rerun_args(const json& meta) {
  auto args = words(meta["command"].get<std::string>());
  for (const auto& [k, v] : meta["params"].items()) {
    args.push_back("--" + k);
    args.push_back(v.get<std::string>());
  }
  if (!meta["seed"].is_null()) {
    args.push_back("--seed");
    args.push_back(std::to_string(meta["seed"].get<std::uint64_t>()));
  }
  return args;
}

}  // namespace

TEST_CASE("spherical eval at the trivial parameter") {
  const auto r = run({"spherical", "eval", "--s", "1", "--t", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1,0,2,1,0\n") != std::string::npos);
  CHECK(r.out.rfind("# {\"tool\":\"teichlab\"", 0) == 0);
}

TEST_CASE("origami info on the L-shaped file") {
  const auto r = run({"origami", "info", "--file", data("L3.origami"), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["rows"][0][1] == 2);
  CHECK(j["rows"][0][2] == "3");
  CHECK(j["columns"][1] == "genus");
}

TEST_CASE("fit rates on the synthetic file") {
  const auto r = run({"fit", "rates", "--in", data("synth.csv"), "--k", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["rows"][0][1].get<double>() - 0.2) <= 1e-2);
  CHECK(std::abs(j["rows"][1][1].get<double>() - 0.6) <= 1e-2);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"toy"}).code == cli::kUsage);
  CHECK(run({"spherical", "eval", "--s", "1"}).code == cli::kUsage);
  CHECK(run({"spherical", "eval", "--s", "1", "--t", "1", "--unknown", "3"}).code == cli::kUsage);
  CHECK(run({"toy", "specradius"}).code == cli::kUsage);
  CHECK(run({"origami", "norm", "--origami", "1;;", "--cocycle", "random-real"}).code == cli::kUsage);
  CHECK(run({"origami", "info"}).code == cli::kUsage);
  CHECK(run({"origami", "saddles", "--file", data("L3.origami"), "--L", "30", "--budget", "50"}).code ==
        cli::kNumerical);
  {
    // A single exponential cannot carry two rates.
    const auto path = (std::filesystem::temp_directory_path() / "teichlab_one_rate.csv").string();
    std::ofstream f(path);
    f << "t,value\n";
    for (int i = 0; i <= 40; ++i) f << 0.25 * i << "," << out::format_double(std::exp(-0.075 * i)) << "\n";
    f.close();
    CHECK(run({"fit", "rates", "--in", path, "--k", "2", "--tmin", "0"}).code == cli::kNumerical);
    CHECK(run({"fit", "rates", "--in", path, "--k", "1", "--tmin", "0"}).code == cli::kOk);
    std::filesystem::remove(path);
  }
  CHECK(run({"origami", "info", "--origami", "2; (1)(2); (1)(2)"}).code == cli::kInvalid);
  CHECK(run({"spherical", "eval", "--s", "2", "--t", "1"}).code == cli::kInvalid);
  CHECK(run({"spherical", "eval", "--s", "x", "--t", "1"}).code == cli::kInvalid);
  CHECK(run({"transform", "extend", "--atoms", "0.6:1", "--z", "-0.4"}).code == cli::kInvalid);
  CHECK(run({"fit", "rates", "--in", data("nope.csv"), "--k", "1"}).code == cli::kInvalid);
}

TEST_CASE("complex parameters") {
  const auto r = run({"spherical", "eval", "--s", "2i", "--t", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["rows"][0][0] == 0.0);
  CHECK(j["rows"][0][1] == 2.0);
  CHECK(j["rows"][0][3].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(run({"gamma", "--s", "-0.5+1e-3i", "--n", "4"}).code == 0);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::vector<std::string>> cmds{
      {"mc", "correlate", "--N", "3000", "--seed", "9", "--format", "json"},
      {"flow", "recurrence", "--origami", "1;;", "--tmax", "2", "--format", "json"},
      {"origami", "saddles", "--file", data("L3.origami"), "--L", "6", "--format", "json"}};
  for (const auto& c : cmds) {
    auto one = c, four = c;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = run(one), b = run(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("artifacts reproduce from their embedded parameters") {
  const std::vector<std::vector<std::string>> cmds{
      {"spherical", "eval", "--s", "0.3", "--t0", "0.5", "--t1", "2", "--dt", "0.5"},
      {"fit", "rates", "--in", data("synth.csv"), "--k", "2"},
      {"toy", "projection", "--seed", "4", "--index", "1"},
      {"origami", "norm", "--file", data("L3.origami"), "--cocycle", "random-complex", "--seed", "2",
       "--L", "8"},
      {"transform", "atoms", "--atom", "0.5:0.3", "--uniform", "1", "--x", "0.5,0.25"},
      {"spherical", "ratner", "--v", "0.5", "--tmax", "4"}};
  for (auto c : cmds) {
    c.insert(c.end(), {"--format", "json"});
    const auto a = run(c);
    REQUIRE(a.code == 0);
    const auto meta = json::parse(a.out)["meta"];
    const auto b = run(rerun_args(meta));
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("shortest round-trip floats") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t bits = rng();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = out::format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
    CHECK(s.size() <= 24);
  }
  CHECK(out::format_double(0.1) == "0.1");
  CHECK(out::format_double(1.0) == "1");
  CHECK(out::format_double(std::nan("")) == "nan");
  CHECK(out::format_double(-INFINITY) == "-inf");

  out::Table t{{"a", "b"}, {}};
  t.add({0.1, std::string("x,y")});
  t.add({1e300, std::int64_t{7}});
  CHECK_THROWS_AS(t.add({1.0}), InvalidInput);
  out::Metadata m{"demo", {{"k", "v"}}, std::nullopt, 1};
  const auto csv = out::to_csv(m, t);
  CHECK(csv.find("\na,b\n0.1,\"x,y\"\n1e+300,7\n") != std::string::npos);
  const auto j = json::parse(out::to_json(m, t));
  CHECK(j["rows"][0][0].get<double>() == 0.1);
  CHECK(j["rows"][1][0].get<double>() == 1e300);
  CHECK(j["meta"]["params"]["k"] == "v");
}
