#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "freemv/cli.hpp"
#include "freemv/json_io.hpp"
#include "freemv/term.hpp"
#include "support.hpp"

using namespace freemv;
using freemv::json::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("freemv_test_" + name)).string();
}

// Captures stdout of the installed binary.
std::string shell(const std::string& cmd) {
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  pclose(pipe);
  return text;
}

}  // namespace

TEST_CASE("integrate") {
  const Result leb = run({"integrate", "--n", "1", "--term", "!( !x1 + !x1 )", "--state", "lebesgue"});
  CHECK(leb.code == cli::kOk);
  CHECK(leb.json()["value"] == "1/4");
  CHECK(run({"integrate", "--n", "2", "--term", "!( !x1 + !x1 )", "--state", "mix:4"}).json()["value"] == "17/64");
  CHECK(run({"integrate", "--n", "2", "--term", "!( !x1 + !x1 )", "--state", "farey:4"}).json()["value"] == "9/32");
  CHECK(run({"integrate", "--n", "1", "--term", "!( !x1 + !x1 )", "--state", "mix:4"}).json()["value"] == "1/4");
  const Result inline_state = run({"integrate", "--n", "2", "--term", "(x1 & x2)", "--state",
                                   R"({"kind":"mixture","parts":[["1/2",{"kind":"lebesgue"}],["1/2",{"kind":"farey","d":1}]]})"});
  CHECK(inline_state.code == 0);
  // 1/2 * 1/3 + 1/2 * 1/4
  CHECK(inline_state.json()["value"] == "7/24");
}

TEST_CASE("farey") {
  const Json j = run({"farey", "--n", "1", "--d", "4"}).json();
  CHECK(j["count"] == 2);
  CHECK(j["points"] == Json::parse(R"([["1/4"],["3/4"]])"));
  CHECK(run({"farey", "--n", "2", "--d", "4"}).json()["count"] == 16);
}

TEST_CASE("maps on disk") {
  const std::string sprime = temp_path("sprime1.json");
  const std::string r = temp_path("r1.json");
  CHECK(run({"gen-map", "--kind", "Sprime", "--k", "1", "--out", sprime}).code == 0);
  CHECK(run({"gen-map", "--kind", "R", "--k", "1", "--out", r}).code == 0);
  const Result bad = run({"validate-map", "--map", sprime});
  CHECK(bad.code == cli::kViolation);
  CHECK(bad.json()["passed"] == false);
  CHECK(bad.json()["failures"][0]["condition"] == "integrality");
  const Result good = run({"validate-map", "--map", r});
  CHECK(good.code == cli::kOk);
  CHECK(good.json()["passed"] == true);

  const std::string state = R"({"kind":"pushforward","base":{"kind":"lebesgue"},"map":")" + r + "\"}";
  CHECK(run({"integrate", "--n", "2", "--term", "(x1 . x2)", "--state", state}).json()["value"] == "1/6");
  const std::string bad_state = R"({"kind":"pushforward","base":{"kind":"lebesgue"},"map":")" + sprime + "\"}";
  CHECK(run({"integrate", "--n", "2", "--term", "x1", "--state", bad_state}).code == cli::kUsage);

  const Result printed = run({"gen-map", "--kind", "flip", "--n", "1"});
  CHECK(printed.code == 0);
  const PwlMap flip = json::decode_map(printed.json());
  CHECK(apply_map(flip, {frac(1, 3)}) == Point{frac(2, 3)});
  for (const char* kind : {"id", "perm", "Rprime", "S"})
    CHECK(run({"gen-map", "--kind", kind, "--k", "0"}).code == 0);
  std::filesystem::remove(sprime);
  std::filesystem::remove(r);
}

TEST_CASE("property reports") {
  const std::vector<std::string> inv{"invariance", "--n", "2", "--seed", "7", "--terms", "4", "--word-len", "3"};
  const Result a = run(inv);
  const Result b = run(inv);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.json()["all_equal"] == true);
  CHECK(run({"invariance", "--n", "2", "--seed", "7", "--terms", "3", "--word-len", "2", "--state", "mix:3"})
            .json()["all_equal"] == true);

  const Result coh = run({"coherence", "--d", "4", "--term", "!( !x1 + !x1 )"});
  CHECK(coh.code == cli::kViolation);
  CHECK(coh.json()["value_n"] == "1/4");
  CHECK(coh.json()["value_n_plus_1"] == "17/64");
  CHECK(coh.json()["coherent"] == false);
  CHECK(run({"coherence", "--d", "1", "--term", "x1"}).code == cli::kOk);

  for (const char* kind : {"R", "S", "Rprime", "Sprime"}) {
    const Result c = run({"conjugacy", "--kind", kind, "--k", "1", "--samples", "40"});
    CHECK(c.code == 0);
    CHECK(c.json()["all_equal"] == true);
  }
  CHECK(run({"conjugacy", "--kind", "ell", "--samples", "40"}).json()["all_equal"] == true);

  const Json bk = run({"birkhoff", "--k", "1", "--alpha", "golden", "--iters", "100000", "--bins", "16"}).json();
  CHECK(bk["sup_deviation"].get<double>() < 0.01);
  CHECK(run({"birkhoff", "--k", "1", "--alpha", "0", "--iters", "1000"}).json()["sup_deviation"].get<double>() > 0.5);

  const Json orbit = run({"orbit", "--t0", "9/10", "--iters", "3"}).json();
  CHECK(orbit["orbit"] == Json::parse(R"(["9/10","8/9","7/8","6/7"])"));
  CHECK(run({"orbit", "--t0", "9/10", "--iters", "3", "--float"}).code == 0);

  const Result box = run({"boxcheck", "--state", "lebesgue", "--depth", "1", "--n", "2"});
  CHECK(box.code == 0);
  CHECK(box.json()["constant"] == true);
  CHECK(run({"boxcheck", "--state", "mix:4", "--depth", "2", "--n", "2"}).json()["constant"] == false);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"integrate", "--n", "1", "--term", "(x1", "--state", "lebesgue"}).code == cli::kUsage);
  CHECK(run({"integrate", "--n", "1", "--term", "x2", "--state", "lebesgue"}).code == cli::kUsage);
  CHECK(run({"integrate", "--n", "1", "--term", "x1", "--state", "uniform"}).code == cli::kUsage);
  CHECK(run({"integrate", "--n", "1", "--term", "x1", "--state", "farey:0"}).code == cli::kUsage);
  CHECK(run({"integrate", "--n", "1", "--state", "lebesgue"}).code == cli::kUsage);
  CHECK(run({"farey", "--n", "1", "--d", "zero"}).code == cli::kUsage);
  CHECK(run({"validate-map", "--map", temp_path("missing.json")}).code == cli::kUsage);
  CHECK(run({"gen-map", "--kind", "spiral"}).code == cli::kUsage);
  CHECK(run({"orbit", "--t0", "3/2"}).code == cli::kUsage);
  CHECK(run({"birkhoff", "--k", "1", "--alpha", "1.5"}).code == cli::kUsage);
  const Result parse = run({"integrate", "--n", "1", "--term", "(x1 ? x1)", "--state", "lebesgue"});
  CHECK(parse.out.empty());
  CHECK_FALSE(parse.err.empty());
}

TEST_CASE("binary output is byte-identical across runs") {
  const std::string cmd = std::string(FREEMV_CLI_PATH) + " invariance --n 2 --seed 5 --terms 3 --word-len 3";
  const std::string first = shell(cmd);
  CHECK_FALSE(first.empty());
  CHECK(shell(cmd) == first);
  CHECK(std::system((std::string(FREEMV_CLI_PATH) + " frobnicate 2>/dev/null").c_str()) != 0);
}

TEST_CASE("JSON round trips") {
  CHECK(json::encode(frac(-3, 6)) == "-1/2");
  CHECK(json::encode(Rational(4)) == "4");
  CHECK(json::decode_rational(Json("6/4")) == frac(3, 2));
  CHECK(json::decode_rational(Json(3)) == 3);
  CHECK_THROWS_AS(json::decode_rational(Json(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(json::decode_rational(Json("1/0")), std::invalid_argument);

  std::mt19937_64 rng(9);
  const PwlFunction f = term_to_pwl(random_term(2, 4, rng), 2);
  const Json jf = json::encode(f);
  const PwlFunction g = json::decode_function(Json::parse(jf.dump()));
  CHECK(json::encode(g) == jf);
  for (int i = 0; i < 20; ++i) {
    const Point p = testsupport::random_point(2, rng);
    CHECK(eval(g, p) == eval(f, p));
  }

  const PwlMap m = gen_R_prime(2).map();
  const PwlMap back = json::decode_map(json::encode(m));
  CHECK(json::encode(back) == json::encode(m));
  CHECK(validate(back).passed);

  const StateSpec s = StateSpec::mixture(
      {{frac(1, 4), StateSpec::lebesgue()},
       {frac(3, 4), StateSpec::pushforward(StateSpec::farey(3), gen_symmetry(2, {2, 1}, {false, true}))}});
  const StateSpec t = json::decode_state(json::encode(s));
  CHECK(json::encode(t) == json::encode(s));
  CHECK(state_eval(t, f) == state_eval(s, f));
  CHECK(json::decode_state(Json::parse(R"({"kind":"mixture","parts":[{"weight":"1","state":{"kind":"lebesgue"}}]})"))
            .describe() == StateSpec::mixture({{1, StateSpec::lebesgue()}}).describe());

  CHECK_THROWS_AS(json::decode_state(Json::parse(R"({"kind":"dirac"})")), std::invalid_argument);
  CHECK_THROWS_AS(json::decode_complex(Json::parse(R"({"ambient_dim":2,"vertices":[["0","0"]],"cells":[[0,1,2]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(json::decode_map(Json::parse(R"({"n":1,"complex":{"ambient_dim":1,"vertices":[["0"],["1"]],)"
                                               R"("cells":[[0,1]]},"matrices":[["1","0"]]})")),
                  std::invalid_argument);
}
