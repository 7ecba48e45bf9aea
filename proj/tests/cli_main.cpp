#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "tb/json_io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  tb::Json json() const { return tb::Json::parse(out); }
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(TBCALC_PATH) + " " + args;
  if (!stdin_text.empty()) cmd = "printf %s " + quote(stdin_text) + " | " + cmd;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string S3xS3 = R"({"dim":6,"betti":{"3":2},"spin":true})";
const std::string S3xS6x3 = R"({"dim":9,"summands":[{"type":"sphere_product","k":3,"l":6,"count":3}]})";

}  // namespace

TEST_CASE("feasible on S^3xS^3") {
  const Run r = run("feasible --k 1 " + quote(S3xS3));
  CHECK(r.code == 0);
  const tb::Json j = r.json();
  CHECK(j["verdict"] == true);
  CHECK(j["per_m"].size() == 1);
}

TEST_CASE("bundle-circle over CP^3") {
  const Run r = run(R"(bundle-circle '{"base":{"dim":6,"summands":[{"type":"cp","m":3}]},"euler":[1]}')");
  CHECK(r.code == 0);
  CHECK(r.json()["name"] == "S^7");
}

TEST_CASE("feasible on #3(S^3xS^6) is negative with the failing audit") {
  const Run r = run("feasible --k 1 " + quote(S3xS6x3));
  CHECK(r.code == 1);
  const tb::Json j = r.json();
  CHECK(j["verdict"] == false);
  CHECK(j["per_m"][0]["middle"]["degree"] == 4);
  CHECK(j["per_m"][0]["middle"]["value"] == -2);
}

TEST_CASE("payload from standard input and text output") {
  const Run r = run("--format text feasible --k 1 -", S3xS3);
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict") != std::string::npos);
  CHECK(r.out.find("true") != std::string::npos);
  const Run s = run("feasible --k 1 --format text", S3xS3);
  CHECK(s.out == r.out);
}

TEST_CASE("payload from a file") {
  const std::string path = "cli_payload_test.json";
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  std::fputs(S3xS3.c_str(), f);
  std::fclose(f);
  const Run r = run("classify --cohom4 " + path);
  std::remove(path.c_str());
  CHECK(r.code == 0);
  CHECK(r.json()["accepted"] == true);
}

TEST_CASE("input errors exit with code 2 and a structured error") {
  for (const std::string& args : {std::string("feasible --k 1 '{\"dim\":6,'"), std::string("feasible --nope"),
                                  std::string("bundle-circle '{\"base\":{\"dim\":6,\"summands\":[]}}'"),
                                  std::string("feasible --k 1 '{\"dim\":7,\"betti\":{\"3\":2,\"4\":1}}'"),
                                  std::string("--format xml feasible " + quote(S3xS3)), std::string("classify " + quote(S3xS3))}) {
    const Run r = run(args);
    CHECK_MESSAGE(r.code == 2, args);
    const tb::Json j = r.json();
    CHECK(j.contains("error"));
    CHECK(j["error"].contains("code"));
    CHECK(j["error"].contains("message"));
    CHECK(j["error"].contains("diagnostics"));
  }
}

TEST_CASE("unsupported configurations exit with code 3") {
  const Run side = run(
      R"(bundle-circle '{"base":{"dim":6,"summands":[{"type":"cp","m":3},{"type":"sphere_product","k":2,"l":4}]},"euler":[5,2]}')");
  CHECK(side.code == 3);
  CHECK(side.json()["error"]["code"] == tb::error_code_name(tb::ErrorCode::SideCondition));
  const Run torsion = run(R"(bundle-torus '{"base":{"dim":5,"summands":[{"type":"sphere_product","k":2,"l":3}]},"E":[[2]]}')");
  CHECK(torsion.code == 3);
  CHECK(torsion.json()["error"]["diagnostics"]["snf_diagonal"] == "(2)");
}

TEST_CASE("suspend and normalize") {
  const Run s = run(R"(suspend '{"base":{"type":"sphere_product","k":3,"l":3},"euler":[]}')");
  CHECK(s.code == 0);
  CHECK(s.json()["name"] == "S^3xS^4 # S^3xS^4");
  const Run n = run(R"(normalize '{"dim":6,"summands":[{"type":"twisted_s2"},{"type":"twisted_s2"}]}')");
  CHECK(n.code == 0);
  CHECK(n.json()["canonical"]["name"] == "S^2~xS^4 # S^2xS^4");
}

TEST_CASE("bundle-torus over a four-manifold") {
  const Run r = run(R"(bundle-torus '{"base":{"b2":2,"w2":[1,1]},"E":[[1,1],[0,1]]}')");
  CHECK(r.code == 0);
  CHECK(r.json()["total"]["name"] == "S^3xS^3");
}

TEST_CASE("tower, base and stabilize") {
  const Run t = run("tower --k 1 " + quote(S3xS3));
  CHECK(t.code == 0);
  CHECK(t.json()["stages"][0]["verified"] == true);
  const Run infeasible = run("tower --k 1 " + quote(S3xS6x3));
  CHECK(infeasible.code == 1);
  CHECK(infeasible.json().contains("error"));
  const Run b = run(R"(base --table1 '{"dim":7,"betti":{"3":2}}')");
  CHECK(b.code == 0);
  CHECK(b.json()["witness"]["row"] == "7.1");
  const Run absent = run(R"(base --table1 '{"dim":8,"betti":{"2":1}}')");
  CHECK(absent.code == 1);
  CHECK(absent.json()["found"] == false);
  const Run st = run(R"(stabilize --twisted '{"dim":7,"betti":{}}')");
  CHECK(st.code == 0);
  CHECK(st.json()["m0"] == 3);
  const Run rows = run("base --rows");
  CHECK(rows.code == 0);
  CHECK(rows.json().size() == 23);
}

TEST_CASE("cohomogeneity two") {
  CHECK(run("classify --cohom2 " + quote(S3xS3)).code == 0);
  CHECK(run(R"(classify --cohom2 '{"dim":7,"betti":{"3":2}}')").code == 1);
}

TEST_CASE("output is a pure function of the input") {
  const std::string args = "stabilize " + quote(R"({"dim":9,"betti":{"3":1}})");
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("selftest reports every criterion and fails on any failure") {
  const Run r = run("selftest --bound 3");
  const tb::Json j = r.json();
  CHECK(j["criteria"].size() == 10);
  bool all = j["sweep"]["counterexamples"].empty();
  for (const tb::Json& c : j["criteria"]) all = all && c["pass"].get<bool>();
  CHECK(j["pass"] == all);
  CHECK(r.code == (all ? 0 : 1));
}
