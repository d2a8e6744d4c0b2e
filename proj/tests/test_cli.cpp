#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + MAPGEN_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("count-maps") {
  Run r = run("count-maps --profile 3,3 --all-genera");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out) == json::parse(R"({"0": 12, "1": 3})"));
  Run g = run("count-maps --profile 1,1,3,3 --genus 1");
  CHECK(json::parse(g.out)["count"] == 0);
}

TEST_CASE("genus tables with provenance") {
  Run r = run("genus --gmax 2 --order 12 --emit json");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  for (auto g : {"0", "1", "2"}) CHECK(j["e"][g]["matches_closed_form"] == true);
  CHECK(j["e"]["0"]["series"]["coeffs"][2] == "6/1");
  CHECK(j["e"]["1"]["series"]["coeffs"][2] == "3/2");
  CHECK(j["e"]["1"]["provenance"]["2"] == "injected:oracle:enumeration");
  CHECK(j["e"]["2"]["series"]["coeffs"][6] == "8505/2");
  CHECK(j["e"]["2"]["provenance"]["8"] == "formula");
  CHECK(j["e1_contour_report"][0]["contour"] == "3/1");
  CHECK(j["e1_contour_report"][0]["closed_form"] == "3/2");
  CHECK(j["e1_contour_report"][0]["discrepancy"] == true);
}

TEST_CASE("output is byte-for-byte deterministic") {
  CHECK(run("hierarchy --gmax 1 --order 8").out == run("hierarchy --gmax 1 --order 8").out);
  CHECK(run("genus --gmax 1 --order 8 --emit csv").out == run("genus --gmax 1 --order 8 --emit csv").out);
}

TEST_CASE("hierarchy certificates") {
  json j = json::parse(run("hierarchy --gmax 2 --order 12").out);
  CHECK(j["certificates"]["string_diagonal"] == 5);
  CHECK(j["certificates"]["toda_b"] == 5);
  CHECK(j["z"]["1"]["coeffs"][4] == "810/1");
}

TEST_CASE("series, motzkin and equilibrium") {
  Run s = run("--emit csv series --name u0 --order 3");
  CHECK(s.status == 0);
  CHECK(s.out.find("/series/coeffs/1,-6/1\n") != std::string::npos);
  json m = json::parse(run("motzkin --length 3 --from 1 --to 0").out);
  CHECK(m["paths"] == 6);
  CHECK(m["entry"].size() == 6);
  json e = json::parse(run("equilibrium --t3 0.03 --digits 30").out);
  CHECK(e["numeric"]["z0"].get<std::string>().rfind("1.0353329278785896594", 0) == 0);
}

TEST_CASE("numeric report") {
  Run r = run("numeric --t3 0.03 --bigN 8 --nmax 6 --digits 30");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["recurrence"].size() == 7);
  CHECK(j["hirota"].size() == 5);
  CHECK(j.contains("contour"));
  CHECK(std::stod(j["route_agreement_digits"].get<std::string>()) > 20);
}

TEST_CASE("exit codes") {
  CHECK(run("no-such-command").status == 2);
  CHECK(run("series --bogus-flag").status == 2);
  CHECK(run("series --name nothing").status == 2);
  CHECK(run("equilibrium --t3 0.5").status == 2);
  CHECK(run("series", "MAPGEN_DIGITS=abc").status == 2);
  CHECK(run("count-maps --profile 3,3,3,3,3,3,3,3 --genus 1").status == 2);
}

TEST_CASE("verify passes on a clean build") {
  Run r = run("verify --quiet");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  for (auto& c : j) CHECK_MESSAGE(c["passed"] == true, c["name"].get<std::string>());
}
