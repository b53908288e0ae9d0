#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "artifact/cli.hpp"

using namespace artifact;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("jeval json") {
  Run r = run({"jeval", "Id", "--gamma", "w", "--format", "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verb"] == "jeval");
  CHECK(j["value"] == "w*3");
  CHECK(j["guardAudit"]["identical"] == true);
  CHECK_FALSE(j.contains("steps"));
  Run s = run({"jeval", "Id", "--gamma", "w", "--format", "json", "--steps"});
  CHECK(nlohmann::json::parse(s.out)["steps"].size() == 3);
}

TEST_CASE("classify json") {
  Run r = run({"classify", "omega[Id]", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["result"]["type"] == "Omega");
}

TEST_CASE("exit codes") {
  CHECK(run({"jeval", "Id+", "--gamma", "w"}).code == kExitUsage);
  CHECK(run({"jeval"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"check", "nope"}).code == kExitUsage);
  Run u = run({"jplus", "Id", "--gamma", "w", "--format", "json"});
  CHECK(u.code == kExitUnsupported);
  auto j = nlohmann::json::parse(u.out);
  CHECK(j["error"]["kind"] == "OutOfNotation");
  CHECK(j["error"].contains("lowerBound"));
  CHECK(run({"compare", "w^2", "w*3"}).out == "Greater\n");
}

TEST_CASE("other verbs") {
  CHECK(run({"decompose", "omega[Id]"}).out == "[1, head[Id]]\n");
  CHECK(run({"enum", "Id", "--n", "2"}).out == "x0\nx1\n2 elements\n");
  CHECK(run({"psi-otp", "Id", "--gamma", "w"}).out == "psi(Id)^w = w^2\n");
  auto j = nlohmann::json::parse(run({"psi-enum", "Const(3)", "--gamma", "0", "--format", "json"}).out);
  CHECK(j["result"]["count"] == 3);
}

TEST_CASE("json output is byte-stable") {
  std::vector<std::string> args = {"check", "wf-fuzz", "--trials", "300", "--seed", "5", "--format", "json"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("scenario lines split on spaces and quotes") {
  CHECK(split_command_line("jeval \"Id + 1\" --gamma w # note") ==
        std::vector<std::string>{"jeval", "Id + 1", "--gamma", "w"});
  CHECK(split_command_line("   # only a comment").empty());
  CHECK_THROWS_AS(split_command_line("jeval \"Id"), std::exception);
}
