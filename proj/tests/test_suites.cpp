#include <doctest.h>

#include <algorithm>

#include "artifact/suites.hpp"

using namespace artifact;

TEST_CASE("every suite maps to one criterion") {
  const auto& n = suite_names();
  REQUIRE(n.size() == 7);
  for (std::size_t i = 0; i < n.size(); ++i) CHECK(suite_criterion(n[i]) == static_cast<int>(i) + 1);
  CHECK(suite_criterion("nope") == 0);
  CHECK_THROWS_AS(run_suite("nope", {}), Error);
}

TEST_CASE("psi-sum split lines are verified") {
  SuiteReport r = run_suite("psi-sum", {});
  CHECK(r.pass());
  auto it = std::find_if(r.lines.begin(), r.lines.end(),
                         [](const CheckLine& l) { return l.group == "split" && l.instance == "Const(2) + Const(3) @ 0"; });
  REQUIRE(it != r.lines.end());
  CHECK(it->status == Status::Pass);
  CHECK(it->detail.rfind("Verified on 5 of 5", 0) == 0);
}

TEST_CASE("report bookkeeping") {
  SuiteReport r;
  r.run("g", "ok", [] { return std::make_pair(Status::Pass, std::string("fine")); });
  r.run("g", "thrown", []() -> std::pair<Status, std::string> { throw Error(ErrorKind::OutOfNotation, "x"); });
  r.run("g", "broken", []() -> std::pair<Status, std::string> { throw Error(ErrorKind::MalformedTerm, "y"); });
  CHECK(r.count(Status::Pass) == 1);
  CHECK(r.count(Status::Skip) == 1);
  CHECK(r.count(Status::Fail) == 1);
  CHECK_FALSE(r.pass());
  r.require("g", 3);
  CHECK(r.lines.back().status == Status::Fail);
}
