// One pass/fail line per acceptance criterion, with the time limits pinned
// below. Criterion 1 is also cross-checked against the frozen fixture.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "artifact/jfunctor.hpp"
#include "artifact/suites.hpp"

using namespace artifact;

namespace {

struct Limit {
  double per_instance;  // seconds, 0 when only the total is bounded
  double total;
};

// Criterion -> time limits.
const Limit kLimits[] = {
    {0, 0},      // unused
    {1.0, 8.0},  // 1 exact J values
    {1.0, 30.0}, // 2 psi clause values
    {0, 30.0},   // 3 bound suite
    {0, 120.0},  // 4 J laws
    {0, 120.0},  // 5 coherence
    {0, 120.0},  // 6 order sanity
    {0, 60.0},   // 7 well-foundedness fuzzing
};

// Criterion 2 covers these groups only; the split checks are extra.
bool timed_group(int criterion, const std::string& group) {
  if (criterion == 1) return true;
  if (criterion == 2) return group != "split";
  return false;
}

std::string fixture_check(const SuiteReport& r) {
  std::ifstream f(std::string(FIXTURE_DIR) + "/j_values.json");
  if (!f) return "fixture missing";
  auto rows = nlohmann::json::parse(f);
  std::size_t matched = 0;
  for (const auto& row : rows) {
    std::string name = row["fn"].get<std::string>() + "(" + row["expr"].get<std::string>() + ", " +
                       row["gamma"].get<std::string>() + ")";
    for (const CheckLine& l : r.lines)
      if (l.instance == name && l.status == Status::Pass && l.detail == row["value"].get<std::string>()) ++matched;
  }
  if (matched != rows.size()) return "fixture agreement " + std::to_string(matched) + "/" + std::to_string(rows.size());
  return "";
}

}  // namespace

int main() {
  SuiteOptions opt;  // prefix 200, depth 4, 10^4 trials at depth 30, seed 1
  bool all = true;
  for (const std::string& name : suite_names()) {
    SuiteReport r = run_suite(name, opt);
    const Limit& lim = kLimits[r.criterion];
    std::vector<std::string> problems;
    for (const CheckLine& l : r.lines)
      if (l.status == Status::Fail) {
        problems.push_back(l.group + " " + l.instance + ": " + l.detail);
        break;
      }
    double worst = 0;
    for (const CheckLine& l : r.lines)
      if (timed_group(r.criterion, l.group)) worst = std::max(worst, l.seconds);
    if (lim.per_instance > 0 && worst >= lim.per_instance)
      problems.push_back("slowest instance " + std::to_string(worst) + "s");
    if (r.seconds >= lim.total) problems.push_back("total " + std::to_string(r.seconds) + "s");
    if (r.criterion == 1)
      if (std::string p = fixture_check(r); !p.empty()) problems.push_back(p);
    bool ok = problems.empty();
    all = all && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu pass, %zu fail, %zu skip; %.2fs (limit %.0fs)", r.count(Status::Pass),
                  r.count(Status::Fail), r.count(Status::Skip), r.seconds, lim.total);
    std::cout << "criterion " << r.criterion << " [" << name << "]: " << (ok ? "PASS" : "FAIL") << " -- " << buf;
    if (lim.per_instance > 0) {
      std::snprintf(buf, sizeof buf, ", slowest instance %.3fs (limit %.0fs)", worst, lim.per_instance);
      std::cout << buf;
    }
    for (const auto& p : problems) std::cout << "; " << p;
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
