#ifndef ARTIFACT_SUITES_HPP
#define ARTIFACT_SUITES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "artifact/psi.hpp"

namespace artifact {

enum class Status { Pass, Fail, Skip };
const char* status_name(Status s);

struct CheckLine {
  std::string group;     // law or operation
  std::string instance;
  Status status = Status::Pass;
  std::string detail;
  double seconds = 0;    // wall time, text output only
};

struct SuiteOptions {
  std::size_t prefix = 200;     // elements per prefix check
  std::size_t depth = 4;        // psi enumeration depth
  std::size_t trials = 10000;   // chain search trials
  std::size_t chain_depth = 30;
  std::uint64_t seed = 1;
};

struct SuiteReport {
  std::string name;
  int criterion = 0;
  std::vector<CheckLine> lines;
  double seconds = 0;

  std::size_t count(Status s) const;
  std::size_t count(const std::string& group, Status s) const;
  bool pass() const { return count(Status::Fail) == 0; }
  // Appends a line and times it. The body returns the status and detail;
  // exceptions become failures (or skips when is_unsupported).
  void run(const std::string& group, const std::string& instance,
           const std::function<std::pair<Status, std::string>()>& body);
  // Fails the suite if a group evaluated fewer than n instances.
  void require(const std::string& group, std::size_t n);
};

// j-values, psi-sum, bound, j-laws, coherence, order-sanity, wf-fuzz.
const std::vector<std::string>& suite_names();
int suite_criterion(const std::string& name);
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// Helpers shared with the tests.

struct TransportResult {
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;
};

// Transports the first k elements of src(a) to dst(a) through their ranks
// and checks: ranks increase along the semantic order, images are
// well-formed, positions are preserved, ranks round-trip and the images
// ascend in dst. With iso set, complete finite enumerations must also
// match the order type of dst.
TransportResult transport_check(const Dil& src, const Dil& dst, const Ordinal& a, std::size_t k, bool iso,
                                Budget b);

// The integer order with x - U(1..3) proposals (ill-founded on purpose).
OrderHandle<long long> integer_fixture();

}  // namespace artifact

#endif
