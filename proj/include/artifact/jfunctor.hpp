#ifndef ARTIFACT_JFUNCTOR_HPP
#define ARTIFACT_JFUNCTOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "artifact/dilator.hpp"

namespace artifact {

// An evaluation failure that may still certify a lower bound for the value
// it could not finish (computed sub-values only, never estimates).
class EvalError : public Error {
 public:
  EvalError(ErrorKind k, const std::string& msg, std::optional<Ordinal> lb)
      : Error(k, msg), lower_bound_(std::move(lb)) {}
  const std::optional<Ordinal>& lower_bound() const { return lower_bound_; }

 private:
  std::optional<Ordinal> lower_bound_;
};

// Lower bound carried by an error, if any.
std::optional<Ordinal> lower_bound_of(const std::exception& e);

enum class JVariant { J, JPrime };

struct JStep {
  std::string parent;
  std::string child;
  Ordinal child_gamma;
  std::string clause;
  bool memo_hit = false;
  std::optional<Ordinal> rank_parent;  // otp(D(w^(1+eta))) of the parent
  std::optional<Ordinal> rank_child;
};

struct JOptions {
  std::size_t step_cap = 10000;  // evaluations per session before DepthExceeded
};

struct JResult {
  JVariant variant = JVariant::J;
  Dil expr;
  Ordinal gamma;
  Ordinal value;
  Ordinal eta;                    // value < eta
  std::optional<Ordinal> xi;      // rank of expr < xi (absent if no order-type rule)
  std::vector<JStep> steps;
  std::size_t evaluations = 0;
};

// Rank used by the guards: otp(D(w^(1+eta))).
std::optional<Ordinal> guard_rank(const Dil& d, const Ordinal& eta);

JResult j_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt = {});
JResult jprime_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt = {});
// J'(omega[D+1], gamma)
JResult jplus_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt = {});
Dil jplus_expr(const Dil& d);
// J'((omega[D])*n, gamma): the partial values whose supremum is J+(D, gamma).
Ordinal jplus_iterate(const Dil& d, const Ordinal& gamma, std::uint64_t n, const JOptions& opt = {});

struct GuardAudit {
  Ordinal value;
  Ordinal audit_value;
  Ordinal eta;
  Ordinal audit_eta;
  std::optional<Ordinal> audit_xi;
  bool identical = false;
  bool ranks_decrease = true;     // along the original steps
  bool audit_ranks_decrease = true;
  std::size_t steps_checked = 0;
  std::size_t rank_unavailable = 0;
  std::string detail;             // first violating step, if any

  bool ok() const { return identical && ranks_decrease && audit_ranks_decrease; }
};

// Re-runs the evaluation under eta + w and compares, and re-checks rank
// decrease along the recorded steps.
GuardAudit j_guard_report(const JResult& r, const JOptions& opt = {});

const char* variant_name(JVariant v);

}  // namespace artifact

#endif
