#include "artifact/jfunctor.hpp"

#include <algorithm>
#include <unordered_map>

namespace artifact {

std::optional<Ordinal> lower_bound_of(const std::exception& e) {
  if (auto* ee = dynamic_cast<const EvalError*>(&e)) return ee->lower_bound();
  return std::nullopt;
}

const char* variant_name(JVariant v) { return v == JVariant::J ? "J" : "J'"; }

std::optional<Ordinal> guard_rank(const Dil& d, const Ordinal& eta) {
  try {
    return otp_symbolic(normalize(d), Ordinal::omega_pow(Ordinal::nat(1) + eta));
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

constexpr std::uint64_t kLimitSamples = 7;

std::optional<Ordinal> max_opt(std::optional<Ordinal> a, const std::optional<Ordinal>& b) {
  if (!b) return a;
  if (!a || *a < *b) return b;
  return a;
}

[[noreturn]] void rethrow_bounded(const Error& e, std::optional<Ordinal> lb) {
  throw EvalError(e.kind(), e.what(), std::move(lb));
}

class Session {
 public:
  Session(JVariant v, const JOptions& o) : variant_(v), opt_(o) {}

  Ordinal eval(const Dil& raw, const Ordinal& g) {
    Dil d = normalize(raw);
    std::string key = d->key + "@" + g.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++count_ > opt_.step_cap)
      throw EvalError(ErrorKind::DepthExceeded, "evaluation exceeded " + std::to_string(opt_.step_cap) + " steps",
                      std::nullopt);
    Ordinal v = compute(d, g);
    memo_.emplace(key, v);
    return v;
  }

  std::vector<JStep> steps;
  std::size_t count() const { return count_; }

 private:
  JVariant variant_;
  JOptions opt_;
  std::unordered_map<std::string, Ordinal> memo_;
  std::size_t count_ = 0;

  Ordinal sub(const Dil& parent, const Dil& child, const Ordinal& g, const char* clause) {
    Dil c = normalize(child);
    JStep s;
    s.parent = parent->key;
    s.child = c->key;
    s.child_gamma = g;
    s.clause = clause;
    s.memo_hit = memo_.count(c->key + "@" + g.str()) > 0;
    steps.push_back(s);
    return eval(c, g);
  }

  Ordinal compute(const Dil& d, const Ordinal& g) {
    std::vector<Dil> items = summands(d);
    if (!items.empty() && items.back()->kind == DKind::Const) {
      // J(P + Const(c), g) = J(P, g) + c: clause (ii) for successor steps
      // and the supremum over the fundamental sequence of c at limits.
      Ordinal c = items.back()->ord;
      items.pop_back();
      Dil p = build_sum(items);
      try {
        return sub(d, p, g, "constant-tail") + c;
      } catch (const Error& e) {
        auto lb = lower_bound_of(e);
        rethrow_bounded(e, lb ? std::optional<Ordinal>(*lb + c) : std::nullopt);
      }
    }
    TypeClass tc = classify(d);
    switch (tc.kind) {
      case TypeClass::Kind::Zero: return g;
      case TypeClass::Kind::One:
        try {
          return sub(d, tc.pred, g, "successor") + Ordinal::nat(1);
        } catch (const Error& e) {
          auto lb = lower_bound_of(e);
          rethrow_bounded(e, lb ? std::optional<Ordinal>(*lb + Ordinal::nat(1)) : std::nullopt);
        }
      case TypeClass::Kind::Omega: {
        std::vector<Ordinal> vals;
        std::optional<Ordinal> best;
        for (std::uint64_t k = 0; k < kLimitSamples; ++k) {
          try {
            vals.push_back(sub(d, tc.fund(k), g, "limit"));
          } catch (const Error& e) {
            rethrow_bounded(e, max_opt(best, lower_bound_of(e)));
          }
          best = max_opt(best, vals.back());
        }
        try {
          return sup_of_iterates(vals, nullptr);
        } catch (const Error& e) {
          rethrow_bounded(e, best);
        }
      }
      case TypeClass::Kind::BigOmega: {
        Ordinal first_param = variant_ == JVariant::J ? Ordinal() : Ordinal::omega();
        Ordinal a = sub(d, tc.sep(first_param), g, "separation-first");
        try {
          Ordinal b = sub(d, tc.sep(a), g, "separation-second");
          return a + b;
        } catch (const Error& e) {
          auto lb = lower_bound_of(e);
          rethrow_bounded(e, lb ? a + *lb : a);
        }
      }
    }
    return g;
  }
};

// Fills in ranks at eta and returns a description of the first step whose
// rank does not decrease (empty if none).
std::string attach_ranks(std::vector<JStep>& steps, const Ordinal& eta, std::size_t* unavailable) {
  std::unordered_map<std::string, std::optional<Ordinal>> cache;
  auto rank = [&](const std::string& key) {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto r = guard_rank(parse_dilator(key), eta);
    cache.emplace(key, r);
    return r;
  };
  std::string bad;
  for (JStep& s : steps) {
    s.rank_parent = rank(s.parent);
    s.rank_child = rank(s.child);
    if (!s.rank_parent || !s.rank_child) {
      if (unavailable) ++*unavailable;
      continue;
    }
    if (!(*s.rank_child < *s.rank_parent) && bad.empty())
      bad = s.clause + ": " + s.parent + " -> " + s.child + " rank " + s.rank_parent->str() + " -> " +
            s.rank_child->str();
  }
  return bad;
}

JResult run(JVariant v, const Dil& d, const Ordinal& g, const JOptions& opt) {
  Session s(v, opt);
  JResult r;
  r.variant = v;
  r.expr = normalize(d);
  r.gamma = g;
  r.value = s.eval(r.expr, g);
  r.steps = std::move(s.steps);
  r.evaluations = s.count();
  r.eta = r.value + Ordinal::nat(1);
  if (auto x = guard_rank(r.expr, r.eta)) r.xi = *x + Ordinal::nat(1);
  return r;
}

JResult guarded(JVariant v, const Dil& d, const Ordinal& g, const JOptions& opt) {
  JResult r = run(v, d, g, opt);
  std::string bad = attach_ranks(r.steps, r.eta, nullptr);
  if (!bad.empty()) throw Error(ErrorKind::GuardViolation, "rank did not decrease at " + bad);
  return r;
}

}  // namespace

JResult j_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt) {
  return guarded(JVariant::J, d, gamma, opt);
}

JResult jprime_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt) {
  return guarded(JVariant::JPrime, d, gamma, opt);
}

Dil jplus_expr(const Dil& d) { return normalize(dil::omega(dil::sum(d, dil::one()))); }

JResult jplus_eval(const Dil& d, const Ordinal& gamma, const JOptions& opt) {
  return jprime_eval(jplus_expr(d), gamma, opt);
}

Ordinal jplus_iterate(const Dil& d, const Ordinal& gamma, std::uint64_t n, const JOptions& opt) {
  return jprime_eval(normalize(dil::mul_nat(dil::omega(d), n)), gamma, opt).value;
}

GuardAudit j_guard_report(const JResult& r, const JOptions& opt) {
  GuardAudit a;
  a.value = r.value;
  a.eta = r.eta;
  a.audit_eta = r.eta + Ordinal::omega();
  std::vector<JStep> original = r.steps;
  std::string bad = attach_ranks(original, r.eta, &a.rank_unavailable);
  a.ranks_decrease = bad.empty();
  a.steps_checked = original.size();
  try {
    Session s(r.variant, opt);
    a.audit_value = s.eval(r.expr, r.gamma);
    std::vector<JStep> again = std::move(s.steps);
    std::string bad2 = attach_ranks(again, a.audit_eta, nullptr);
    a.audit_ranks_decrease = bad2.empty();
    if (bad.empty()) bad = bad2;
    a.identical = a.audit_value == r.value;
    if (auto x = guard_rank(r.expr, a.audit_eta)) a.audit_xi = *x + Ordinal::nat(1);
  } catch (const Error& e) {
    a.identical = false;
    bad = std::string("re-evaluation failed: ") + e.what();
  }
  a.detail = bad;
  return a;
}

}  // namespace artifact
