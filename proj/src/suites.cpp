#include "artifact/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

#include "artifact/jfunctor.hpp"

namespace artifact {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const CheckLine& l) { return l.status == s; }));
}

std::size_t SuiteReport::count(const std::string& group, Status s) const {
  return static_cast<std::size_t>(
      std::count_if(lines.begin(), lines.end(), [&](const CheckLine& l) { return l.group == group && l.status == s; }));
}

void SuiteReport::run(const std::string& group, const std::string& instance,
                      const std::function<std::pair<Status, std::string>()>& body) {
  CheckLine line;
  line.group = group;
  line.instance = instance;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto [s, d] = body();
    line.status = s;
    line.detail = d;
  } catch (const Error& e) {
    line.status = is_unsupported(e.kind()) ? Status::Skip : Status::Fail;
    line.detail = std::string(error_kind_name(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    line.status = Status::Fail;
    line.detail = e.what();
  }
  line.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  lines.push_back(line);
}

void SuiteReport::require(const std::string& group, std::size_t n) {
  std::size_t done = count(group, Status::Pass) + count(group, Status::Fail);
  CheckLine line;
  line.group = group;
  line.instance = "instance count";
  line.status = done >= n ? Status::Pass : Status::Fail;
  line.detail = std::to_string(done) + " evaluated instances (need " + std::to_string(n) + ")";
  lines.push_back(line);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"j-values",  "psi-sum",      "bound",  "j-laws",
                                                 "coherence", "order-sanity", "wf-fuzz"};
  return names;
}

int suite_criterion(const std::string& name) {
  const auto& n = suite_names();
  auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) return 0;
  return static_cast<int>(it - n.begin()) + 1;
}

namespace {

using Result = std::pair<Status, std::string>;

Dil D(const std::string& s) { return parse_dilator(s); }
Ordinal O(const std::string& s) { return Ordinal::parse(s); }

Result expect_eq(const Ordinal& got, const Ordinal& want) {
  if (got == want) return {Status::Pass, got.str()};
  return {Status::Fail, "got " + got.str() + ", expected " + want.str()};
}

Result expect_le(const Ordinal& a, const Ordinal& b, const std::string& what) {
  if (a <= b) return {Status::Pass, a.str() + " <= " + b.str()};
  return {Status::Fail, what + ": " + a.str() + " > " + b.str()};
}

std::string inst(const std::string& d, const Ordinal& g) { return d + " @ " + g.str(); }

// Memoized evaluations shared across the law checks of one suite run.
class JCache {
 public:
  Ordinal j(const Dil& d, const Ordinal& g) { return get(JVariant::J, d, g); }
  Ordinal jp(const Dil& d, const Ordinal& g) { return get(JVariant::JPrime, d, g); }

 private:
  std::map<std::string, Ordinal> ok_;
  std::map<std::string, std::pair<ErrorKind, std::string>> failed_;

  Ordinal get(JVariant v, const Dil& raw, const Ordinal& g) {
    Dil d = normalize(raw);
    std::string key = std::string(variant_name(v)) + "|" + d->key + "|" + g.str();
    if (auto it = ok_.find(key); it != ok_.end()) return it->second;
    if (auto it = failed_.find(key); it != failed_.end()) throw Error(it->second.first, it->second.second);
    try {
      Ordinal r = (v == JVariant::J ? j_eval(d, g) : jprime_eval(d, g)).value;
      ok_.emplace(key, r);
      return r;
    } catch (const Error& e) {
      failed_.emplace(key, std::make_pair(e.kind(), std::string(e.what())));
      throw;
    }
  }
};

// ---------------------------------------------------------------------------
// 1. exact J values

SuiteReport suite_j_values(const SuiteOptions&) {
  SuiteReport r;
  struct Row {
    const char* fn;
    const char* d;
    const char* g;
    const char* want;
  };
  const Row rows[] = {
      {"J", "0", "w", "w"},          {"J", "1", "w", "w+1"},         {"J", "Id", "w", "w*3"},
      {"J", "Const(w)", "w", "w*2"}, {"J'", "Id", "w", "w*5"},       {"J+", "0", "w", "w*2"},
      {"J+", "1", "w", "w^2"},       {"J", "omega[Id]", "w", "w^(w+1)"},
  };
  for (const Row& row : rows) {
    r.run("value", std::string(row.fn) + "(" + row.d + ", " + row.g + ")", [&]() -> Result {
      Dil d = D(row.d);
      Ordinal g = O(row.g);
      std::string fn = row.fn;
      JResult res = fn == "J" ? j_eval(d, g) : fn == "J'" ? jprime_eval(d, g) : jplus_eval(d, g);
      GuardAudit a = j_guard_report(res);
      if (!a.ok()) return {Status::Fail, "guard audit: " + a.detail};
      return expect_eq(res.value, O(row.want));
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 2. psi clause values and the sum split

struct SplitImage {
  int side = 0;
  Ordinal beta;   // side 0: rank in psi D
  PsiRef term;    // side 1: term of psi E over delta
};

Ordinal const_rank(const Dil& d, const Elem& e) {
  if (d->kind == DKind::One) return Ordinal();
  if (d->kind == DKind::Const) return e.idx;
  throw Error(ErrorKind::MalformedTerm, "split check needs a constant left summand");
}

// psi(D+E)^g against psi D^g + psi E^(g + psi D^g), for constant D.
EmbedResult psi_sum_split(const Dil& d, const Dil& e, const Ordinal& g, std::size_t depth, std::size_t prefix,
                          std::size_t* total) {
  Ordinal alpha = *const_value(d);
  Ordinal delta = g + alpha;
  PsiOrder src(dil::sum(d, e), g, Budget{}, true);
  PsiOrder dst(e, delta);
  std::vector<PsiRef> terms = psi_enum(src, depth);
  *total = terms.size();
  std::unordered_map<std::string, PsiRef> memo;
  std::function<PsiRef(const PsiTerm&)> map_e = [&](const PsiTerm& t) -> PsiRef {
    if (auto it = memo.find(t.key); it != memo.end()) return it->second;
    if (t.elem.tag != 1) throw Error(ErrorKind::MalformedTerm, "expected a right-summand term");
    Elem inner = map_positions(e, t.elem.kids.at(0), [&](const Pos& p) {
      if (!p.right) return p;
      const PsiTerm* u = psi_sub(p);
      if (u->elem.tag == 0) return Pos::at_left(g + const_rank(d, u->elem.kids.at(0)));
      return psi_pos(map_e(*u));
    });
    PsiRef img = dst.make(inner);
    if (!dst.valid(*img)) throw Error(ErrorKind::MalformedTerm, "image " + img->key + " is not a valid term");
    memo.emplace(t.key, img);
    return img;
  };
  std::function<SplitImage(const PsiRef&)> map = [&](const PsiRef& t) {
    SplitImage s;
    if (t->elem.tag == 0) {
      s.beta = const_rank(d, t->elem.kids.at(0));
    } else {
      s.side = 1;
      s.term = map_e(*t);
    }
    return s;
  };
  std::function<Cmp(const SplitImage&, const SplitImage&)> cmp = [&](const SplitImage& a, const SplitImage& b) {
    if (a.side != b.side) return a.side < b.side ? Cmp::Less : Cmp::Greater;
    if (a.side == 0) return ord_cmp(a.beta, b.beta);
    return dst.cmp(*a.term, *b.term);
  };
  return embed_check<PsiRef, SplitImage>(terms, map, cmp, std::min(prefix, terms.size()));
}

SuiteReport suite_psi_sum(const SuiteOptions& opt) {
  SuiteReport r;
  for (const char* a : {"0", "1", "2", "3", "w", "w^2"})
    for (const char* g : {"0", "w"})
      r.run("constant", std::string("Const(") + a + ") @ " + g, [&]() -> Result {
        Ordinal alpha = O(a);
        Dil d = normalize(dil::constant(alpha));
        Result res = expect_eq(psi_clause_otp(d, O(g)), alpha);
        if (res.first != Status::Pass || !alpha.is_finite()) return res;
        std::size_t n = psi_enum(PsiOrder(d, O(g)), opt.depth).size();
        if (n != alpha.to_nat()) return {Status::Fail, "enumeration has " + std::to_string(n) + " terms"};
        return {Status::Pass, res.second + " (" + std::to_string(n) + " terms enumerated)"};
      });
  r.run("sum", "Const(2)+Const(3) @ 0", [&]() -> Result {
    // Split through the clause rather than the folded constant.
    Ordinal a = psi_clause_otp(D("Const(2)"), Ordinal());
    Ordinal b = psi_clause_otp(D("Const(3)"), a);
    Result res = expect_eq(a + b, Ordinal::nat(5));
    if (res.first != Status::Pass) return res;
    return expect_eq(psi_clause_otp(D("Const(2)+Const(3)"), Ordinal()), Ordinal::nat(5));
  });
  r.run("connected", "Id @ w", [&]() -> Result { return expect_eq(psi_clause_otp(D("Id"), O("w")), O("w^2")); });
  r.run("connected", "Id @ 0", [&]() -> Result {
    Result res = expect_eq(psi_clause_otp(D("Id"), Ordinal()), Ordinal());
    if (res.first != Status::Pass) return res;
    std::size_t n = psi_enum(PsiOrder(D("Id"), Ordinal()), opt.depth).size();
    if (n != 0) return {Status::Fail, "enumeration is not empty"};
    return {Status::Pass, "0, empty enumeration"};
  });
  struct Split {
    const char* d;
    const char* e;
    const char* g;
  };
  const Split splits[] = {{"Const(2)", "Const(3)", "0"}, {"1", "Id", "0"},           {"Const(2)", "Id", "1"},
                          {"Const(w)", "Id", "0"},       {"Const(3)", "omega[Id]", "0"}, {"1", "Id*2", "w"},
                          {"Const(w)", "Const(3)", "w"}, {"Const(2)", "Id+1", "w"}};
  for (const Split& s : splits)
    r.run("split", std::string(s.d) + " + " + s.e + " @ " + s.g, [&]() -> Result {
      std::size_t total = 0;
      EmbedResult er = psi_sum_split(D(s.d), D(s.e), O(s.g), std::min<std::size_t>(opt.depth, 3), opt.prefix, &total);
      if (!er.verified) return {Status::Fail, er.detail};
      return {Status::Pass, "Verified on " + std::to_string(er.checked) + " of " + std::to_string(total) + " terms"};
    });
  return r;
}

// ---------------------------------------------------------------------------
// 3. gamma + psi D^gamma <= J+(D, gamma)

SuiteReport suite_bound(const SuiteOptions&) {
  SuiteReport r;
  for (const char* d : {"0", "1", "Const(w)", "Id", "Id+1", "Id*2", "Id*w", "Const(2)", "1+Id", "Const(w)+Id", "Id*3"})
    for (const char* g : {"w", "w^2"})
      r.run("bound", inst(d, O(g)), [&]() -> Result {
        Ordinal gamma = O(g);
        Ordinal lhs;
        try {
          lhs = gamma + psi_clause_otp(D(d), gamma);
        } catch (const Error& e) {
          return {Status::Skip, std::string("left side does not evaluate: ") + e.what()};
        }
        try {
          Ordinal rhs = jplus_eval(D(d), gamma).value;
          return expect_le(lhs, rhs, "bound violated");
        } catch (const Error& e) {
          auto lb = lower_bound_of(e);
          if (lb && lhs <= *lb)
            return {Status::Pass, lhs.str() + " <= " + lb->str() + " <= J+ (lower bound; J+ itself: " +
                                      error_kind_name(e.kind()) + ")"};
          return {Status::Skip, std::string("right side does not evaluate (") + error_kind_name(e.kind()) +
                                    (lb ? ", certified lower bound " + lb->str() + " < " + lhs.str() : "") + ")"};
        }
      });
  return r;
}

// ---------------------------------------------------------------------------
// 4. J laws

const std::vector<std::string>& law_dilators() {
  static const std::vector<std::string> v = {"0",        "1",          "Const(2)",  "Const(w)",    "Const(w+1)",
                                             "Const(w^2)", "Id",       "Id+1",      "1+Id",        "Const(w)+Id",
                                             "Id*2",     "Id*3",       "Id*w",      "omega[Id]",   "omega[Id]+1",
                                             "Id*w+1",   "omega[Const(2)+Id]"};
  return v;
}

const std::vector<std::string>& law_gammas() {
  static const std::vector<std::string> v = {"0", "1", "3", "w", "w+1", "w*2", "w^2", "w^w"};
  return v;
}

Result check_clause(JCache& jc, const Dil& d, const Ordinal& g) {
  Ordinal delta = jc.j(d, g);
  std::vector<Dil> items = summands(normalize(d));
  TypeClass tc = classify(d);
  switch (tc.kind) {
    case TypeClass::Kind::Zero: return expect_eq(delta, g);
    case TypeClass::Kind::One: return expect_eq(delta, j_eval(tc.pred, g).value + Ordinal::nat(1));
    case TypeClass::Kind::Omega: {
      std::vector<Ordinal> vals;
      for (std::uint64_t k = 0; k < 7; ++k) {
        vals.push_back(j_eval(tc.fund(k), g).value);
        if (delta < vals.back()) return {Status::Fail, "partial value " + vals.back().str() + " above " + delta.str()};
      }
      if (items.back()->kind == DKind::Const) {
        // Constant tails: the fundamental values are J(P, g) + c[k].
        Ordinal p = j_eval(build_sum(std::vector<Dil>(items.begin(), items.end() - 1)), g).value;
        return expect_eq(delta, p + items.back()->ord);
      }
      return expect_eq(delta, sup_of_iterates(vals, nullptr));
    }
    case TypeClass::Kind::BigOmega: {
      Ordinal a = j_eval(tc.sep(Ordinal()), g).value;
      Ordinal b = j_eval(tc.sep(a), g).value;
      return expect_eq(delta, a + b);
    }
  }
  return {Status::Fail, "unknown type"};
}

bool is_zero_dil(const Dil& d) { return normalize(d)->kind == DKind::Zero; }

// 1 <= D: the one-element order embeds, i.e. D(0) is nonempty.
bool has_unit(const Dil& d) { return !otp_symbolic(normalize(d), Ordinal()).is_zero(); }

SuiteReport suite_j_laws(const SuiteOptions&) {
  SuiteReport r;
  JCache jc;
  const auto& ds = law_dilators();
  const auto& gs = law_gammas();
  const std::vector<std::string> lefts = {"0", "1", "Const(2)", "Const(w)", "Id", "Id+1"};
  const std::vector<std::string> rights = {"1", "Id", "Const(w)", "Id*2", "omega[Id]"};

  for (const auto& a : lefts)
    for (const auto& b : rights)
      for (const char* g : {"0", "w", "w^2"})
        r.run("composition", a + " ; " + b + " @ " + g, [&]() -> Result {
          Ordinal gamma = O(g);
          return expect_eq(jc.j(dil::sum(D(a), D(b)), gamma), jc.j(D(b), jc.j(D(a), gamma)));
        });

  for (const auto& d : ds)
    for (const char* g : {"0", "w", "w^2"})
      r.run("determinism", inst(d, O(g)), [&]() -> Result {
        JResult x = j_eval(D(d), O(g));
        JResult y = j_eval(parse_dilator_raw(d), O(g));
        if (!(x.value == y.value)) return {Status::Fail, "two evaluations differ"};
        GuardAudit a = j_guard_report(x);
        if (!a.ok()) return {Status::Fail, "guard audit: " + a.detail};
        return {Status::Pass, x.value.str() + ", audit under eta " + a.audit_eta.str() + " identical"};
      });

  for (const auto& d : ds)
    for (const char* g : {"0", "w", "w^2"}) r.run("clause", inst(d, O(g)), [&]() { return check_clause(jc, D(d), O(g)); });

  for (const auto& a : lefts)
    for (const auto& b : rights)
      r.run("monotone", a + " <= " + a + "+" + b + " @ w", [&]() -> Result {
        return expect_le(jc.j(D(a), O("w")), jc.j(dil::sum(D(a), D(b)), O("w")), "monotonicity");
      });
  for (const auto& d : ds)
    for (std::uint64_t n : {1, 2})
      r.run("monotone", d + " *" + std::to_string(n) + " <= *" + std::to_string(n + 1) + " @ w", [&]() -> Result {
        return expect_le(jc.j(dil::mul_nat(D(d), n), O("w")), jc.j(dil::mul_nat(D(d), n + 1), O("w")), "monotonicity");
      });
  for (const auto& d : ds)
    r.run("monotone", d + " @ w <= @ w^2", [&]() -> Result {
      return expect_le(jc.j(D(d), O("w")), jc.j(D(d), O("w^2")), "monotonicity in gamma");
    });

  for (const auto& d : ds)
    for (const auto& g : gs) {
      Ordinal gamma = O(g);
      r.run("prop-a", inst(d, gamma), [&]() { return expect_le(gamma, jc.j(D(d), gamma), "gamma <= J"); });
      r.run("prop-b", inst(d, gamma), [&]() -> Result {
        if (!has_unit(D(d))) return {Status::Skip, "1 does not embed into D"};
        return expect_le(gamma + Ordinal::nat(1), jc.j(D(d), gamma), "gamma+1 <= J");
      });
      r.run("prop-c", inst(d, gamma), [&]() -> Result {
        TypeClass tc = classify(D(d));
        if (tc.kind != TypeClass::Kind::BigOmega) return {Status::Skip, "not of type Omega"};
        if (!has_unit(D(d))) return {Status::Skip, "1 does not embed into D"};
        Dil s = sep_normalized(D(d), gamma + Ordinal::nat(1));
        return expect_le(jc.j(s, gamma), jc.j(D(d), gamma), "J(sep(D,g+1),g) <= J(D,g)");
      });
      r.run("prop-d", inst(d, gamma), [&]() -> Result {
        if (is_zero_dil(D(d))) return {Status::Skip, "D = 0"};
        Ordinal v = jc.j(D(d), gamma);
        if (gamma + Ordinal::nat(1) <= v || (v.is_zero() && gamma.is_zero())) return {Status::Pass, v.str()};
        return {Status::Fail, "neither gamma+1 <= J nor J = gamma = 0: " + v.str()};
      });
    }
  for (const auto& a : lefts)
    for (const auto& b : rights)
      for (const char* g : {"0", "w"})
        r.run("prop-e", a + " ; " + b + " @ " + g, [&]() -> Result {
          Ordinal delta = jc.j(dil::sum(D(a), D(b)), O(g));
          if (delta.is_zero()) return {Status::Skip, "J(D+E) = 0"};
          Ordinal x = jc.j(D(a), O(g));
          if (x < delta) return {Status::Pass, x.str() + " < " + delta.str()};
          return {Status::Fail, x.str() + " not below " + delta.str()};
        });

  for (const auto& d : ds)
    for (const char* g : {"w", "w+1", "w*2", "w^2", "w^w"})
      r.run("jprime-vs-j8", inst(d, O(g)), [&]() {
        return expect_le(jc.jp(D(d), O(g)), jc.j(dil::mul_nat(D(d), 8), O(g)), "J'(D) <= J(D*8)");
      });

  for (const auto& d : ds)
    for (std::uint64_t n : {1, 2, 3, 4})
      for (const char* g : {"w", "w^2"})
        r.run("shift-robust", d + " shift " + std::to_string(n) + " @ " + g, [&]() {
          return expect_eq(jc.jp(shift(D(d), Ordinal::nat(n)), O(g)), jc.jp(D(d), O(g)));
        });

  for (const char* d : {"Id", "1+Id", "Const(w)+Id", "Const(2)+Id", "Const(w^2)+Id", "omega[Id]", "Id*2"})
    for (const char* g : {"w", "w+1", "w^2", "w^w"})
      r.run("closure", inst(d, O(g)), [&]() -> Result {
        Dil dd = D(d);
        Ordinal gamma = O(g);
        // The closure property is stated for type Omega only; J+(0, w) = w*2 is not principal.
        if (classify(dd).kind != TypeClass::Kind::BigOmega) return {Status::Skip, "not of type Omega"};
        std::vector<Ordinal> it;
        for (std::uint64_t n = 1; n <= 3; ++n) it.push_back(jplus_iterate(dd, gamma, n));
        if (!(gamma < it[0])) return {Status::Fail, "first iterate " + it[0].str() + " not above gamma"};
        for (std::size_t n = 0; n + 1 < it.size(); ++n)
          if (it[n + 1] < it[n].mul_nat(2))
            return {Status::Fail, "iterate " + std::to_string(n + 2) + " below twice the previous"};
        for (const Ordinal& a : sample_below(it[1], 4)) {
          Ordinal v = jplus_eval(sep_normalized(dd, a), a).value;
          if (!(v < it[2]))
            return {Status::Fail, "J+(sep(D," + a.str() + ")," + a.str() + ") = " + v.str() + " not below iterate 3"};
        }
        std::string note = "iterates " + it[0].str() + " < ... ; closed under addition";
        try {
          Ordinal full = jplus_eval(dd, gamma).value;
          if (!full.is_principal() || !(gamma < full)) return {Status::Fail, "J+ = " + full.str() + " not principal above gamma"};
          note = "J+ = " + full.str();
        } catch (const Error& e) {
          note += std::string(" (J+ itself: ") + error_kind_name(e.kind()) + ")";
        }
        return {Status::Pass, note};
      });

  for (const char* g : {"composition", "determinism", "clause", "monotone", "prop-a", "prop-b", "prop-c", "prop-d",
                        "prop-e", "jprime-vs-j8", "shift-robust", "closure"})
    r.require(g, 20);
  return r;
}

// ---------------------------------------------------------------------------
// 5. semantic/symbolic coherence

Budget coherence_budget(TraceCache* cache) {
  Budget b;
  b.consts = 8;
  b.nat_copies = 16;
  b.mult = 2;
  b.left = 8;
  b.cache = cache;
  return b;
}

Result transport_result(const TransportResult& t) {
  if (!t.ok) return {Status::Fail, t.detail};
  return {Status::Pass, "transported " + std::to_string(t.checked) + " elements"};
}

const std::vector<std::string>& coherence_dilators() {
  static const std::vector<std::string> v = {"0",         "1",          "Const(3)",  "Const(w)",      "Id",
                                             "Id+1",      "1+Id",       "Id*2",      "Id*3",          "Id*w",
                                             "omega[Id]", "omega[Id+1]", "Const(w)+Id", "omega[Const(2)+Id]",
                                             "omega[Id]+Id", "omega[omega[Id]]"};
  return v;
}

SuiteReport suite_coherence(const SuiteOptions& opt) {
  SuiteReport r;
  TraceCache cache;
  Budget b = coherence_budget(&cache);
  const std::vector<std::string> ambients = {"3", "8", "w", "w+2"};
  const auto& ds = coherence_dilators();

  for (const auto& d : ds)
    for (const auto& a : ambients)
      r.run("decompose", d + " over " + a, [&]() {
        return transport_result(
            transport_check(parse_dilator_raw(d), segments_expr(decompose(D(d))), O(a), opt.prefix, true, b));
      });

  for (const auto& d : ds)
    for (const char* g : {"1", "2", "w"})
      for (const auto& a : {"3", "w"})
        r.run("shift", d + " by " + g + " over " + a, [&]() {
          return transport_result(
              transport_check(dil::shift(parse_dilator_raw(d), O(g)), shift(D(d), O(g)), O(a), opt.prefix, true, b));
        });

  for (const auto& d : ds)
    for (const char* g : {"0", "1", "3", "w"})
      for (const auto& a : {"2", "w"})
        r.run("sep", d + " at " + g + " over " + a, [&]() -> Result {
          Dil dd = D(d);
          if (classify(dd).kind != TypeClass::Kind::BigOmega) return {Status::Skip, "not of type Omega"};
          Dil n = sep_normalized(dd, O(g));
          return transport_result(transport_check(dil::sep(dd, O(g)), n, O(a), opt.prefix, true, b));
        });

  const std::vector<std::string> atoms = {"Id", "head[Id]", "head[1+Id]", "head[Const(w)+Id]", "head[Const(2)+Id]",
                                          "head[1+head[Id]]"};
  for (const auto& at : atoms)
    for (const char* g : {"0", "1", "2", "w"})
      for (const auto& a : {"2", "w"}) {
        std::string name = at + " at " + g + " over " + a;
        r.run("sep_signed", name, [&]() {
          auto [minus, plus] = sep_signed(D(at), O(g));
          Dil whole = build_sum({minus, plus});
          return transport_result(transport_check(dil::shift(D(at), O(g)), whole, O(a), opt.prefix, true, b));
        });
        r.run("sep_signed", "minus of " + name, [&]() {
          auto [minus, plus] = sep_signed(D(at), O(g));
          return transport_result(transport_check(dil::sep_minus(D(at), O(g)), minus, O(a), opt.prefix, true, b));
        });
        r.run("sep_signed", "plus of " + name, [&]() {
          auto [minus, plus] = sep_signed(D(at), O(g));
          return transport_result(transport_check(dil::sep_plus(D(at), O(g)), plus, O(a), opt.prefix, true, b));
        });
      }

  // Comparison embeddings, transported through ranks.
  for (const char* d : {"Id", "Id*2", "1+Id", "omega[Id]", "Const(w)+Id", "omega[Const(2)+Id]"})
    for (auto [g, h] : std::vector<std::pair<const char*, const char*>>{{"0", "1"}, {"1", "3"}, {"2", "w"}, {"w", "w*2"}})
      r.run("sep-monotone", std::string(d) + " at " + g + " into " + h, [&]() {
        return transport_result(
            transport_check(dil::sep(D(d), O(g)), sep_normalized(D(d), O(h)), O("w"), opt.prefix, false, b));
      });
  for (const char* d : {"Id", "Id*2", "1+Id", "Const(w)+Id"})
    for (const char* g : {"0", "1", "w"})
      r.run("omega-preds", std::string(d) + " at " + g, [&]() {
        Dil src = dil::omega(dil::sep(D(d), O(g)));
        Dil dst = sep_normalized(normalize(dil::omega(D(d))), O(g));
        return transport_result(transport_check(src, dst, O("2"), opt.prefix, false, b));
      });
  for (const char* at : {"Id", "head[Id]", "head[1+Id]"})
    for (const char* g : {"1", "w", "w^2"})
      r.run("min-sep", std::string(at) + " at " + g, [&]() {
        Dil dst = shift(sep_normalized(D(at), O(g)), O(g));
        return transport_result(transport_check(dil::sep_minus(D(at), O(g)), dst, O("w"), opt.prefix, false, b));
      });
  for (const char* d : {"Id", "1+Id", "Id*2", "omega[Id]"})
    for (auto [g, h] : std::vector<std::pair<const char*, const char*>>{{"1", "1"}, {"1", "w"}, {"w", "2"}})
      r.run("shift-sep", std::string(d) + " shift " + g + " sep " + h, [&]() {
        Dil src = dil::sep(shift(D(d), O(g)), O(h));
        Dil dst = shift(sep_normalized(D(d), O(g) + O(h)), O(g));
        return transport_result(transport_check(src, dst, O("w"), opt.prefix, false, b));
      });

  // Symbolic order types against exhaustive counts.
  const std::vector<std::string> finite = {"0",        "1",       "Const(5)",          "Id",        "Id+1",
                                           "1+Id",     "Id*2",    "Id*3+Const(2)",     "shift(Id,2)", "sep(Id*2,3)",
                                           "shift(Id*2+1,1)", "sep(Id+Id+Id,2)"};
  for (const auto& d : finite)
    for (std::uint64_t n = 0; n <= 6; ++n)
      r.run("otp-count", d + " at " + std::to_string(n), [&]() -> Result {
        Dil raw = parse_dilator_raw(d);
        Ordinal want = otp_symbolic(normalize(raw), Ordinal::nat(n));
        Budget full = b;
        full.cap = 1000000;
        std::size_t got = enum_elements(raw, n, full).size();
        if (!want.is_finite() || want.to_nat() != got)
          return {Status::Fail, "symbolic " + want.str() + ", enumerated " + std::to_string(got)};
        return {Status::Pass, want.str()};
      });
  return r;
}

// ---------------------------------------------------------------------------
// 6. order-theoretic sanity

const std::vector<std::string>& sanity_dilators() {
  static const std::vector<std::string> v = {"Const(3)", "Id",        "Id+1",       "Id*2",          "Id*w",
                                             "omega[Id]", "omega[Id+1]", "Const(w)+Id", "omega[Const(2)+Id]",
                                             "shift(Id,2)", "sep(Id*2,w)", "shift(omega[Id],1)"};
  return v;
}

Result check_triples(std::size_t n, const std::function<Cmp(std::size_t, std::size_t)>& cmp) {
  std::vector<std::vector<Cmp>> c(n, std::vector<Cmp>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = cmp(i, j);
  auto flip = [](Cmp x) { return x == Cmp::Less ? Cmp::Greater : (x == Cmp::Greater ? Cmp::Less : Cmp::Equal); };
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i][i] != Cmp::Equal) return {Status::Fail, "element " + std::to_string(i) + " not equal to itself"};
    for (std::size_t j = 0; j < n; ++j) {
      if (c[i][j] != flip(c[j][i])) return {Status::Fail, "asymmetric comparison at " + std::to_string(i) + "," + std::to_string(j)};
      if (i != j && c[i][j] == Cmp::Equal) return {Status::Fail, "distinct elements compare equal"};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i][j] == Cmp::Less)
        for (std::size_t k = 0; k < n; ++k)
          if (c[j][k] == Cmp::Less && c[i][k] != Cmp::Less)
            return {Status::Fail, "transitivity fails at " + std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k)};
  return {Status::Pass, std::to_string(n) + " elements, " + std::to_string(n * n * n) + " triples"};
}

std::vector<Elem> head_prefix(std::vector<Elem> v, std::size_t k) {
  if (v.size() > k) v.resize(k);
  return v;
}

std::vector<std::int64_t> point_set(const std::vector<Pos>& ps) {
  std::vector<std::int64_t> r;
  for (const Pos& p : ps) r.push_back(p.point);
  return r;
}

SuiteReport suite_order_sanity(const SuiteOptions& opt) {
  SuiteReport r;
  TraceCache cache;
  Budget b;
  b.cache = &cache;
  const auto& ds = sanity_dilators();

  for (const auto& d : ds)
    r.run("trichotomy", d + " over 3", [&]() {
      Dil dd = parse_dilator_raw(d);
      auto es = head_prefix(enum_elements(dd, 3, b), 40);
      return check_triples(es.size(), [&](std::size_t i, std::size_t j) { return compare_elements(dd, es[i], es[j]); });
    });

  for (auto [d, g] : std::vector<std::pair<const char*, const char*>>{
           {"Id", "1"}, {"Id", "w"}, {"Id*2", "w"}, {"Id+1", "w"}, {"omega[Id]", "0"}, {"Const(2)+Id", "1"}})
    r.run("psi-trichotomy", inst(d, O(g)), [&]() {
      PsiOrder o(D(d), O(g));
      auto ts = psi_enum(o, 3);
      if (ts.size() > 30) ts.resize(30);
      // Compare in a shuffled order so the sort does not hide a bad comparison.
      std::mt19937_64 rng(opt.seed);
      std::shuffle(ts.begin(), ts.end(), rng);
      return check_triples(ts.size(), [&](std::size_t i, std::size_t j) { return o.cmp(*ts[i], *ts[j]); });
    });

  for (const auto& d : ds)
    r.run("naturality", d + " 3 -> 5", [&]() -> Result {
      Dil dd = parse_dilator_raw(d);
      auto es = head_prefix(enum_elements(dd, 3, b), opt.prefix);
      std::size_t n = 0;
      for (const auto& f : embeddings(3, 5))
        for (const Elem& e : es) {
          auto before = point_set(support_of(dd, e));
          for (auto& x : before) x = f[static_cast<std::size_t>(x)];
          auto after = point_set(support_of(dd, apply_embedding(dd, e, f)));
          if (before != after) return {Status::Fail, "support not natural for " + elem_str(dd, e)};
          ++n;
        }
      return {Status::Pass, std::to_string(n) + " element/embedding pairs"};
    });

  for (const auto& d : ds)
    r.run("support-condition", d + " over 3", [&]() -> Result {
      Dil dd = parse_dilator_raw(d);
      auto es = head_prefix(enum_elements(dd, 3, b), opt.prefix);
      std::vector<std::vector<Elem>> small;
      for (std::size_t k = 0; k <= 3; ++k) small.push_back(enum_elements(dd, k, b));
      std::size_t n = 0;
      for (const Elem& e : es) {
        auto supp = point_set(support_of(dd, e));
        for (std::size_t k = supp.size(); k <= 3; ++k)
          for (const auto& f : embeddings(k, 3)) {
            if (!std::all_of(supp.begin(), supp.end(),
                             [&](std::int64_t x) { return std::find(f.begin(), f.end(), x) != f.end(); }))
              continue;
            bool found = std::any_of(small[k].begin(), small[k].end(),
                                     [&](const Elem& e0) { return elements_equal(dd, apply_embedding(dd, e0, f), e); });
            if (!found) return {Status::Fail, "no preimage of " + elem_str(dd, e) + " over " + std::to_string(k)};
            ++n;
          }
      }
      return {Status::Pass, std::to_string(n) + " preimages found"};
    });

  for (const auto& d : ds)
    r.run("monotone-embedding", d + " 3 -> 5", [&]() -> Result {
      Dil dd = parse_dilator_raw(d);
      auto es = head_prefix(enum_elements(dd, 3, b), 60);
      auto fs = embeddings(3, 5);
      std::size_t n = 0;
      for (const auto& f : fs)
        for (const auto& g : fs) {
          bool le = true;
          for (std::size_t i = 0; i < 3; ++i) le = le && f[i] <= g[i];
          if (!le) continue;
          for (const Elem& e : es) {
            if (compare_elements(dd, apply_embedding(dd, e, f), apply_embedding(dd, e, g)) == Cmp::Greater)
              return {Status::Fail, "f <= g but D(f)(e) > D(g)(e) for " + elem_str(dd, e)};
            ++n;
          }
        }
      return {Status::Pass, std::to_string(n) + " comparisons"};
    });

  const std::vector<std::string> atoms = {"Id", "head[Id]", "head[1+Id]", "head[Id+Id]", "head[Const(w)+Id]",
                                          "head[1+head[Id]]", "sepplus(head[Id],2)", "sepplus(head[1+Id],w)"};
  for (const auto& at : atoms)
    r.run("important-index", at + " arity <= 5", [&]() -> Result {
      Dil a = parse_dilator_raw(at);
      Budget wide = b;
      wide.mult = 5;
      std::vector<Elem> es;
      try {
        es = enum_elements(a, 5, wide);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        // Nested heads: shorter exponent lists still reach arity 5.
        wide.mult = 3;
        es = enum_elements(a, 5, wide);
      }
      std::map<std::string, Trace> traces;
      for (const Elem& e : es) {
        Trace t = trace_of(a, e);
        if (t.arity >= 1 && t.arity <= 5) traces.emplace(trace_key(a, t), t);
      }
      bool md = max_dominated(normalize(a));
      for (const auto& [k, t] : traces) {
        std::size_t i = important_index(a, t, &cache);
        if (md && i != t.arity - 1) return {Status::Fail, "max-dominated atom with important index " + std::to_string(i)};
      }
      return {Status::Pass, std::to_string(traces.size()) + " trace terms" + (md ? ", all max-dominated" : "")};
    });

  for (const auto& at : atoms)
    r.run("important-coefficient", at + " over 4", [&]() -> Result {
      Dil a = parse_dilator_raw(at);
      auto es = head_prefix(enum_elements(a, 4, b), 80);
      std::vector<std::int64_t> key;
      for (const Elem& e : es) {
        auto ps = positions(a, e);
        key.push_back(ps.at(important_index(a, trace_of(a, e), &cache)).point);
      }
      std::size_t n = 0;
      for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j)
          if (key[i] < key[j]) {
            if (compare_elements(a, es[i], es[j]) != Cmp::Less)
              return {Status::Fail, elem_str(a, es[i]) + " not below " + elem_str(a, es[j])};
            ++n;
          }
      return {Status::Pass, std::to_string(n) + " pairs"};
    });

  for (const char* d : {"Id", "Id*2", "1+Id", "omega[Id]", "Const(w)+Id", "omega[Const(2)+Id]", "omega[Id]+Id"})
    for (const char* dl : {"1", "2", "w"})
      r.run("sep-rank", std::string(d) + " at w^" + dl, [&]() -> Result {
        Ordinal top = Ordinal::omega_pow(O(dl));
        Ordinal whole = otp_symbolic(D(d), top);
        std::size_t n = 0;
        for (const Ordinal& g : sample_below(top, 5)) {
          Ordinal part = otp_symbolic(sep_normalized(D(d), g), top);
          if (!(part < whole)) return {Status::Fail, "sep at " + g.str() + " has order type " + part.str() + " >= " + whole.str()};
          ++n;
        }
        return {Status::Pass, std::to_string(n) + " parameters"};
      });

  for (const char* at : {"Id", "head[Id]", "head[1+Id]"})
    for (const char* g : {"0", "1", "w"})
      r.run("plus-connected", std::string(at) + " at " + g, [&]() -> Result {
        Dil plus = sep_signed(D(at), O(g)).second;
        std::map<std::string, Trace> traces;
        for (const Elem& e : enum_elements(plus, 4, b)) {
          Trace t = trace_of(plus, e);
          if (t.arity <= 4) traces.emplace(trace_key(plus, t), t);
        }
        for (const auto& [k0, t0] : traces)
          for (const auto& [k1, t1] : traces)
            if (ll_relation(plus, t0, t1) != LL::Equivalent) return {Status::Fail, "trace terms are not equivalent"};
        return {Status::Pass, plus->key + ": " + std::to_string(traces.size()) + " trace terms pairwise equivalent"};
      });

  r.run("ll", "Const(w): 2 vs 5", [&]() -> Result {
    Dil c = D("Const(w)");
    Trace a, t;
    a.sigma.idx = Ordinal::nat(2);
    t.sigma.idx = Ordinal::nat(5);
    LL rel = ll_relation(c, a, t);
    return {rel == LL::MuchLess ? Status::Pass : Status::Fail, ll_name(rel)};
  });
  r.run("ll", "Id+Id: left vs right", [&]() -> Result {
    Dil s = parse_dilator_raw("Id+Id");
    Trace a, t;
    a.arity = t.arity = 1;
    a.sigma.kids.push_back(Elem{});
    a.sigma.kids[0].pos = Pos::at_point(0);
    t.sigma = a.sigma;
    t.sigma.tag = 1;
    LL rel = ll_relation(s, a, t);
    return {rel == LL::MuchLess ? Status::Pass : Status::Fail, ll_name(rel)};
  });
  return r;
}

// ---------------------------------------------------------------------------
// 7. well-foundedness fuzzing

OrderHandle<PsiRef> psi_handle(const std::shared_ptr<PsiOrder>& o, const std::shared_ptr<std::vector<PsiRef>>& pool) {
  OrderHandle<PsiRef> h;
  h.cmp = [o](const PsiRef& a, const PsiRef& b) { return o->cmp(*a, *b); };
  h.sample = [pool](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pool->size() - 1);
    return (*pool)[pick(rng)];
  };
  return h;
}

SuiteReport suite_wf_fuzz(const SuiteOptions& opt) {
  SuiteReport r;
  for (auto [d, g] : std::vector<std::pair<const char*, const char*>>{{"omega[Id]", "0"}, {"Id", "w"}})
    r.run("chain-search", std::string("psi ") + inst(d, O(g)), [&]() -> Result {
      auto o = std::make_shared<PsiOrder>(D(d), O(g));
      auto pool = std::make_shared<std::vector<PsiRef>>(psi_enum(*o, opt.depth));
      if (pool->empty()) return {Status::Fail, "empty term pool"};
      auto res = chain_search(psi_handle(o, pool), opt.trials, opt.chain_depth, opt.seed);
      std::string info = std::to_string(res.trials) + " trials over " + std::to_string(pool->size()) +
                         " terms, longest chain " + std::to_string(res.chain.size());
      if (res.found) return {Status::Fail, "Counterexample: " + info};
      return {Status::Pass, "NoneFound: " + info};
    });
  r.run("chain-search", "integer fixture", [&]() -> Result {
    auto res = chain_search(integer_fixture(), opt.trials, opt.chain_depth, opt.seed);
    if (!res.found) return {Status::Fail, "the ill-founded fixture produced no chain"};
    return {Status::Pass, "Counterexample of length " + std::to_string(res.chain.size()) + " after " +
                              std::to_string(res.trials) + " trials"};
  });
  return r;
}

}  // namespace

OrderHandle<long long> integer_fixture() {
  OrderHandle<long long> h;
  h.cmp = [](const long long& a, const long long& b) { return a < b ? Cmp::Less : (a > b ? Cmp::Greater : Cmp::Equal); };
  h.sample = [](std::mt19937_64& rng) { return std::uniform_int_distribution<long long>(-1000, 1000)(rng); };
  h.propose = [](const long long& x, std::mt19937_64& rng) -> std::optional<long long> {
    return x - std::uniform_int_distribution<long long>(1, 3)(rng);
  };
  return h;
}

TransportResult transport_check(const Dil& src, const Dil& dst, const Ordinal& a, std::size_t k, bool iso,
                                Budget b) {
  TraceCache local;
  if (!b.cache) b.cache = &local;
  TransportResult r;
  auto fail = [&](const std::string& why) {
    r.ok = false;
    r.detail = why;
    return r;
  };
  Ambient amb = Ambient::ordinal(a, b.left);
  std::vector<Elem> es = enumerate(src, amb, b);
  Ordinal bound = otp_symbolic(dst, a);
  std::size_t n = std::min(k, es.size());
  std::vector<Elem> imgs;
  Ordinal prev;
  for (std::size_t i = 0; i < n; ++i) {
    const Elem& e = es[i];
    Ordinal rk = rank_of(src, e, a);
    if (i > 0 && !(prev < rk))
      return fail("ranks do not increase at " + elem_str(src, e) + " (" + prev.str() + " then " + rk.str() + ")");
    if (!(rk < bound)) return fail("rank " + rk.str() + " of " + elem_str(src, e) + " exceeds " + bound.str());
    Elem img = unrank(dst, a, rk);
    if (!well_formed(dst, img, amb, b)) return fail("image of " + elem_str(src, e) + " is not well-formed");
    auto p0 = positions(src, e);
    auto p1 = positions(dst, img);
    bool same_pos = p0.size() == p1.size();
    for (std::size_t j = 0; same_pos && j < p0.size(); ++j) same_pos = compare_pos(p0[j], p1[j], nullptr) == 0;
    if (!same_pos) return fail("positions differ: " + elem_str(src, e) + " vs " + elem_str(dst, img));
    if (!(rank_of(dst, img, a) == rk)) return fail("rank does not round-trip for " + elem_str(dst, img));
    imgs.push_back(img);
    prev = rk;
  }
  std::function<Elem(const Elem&)> id = [](const Elem& e) { return e; };
  std::function<Cmp(const Elem&, const Elem&)> cmp = [&](const Elem& x, const Elem& y) {
    return compare_elements(dst, x, y);
  };
  EmbedResult er = embed_check<Elem, Elem>(imgs, id, cmp, imgs.size());
  if (!er.verified) return fail("images out of order: " + er.detail);
  if (iso && bound.is_finite() && es.size() != bound.to_nat())
    return fail("enumerated " + std::to_string(es.size()) + " elements, order type " + bound.str());
  r.checked = n;
  return r;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "j-values") r = suite_j_values(opt);
  else if (name == "psi-sum") r = suite_psi_sum(opt);
  else if (name == "bound") r = suite_bound(opt);
  else if (name == "j-laws") r = suite_j_laws(opt);
  else if (name == "coherence") r = suite_coherence(opt);
  else if (name == "order-sanity") r = suite_order_sanity(opt);
  else if (name == "wf-fuzz") r = suite_wf_fuzz(opt);
  else throw Error(ErrorKind::Usage, "unknown suite: " + name);
  r.name = name;
  r.criterion = suite_criterion(name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace artifact
