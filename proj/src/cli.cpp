#include "artifact/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "artifact/jfunctor.hpp"
#include "artifact/suites.hpp"

namespace artifact {

using nlohmann::json;

std::vector<std::string> split_command_line(const std::string& line) {
  std::vector<std::string> words;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (!quoted && c == '#') {
      break;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (any) words.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorKind::Usage, "unterminated quote in: " + line);
  if (any) words.push_back(cur);
  return words;
}

namespace {

struct Options {
  std::string verb;
  std::string format = "text";
  std::string gamma = "w";
  std::string expr, expr2, suite, file;
  std::size_t n = 3;
  std::size_t prefix = 200;
  std::size_t depth = 4;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  bool steps = false;
};

bool json_mode(const Options& o) { return o.format == "json"; }

int exit_code_for(ErrorKind k) {
  if (is_unsupported(k)) return kExitUnsupported;
  if (k == ErrorKind::ParseError || k == ErrorKind::Usage) return kExitUsage;
  return kExitFailed;
}

json type_json(const TypeClass& tc) {
  json r;
  r["type"] = tc.kind_name();
  r["normal"] = tc.expr->key;
  switch (tc.kind) {
    case TypeClass::Kind::Zero: break;
    case TypeClass::Kind::One: r["pred"] = tc.pred->key; break;
    case TypeClass::Kind::Omega: {
      json f = json::array();
      for (std::uint64_t k = 0; k < 4; ++k) f.push_back(tc.fund(k)->key);
      r["fund"] = f;
      break;
    }
    case TypeClass::Kind::BigOmega:
      r["d0"] = tc.d0->key;
      r["last"] = tc.last->key;
      break;
  }
  return r;
}

json opt_ord(const std::optional<Ordinal>& a) { return a ? json(a->str()) : json(nullptr); }

json audit_json(const GuardAudit& a) {
  return json{{"identical", a.identical},
              {"ranksDecrease", a.ranks_decrease},
              {"auditRanksDecrease", a.audit_ranks_decrease},
              {"eta", a.eta.str()},
              {"auditEta", a.audit_eta.str()},
              {"auditXi", opt_ord(a.audit_xi)},
              {"auditValue", a.audit_value.str()},
              {"stepsChecked", a.steps_checked},
              {"rankUnavailable", a.rank_unavailable},
              {"detail", a.detail}};
}

json steps_json(const std::vector<JStep>& steps) {
  json r = json::array();
  for (const JStep& s : steps)
    r.push_back(json{{"parent", s.parent},
                     {"child", s.child},
                     {"gamma", s.child_gamma.str()},
                     {"clause", s.clause},
                     {"memoHit", s.memo_hit},
                     {"rankParent", opt_ord(s.rank_parent)},
                     {"rankChild", opt_ord(s.rank_child)}});
  return r;
}

json suite_json(const SuiteReport& r) {
  json lines = json::array();
  for (const CheckLine& l : r.lines)
    lines.push_back(json{{"group", l.group}, {"instance", l.instance}, {"status", status_name(l.status)}, {"detail", l.detail}});
  return json{{"suite", r.name},
              {"criterion", r.criterion},
              {"pass", r.pass()},
              {"counts", json{{"pass", r.count(Status::Pass)}, {"fail", r.count(Status::Fail)}, {"skip", r.count(Status::Skip)}}},
              {"lines", lines}};
}

// Each verb fills `report` (value or result) and text output; returns the
// exit code.
int execute(const Options& o, json& report, std::ostream& text) {
  json& in = report["inputs"];
  if (o.verb == "classify") {
    in["expr"] = o.expr;
    TypeClass tc = classify(parse_dilator(o.expr));
    report["result"] = type_json(tc);
    text << "type " << tc.kind_name() << ": " << tc.expr->key << "\n";
    if (tc.kind == TypeClass::Kind::One) text << "  pred " << tc.pred->key << "\n";
    if (tc.kind == TypeClass::Kind::BigOmega) text << "  d0 " << tc.d0->key << "\n  last " << tc.last->key << "\n";
    if (tc.kind == TypeClass::Kind::Omega)
      for (std::uint64_t k = 0; k < 4; ++k) text << "  fund(" << k << ") " << tc.fund(k)->key << "\n";
    return kExitOk;
  }
  if (o.verb == "decompose") {
    in["expr"] = o.expr;
    Dil d = parse_dilator(o.expr);
    auto segs = decompose(d);
    json comps = json::array();
    for (const Dil& c : components_prefix(d, 8)) comps.push_back(c->key);
    report["result"] = json{{"segments", segments_str(segs)}, {"components", comps}};
    text << segments_str(segs) << "\n";
    return kExitOk;
  }
  if (o.verb == "enum") {
    in["expr"] = o.expr;
    in["n"] = o.n;
    Dil d = parse_dilator(o.expr);
    std::vector<Elem> es = enum_elements(d, o.n, Budget{});
    json elems = json::array();
    for (std::size_t i = 0; i < es.size() && i < o.prefix; ++i) {
      elems.push_back(elem_str(d, es[i]));
      text << elem_str(d, es[i]) << "\n";
    }
    report["result"] = json{{"count", es.size()}, {"elements", elems}};
    text << es.size() << " elements\n";
    return kExitOk;
  }
  if (o.verb == "compare") {
    in["a"] = o.expr;
    in["b"] = o.expr2;
    Cmp c = ord_cmp(Ordinal::parse(o.expr), Ordinal::parse(o.expr2));
    report["result"] = cmp_name(c);
    text << cmp_name(c) << "\n";
    return kExitOk;
  }
  if (o.verb == "jeval" || o.verb == "jprime" || o.verb == "jplus") {
    in["expr"] = o.expr;
    in["gamma"] = o.gamma;
    Dil d = parse_dilator(o.expr);
    Ordinal g = Ordinal::parse(o.gamma);
    JResult r = o.verb == "jeval" ? j_eval(d, g) : o.verb == "jprime" ? jprime_eval(d, g) : jplus_eval(d, g);
    GuardAudit a = j_guard_report(r);
    report["value"] = r.value.str();
    report["guardAudit"] = audit_json(a);
    if (o.steps) report["steps"] = steps_json(r.steps);
    const char* fn = o.verb == "jeval" ? "J" : o.verb == "jprime" ? "J'" : "J+";
    text << fn << "(" << o.expr << ", " << g.str() << ") = " << r.value.str() << "\n";
    text << "  guard eta " << r.eta.str() << ", xi " << (r.xi ? r.xi->str() : "n/a") << "; audit under "
         << a.audit_eta.str() << ": " << (a.ok() ? "identical, ranks decrease" : a.detail) << "\n";
    if (o.steps)
      for (const JStep& s : r.steps)
        text << "  " << s.clause << ": " << s.parent << " -> " << s.child << " @ " << s.child_gamma.str()
             << (s.memo_hit ? " (memo)" : "") << "\n";
    return a.ok() ? kExitOk : kExitFailed;
  }
  if (o.verb == "psi-enum") {
    in["expr"] = o.expr;
    in["gamma"] = o.gamma;
    in["depth"] = o.depth;
    PsiOrder ord(parse_dilator(o.expr), Ordinal::parse(o.gamma));
    auto terms = psi_enum(ord, o.depth);
    json ts = json::array();
    for (std::size_t i = 0; i < terms.size() && i < o.prefix; ++i) {
      ts.push_back(terms[i]->key);
      text << terms[i]->key << "\n";
    }
    report["result"] = json{{"count", terms.size()}, {"terms", ts}};
    text << terms.size() << " terms\n";
    return kExitOk;
  }
  if (o.verb == "psi-otp") {
    in["expr"] = o.expr;
    in["gamma"] = o.gamma;
    Ordinal v = psi_clause_otp(parse_dilator(o.expr), Ordinal::parse(o.gamma));
    report["value"] = v.str();
    text << "psi(" << o.expr << ")^" << o.gamma << " = " << v.str() << "\n";
    return kExitOk;
  }
  if (o.verb == "check") {
    in["suite"] = o.suite;
    in["prefix"] = o.prefix;
    in["depth"] = o.depth;
    in["trials"] = o.trials;
    in["seed"] = o.seed;
    SuiteOptions so;
    so.prefix = o.prefix;
    so.depth = o.depth;
    so.trials = o.trials;
    so.seed = o.seed;
    std::vector<std::string> names;
    if (o.suite == "all") names = suite_names();
    else names.push_back(o.suite);
    json suites = json::array();
    bool ok = true;
    for (const auto& name : names) {
      SuiteReport r = run_suite(name, so);
      ok = ok && r.pass();
      suites.push_back(suite_json(r));
      for (const CheckLine& l : r.lines)
        text << "[" << status_name(l.status) << "] " << name << "/" << l.group << ": " << l.instance << " -- " << l.detail
             << "\n";
      text << name << " (criterion " << r.criterion << "): " << (r.pass() ? "PASS" : "FAIL") << ", "
           << r.count(Status::Pass) << " passed, " << r.count(Status::Fail) << " failed, " << r.count(Status::Skip)
           << " skipped\n";
    }
    report["result"] = json{{"pass", ok}, {"suites", suites}};
    return ok ? kExitOk : kExitFailed;
  }
  throw Error(ErrorKind::Usage, "unknown verb: " + o.verb);
}

int run_file(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.file);
  if (!f) {
    err << "cannot open " << o.file << "\n";
    return kExitUsage;
  }
  int worst = kExitOk;
  std::string line;
  while (std::getline(f, line)) {
    std::vector<std::string> words;
    try {
      words = split_command_line(line);
    } catch (const Error& e) {
      err << e.what() << "\n";
      worst = std::max(worst, kExitUsage);
      continue;
    }
    if (words.empty()) continue;
    worst = std::max(worst, run_command(words, out, err));
  }
  return worst;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dilators, the J functor and psi collapse on ordinal notations", "dilc"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--gamma", o.gamma, "ordinal parameter");
    c->add_option("--prefix", o.prefix, "elements per prefix check or listing")->check(CLI::PositiveNumber);
    c->add_option("--depth", o.depth, "psi enumeration depth")->check(CLI::PositiveNumber);
    c->add_option("--trials", o.trials, "chain search trials")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "random seed");
  };
  auto expr_verb = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("expr", o.expr, "dilator expression")->required();
    common(c);
    return c;
  };
  expr_verb("classify", "type of a dilator and its predecessor data");
  expr_verb("decompose", "connected components");
  expr_verb("enum", "elements of D(n)")->add_option("--n", o.n, "size of the finite order");
  for (const char* v : {"jeval", "jprime", "jplus"})
    expr_verb(v, "evaluate J, J' or J+ at --gamma")->add_flag("--steps", o.steps, "include the recursion steps");
  expr_verb("psi-enum", "terms of psi D^gamma up to --depth");
  expr_verb("psi-otp", "order type of psi D^gamma by the clause recursion");
  CLI::App* cmp = app.add_subcommand("compare", "compare two ordinals");
  cmp->add_option("a", o.expr)->required();
  cmp->add_option("b", o.expr2)->required();
  common(cmp);
  CLI::App* check = app.add_subcommand("check", "run a named check suite, or all");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  check->add_option("suite", o.suite)->required()->check(CLI::IsMember(allowed));
  common(check);
  CLI::App* run = app.add_subcommand("run", "run a scenario file, one command per line");
  run->add_option("--file", o.file)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  o.verb = app.get_subcommands().front()->get_name();
  if (o.verb == "run") return run_file(o, out, err);

  json report;
  report["verb"] = o.verb;
  report["inputs"] = json::object();
  std::ostringstream text;
  int code = kExitOk;
  try {
    code = execute(o, report, text);
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    json ej{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    if (auto lb = lower_bound_of(e)) ej["lowerBound"] = lb->str();
    report.erase("value");
    report.erase("result");
    report["error"] = ej;
    if (!json_mode(o)) {
      out << text.str();
      err << error_kind_name(e.kind()) << ": " << e.what();
      if (auto lb = lower_bound_of(e)) err << " (lower bound " << lb->str() << ")";
      err << "\n";
      return code;
    }
  }
  if (json_mode(o)) out << report.dump(2) << "\n";
  else out << text.str();
  return code;
}

}  // namespace artifact
