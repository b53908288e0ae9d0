#include "artifact/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace artifact {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedLimit: return "UnsupportedLimit";
    case ErrorKind::OutOfNotation: return "OutOfNotation";
    case ErrorKind::UnsupportedSeparation: return "UnsupportedSeparation";
    case ErrorKind::UnsupportedClassification: return "UnsupportedClassification";
    case ErrorKind::UnsupportedOtp: return "UnsupportedOtp";
    case ErrorKind::UnsupportedDecomposition: return "UnsupportedDecomposition";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotTypeOmega: return "NotTypeOmega";
    case ErrorKind::NoUniqueIndex: return "NoUniqueIndex";
    case ErrorKind::MalformedElement: return "MalformedElement";
    case ErrorKind::MalformedTerm: return "MalformedTerm";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::EnumerationShortfall: return "EnumerationShortfall";
    case ErrorKind::GuardViolation: return "GuardViolation";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::Usage: return "Usage";
  }
  return "Error";
}

bool is_unsupported(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedLimit:
    case ErrorKind::OutOfNotation:
    case ErrorKind::UnsupportedSeparation:
    case ErrorKind::UnsupportedClassification:
    case ErrorKind::UnsupportedOtp:
    case ErrorKind::UnsupportedDecomposition:
      return true;
    default:
      return false;
  }
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::OutOfNotation, "coefficient overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::OutOfNotation, "coefficient overflow");
  return r;
}

std::shared_ptr<const Ordinal> share(const Ordinal& a) {
  return std::make_shared<const Ordinal>(a);
}

}  // namespace

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back({share(Ordinal()), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e) { return monomial(e, 1); }

Ordinal Ordinal::monomial(const Ordinal& e, std::uint64_t c) {
  Ordinal r;
  if (c > 0) r.terms_.push_back({share(e), c});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coef == 0 || !terms[i].exp)
      throw Error(ErrorKind::MalformedElement, "bad CNF term");
    if (i > 0 && !(*terms[i].exp < *terms[i - 1].exp))
      throw Error(ErrorKind::MalformedElement, "CNF exponents not descending");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp->is_zero());
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exp->is_zero();
}

bool Ordinal::is_limit() const { return !terms_.empty() && !is_successor(); }

bool Ordinal::is_principal() const {
  return terms_.size() == 1 && terms_[0].coef == 1;
}

std::uint64_t Ordinal::to_nat() const {
  if (!is_finite()) throw Error(ErrorKind::MalformedElement, "not a natural number");
  return terms_.empty() ? 0 : terms_[0].coef;
}

Ordinal Ordinal::lead_exp() const {
  return terms_.empty() ? Ordinal() : *terms_[0].exp;
}

std::uint64_t Ordinal::lead_coef() const {
  return terms_.empty() ? 0 : terms_[0].coef;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[i];
    if (a.exp != b.exp) {
      auto c = *a.exp <=> *b.exp;
      if (c != 0) return c;
    }
    if (a.coef != b.coef) return a.coef <=> b.coef;
  }
  return terms_.size() <=> o.terms_.size();
}

bool Ordinal::operator==(const Ordinal& o) const { return (*this <=> o) == 0; }

Ordinal Ordinal::operator+(const Ordinal& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  const Ordinal& e = *o.terms_[0].exp;
  Ordinal r;
  std::size_t i = 0;
  while (i < terms_.size() && *terms_[i].exp > e) r.terms_.push_back(terms_[i++]);
  Term head = o.terms_[0];
  if (i < terms_.size() && *terms_[i].exp == e) head.coef = checked_add(head.coef, terms_[i].coef);
  r.terms_.push_back(head);
  for (std::size_t j = 1; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Ordinal Ordinal::mul_nat(std::uint64_t n) const {
  if (n == 0 || terms_.empty()) return Ordinal();
  Ordinal r = *this;
  r.terms_[0].coef = checked_mul(r.terms_[0].coef, n);
  return r;
}

Ordinal Ordinal::mul_omega() const {
  if (terms_.empty()) return Ordinal();
  return omega_pow(lead_exp() + nat(1));
}

Ordinal Ordinal::operator*(const Ordinal& o) const {
  if (terms_.empty() || o.terms_.empty()) return Ordinal();
  Ordinal r;
  const Ordinal e = lead_exp();
  for (const Term& t : o.terms_) {
    if (t.exp->is_zero())
      r = r + mul_nat(t.coef);
    else
      r = r + monomial(e + *t.exp, t.coef);
  }
  return r;
}

Ordinal Ordinal::pred() const {
  if (!is_successor()) throw Error(ErrorKind::MalformedElement, "pred of non-successor");
  Ordinal r = *this;
  if (r.terms_.back().coef == 1)
    r.terms_.pop_back();
  else
    r.terms_.back().coef -= 1;
  return r;
}

std::optional<Ordinal> Ordinal::left_sub(const Ordinal& b) const {
  std::size_t i = 0;
  while (i < terms_.size() && i < b.terms_.size() && *terms_[i].exp == *b.terms_[i].exp &&
         terms_[i].coef == b.terms_[i].coef)
    ++i;
  Ordinal r;
  if (i == terms_.size()) {
    r.terms_.assign(b.terms_.begin() + static_cast<std::ptrdiff_t>(i), b.terms_.end());
    return r;
  }
  if (i == b.terms_.size()) return std::nullopt;
  const Term& x = terms_[i];
  const Term& y = b.terms_[i];
  auto c = *x.exp <=> *y.exp;
  if (c > 0) return std::nullopt;
  if (c == 0) {
    if (x.coef > y.coef) return std::nullopt;
    r.terms_.push_back({y.exp, y.coef - x.coef});
  } else {
    r.terms_.push_back(y);
  }
  for (std::size_t j = i + 1; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

Ordinal Ordinal::left_sub_or_zero(const Ordinal& b) const {
  auto r = left_sub(b);
  return r ? *r : Ordinal();
}

std::pair<Ordinal, Ordinal> Ordinal::divmod(const Ordinal& d) const {
  if (d.is_zero()) throw Error(ErrorKind::MalformedElement, "division by zero");
  const Ordinal e = d.lead_exp();
  Ordinal q;
  Ordinal low;
  for (const Term& t : terms_) {
    if (*t.exp > e)
      q = q + monomial(*e.left_sub(*t.exp), t.coef);
    else
      low.terms_.push_back(t);
  }
  std::uint64_t k = 0;
  if (!low.is_zero() && low.lead_exp() == e) {
    k = low.lead_coef() / d.lead_coef();
    while (k > 0 && d.mul_nat(k) > low) --k;
  }
  Ordinal rem = *d.mul_nat(k).left_sub(low);
  q = q + nat(k);
  return {q, rem};
}

Ordinal Ordinal::fund(std::uint64_t k) const {
  if (!is_limit()) throw Error(ErrorKind::MalformedElement, "fundamental sequence of non-limit");
  Ordinal prefix;
  prefix.terms_.assign(terms_.begin(), terms_.end() - 1);
  const Term& last = terms_.back();
  if (last.coef > 1) prefix.terms_.push_back({last.exp, last.coef - 1});
  const Ordinal& e = *last.exp;
  if (e.is_successor()) return prefix + monomial(e.pred(), k);
  return prefix + omega_pow(e.fund(k));
}

namespace {

std::string exp_str(const Ordinal& e);

std::string term_str(const Ordinal& e, std::uint64_t c) {
  if (e.is_zero()) return std::to_string(c);
  std::string s = "w";
  if (!(e == Ordinal::nat(1))) s += "^" + exp_str(e);
  if (c > 1) s += "*" + std::to_string(c);
  return s;
}

std::string exp_str(const Ordinal& e) {
  if (e.is_finite()) return std::to_string(e.to_nat());
  if (e.is_principal()) return term_str(e.lead_exp(), 1);
  return "(" + e.str() + ")";
}

class OrdParser {
 public:
  explicit OrdParser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal r = parse_sum();
    skip();
    if (i_ != s_.size()) fail("'+' or end of input");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& expected) {
    throw Error(ErrorKind::ParseError, "ordinal parse error at position " + std::to_string(i_) +
                                           ": expected " + expected);
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  std::uint64_t parse_nat() {
    if (!at_digit()) fail("digit");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(s_[i_] - '0'));
      ++i_;
    }
    return v;
  }
  Ordinal parse_sum() {
    Ordinal r = parse_term();
    while (eat('+')) r = r + parse_term();
    return r;
  }
  Ordinal parse_term() {
    if (at_digit()) return Ordinal::nat(parse_nat());
    if (!eat('w')) fail("one of 'w', digit");
    Ordinal e = Ordinal::nat(1);
    if (eat('^')) e = parse_atom();
    std::uint64_t c = 1;
    if (eat('*')) c = parse_nat();
    return Ordinal::monomial(e, c);
  }
  Ordinal parse_atom() {
    if (at_digit()) return Ordinal::nat(parse_nat());
    if (eat('(')) {
      Ordinal r = parse_sum();
      if (!eat(')')) fail("')'");
      return r;
    }
    if (!eat('w')) fail("one of 'w', digit, '('");
    Ordinal e = Ordinal::nat(1);
    if (eat('^')) e = parse_atom();
    return Ordinal::omega_pow(e);
  }
};

}  // namespace

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += "+";
    s += term_str(*terms_[i].exp, terms_[i].coef);
  }
  return s;
}

Ordinal Ordinal::parse(std::string_view text) { return OrdParser(text).parse_all(); }

Cmp ord_cmp(const Ordinal& a, const Ordinal& b) { return to_cmp(a <=> b); }

const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
  }
  return "?";
}

std::size_t OrdinalHash::operator()(const Ordinal& a) const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& t : a.terms()) {
    h ^= (*this)(*t.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>()(t.coef) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Limit patterns

LimitPattern LimitPattern::constant_increment(Ordinal start, Ordinal c) {
  if (c.is_zero()) throw Error(ErrorKind::UnsupportedLimit, "ConstantIncrement requires c > 0");
  LimitPattern p;
  p.kind = Kind::ConstantIncrement;
  p.start = std::move(start);
  p.increment = std::move(c);
  return p;
}

LimitPattern LimitPattern::affine_step(Ordinal start, Ordinal m, Ordinal a) {
  if (m.is_zero()) throw Error(ErrorKind::UnsupportedLimit, "AffineStep requires multiplier >= 1");
  LimitPattern p;
  p.kind = Kind::AffineStep;
  p.start = std::move(start);
  p.multiplier = std::move(m);
  p.addend = std::move(a);
  return p;
}

LimitPattern LimitPattern::unsupported(Ordinal start) {
  LimitPattern p;
  p.start = std::move(start);
  return p;
}

Ordinal LimitPattern::step(const Ordinal& x) const {
  switch (kind) {
    case Kind::ConstantIncrement: return x + increment;
    case Kind::AffineStep: return x * multiplier + addend;
    case Kind::Unsupported: break;
  }
  throw Error(ErrorKind::UnsupportedLimit, "no step map for an unsupported pattern");
}

std::string LimitPattern::str() const {
  switch (kind) {
    case Kind::ConstantIncrement:
      return "ConstantIncrement(" + increment.str() + ") from " + start.str();
    case Kind::AffineStep:
      return "AffineStep(" + multiplier.str() + ", " + addend.str() + ") from " + start.str();
    case Kind::Unsupported: break;
  }
  return "Unsupported";
}

Ordinal ord_sup_solve(const LimitPattern& p) {
  const Ordinal one = Ordinal::nat(1);
  switch (p.kind) {
    case LimitPattern::Kind::Unsupported:
      throw Error(ErrorKind::UnsupportedLimit, "increment pattern outside the supported family");
    case LimitPattern::Kind::ConstantIncrement:
      return p.start + p.increment.mul_omega();
    case LimitPattern::Kind::AffineStep: {
      if (p.multiplier == one) return p.addend.is_zero() ? p.start : p.start + p.addend.mul_omega();
      const Ordinal a_lead = p.addend.lead_exp();
      Ordinal x = p.start;
      // Once the leading exponent of x dominates the addend, a finite
      // multiplier only grows the leading coefficient and an infinite one
      // raises the leading exponent by lead(m) per step.
      for (int i = 0; i < 8; ++i) {
        if (x.is_zero() && p.addend.is_zero()) return x;
        if (!x.is_zero() && x.lead_exp() >= a_lead) {
          if (p.multiplier.is_finite()) return Ordinal::omega_pow(x.lead_exp() + one);
          const Ordinal m_lead = p.multiplier.lead_exp();
          return Ordinal::omega_pow(x.lead_exp() + m_lead.mul_omega());
        }
        x = p.step(x);
      }
      throw Error(ErrorKind::UnsupportedLimit, "affine iteration did not stabilize");
    }
  }
  throw Error(ErrorKind::UnsupportedLimit, "unknown pattern kind");
}

namespace {

bool fits(const LimitPattern& p, const std::vector<Ordinal>& v, std::size_t k0) {
  try {
    for (std::size_t k = k0; k + 1 < v.size(); ++k)
      if (!(p.step(v[k]) == v[k + 1])) return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::optional<LimitPattern> fit_from(const std::vector<Ordinal>& v, std::size_t k0) {
  const Ordinal& a = v[k0];
  const Ordinal& b = v[k0 + 1];
  bool constant = true;
  for (std::size_t k = k0; k < v.size(); ++k) constant = constant && v[k] == a;
  if (constant) return LimitPattern::affine_step(a, Ordinal::nat(1), Ordinal());
  if (auto c = a.left_sub(b); c && !c->is_zero()) {
    auto p = LimitPattern::constant_increment(a, *c);
    if (fits(p, v, k0)) return p;
  }
  std::vector<Ordinal> mults;
  for (std::uint64_t m = 2; m <= 64; ++m) mults.push_back(Ordinal::nat(m));
  if (!a.is_zero() && !b.is_zero()) {
    if (auto p = a.lead_exp().left_sub(b.lead_exp()); p && !p->is_zero())
      for (std::uint64_t c = 1; c <= 8; ++c) mults.push_back(Ordinal::monomial(*p, c));
  }
  for (const Ordinal& m : mults) {
    try {
      auto add = (a * m).left_sub(b);
      if (!add) continue;
      auto p = LimitPattern::affine_step(a, m, *add);
      if (fits(p, v, k0)) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace

LimitPattern detect_limit_pattern(const std::vector<Ordinal>& values) {
  if (values.size() < 4) return LimitPattern::unsupported(values.empty() ? Ordinal() : values[0]);
  for (std::size_t k0 = 0; k0 + 4 <= values.size(); ++k0)
    if (auto p = fit_from(values, k0)) return *p;
  return LimitPattern::unsupported(values[0]);
}

bool escapes_notation(const std::vector<Ordinal>& values) {
  if (values.size() < 4) return false;
  for (std::size_t k = values.size() - 3; k + 1 < values.size(); ++k) {
    if (values[k].is_zero()) return false;
    if (values[k + 1].lead_exp() < values[k]) return false;
  }
  return true;
}

Ordinal sup_of_iterates(const std::vector<Ordinal>& values, LimitPattern* used) {
  LimitPattern p = detect_limit_pattern(values);
  if (used) *used = p;
  if (p.kind == LimitPattern::Kind::Unsupported) {
    if (escapes_notation(values))
      throw Error(ErrorKind::OutOfNotation, "iterates grow like x -> w^x; the limit is not below epsilon_0");
    throw Error(ErrorKind::UnsupportedLimit, "iterates fit no supported increment pattern");
  }
  Ordinal s = ord_sup_solve(p);
  for (const Ordinal& v : values)
    if (v > s) throw Error(ErrorKind::UnsupportedLimit, "detected pattern does not bound the iterates");
  return s;
}

std::vector<Ordinal> sample_below(const Ordinal& bound, std::size_t count) {
  if (count == 0 || bound.is_zero()) return {};
  if (bound.is_finite()) {
    std::vector<Ordinal> r;
    for (std::uint64_t k = 0; k < std::min<std::uint64_t>(bound.to_nat(), count); ++k)
      r.push_back(Ordinal::nat(k));
    return r;
  }
  const Ordinal w = Ordinal::omega();
  const std::vector<Ordinal> small = {Ordinal(),      Ordinal::nat(1), Ordinal::nat(2), w,
                                      w + Ordinal::nat(1), w.mul_nat(2), Ordinal::omega_pow(Ordinal::nat(2)),
                                      Ordinal::omega_pow(w)};
  std::vector<Ordinal> marks;
  Ordinal prefix;
  for (const auto& t : bound.terms()) {
    for (std::uint64_t j = 0; j < t.coef && j < 3; ++j)
      marks.push_back(prefix + Ordinal::monomial(*t.exp, j));
    prefix = prefix + Ordinal::monomial(*t.exp, t.coef);
  }
  if (bound.is_limit())
    for (std::uint64_t k = 1; k <= 2; ++k) marks.push_back(bound.fund(k));
  std::set<Ordinal> cand;
  for (const auto& m : marks)
    for (const auto& s : small) {
      Ordinal x = m + s;
      if (x < bound) cand.insert(x);
    }
  std::vector<Ordinal> nats, rest;
  for (const auto& x : cand) (x.is_finite() ? nats : rest).push_back(x);
  std::size_t n_nat = std::min(nats.size(), rest.empty() ? count : (count + 1) / 2);
  std::vector<Ordinal> r(nats.begin(), nats.begin() + static_cast<std::ptrdiff_t>(n_nat));
  std::size_t want = count > n_nat ? count - n_nat : 0;
  if (rest.size() <= want) {
    r.insert(r.end(), rest.begin(), rest.end());
  } else if (want > 0) {
    for (std::size_t i = 0; i < want; ++i) {
      std::size_t idx = want == 1 ? rest.size() - 1 : i * (rest.size() - 1) / (want - 1);
      r.push_back(rest[idx]);
    }
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace artifact
