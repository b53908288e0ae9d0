#include "artifact/dilator.hpp"

#include <cctype>

namespace artifact {

namespace {

std::shared_ptr<DNode> make(DKind k) {
  auto n = std::make_shared<DNode>();
  n->kind = k;
  return n;
}

std::string wrap_sum(const Dil& d) {
  return d->kind == DKind::Sum ? "(" + d->key + ")" : d->key;
}

Dil finish(std::shared_ptr<DNode> n) {
  switch (n->kind) {
    case DKind::Zero: n->key = "0"; break;
    case DKind::One: n->key = "1"; break;
    case DKind::Const: n->key = "Const(" + n->ord.str() + ")"; break;
    case DKind::Id: n->key = "Id"; break;
    case DKind::Sum: n->key = wrap_sum(n->a) + "+" + n->b->key; break;
    case DKind::MulNat: n->key = wrap_sum(n->a) + "*" + std::to_string(n->n); break;
    case DKind::MulOmega: n->key = wrap_sum(n->a) + "*w"; break;
    case DKind::OmegaComp: n->key = "omega[" + n->a->key + "]"; break;
    case DKind::OmegaHead: n->key = "head[" + n->a->key + "]"; break;
    case DKind::Shift: n->key = "shift(" + n->a->key + "," + n->ord.str() + ")"; break;
    case DKind::Sep: n->key = "sep(" + n->a->key + "," + n->ord.str() + ")"; break;
    case DKind::SepMinus: n->key = "sepminus(" + n->a->key + "," + n->ord.str() + ")"; break;
    case DKind::SepPlus: n->key = "sepplus(" + n->a->key + "," + n->ord.str() + ")"; break;
  }
  return n;
}

Dil unary(DKind k, Dil b) {
  auto n = make(k);
  n->a = std::move(b);
  return finish(n);
}

Dil param(DKind k, Dil b, const Ordinal& g) {
  auto n = make(k);
  n->a = std::move(b);
  n->ord = g;
  return finish(n);
}

}  // namespace

namespace dil {
Dil zero() {
  static const Dil z = finish(make(DKind::Zero));
  return z;
}
Dil one() {
  static const Dil o = finish(make(DKind::One));
  return o;
}
Dil constant(const Ordinal& a) {
  auto n = make(DKind::Const);
  n->ord = a;
  return finish(n);
}
Dil id() {
  static const Dil i = finish(make(DKind::Id));
  return i;
}
Dil sum(Dil l, Dil r) {
  auto n = make(DKind::Sum);
  n->a = std::move(l);
  n->b = std::move(r);
  return finish(n);
}
Dil mul_nat(Dil b, std::uint64_t k) {
  auto n = make(DKind::MulNat);
  n->a = std::move(b);
  n->n = k;
  return finish(n);
}
Dil mul_omega(Dil b) { return unary(DKind::MulOmega, std::move(b)); }
Dil omega(Dil b) { return unary(DKind::OmegaComp, std::move(b)); }
Dil head(Dil b) { return unary(DKind::OmegaHead, std::move(b)); }
Dil shift(Dil b, const Ordinal& g) { return param(DKind::Shift, std::move(b), g); }
Dil sep(Dil b, const Ordinal& g) { return param(DKind::Sep, std::move(b), g); }
Dil sep_minus(Dil b, const Ordinal& g) { return param(DKind::SepMinus, std::move(b), g); }
Dil sep_plus(Dil b, const Ordinal& g) { return param(DKind::SepPlus, std::move(b), g); }
}  // namespace dil

const std::string& to_string(const Dil& d) { return d->key; }
bool same(const Dil& a, const Dil& b) { return a == b || a->key == b->key; }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class DilParser {
 public:
  explicit DilParser(std::string_view s) : s_(s) {}

  Dil parse_all() {
    Dil d = parse_sum();
    skip();
    if (i_ != s_.size()) fail("'+', '*' or end of input");
    return d;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& expected) {
    throw Error(ErrorKind::ParseError,
                "dilator parse error at position " + std::to_string(i_) + ": expected " + expected);
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) == w) {
      std::size_t j = i_ + w.size();
      // Keywords must not run into a following identifier character.
      if (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j])) &&
          std::isalnum(static_cast<unsigned char>(w.back())))
        return false;
      i_ = j;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("'") + c + "'");
  }
  std::uint64_t parse_nat() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("digit");
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("a smaller number");
      v = v * 10 + static_cast<std::uint64_t>(s_[i_] - '0');
      ++i_;
    }
    return v;
  }
  // Ordinal text up to the first ',' or ')' outside parentheses.
  Ordinal parse_ord() {
    skip();
    std::size_t start = i_;
    int depth = 0;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++i_;
    }
    try {
      return Ordinal::parse(s_.substr(start, i_ - start));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError,
                  std::string(e.what()) + " (inside ordinal starting at position " + std::to_string(start) + ")");
    }
  }
  Dil parse_sum() {
    Dil d = parse_postfix();
    while (eat('+')) d = dil::sum(d, parse_postfix());
    return d;
  }
  Dil parse_postfix() {
    Dil d = parse_primary();
    while (eat('*')) {
      skip();
      if (eat_word("w"))
        d = dil::mul_omega(d);
      else {
        std::uint64_t k = parse_nat();
        if (k == 0) fail("positive multiplier");
        d = dil::mul_nat(d, k);
      }
    }
    return d;
  }
  Dil parse_param(DKind k) {
    expect('(');
    Dil b = parse_sum();
    expect(',');
    Ordinal g = parse_ord();
    expect(')');
    return param(k, b, g);
  }
  Dil parse_primary() {
    skip();
    if (eat_word("Id")) return dil::id();
    if (eat_word("Const")) {
      expect('(');
      Ordinal a = parse_ord();
      expect(')');
      return dil::constant(a);
    }
    if (eat_word("omega")) {
      expect('[');
      Dil b = parse_sum();
      expect(']');
      return dil::omega(b);
    }
    if (eat_word("head")) {
      expect('[');
      Dil b = parse_sum();
      expect(']');
      return dil::head(b);
    }
    if (eat_word("shift")) return parse_param(DKind::Shift);
    if (eat_word("sepminus")) return parse_param(DKind::SepMinus);
    if (eat_word("sepplus")) return parse_param(DKind::SepPlus);
    if (eat_word("sep")) return parse_param(DKind::Sep);
    if (eat('(')) {
      Dil d = parse_sum();
      expect(')');
      return d;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::uint64_t k = parse_nat();
      if (k == 0) return dil::zero();
      if (k == 1) return dil::one();
      return dil::constant(Ordinal::nat(k));
    }
    fail("one of '0', '1', 'Id', 'Const(', 'omega[', 'head[', 'shift(', 'sep(', 'sepminus(', 'sepplus(', '('");
  }
};

}  // namespace

Dil parse_dilator_raw(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "dilator parse error at position 0: empty input");
  return DilParser(text).parse_all();
}

Dil parse_dilator(std::string_view text) { return normalize(parse_dilator_raw(text)); }

// ---------------------------------------------------------------------------
// Normalization

std::optional<Ordinal> const_value(const Dil& d) {
  switch (d->kind) {
    case DKind::Zero: return Ordinal();
    case DKind::One: return Ordinal::nat(1);
    case DKind::Const: return d->ord;
    default: return std::nullopt;
  }
}

namespace {

Dil const_dil(const Ordinal& a) {
  if (a.is_zero()) return dil::zero();
  if (a == Ordinal::nat(1)) return dil::one();
  return dil::constant(a);
}

void flatten_into(const Dil& d, std::vector<Dil>& out) {
  if (d->kind == DKind::Sum) {
    flatten_into(d->a, out);
    flatten_into(d->b, out);
  } else if (d->kind != DKind::Zero) {
    out.push_back(d);
  }
}

Dil norm_mul_nat(const Dil& b, std::uint64_t k) {
  if (k == 0 || b->kind == DKind::Zero) return dil::zero();
  if (k == 1) return b;
  if (auto c = const_value(b)) return const_dil(c->mul_nat(k));
  if (b->kind == DKind::MulNat) {
    std::uint64_t m;
    if (__builtin_mul_overflow(b->n, k, &m)) throw Error(ErrorKind::OutOfNotation, "multiplier overflow");
    return dil::mul_nat(b->a, m);
  }
  return dil::mul_nat(b, k);
}

Dil norm_mul_omega(const Dil& b) {
  if (b->kind == DKind::Zero) return b;
  if (auto c = const_value(b)) return const_dil(c->mul_omega());
  return dil::mul_omega(b);
}

Dil norm_omega(const Dil& b) {
  if (auto c = const_value(b)) return const_dil(Ordinal::omega_pow(*c));
  return dil::omega(b);
}

Dil sep_plus_norm(const Dil& a, const Ordinal& g) {
  if (g.is_zero()) return a;
  if (a->kind == DKind::Id) return a;
  if (a->kind == DKind::SepPlus) return dil::sep_plus(a->a, a->ord + g);
  return dil::sep_plus(a, g);
}

Dil head_of(const TypeClass& c) {
  std::vector<Dil> items = summands(c.d0);
  items.push_back(c.last);
  return dil::head(build_sum(items));
}

}  // namespace

std::vector<Dil> summands(const Dil& d) {
  std::vector<Dil> out;
  flatten_into(d, out);
  return out;
}

Dil build_sum(const std::vector<Dil>& items) {
  std::vector<Dil> merged;
  for (const Dil& raw : items) {
    std::vector<Dil> parts;
    flatten_into(raw, parts);
    for (const Dil& d : parts) {
      auto c = const_value(d);
      if (c && !merged.empty()) {
        if (auto p = const_value(merged.back())) {
          merged.back() = const_dil(*p + *c);
          continue;
        }
      }
      merged.push_back(c ? const_dil(*c) : d);
    }
  }
  if (merged.empty()) return dil::zero();
  Dil r = merged.back();
  for (std::size_t i = merged.size() - 1; i-- > 0;) r = dil::sum(merged[i], r);
  return r;
}

Dil normalize(const Dil& d) {
  switch (d->kind) {
    case DKind::Zero:
    case DKind::One:
    case DKind::Id:
      return d;
    case DKind::Const: return const_dil(d->ord);
    case DKind::Sum: return build_sum({normalize(d->a), normalize(d->b)});
    case DKind::MulNat: return norm_mul_nat(normalize(d->a), d->n);
    case DKind::MulOmega: return norm_mul_omega(normalize(d->a));
    case DKind::OmegaComp: return norm_omega(normalize(d->a));
    case DKind::OmegaHead: {
      TypeClass c = classify(d->a);
      if (c.kind != TypeClass::Kind::BigOmega)
        throw Error(ErrorKind::NotTypeOmega, "head[...] needs a base of type Omega: " + d->a->key);
      return head_of(c);
    }
    case DKind::Shift: return shift(normalize(d->a), d->ord);
    case DKind::Sep: return sep(normalize(d->a), d->ord);
    case DKind::SepMinus: return sep_signed(normalize(d->a), d->ord).first;
    case DKind::SepPlus: return sep_signed(normalize(d->a), d->ord).second;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Classification

const char* type_kind_name(TypeClass::Kind k) {
  switch (k) {
    case TypeClass::Kind::Zero: return "0";
    case TypeClass::Kind::One: return "1";
    case TypeClass::Kind::Omega: return "omega";
    case TypeClass::Kind::BigOmega: return "Omega";
  }
  return "?";
}

std::string TypeClass::kind_name() const { return type_kind_name(kind); }

Dil TypeClass::fund(std::uint64_t k) const {
  if (kind != Kind::Omega) throw Error(ErrorKind::MalformedElement, "fundamental sequence of a non-limit type");
  return fund_seq(k);
}

Dil TypeClass::sep(const Ordinal& g) const {
  if (kind != Kind::BigOmega) throw Error(ErrorKind::NotTypeOmega, "separation needs type Omega: " + expr->key);
  return build_sum({d0, artifact::sep(last, g)});
}

namespace {

TypeClass classify_norm(const Dil& d);

TypeClass with_prefix(const Dil& prefix, TypeClass c, const Dil& whole) {
  c.expr = whole;
  switch (c.kind) {
    case TypeClass::Kind::Zero: return classify_norm(prefix);
    case TypeClass::Kind::One: c.pred = build_sum({prefix, c.pred}); break;
    case TypeClass::Kind::Omega: {
      auto inner = c.fund_seq;
      c.fund_seq = [prefix, inner](std::uint64_t k) { return build_sum({prefix, inner(k)}); };
      break;
    }
    case TypeClass::Kind::BigOmega: c.d0 = build_sum({prefix, c.d0}); break;
  }
  return c;
}

TypeClass classify_norm(const Dil& d) {
  TypeClass c;
  c.expr = d;
  switch (d->kind) {
    case DKind::Zero: return c;
    case DKind::One:
      c.kind = TypeClass::Kind::One;
      c.pred = dil::zero();
      return c;
    case DKind::Const:
      if (d->ord.is_successor()) {
        c.kind = TypeClass::Kind::One;
        c.pred = const_dil(d->ord.pred());
      } else {
        c.kind = TypeClass::Kind::Omega;
        Ordinal a = d->ord;
        c.fund_seq = [a](std::uint64_t k) { return const_dil(a.fund(k)); };
      }
      return c;
    case DKind::Id:
    case DKind::OmegaHead:
    case DKind::SepPlus:
      c.kind = TypeClass::Kind::BigOmega;
      c.d0 = dil::zero();
      c.last = d;
      return c;
    case DKind::Sum: {
      std::vector<Dil> items = summands(d);
      Dil last = items.back();
      items.pop_back();
      return with_prefix(build_sum(items), classify_norm(last), d);
    }
    case DKind::MulNat: {
      Dil prefix = norm_mul_nat(d->a, d->n - 1);
      return with_prefix(prefix, classify_norm(d->a), d);
    }
    case DKind::MulOmega: {
      c.kind = TypeClass::Kind::Omega;
      Dil b = d->a;
      c.fund_seq = [b](std::uint64_t k) { return norm_mul_nat(b, k); };
      return c;
    }
    case DKind::OmegaComp: {
      TypeClass cb = classify_norm(d->a);
      switch (cb.kind) {
        case TypeClass::Kind::Zero: {
          c.kind = TypeClass::Kind::One;
          c.pred = dil::zero();
          return c;
        }
        case TypeClass::Kind::One: {
          c.kind = TypeClass::Kind::Omega;
          Dil block = norm_omega(cb.pred);
          c.fund_seq = [block](std::uint64_t k) { return norm_mul_nat(block, k); };
          return c;
        }
        case TypeClass::Kind::Omega: {
          c.kind = TypeClass::Kind::Omega;
          auto inner = cb.fund_seq;
          c.fund_seq = [inner](std::uint64_t k) { return norm_omega(inner(k)); };
          return c;
        }
        case TypeClass::Kind::BigOmega:
          c.kind = TypeClass::Kind::BigOmega;
          c.d0 = norm_omega(cb.d0);
          c.last = head_of(cb);
          return c;
      }
      return c;
    }
    case DKind::Shift: {
      // Only atoms without a separation rule are left as raw shifts; the
      // shift of an atom splits into its minus and plus parts.
      if (!is_atom(d->a))
        throw Error(ErrorKind::UnsupportedSeparation, "no classification rule for " + d->key);
      c.kind = TypeClass::Kind::BigOmega;
      c.d0 = dil::sep_minus(d->a, d->ord);
      c.last = sep_plus_norm(d->a, d->ord);
      return c;
    }
    case DKind::Sep:
    case DKind::SepMinus:
      throw Error(ErrorKind::UnsupportedSeparation, "no classification rule for " + d->key);
  }
  return c;
}

}  // namespace

TypeClass classify(const Dil& d) { return classify_norm(normalize(d)); }

bool is_atom(const Dil& d) {
  return d->kind == DKind::Id || d->kind == DKind::OmegaHead || d->kind == DKind::SepPlus;
}

bool max_dominated(const Dil& a) {
  switch (a->kind) {
    case DKind::Id: return true;
    case DKind::SepPlus: return max_dominated(a->a);
    case DKind::OmegaHead: {
      TypeClass c = classify_norm(a->a);
      return c.kind == TypeClass::Kind::BigOmega && const_value(c.d0).has_value() && max_dominated(c.last);
    }
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Separation, shifts, splits

namespace {

Dil sep_atom(const Dil& e, const Ordinal& g) {
  if (max_dominated(e)) return const_dil(otp_symbolic(e, g));
  return dil::sep(e, g);
}

}  // namespace

Dil sep(const Dil& d, const Ordinal& g) {
  TypeClass c = classify(d);
  if (c.kind != TypeClass::Kind::BigOmega)
    throw Error(ErrorKind::NotTypeOmega, "separation needs type Omega, got type " + c.kind_name() + ": " + d->key);
  return build_sum({c.d0, sep_atom(c.last, g)});
}

Dil sep_normalized(const Dil& d, const Ordinal& g) {
  Dil r = sep(d, g);
  if (has_raw_sep(r))
    throw Error(ErrorKind::UnsupportedSeparation,
                "no separation rule for " + d->key + " at " + g.str() + " (atom is not max-dominated)");
  return r;
}

Dil shift(const Dil& d0, const Ordinal& g) {
  Dil d = normalize(d0);
  if (g.is_zero()) return d;
  switch (d->kind) {
    case DKind::Zero:
    case DKind::One:
    case DKind::Const:
      return d;
    case DKind::Id: return build_sum({const_dil(g), d});
    case DKind::Sum: {
      std::vector<Dil> items;
      for (const Dil& s : summands(d)) items.push_back(shift(s, g));
      return build_sum(items);
    }
    case DKind::MulNat: return norm_mul_nat(shift(d->a, g), d->n);
    case DKind::MulOmega: return norm_mul_omega(shift(d->a, g));
    case DKind::OmegaComp: return norm_omega(shift(d->a, g));
    case DKind::OmegaHead:
    case DKind::SepPlus:
      if (max_dominated(d)) return build_sum({const_dil(otp_symbolic(d, g)), sep_plus_norm(d, g)});
      return dil::shift(d, g);
    case DKind::Shift: return dil::shift(d->a, d->ord + g);
    case DKind::Sep:
    case DKind::SepMinus:
      return dil::shift(d, g);
  }
  return d;
}

std::pair<Dil, Dil> sep_signed(const Dil& d0, const Ordinal& g) {
  Dil d = normalize(d0);
  if (!is_atom(d)) throw Error(ErrorKind::NotConnected, "split needs a connected non-unit expression: " + d->key);
  if (g.is_zero()) return {dil::zero(), d};
  if (max_dominated(d)) return {const_dil(otp_symbolic(d, g)), sep_plus_norm(d, g)};
  return {dil::sep_minus(d, g), sep_plus_norm(d, g)};
}

std::pair<Dil, Dil> sep_signed_iter(const Dil& d, const std::vector<Ordinal>& gs) {
  if (gs.empty()) throw Error(ErrorKind::MalformedElement, "iterated split needs at least one parameter");
  Dil plus = normalize(d);
  for (std::size_t i = 0; i + 1 < gs.size(); ++i) plus = sep_signed(plus, gs[i]).second;
  return sep_signed(plus, gs.back());
}

bool has_raw_sep(const Dil& d) {
  if (d->kind == DKind::Sep || d->kind == DKind::SepMinus) return true;
  if (d->a && has_raw_sep(d->a)) return true;
  if (d->b && has_raw_sep(d->b)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Symbolic order types

Ordinal otp_symbolic(const Dil& d, const Ordinal& a) {
  switch (d->kind) {
    case DKind::Zero: return Ordinal();
    case DKind::One: return Ordinal::nat(1);
    case DKind::Const: return d->ord;
    case DKind::Id: return a;
    case DKind::Sum: return otp_symbolic(d->a, a) + otp_symbolic(d->b, a);
    case DKind::MulNat: return otp_symbolic(d->a, a).mul_nat(d->n);
    case DKind::MulOmega: return otp_symbolic(d->a, a).mul_omega();
    case DKind::OmegaComp: return Ordinal::omega_pow(otp_symbolic(d->a, a));
    case DKind::OmegaHead: {
      TypeClass c = classify(d->a);
      if (c.kind != TypeClass::Kind::BigOmega)
        throw Error(ErrorKind::NotTypeOmega, "head[...] needs a base of type Omega: " + d->a->key);
      Ordinal whole = Ordinal::omega_pow(otp_symbolic(d->a, a));
      return Ordinal::omega_pow(otp_symbolic(c.d0, a)).left_sub_or_zero(whole);
    }
    case DKind::Shift: return otp_symbolic(d->a, d->ord + a);
    case DKind::SepPlus:
      if (!max_dominated(d->a))
        throw Error(ErrorKind::UnsupportedOtp, "no order-type rule for " + d->key);
      return otp_symbolic(d->a, d->ord).left_sub_or_zero(otp_symbolic(d->a, d->ord + a));
    case DKind::SepMinus:
      if (!max_dominated(d->a))
        throw Error(ErrorKind::UnsupportedOtp, "no order-type rule for " + d->key);
      return otp_symbolic(d->a, d->ord);
    case DKind::Sep: {
      Dil n = sep(d->a, d->ord);
      if (has_raw_sep(n)) throw Error(ErrorKind::UnsupportedOtp, "no order-type rule for " + d->key);
      return otp_symbolic(n, a);
    }
  }
  return Ordinal();
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

void push_segments(std::vector<Segment>& out, const std::vector<Segment>& segs) {
  for (const Segment& s : segs) {
    if (s.kind == Segment::Kind::Units && !out.empty() && out.back().kind == Segment::Kind::Units) {
      out.back().count = out.back().count + s.count;
      continue;
    }
    out.push_back(s);
  }
}

std::vector<Segment> decompose_norm(const Dil& d) {
  std::vector<Segment> out;
  switch (d->kind) {
    case DKind::Zero: return out;
    case DKind::One:
    case DKind::Const: {
      Segment s;
      s.kind = Segment::Kind::Units;
      s.count = *const_value(d);
      out.push_back(s);
      return out;
    }
    case DKind::Id:
    case DKind::OmegaHead:
    case DKind::SepPlus: {
      Segment s;
      s.kind = Segment::Kind::Atom;
      s.expr = d;
      out.push_back(s);
      return out;
    }
    case DKind::Sum:
      for (const Dil& item : summands(d)) push_segments(out, decompose_norm(item));
      return out;
    case DKind::MulNat:
    case DKind::MulOmega: {
      Segment s;
      s.kind = Segment::Kind::Repeat;
      s.body = decompose_norm(d->a);
      s.count = d->kind == DKind::MulNat ? Ordinal::nat(d->n) : Ordinal::omega();
      out.push_back(s);
      return out;
    }
    case DKind::OmegaComp: {
      TypeClass cb = classify_norm(d->a);
      if (cb.kind == TypeClass::Kind::One) {
        Segment s;
        s.kind = Segment::Kind::Repeat;
        s.body = decompose_norm(norm_omega(cb.pred));
        s.count = Ordinal::omega();
        out.push_back(s);
        return out;
      }
      if (cb.kind == TypeClass::Kind::Omega) {
        Segment s;
        s.kind = Segment::Kind::Limit;
        s.expr = d;
        out.push_back(s);
        return out;
      }
      if (cb.kind == TypeClass::Kind::BigOmega) {
        push_segments(out, decompose_norm(norm_omega(cb.d0)));
        Segment s;
        s.kind = Segment::Kind::Atom;
        s.expr = head_of(cb);
        out.push_back(s);
        return out;
      }
      break;
    }
    default: break;
  }
  throw Error(ErrorKind::UnsupportedDecomposition, "no decomposition rule for " + d->key);
}

}  // namespace

std::vector<Segment> decompose(const Dil& d) { return decompose_norm(normalize(d)); }

Dil segments_expr(const std::vector<Segment>& segs) {
  std::vector<Dil> items;
  for (const Segment& s : segs) {
    switch (s.kind) {
      case Segment::Kind::Units: items.push_back(const_dil(s.count)); break;
      case Segment::Kind::Atom:
      case Segment::Kind::Limit: items.push_back(s.expr); break;
      case Segment::Kind::Repeat: {
        Dil body = segments_expr(s.body);
        items.push_back(s.count.is_finite() ? norm_mul_nat(body, s.count.to_nat()) : norm_mul_omega(body));
        break;
      }
    }
  }
  return build_sum(items);
}

namespace {

void expand(const std::vector<Segment>& segs, std::size_t k, std::vector<Dil>& out) {
  for (const Segment& s : segs) {
    if (out.size() >= k) return;
    switch (s.kind) {
      case Segment::Kind::Units: {
        std::uint64_t n = s.count.is_finite() ? s.count.to_nat() : k;
        for (std::uint64_t i = 0; i < n && out.size() < k; ++i) out.push_back(dil::one());
        break;
      }
      case Segment::Kind::Atom: out.push_back(s.expr); break;
      case Segment::Kind::Repeat: {
        std::uint64_t n = s.count.is_finite() ? s.count.to_nat() : k;
        for (std::uint64_t i = 0; i < n && out.size() < k; ++i) {
          std::size_t before = out.size();
          expand(s.body, k, out);
          if (out.size() == before) break;
        }
        break;
      }
      case Segment::Kind::Limit: {
        TypeClass c = classify_norm(s.expr);
        Dil approx = c.fund(k + 1);
        std::size_t room = k - out.size();
        for (const Dil& x : components_prefix(approx, room)) out.push_back(x);
        break;
      }
    }
  }
}

std::string segs_text(const std::vector<Segment>& segs) {
  std::string r;
  auto add = [&r](const std::string& s) {
    if (!r.empty()) r += ", ";
    r += s;
  };
  for (const Segment& s : segs) {
    switch (s.kind) {
      case Segment::Kind::Units:
        if (s.count.is_finite() && s.count.to_nat() <= 8) {
          for (std::uint64_t i = 0; i < s.count.to_nat(); ++i) add("1");
        } else {
          add("1 x " + s.count.str());
        }
        break;
      case Segment::Kind::Atom: add(s.expr->key); break;
      case Segment::Kind::Repeat: add("[" + segs_text(s.body) + "] x " + s.count.str()); break;
      case Segment::Kind::Limit: add("limit " + s.expr->key); break;
    }
  }
  return r;
}

}  // namespace

std::vector<Dil> components_prefix(const Dil& d, std::size_t k) {
  std::vector<Dil> out;
  expand(decompose(d), k, out);
  return out;
}

std::string segments_str(const std::vector<Segment>& segs) { return "[" + segs_text(segs) + "]"; }

}  // namespace artifact
