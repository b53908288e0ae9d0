#include "artifact/psi.hpp"

#include <algorithm>
#include <unordered_set>

namespace artifact {

Pos psi_pos(const PsiRef& t) { return Pos::at_point(0, t); }

const PsiTerm* psi_sub(const Pos& p) {
  if (!p.right) return nullptr;
  if (!p.ref) throw Error(ErrorKind::MalformedTerm, "right position without a sub-term");
  return static_cast<const PsiTerm*>(p.ref.get());
}

namespace {

Cmp term_cmp(const Dil& d, const PsiTerm& a, const PsiTerm& b);

PosCmp make_pos_cmp(const Dil& d) {
  return [d](const Pos& x, const Pos& y) {
    const PsiTerm* u = psi_sub(x);
    const PsiTerm* v = psi_sub(y);
    if (u == v || u->key == v->key) return 0;
    Cmp c = term_cmp(d, *u, *v);
    return c == Cmp::Less ? -1 : (c == Cmp::Greater ? 1 : 0);
  };
}

Cmp term_cmp(const Dil& d, const PsiTerm& a, const PsiTerm& b) {
  if (&a == &b || a.key == b.key) return Cmp::Equal;
  return compare_elements(d, a.elem, b.elem, make_pos_cmp(d));
}

std::string print_pos(const Pos& p) {
  if (!p.right) return "L" + p.left.str();
  return "{" + psi_sub(p)->key + "}";
}

}  // namespace

PsiOrder::PsiOrder(Dil d, Ordinal gamma, Budget budget, bool keep_raw)
    : d_(keep_raw ? d : normalize(d)), gamma_(std::move(gamma)), budget_(budget) {}

Cmp PsiOrder::cmp(const PsiTerm& a, const PsiTerm& b) const { return term_cmp(d_, a, b); }

PosCmp PsiOrder::pos_cmp() const { return make_pos_cmp(d_); }

PsiRef PsiOrder::make(Elem e) const {
  auto t = std::make_shared<PsiTerm>();
  t->elem = std::move(e);
  t->key = elem_str(d_, t->elem, print_pos);
  for (const Pos& p : support_of(d_, t->elem, pos_cmp())) t->depth = std::max(t->depth, psi_sub(p)->depth + 1);
  return t;
}

Ambient PsiOrder::ambient(const std::vector<PsiRef>& universe) const {
  Ambient a;
  a.left_bound = gamma_;
  a.left_sample = sample_below(gamma_, budget_.left);
  for (const PsiRef& u : universe) a.right.push_back(psi_pos(u));
  a.right_cmp = pos_cmp();
  return a;
}

bool PsiOrder::valid(const PsiTerm& t) const {
  Ambient amb;
  amb.left_bound = gamma_;
  amb.right_cmp = pos_cmp();
  Budget b = budget_;
  if (!well_formed(d_, t.elem, amb, b)) return false;
  for (const Pos& p : support_of(d_, t.elem, amb.right_cmp)) {
    const PsiTerm* u = psi_sub(p);
    if (!valid(*u) || cmp(*u, t) != Cmp::Less) return false;
  }
  return true;
}

bool psi_term_valid(const PsiOrder& o, const PsiTerm& t) { return o.valid(t); }

Cmp psi_cmp(const PsiOrder& o, const PsiTerm& a, const PsiTerm& b) { return o.cmp(a, b); }

std::string psi_term_str(const PsiOrder&, const PsiTerm& t) { return t.key; }

namespace {

// Terms over the universe that are new, within the depth bound and below
// none of their sub-terms.
std::vector<PsiRef> fresh_terms(const PsiOrder& o, const std::vector<PsiRef>& universe,
                                const std::unordered_set<std::string>& known, std::size_t depth) {
  std::vector<PsiRef> out;
  std::unordered_set<std::string> seen;
  for (Elem& e : enumerate(o.dilator(), o.ambient(universe), o.budget())) {
    PsiRef t = o.make(std::move(e));
    if (t->depth > depth || known.count(t->key) || !seen.insert(t->key).second) continue;
    bool ok = true;
    for (const Pos& p : support_of(o.dilator(), t->elem, o.pos_cmp()))
      ok = ok && o.cmp(*psi_sub(p), *t) == Cmp::Less;
    if (ok) out.push_back(t);
  }
  return out;
}

void sort_terms(const PsiOrder& o, std::vector<PsiRef>& v) {
  std::sort(v.begin(), v.end(), [&](const PsiRef& a, const PsiRef& b) { return o.cmp(*a, *b) == Cmp::Less; });
}

}  // namespace

std::vector<PsiRef> psi_enum(const PsiOrder& o, std::size_t depth, PsiStrategy s, std::uint64_t seed) {
  std::vector<PsiRef> universe;
  std::unordered_set<std::string> known;
  if (s == PsiStrategy::Levels) {
    for (std::size_t level = 1; level <= depth; ++level) {
      std::vector<PsiRef> fresh = fresh_terms(o, universe, known, level);
      if (fresh.empty()) break;
      for (const PsiRef& t : fresh) {
        known.insert(t->key);
        universe.push_back(t);
      }
      if (universe.size() > o.budget().cap) throw Error(ErrorKind::BudgetExceeded, "psi enumeration exceeds the cap");
      sort_terms(o, universe);
    }
    return universe;
  }
  std::mt19937_64 rng(seed);
  while (true) {
    std::vector<PsiRef> fresh = fresh_terms(o, universe, known, depth);
    if (fresh.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, fresh.size() - 1);
    PsiRef t = fresh[pick(rng)];
    known.insert(t->key);
    universe.push_back(t);
    if (universe.size() > o.budget().cap) throw Error(ErrorKind::BudgetExceeded, "psi enumeration exceeds the cap");
    sort_terms(o, universe);
  }
  return universe;
}

// ---------------------------------------------------------------------------
// Order types by the clause recursion

namespace {

constexpr std::size_t kLimitSamples = 7;
constexpr std::uint64_t kMaxCopies = 10000;

Ordinal psi_otp(const Dil& raw, const Ordinal& g, std::size_t& budget);

Ordinal connected_otp(const Dil& atom, const Ordinal& g, std::size_t& budget) {
  std::vector<Ordinal> gs{g};
  std::vector<Ordinal> partial{Ordinal()};
  for (std::size_t n = 0; n + 1 < kLimitSamples; ++n) {
    Ordinal next = psi_otp(sep_signed_iter(atom, gs).first, Ordinal(), budget);
    partial.push_back(partial.back() + next);
    gs.push_back(next);
  }
  return sup_of_iterates(partial, nullptr);
}

Ordinal psi_otp(const Dil& raw, const Ordinal& g, std::size_t& budget) {
  if (budget-- == 0) throw Error(ErrorKind::DepthExceeded, "psi clause recursion exceeded its step budget");
  Dil d = normalize(raw);
  if (auto c = const_value(d)) return *c;
  if (d->kind == DKind::Sum) {
    Ordinal acc;
    for (const Dil& item : summands(d)) acc = acc + psi_otp(item, g + acc, budget);
    return acc;
  }
  if (is_atom(d)) return connected_otp(d, g, budget);
  TypeClass tc = classify(d);
  switch (tc.kind) {
    case TypeClass::Kind::Zero: return Ordinal();
    case TypeClass::Kind::One: return psi_otp(tc.pred, g, budget) + Ordinal::nat(1);
    case TypeClass::Kind::Omega: {
      std::vector<Ordinal> vals;
      if (d->kind == DKind::MulOmega) {
        // psi(B*(k+1)) = psi(B*k) + psi(B) over the shifted parameter.
        vals.push_back(Ordinal());
        for (std::size_t k = 1; k < kLimitSamples; ++k)
          vals.push_back(vals.back() + psi_otp(d->a, g + vals.back(), budget));
      } else {
        for (std::size_t k = 0; k < kLimitSamples; ++k) vals.push_back(psi_otp(tc.fund(k), g, budget));
      }
      return sup_of_iterates(vals, nullptr);
    }
    case TypeClass::Kind::BigOmega: {
      if (d->kind == DKind::MulNat && d->n > kMaxCopies)
        throw Error(ErrorKind::DepthExceeded, "too many copies for the sum clause");
      Ordinal a = psi_otp(tc.d0, g, budget);
      return a + psi_otp(tc.last, g + a, budget);
    }
  }
  return Ordinal();
}

}  // namespace

Ordinal psi_clause_otp(const Dil& d, const Ordinal& gamma) {
  std::size_t budget = 100000;
  return psi_otp(d, gamma, budget);
}

std::vector<Ordinal> psi_split_sequence(const Dil& atom, const Ordinal& gamma, std::size_t count) {
  std::size_t budget = 100000;
  std::vector<Ordinal> gs{gamma};
  for (std::size_t n = 0; n < count; ++n) gs.push_back(psi_otp(sep_signed_iter(atom, gs).first, Ordinal(), budget));
  return gs;
}

}  // namespace artifact
