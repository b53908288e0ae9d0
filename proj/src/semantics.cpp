#include "artifact/semantics.hpp"

#include <algorithm>

namespace artifact {

namespace {

struct SepParts {
  Dil d0;
  Dil atom;
};

SepParts sep_parts(const Dil& d) {
  TypeClass c = classify(d->a);
  if (c.kind != TypeClass::Kind::BigOmega)
    throw Error(ErrorKind::NotTypeOmega, "separation needs type Omega: " + d->a->key);
  return {c.d0, c.last};
}

// Whether an element of the canonical head base B = d0 + E lies in E.
bool in_last_component(const Dil& b, const Elem& e) {
  if (b->kind == DKind::Sum) return e.tag == 1 && in_last_component(b->b, e.kids.at(0));
  if (is_atom(b)) return true;
  throw Error(ErrorKind::MalformedElement, "head base is not in canonical form: " + b->key);
}

const Elem& kid(const Elem& e) {
  if (e.kids.size() != 1) throw Error(ErrorKind::MalformedElement, "element has no inner part");
  return e.kids[0];
}

bool absorbed(const Pos& p, const Ordinal& g) { return !p.right && p.left < g; }

Pos to_outer(const Pos& p, const Ordinal& g) {
  if (p.right) return p;
  return Pos::at_left(*g.left_sub(p.left));
}

Pos to_inner(const Pos& p, const Ordinal& g) {
  if (p.right) return p;
  return Pos::at_left(g + p.left);
}

std::string pos_str(const Pos& p) {
  if (!p.right) return "L" + p.left.str();
  return "x" + std::to_string(p.point);
}

}  // namespace

int compare_pos(const Pos& a, const Pos& b, const PosCmp& rc) {
  if (!a.right && !b.right) {
    auto c = a.left <=> b.left;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (!a.right) return -1;
  if (!b.right) return 1;
  if (rc) return rc(a, b);
  return a.point < b.point ? -1 : (a.point > b.point ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Comparison

Cmp compare_elements(const Dil& d, const Elem& x, const Elem& y, const PosCmp& rc) {
  switch (d->kind) {
    case DKind::Zero: throw Error(ErrorKind::MalformedElement, "the zero dilator has no elements");
    case DKind::One: return Cmp::Equal;
    case DKind::Const: return ord_cmp(x.idx, y.idx);
    case DKind::Id: {
      int c = compare_pos(x.pos, y.pos, rc);
      return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
    }
    case DKind::Sum:
    case DKind::MulNat:
    case DKind::MulOmega:
      if (x.tag != y.tag) return x.tag < y.tag ? Cmp::Less : Cmp::Greater;
      return compare_elements(d->kind == DKind::Sum && x.tag == 1 ? d->b : d->a, kid(x), kid(y), rc);
    case DKind::OmegaComp:
    case DKind::OmegaHead: {
      std::size_t n = std::min(x.kids.size(), y.kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        Cmp c = compare_elements(d->a, x.kids[i], y.kids[i], rc);
        if (c != Cmp::Equal) return c;
      }
      if (x.kids.size() == y.kids.size()) return Cmp::Equal;
      return x.kids.size() < y.kids.size() ? Cmp::Less : Cmp::Greater;
    }
    case DKind::Shift:
    case DKind::SepMinus:
    case DKind::SepPlus:
      return compare_elements(d->a, kid(x), kid(y), rc);
    case DKind::Sep: {
      if (x.tag != y.tag) return x.tag < y.tag ? Cmp::Less : Cmp::Greater;
      SepParts s = sep_parts(d);
      return compare_elements(x.tag == 0 ? s.d0 : s.atom, kid(x), kid(y), rc);
    }
  }
  return Cmp::Equal;
}

bool elements_equal(const Dil& d, const Elem& a, const Elem& b, const PosCmp& rc) {
  return compare_elements(d, a, b, rc) == Cmp::Equal;
}

// ---------------------------------------------------------------------------
// Positions

namespace {

void collect(const Dil& d, const Elem& e, std::vector<Pos>& out) {
  auto inner = [&](const Dil& base, const Elem& k, const Ordinal& g) {
    std::vector<Pos> tmp;
    collect(base, k, tmp);
    for (const Pos& p : tmp)
      if (!absorbed(p, g)) out.push_back(to_outer(p, g));
  };
  switch (d->kind) {
    case DKind::Zero:
    case DKind::One:
    case DKind::Const:
      return;
    case DKind::Id: out.push_back(e.pos); return;
    case DKind::Sum: collect(e.tag == 1 ? d->b : d->a, kid(e), out); return;
    case DKind::MulNat:
    case DKind::MulOmega:
      collect(d->a, kid(e), out);
      return;
    case DKind::OmegaComp:
    case DKind::OmegaHead:
      for (const Elem& k : e.kids) collect(d->a, k, out);
      return;
    case DKind::Shift:
    case DKind::SepMinus:
    case DKind::SepPlus:
      inner(d->a, kid(e), d->ord);
      return;
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      if (e.tag == 0)
        collect(s.d0, kid(e), out);
      else
        inner(s.atom, kid(e), d->ord);
      return;
    }
  }
}

void sort_unique(std::vector<Pos>& v, const PosCmp& rc) {
  std::sort(v.begin(), v.end(), [&](const Pos& a, const Pos& b) { return compare_pos(a, b, rc) < 0; });
  v.erase(std::unique(v.begin(), v.end(), [&](const Pos& a, const Pos& b) { return compare_pos(a, b, rc) == 0; }),
          v.end());
}

}  // namespace

std::vector<Pos> positions(const Dil& d, const Elem& e, const PosCmp& rc) {
  std::vector<Pos> out;
  collect(d, e, out);
  sort_unique(out, rc);
  return out;
}

std::vector<Pos> support_of(const Dil& d, const Elem& e, const PosCmp& rc) {
  std::vector<Pos> out;
  for (const Pos& p : positions(d, e, rc))
    if (p.right) out.push_back(p);
  return out;
}

Elem map_positions(const Dil& d, const Elem& e, const std::function<Pos(const Pos&)>& f) {
  Elem r = e;
  auto inner = [&](const Dil& base, const Elem& k, const Ordinal& g) {
    return map_positions(base, k, [&](const Pos& p) {
      if (absorbed(p, g)) return p;
      return to_inner(f(to_outer(p, g)), g);
    });
  };
  switch (d->kind) {
    case DKind::Zero:
    case DKind::One:
    case DKind::Const:
      break;
    case DKind::Id: r.pos = f(e.pos); break;
    case DKind::Sum: r.kids[0] = map_positions(e.tag == 1 ? d->b : d->a, kid(e), f); break;
    case DKind::MulNat:
    case DKind::MulOmega:
      r.kids[0] = map_positions(d->a, kid(e), f);
      break;
    case DKind::OmegaComp:
    case DKind::OmegaHead:
      for (auto& k : r.kids) k = map_positions(d->a, k, f);
      break;
    case DKind::Shift:
    case DKind::SepMinus:
    case DKind::SepPlus:
      r.kids[0] = inner(d->a, kid(e), d->ord);
      break;
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      r.kids[0] = e.tag == 0 ? map_positions(s.d0, kid(e), f) : inner(s.atom, kid(e), d->ord);
      break;
    }
  }
  return r;
}

Elem apply_embedding(const Dil& d, const Elem& e, const std::vector<std::int64_t>& f) {
  return map_positions(d, e, [&](const Pos& p) {
    if (!p.right) return p;
    return Pos::at_point(f.at(static_cast<std::size_t>(p.point)));
  });
}

// ---------------------------------------------------------------------------
// Ambients

Ambient Ambient::finite(std::size_t n) {
  Ambient a;
  for (std::size_t i = 0; i < n; ++i) a.right.push_back(Pos::at_point(static_cast<std::int64_t>(i)));
  return a;
}

Ambient Ambient::ordinal(const Ordinal& a, std::size_t sample) {
  Ambient r;
  r.left_bound = a;
  r.left_sample = sample_below(a, sample);
  return r;
}

Ambient Ambient::shifted(const Ordinal& g, std::size_t sample) const {
  Ambient r;
  r.left_bound = g + left_bound;
  r.left_sample = sample_below(g, sample);
  for (const Ordinal& v : left_sample) r.left_sample.push_back(g + v);
  std::sort(r.left_sample.begin(), r.left_sample.end());
  r.left_sample.erase(std::unique(r.left_sample.begin(), r.left_sample.end()), r.left_sample.end());
  r.right = right;
  r.right_cmp = right_cmp;
  return r;
}

// ---------------------------------------------------------------------------
// Traces and important indices

std::vector<std::vector<std::int64_t>> embeddings(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t)> rec = [&](std::int64_t from) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    std::int64_t left = static_cast<std::int64_t>(n - cur.size());
    for (std::int64_t v = from; v + left <= static_cast<std::int64_t>(m); ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

void serialize(const Elem& e, std::string& out) {
  out += 't';
  out += std::to_string(e.tag);
  if (!e.idx.is_zero()) out += "i" + e.idx.str();
  if (e.pos.right)
    out += "x" + std::to_string(e.pos.point);
  else if (!e.pos.left.is_zero())
    out += "L" + e.pos.left.str();
  if (!e.kids.empty()) {
    out += '[';
    for (const Elem& k : e.kids) {
      serialize(k, out);
      out += ';';
    }
    out += ']';
  }
}

}  // namespace

Trace trace_of(const Dil& d, const Elem& e, const PosCmp& rc) {
  std::vector<Pos> ps = positions(d, e, rc);
  Trace t;
  t.arity = ps.size();
  t.sigma = map_positions(d, e, [&](const Pos& p) {
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (compare_pos(p, ps[i], rc) == 0) return Pos::at_point(static_cast<std::int64_t>(i));
    throw Error(ErrorKind::MalformedElement, "position outside the element's support");
  });
  return t;
}

std::string trace_key(const Dil& d, const Trace& t) {
  std::string s = d->key + "|" + std::to_string(t.arity) + "|";
  serialize(t.sigma, s);
  return s;
}

std::size_t important_index(const Dil& d, const Trace& t, TraceCache* cache) {
  if (d->kind == DKind::One || t.arity == 0)
    throw Error(ErrorKind::NotConnected, "important index needs a connected non-unit dilator and arity >= 1");
  std::string key;
  if (cache) {
    key = trace_key(d, t);
    auto it = cache->important.find(key);
    if (it != cache->important.end()) return it->second;
  }
  const std::size_t n = t.arity;
  auto embs = embeddings(n, 2 * n);
  std::vector<Elem> images;
  images.reserve(embs.size());
  for (const auto& f : embs) images.push_back(apply_embedding(d, t.sigma, f));
  std::vector<bool> ok(n, true);
  for (std::size_t a = 0; a < embs.size(); ++a) {
    for (std::size_t b = 0; b < embs.size(); ++b) {
      bool needed = false;
      for (std::size_t i = 0; i < n; ++i) needed = needed || (ok[i] && embs[a][i] < embs[b][i]);
      if (!needed) continue;
      Cmp c = compare_elements(d, images[a], images[b]);
      if (c == Cmp::Less) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (embs[a][i] < embs[b][i]) ok[i] = false;
    }
  }
  std::size_t found = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ok[i]) continue;
    if (found != n) throw Error(ErrorKind::NoUniqueIndex, "two candidate important indices for " + d->key);
    found = i;
  }
  if (found == n) throw Error(ErrorKind::NoUniqueIndex, "no important index for a trace of " + d->key);
  if (cache) cache->important.emplace(key, found);
  return found;
}

const char* ll_name(LL r) {
  switch (r) {
    case LL::MuchLess: return "MuchLess";
    case LL::MuchGreater: return "MuchGreater";
    case LL::Equivalent: return "Equivalent";
  }
  return "?";
}

LL ll_relation(const Dil& d, const Trace& t0, const Trace& t1) {
  const std::size_t m = t0.arity + t1.arity;
  auto e0 = embeddings(t0.arity, m);
  auto e1 = embeddings(t1.arity, m);
  bool all_less = true, all_greater = true;
  for (const auto& f0 : e0) {
    Elem a = apply_embedding(d, t0.sigma, f0);
    for (const auto& f1 : e1) {
      Cmp c = compare_elements(d, a, apply_embedding(d, t1.sigma, f1));
      all_less = all_less && c == Cmp::Less;
      all_greater = all_greater && c == Cmp::Greater;
    }
  }
  if (all_less) return LL::MuchLess;
  if (all_greater) return LL::MuchGreater;
  return LL::Equivalent;
}

// ---------------------------------------------------------------------------
// Filters for separation and splits

namespace {

struct FilterInfo {
  std::size_t important;
  std::size_t below;  // positions below the parameter
  bool important_below;
};

FilterInfo filter_info(const Dil& atom, const Elem& k, const Ordinal& g, const PosCmp& rc, TraceCache* cache) {
  std::vector<Pos> ps = positions(atom, k, rc);
  FilterInfo fi{};
  for (const Pos& p : ps)
    if (absorbed(p, g)) ++fi.below;
  fi.important = important_index(atom, trace_of(atom, k, rc), cache);
  fi.important_below = absorbed(ps.at(fi.important), g);
  return fi;
}

bool passes_sep(const FilterInfo& fi) { return fi.below >= 1 && fi.important == fi.below - 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void check_cap(std::size_t n, const Budget& b) {
  if (n > b.cap) throw Error(ErrorKind::BudgetExceeded, "enumeration exceeds the element cap");
}

void sort_elems(const Dil& d, std::vector<Elem>& v, const PosCmp& rc) {
  std::sort(v.begin(), v.end(),
            [&](const Elem& a, const Elem& b) { return compare_elements(d, a, b, rc) == Cmp::Less; });
}

Elem wrap(std::uint64_t tag, Elem k) {
  Elem e;
  e.tag = tag;
  e.kids.push_back(std::move(k));
  return e;
}

std::vector<Elem> exponent_lists(const Dil& base, const std::vector<Elem>& bs, std::size_t mult, bool head,
                                 const Budget& b) {
  std::vector<Elem> out;
  Elem cur;
  std::function<void(std::size_t)> rec = [&](std::size_t hi) {
    if (!head || !cur.kids.empty()) {
      out.push_back(cur);
      check_cap(out.size(), b);
    }
    if (cur.kids.size() == mult) return;
    for (std::size_t i = hi; i-- > 0;) {
      if (head && cur.kids.empty() && !in_last_component(base, bs[i])) continue;
      cur.kids.push_back(bs[i]);
      rec(i + 1);
      cur.kids.pop_back();
    }
  };
  rec(bs.size());
  return out;
}

std::vector<Elem> enum_rec(const Dil& d, const Ambient& amb, const Budget& b) {
  std::vector<Elem> out;
  switch (d->kind) {
    case DKind::Zero: break;
    case DKind::One: out.emplace_back(); break;
    case DKind::Const:
      for (const Ordinal& v : sample_below(d->ord, b.consts)) {
        Elem e;
        e.idx = v;
        out.push_back(e);
      }
      break;
    case DKind::Id:
      for (const Ordinal& v : amb.left_sample) {
        Elem e;
        e.pos = Pos::at_left(v);
        out.push_back(e);
      }
      for (const Pos& p : amb.right) {
        Elem e;
        e.pos = p;
        out.push_back(e);
      }
      break;
    case DKind::Sum:
      for (Elem& k : enum_rec(d->a, amb, b)) out.push_back(wrap(0, std::move(k)));
      for (Elem& k : enum_rec(d->b, amb, b)) out.push_back(wrap(1, std::move(k)));
      break;
    case DKind::MulNat:
    case DKind::MulOmega: {
      std::uint64_t n = d->kind == DKind::MulNat ? std::min<std::uint64_t>(d->n, b.nat_copies) : b.copies;
      std::vector<Elem> base = enum_rec(d->a, amb, b);
      for (std::uint64_t i = 0; i < n; ++i)
        for (const Elem& k : base) out.push_back(wrap(i, k));
      break;
    }
    case DKind::OmegaComp:
    case DKind::OmegaHead: {
      std::vector<Elem> base = enum_rec(d->a, amb, b);
      sort_elems(d->a, base, amb.right_cmp);
      out = exponent_lists(d->a, base, b.mult, d->kind == DKind::OmegaHead, b);
      break;
    }
    case DKind::Shift:
      for (Elem& k : enum_rec(d->a, amb.shifted(d->ord, b.left), b)) out.push_back(wrap(0, std::move(k)));
      break;
    case DKind::SepMinus:
    case DKind::SepPlus:
      for (Elem& k : enum_rec(d->a, amb.shifted(d->ord, b.left), b)) {
        FilterInfo fi = filter_info(d->a, k, d->ord, amb.right_cmp, b.cache);
        if (fi.important_below == (d->kind == DKind::SepMinus)) out.push_back(wrap(0, std::move(k)));
      }
      break;
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      for (Elem& k : enum_rec(s.d0, amb, b)) out.push_back(wrap(0, std::move(k)));
      for (Elem& k : enum_rec(s.atom, amb.shifted(d->ord, b.left), b))
        if (passes_sep(filter_info(s.atom, k, d->ord, amb.right_cmp, b.cache))) out.push_back(wrap(1, std::move(k)));
      break;
    }
  }
  check_cap(out.size(), b);
  return out;
}

}  // namespace

std::vector<Elem> enumerate(const Dil& d, const Ambient& amb, const Budget& b) {
  std::vector<Elem> out = enum_rec(d, amb, b);
  sort_elems(d, out, amb.right_cmp);
  return out;
}

std::vector<Elem> enum_elements(const Dil& d, std::size_t n, const Budget& b) {
  return enumerate(d, Ambient::finite(n), b);
}

bool well_formed(const Dil& d, const Elem& e, const Ambient& amb, const Budget& b) {
  auto one_kid = [&]() { return e.kids.size() == 1; };
  switch (d->kind) {
    case DKind::Zero: return false;
    case DKind::One: return e.kids.empty();
    case DKind::Const: return e.kids.empty() && e.idx < d->ord;
    case DKind::Id:
      if (!e.kids.empty()) return false;
      if (e.pos.right) return true;
      return e.pos.left < amb.left_bound;
    case DKind::Sum:
      return one_kid() && e.tag <= 1 && well_formed(e.tag == 1 ? d->b : d->a, e.kids[0], amb, b);
    case DKind::MulNat:
      return one_kid() && e.tag < d->n && well_formed(d->a, e.kids[0], amb, b);
    case DKind::MulOmega: return one_kid() && well_formed(d->a, e.kids[0], amb, b);
    case DKind::OmegaComp:
    case DKind::OmegaHead: {
      if (d->kind == DKind::OmegaHead && (e.kids.empty() || !in_last_component(d->a, e.kids[0]))) return false;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (!well_formed(d->a, e.kids[i], amb, b)) return false;
        if (i > 0 && compare_elements(d->a, e.kids[i - 1], e.kids[i], amb.right_cmp) == Cmp::Less) return false;
      }
      return true;
    }
    case DKind::Shift: return one_kid() && well_formed(d->a, e.kids[0], amb.shifted(d->ord, 0), b);
    case DKind::SepMinus:
    case DKind::SepPlus: {
      if (!one_kid() || !well_formed(d->a, e.kids[0], amb.shifted(d->ord, 0), b)) return false;
      FilterInfo fi = filter_info(d->a, e.kids[0], d->ord, amb.right_cmp, b.cache);
      return fi.important_below == (d->kind == DKind::SepMinus);
    }
    case DKind::Sep: {
      if (!one_kid() || e.tag > 1) return false;
      SepParts s = sep_parts(d);
      if (e.tag == 0) return well_formed(s.d0, e.kids[0], amb, b);
      if (!well_formed(s.atom, e.kids[0], amb.shifted(d->ord, 0), b)) return false;
      return passes_sep(filter_info(s.atom, e.kids[0], d->ord, amb.right_cmp, b.cache));
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Positions under a parameter g are stored in inner coordinates.
std::function<std::string(const Pos&)> inner_printer(const std::function<std::string(const Pos&)>& pp,
                                                     const Ordinal& g) {
  return [pp, g](const Pos& p) {
    if (absorbed(p, g)) return "c" + p.left.str();
    return pp(to_outer(p, g));
  };
}

}  // namespace

std::string elem_str(const Dil& d, const Elem& e, const std::function<std::string(const Pos&)>& pp) {
  switch (d->kind) {
    case DKind::Zero: return "?";
    case DKind::One: return "*";
    case DKind::Const: return "c" + e.idx.str();
    case DKind::Id: return pp(e.pos);
    case DKind::Sum: return (e.tag == 0 ? "l(" : "r(") + elem_str(e.tag == 1 ? d->b : d->a, kid(e), pp) + ")";
    case DKind::MulNat:
    case DKind::MulOmega:
      return "#" + std::to_string(e.tag) + "(" + elem_str(d->a, kid(e), pp) + ")";
    case DKind::OmegaComp:
    case DKind::OmegaHead: {
      if (e.kids.empty()) return "0";
      std::string s;
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += "+";
        s += "w^{" + elem_str(d->a, e.kids[i], pp) + "}";
      }
      return s;
    }
    case DKind::Shift:
    case DKind::SepMinus:
    case DKind::SepPlus:
      return "<" + elem_str(d->a, kid(e), inner_printer(pp, d->ord)) + ">";
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      return (e.tag == 0 ? "l(" : "s(") + (e.tag == 0 ? elem_str(s.d0, kid(e), pp) : elem_str(s.atom, kid(e), inner_printer(pp, d->ord))) + ")";
    }
  }
  return "?";
}

std::string elem_str(const Dil& d, const Elem& e) { return elem_str(d, e, pos_str); }

// ---------------------------------------------------------------------------
// Ranks

Ordinal rank_of(const Dil& d, const Elem& e, const Ordinal& a) {
  auto need_md = [&](const Dil& atom) {
    if (!max_dominated(atom))
      throw Error(ErrorKind::UnsupportedOtp, "no rank rule for " + d->key + " (atom is not max-dominated)");
  };
  switch (d->kind) {
    case DKind::Zero: throw Error(ErrorKind::MalformedElement, "the zero dilator has no elements");
    case DKind::One: return Ordinal();
    case DKind::Const: return e.idx;
    case DKind::Id:
      if (e.pos.right) throw Error(ErrorKind::MalformedElement, "rank needs ordinal positions");
      return e.pos.left;
    case DKind::Sum:
      if (e.tag == 0) return rank_of(d->a, kid(e), a);
      return otp_symbolic(d->a, a) + rank_of(d->b, kid(e), a);
    case DKind::MulNat:
    case DKind::MulOmega:
      return otp_symbolic(d->a, a).mul_nat(e.tag) + rank_of(d->a, kid(e), a);
    case DKind::OmegaComp: {
      Ordinal r;
      for (const Elem& k : e.kids) r = r + Ordinal::omega_pow(rank_of(d->a, k, a));
      return r;
    }
    case DKind::OmegaHead: {
      TypeClass c = classify(d->a);
      Ordinal r;
      for (const Elem& k : e.kids) r = r + Ordinal::omega_pow(rank_of(d->a, k, a));
      auto s = Ordinal::omega_pow(otp_symbolic(c.d0, a)).left_sub(r);
      if (!s) throw Error(ErrorKind::MalformedElement, "head element below the head's start");
      return *s;
    }
    case DKind::Shift: return rank_of(d->a, kid(e), d->ord + a);
    case DKind::SepMinus:
      need_md(d->a);
      return rank_of(d->a, kid(e), d->ord + a);
    case DKind::SepPlus: {
      need_md(d->a);
      auto s = otp_symbolic(d->a, d->ord).left_sub(rank_of(d->a, kid(e), d->ord + a));
      if (!s) throw Error(ErrorKind::MalformedElement, "split element below the split point");
      return *s;
    }
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      if (e.tag == 0) return rank_of(s.d0, kid(e), a);
      need_md(s.atom);
      return otp_symbolic(s.d0, a) + rank_of(s.atom, kid(e), d->ord + a);
    }
  }
  return Ordinal();
}

Elem unrank(const Dil& d, const Ordinal& a, const Ordinal& r) {
  auto bad = [&]() -> Elem {
    throw Error(ErrorKind::MalformedElement, "rank " + r.str() + " out of range for " + d->key + " at " + a.str());
  };
  auto need_md = [&](const Dil& atom) {
    if (!max_dominated(atom))
      throw Error(ErrorKind::UnsupportedOtp, "no rank rule for " + d->key + " (atom is not max-dominated)");
  };
  Elem e;
  switch (d->kind) {
    case DKind::Zero: return bad();
    case DKind::One:
      if (!r.is_zero()) bad();
      return e;
    case DKind::Const:
      if (!(r < d->ord)) bad();
      e.idx = r;
      return e;
    case DKind::Id:
      if (!(r < a)) bad();
      e.pos = Pos::at_left(r);
      return e;
    case DKind::Sum: {
      Ordinal lo = otp_symbolic(d->a, a);
      if (r < lo) return wrap(0, unrank(d->a, a, r));
      return wrap(1, unrank(d->b, a, *lo.left_sub(r)));
    }
    case DKind::MulNat:
    case DKind::MulOmega: {
      Ordinal unit = otp_symbolic(d->a, a);
      if (unit.is_zero()) bad();
      auto [q, s] = r.divmod(unit);
      if (!q.is_finite()) bad();
      if (d->kind == DKind::MulNat && q.to_nat() >= d->n) bad();
      return wrap(q.to_nat(), unrank(d->a, a, s));
    }
    case DKind::OmegaComp:
    case DKind::OmegaHead: {
      Ordinal full = r;
      if (d->kind == DKind::OmegaHead) {
        TypeClass c = classify(d->a);
        full = Ordinal::omega_pow(otp_symbolic(c.d0, a)) + r;
      }
      Ordinal bound = otp_symbolic(d->a, a);
      for (const auto& t : full.terms()) {
        if (!(*t.exp < bound)) bad();
        Elem k = unrank(d->a, a, *t.exp);
        for (std::uint64_t i = 0; i < t.coef; ++i) e.kids.push_back(k);
      }
      return e;
    }
    case DKind::Shift: return wrap(0, unrank(d->a, d->ord + a, r));
    case DKind::SepMinus:
      need_md(d->a);
      if (!(r < otp_symbolic(d->a, d->ord))) bad();
      return wrap(0, unrank(d->a, d->ord + a, r));
    case DKind::SepPlus:
      need_md(d->a);
      return wrap(0, unrank(d->a, d->ord + a, otp_symbolic(d->a, d->ord) + r));
    case DKind::Sep: {
      SepParts s = sep_parts(d);
      Ordinal lo = otp_symbolic(s.d0, a);
      if (r < lo) return wrap(0, unrank(s.d0, a, r));
      need_md(s.atom);
      Ordinal rest = *lo.left_sub(r);
      if (!(rest < otp_symbolic(s.atom, d->ord))) bad();
      return wrap(1, unrank(s.atom, d->ord + a, rest));
    }
  }
  return e;
}

}  // namespace artifact
