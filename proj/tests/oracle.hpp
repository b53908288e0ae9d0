#ifndef TESTS_ORACLE_HPP
#define TESTS_ORACLE_HPP

// Test-side reference implementations, written independently of the
// library: ordinals below w^w as coefficient vectors and closed-form
// folds for sums of constants and Id.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// c[i] is the coefficient of w^i.
struct Small {
  std::vector<std::uint64_t> c;

  static Small nat(std::uint64_t n) { return n ? Small{{n}} : Small{}; }
  static Small mono(std::size_t e, std::uint64_t k) {
    Small s;
    s.c.assign(e + 1, 0);
    s.c[e] = k;
    return s;
  }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool zero() const { return c.empty(); }
  std::size_t lead() const { return c.size() - 1; }
  std::uint64_t at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
};

inline int cmp(const Small& a, const Small& b) {
  std::size_t n = std::max(a.c.size(), b.c.size());
  for (std::size_t i = n; i-- > 0;)
    if (a.at(i) != b.at(i)) return a.at(i) < b.at(i) ? -1 : 1;
  return 0;
}

// a + b: the terms of a below the lead of b are absorbed.
inline Small add(const Small& a, const Small& b) {
  if (b.zero()) return a;
  Small r;
  std::size_t k = b.lead();
  r.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i > k) r.c[i] = a.at(i);
    else if (i == k) r.c[i] = a.at(i) + b.at(i);
    else r.c[i] = b.at(i);
  }
  r.trim();
  return r;
}

// a * w for a > 0 is w^(lead(a)+1).
inline Small mul_omega(const Small& a) { return a.zero() ? a : Small::mono(a.lead() + 1, 1); }

// a * n for finite n: the leading coefficient scales, the tail is kept once.
inline Small mul_nat(const Small& a, std::uint64_t n) {
  Small r;
  for (std::uint64_t i = 0; i < n; ++i) r = add(r, a);
  return r;
}

inline std::string str(const Small& a) {
  if (a.zero()) return "0";
  std::string s;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    std::uint64_t k = a.c[i];
    if (!k) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(k);
      continue;
    }
    s += i == 1 ? "w" : "w^" + std::to_string(i);
    if (k > 1) s += "*" + std::to_string(k);
  }
  return s;
}

inline Small random_small(std::mt19937_64& rng, std::size_t max_exp = 3, std::uint64_t max_coef = 4) {
  Small s;
  std::uniform_int_distribution<std::size_t> e(0, max_exp);
  std::uniform_int_distribution<std::uint64_t> k(0, max_coef);
  s.c.assign(e(rng) + 1, 0);
  for (auto& x : s.c) x = k(rng);
  s.trim();
  return s;
}

// A sum of constants and Id, left to right.
struct Summand {
  bool id = false;
  Small c;
};

inline std::string dilator_text(const std::vector<Summand>& items) {
  if (items.empty()) return "0";
  std::string s;
  for (const Summand& x : items) {
    if (!s.empty()) s += "+";
    s += x.id ? "Id" : "Const(" + str(x.c) + ")";
  }
  return s;
}

// J(Id, g) = g + J(Const(g), g) = g*3, and J composes along sums.
inline Small j_fold(const std::vector<Summand>& items, Small g) {
  for (const Summand& x : items) g = x.id ? add(add(g, g), g) : add(g, x.c);
  return g;
}

// J'(Id, g) = (g + w) + (g + (g + w)).
inline Small jprime_fold(const std::vector<Summand>& items, Small g) {
  const Small w = Small::mono(1, 1);
  for (const Summand& x : items) g = x.id ? add(add(g, w), add(g, add(g, w))) : add(g, x.c);
  return g;
}

// psi(D+E)^g = psi D^g + psi E^(g + psi D^g); psi(Id)^g = g*w.
inline Small psi_fold(const std::vector<Summand>& items, const Small& g) {
  Small acc;
  for (const Summand& x : items) acc = add(acc, x.id ? mul_omega(add(g, acc)) : x.c);
  return acc;
}

// |D(n)| for the finite fragment: Const(k), Id, sums, *k, shift by k.
struct Finite {
  enum Kind { Const, Id, Sum, Mul, Shift } kind = Const;
  std::uint64_t k = 0;
  std::vector<Finite> kids;
};

inline std::uint64_t count(const Finite& d, std::uint64_t n) {
  switch (d.kind) {
    case Finite::Const: return d.k;
    case Finite::Id: return n;
    case Finite::Sum: return count(d.kids[0], n) + count(d.kids[1], n);
    case Finite::Mul: return count(d.kids[0], n) * d.k;
    case Finite::Shift: return count(d.kids[0], n + d.k);
  }
  return 0;
}

inline std::string text(const Finite& d) {
  switch (d.kind) {
    case Finite::Const: return "Const(" + std::to_string(d.k) + ")";
    case Finite::Id: return "Id";
    case Finite::Sum: return "(" + text(d.kids[0]) + "+" + text(d.kids[1]) + ")";
    case Finite::Mul: return "(" + text(d.kids[0]) + ")*" + std::to_string(d.k);
    case Finite::Shift: return "shift(" + text(d.kids[0]) + "," + std::to_string(d.k) + ")";
  }
  return "";
}

inline Finite random_finite(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
  std::uniform_int_distribution<std::uint64_t> small(0, 3);
  Finite d;
  switch (pick(rng)) {
    case 0: d.kind = Finite::Const; d.k = small(rng); break;
    case 1: d.kind = Finite::Id; break;
    case 2:
      d.kind = Finite::Sum;
      d.kids = {random_finite(rng, depth - 1), random_finite(rng, depth - 1)};
      break;
    case 3:
      d.kind = Finite::Mul;
      d.k = 1 + small(rng) % 3;
      d.kids = {random_finite(rng, depth - 1)};
      break;
    default:
      d.kind = Finite::Shift;
      d.k = small(rng);
      d.kids = {random_finite(rng, depth - 1)};
  }
  return d;
}

}  // namespace oracle

#endif
