#ifndef ARTIFACT_SEMANTICS_HPP
#define ARTIFACT_SEMANTICS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "artifact/dilator.hpp"

namespace artifact {

// A position of the ambient order gamma + X: either an ordinal of the left
// summand or a point of X. Points carry an index (finite test orders) and
// an optional payload (term orders compare payloads through PosCmp).
struct Pos {
  bool right = false;
  Ordinal left;
  std::int64_t point = 0;
  std::shared_ptr<const void> ref;

  static Pos at_left(const Ordinal& v) {
    Pos p;
    p.left = v;
    return p;
  }
  static Pos at_point(std::int64_t i, std::shared_ptr<const void> r = nullptr) {
    Pos p;
    p.right = true;
    p.point = i;
    p.ref = std::move(r);
    return p;
  }
};

// Three-way comparison of two right positions; empty means by index.
using PosCmp = std::function<int(const Pos&, const Pos&)>;

int compare_pos(const Pos& a, const Pos& b, const PosCmp& rc);

// A placed element of D(X). The meaning of the fields depends on the
// node it belongs to:
//   Const       idx is the index below the constant
//   Id          pos is the single position
//   Sum         tag 0/1 selects the summand, kids[0] is the element
//   MulNat/w    tag is the copy index, kids[0] the element of the base
//   omega/head  kids is the weakly descending list of exponents
//   Shift, sepminus, sepplus   kids[0] lives in the base over g + X
//   Sep         tag 0: kids[0] in the prefix d0; tag 1: kids[0] in the
//               last atom over g + X
// Positions under a parameter g are stored in the inner coordinates, so
// a left value v < g is part of the code and not of the support.
struct Elem {
  std::uint64_t tag = 0;
  Ordinal idx;
  Pos pos;
  std::vector<Elem> kids;
};

std::string elem_str(const Dil& d, const Elem& e);
// As above with a custom printer for top-level positions.
std::string elem_str(const Dil& d, const Elem& e, const std::function<std::string(const Pos&)>& pos_printer);

struct Ambient {
  Ordinal left_bound;
  std::vector<Ordinal> left_sample;  // ascending, all below left_bound
  std::vector<Pos> right;            // ascending
  PosCmp right_cmp;

  // X = {0,...,n-1}
  static Ambient finite(std::size_t n);
  // The ordinal a, sampled.
  static Ambient ordinal(const Ordinal& a, std::size_t sample);
  // g + this
  Ambient shifted(const Ordinal& g, std::size_t sample) const;
};

struct TraceCache {
  std::unordered_map<std::string, std::size_t> important;
};

struct Budget {
  std::size_t consts = 6;   // indices sampled below a constant
  std::size_t copies = 3;   // copies of the base under *w
  std::size_t mult = 3;     // length of omega[...] exponent lists
  std::size_t left = 4;     // ordinals sampled below a parameter g
  std::size_t nat_copies = 8;  // copies enumerated under *n
  std::size_t cap = 200000;    // BudgetExceeded above this
  TraceCache* cache = nullptr; // memo for important_index (caller-owned)
};

Cmp compare_elements(const Dil& d, const Elem& a, const Elem& b, const PosCmp& rc = nullptr);
bool elements_equal(const Dil& d, const Elem& a, const Elem& b, const PosCmp& rc = nullptr);

// All positions of the element in the top-level ambient, ascending and
// without repetition (left values below an enclosing parameter excluded).
std::vector<Pos> positions(const Dil& d, const Elem& e, const PosCmp& rc = nullptr);
// The right positions of `positions`.
std::vector<Pos> support_of(const Dil& d, const Elem& e, const PosCmp& rc = nullptr);

// Apply a map to the top-level positions.
Elem map_positions(const Dil& d, const Elem& e, const std::function<Pos(const Pos&)>& f);
// D(f)(e) for an embedding of finite orders given on point indices.
Elem apply_embedding(const Dil& d, const Elem& e, const std::vector<std::int64_t>& f);

std::vector<Elem> enumerate(const Dil& d, const Ambient& amb, const Budget& b);
std::vector<Elem> enum_elements(const Dil& d, std::size_t n, const Budget& b);

bool well_formed(const Dil& d, const Elem& e, const Ambient& amb, const Budget& b);

// Trace term: the element with its positions replaced by the points
// 0..arity-1.
struct Trace {
  Elem sigma;
  std::size_t arity = 0;
};
Trace trace_of(const Dil& d, const Elem& e, const PosCmp& rc = nullptr);
std::string trace_key(const Dil& d, const Trace& t);

std::size_t important_index(const Dil& d, const Trace& t, TraceCache* cache = nullptr);

enum class LL { MuchLess, MuchGreater, Equivalent };
const char* ll_name(LL r);
LL ll_relation(const Dil& d, const Trace& t0, const Trace& t1);

// All strictly increasing maps n -> m.
std::vector<std::vector<std::int64_t>> embeddings(std::size_t n, std::size_t m);

// Order rank of an element of D(a) whose positions are ordinals (left
// positions only), and its inverse. Both follow the constructors
// directly and rely on the order types of subexpressions.
Ordinal rank_of(const Dil& d, const Elem& e, const Ordinal& a);
Elem unrank(const Dil& d, const Ordinal& a, const Ordinal& r);

}  // namespace artifact

#endif
