#ifndef ARTIFACT_DILATOR_HPP
#define ARTIFACT_DILATOR_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artifact/ordinal.hpp"

namespace artifact {

enum class DKind {
  Zero,
  One,
  Const,
  Id,
  Sum,
  MulNat,
  MulOmega,
  OmegaComp,
  // Positive part of omega[B] whose leading exponent lies in the last
  // connected component of B. Produced by classification; written head[B].
  OmegaHead,
  Shift,
  Sep,
  SepMinus,
  SepPlus,
};

struct DNode;
using Dil = std::shared_ptr<const DNode>;

struct DNode {
  DKind kind = DKind::Zero;
  Dil a;              // base, or left summand
  Dil b;              // right summand
  Ordinal ord;        // Const value or the gamma parameter
  std::uint64_t n = 0;  // MulNat factor
  std::string key;    // canonical text
};

// Raw constructors: no normalization, so the semantic layer can be run on
// exactly the expression a user wrote.
namespace dil {
Dil zero();
Dil one();
Dil constant(const Ordinal& a);
Dil id();
Dil sum(Dil l, Dil r);
Dil mul_nat(Dil b, std::uint64_t n);
Dil mul_omega(Dil b);
Dil omega(Dil b);
Dil head(Dil b);
Dil shift(Dil b, const Ordinal& g);
Dil sep(Dil b, const Ordinal& g);
Dil sep_minus(Dil b, const Ordinal& g);
Dil sep_plus(Dil b, const Ordinal& g);
}  // namespace dil

const std::string& to_string(const Dil& d);
bool same(const Dil& a, const Dil& b);

// Parses the dilator grammar and normalizes. Besides the documented
// forms the parser accepts parentheses, head[D], sepminus(D,g) and
// sepplus(D,g), so every normal form prints to parseable text.
Dil parse_dilator(std::string_view text);
// Parse without normalization.
Dil parse_dilator_raw(std::string_view text);

Dil normalize(const Dil& d);

// Value of a constant dilator (Zero, One, Const) after normalization.
std::optional<Ordinal> const_value(const Dil& d);

// Flattened summands of a normalized expression, Zero removed.
std::vector<Dil> summands(const Dil& d);
// Right-associated sum with adjacent constants merged.
Dil build_sum(const std::vector<Dil>& items);

struct TypeClass {
  enum class Kind { Zero, One, Omega, BigOmega };
  Kind kind = Kind::Zero;
  Dil expr;   // the classified expression (normalized)
  Dil pred;   // One: expr ~ pred + 1
  Dil d0;     // BigOmega: expr = d0 + last
  Dil last;   // BigOmega: connected non-unit last component
  // Omega: proper initial partial sums, cofinal in expr.
  std::function<Dil(std::uint64_t)> fund_seq;

  Dil fund(std::uint64_t k) const;
  Dil sep(const Ordinal& g) const;
  std::string kind_name() const;
};

const char* type_kind_name(TypeClass::Kind k);

TypeClass classify(const Dil& d);

// Connected non-unit component (Id, head[...], sepplus(...) and the raw
// shift of such an atom).
bool is_atom(const Dil& d);
// The atom's most important position is always its maximal position.
bool max_dominated(const Dil& atom);

// {D}^g. Atoms that are not max-dominated stay as raw Sep nodes.
Dil sep(const Dil& d, const Ordinal& g);
// As sep, but raises UnsupportedSeparation instead of returning a raw node.
Dil sep_normalized(const Dil& d, const Ordinal& g);
Dil shift(const Dil& d, const Ordinal& g);
std::pair<Dil, Dil> sep_signed(const Dil& d, const Ordinal& g);
// D^{<g0,...,gn>}_{-/+}: the plus part is split along g0..g(n-1), then
// the last parameter gives the final pair.
std::pair<Dil, Dil> sep_signed_iter(const Dil& d, const std::vector<Ordinal>& gs);

// True if the expression still contains a Sep/SepMinus node (a form no
// rule could reduce).
bool has_raw_sep(const Dil& d);

Ordinal otp_symbolic(const Dil& d, const Ordinal& a);

struct Segment {
  enum class Kind { Units, Atom, Repeat, Limit };
  Kind kind = Kind::Units;
  Dil expr;                   // Atom: the component; Limit: the block
  Ordinal count;              // Units: how many; Repeat: multiplicity
  std::vector<Segment> body;  // Repeat: the repeated block
};

std::vector<Segment> decompose(const Dil& d);
// Expression whose semantics is the ordered sum of the segments.
Dil segments_expr(const std::vector<Segment>& segs);
// First k connected components, repetitions and limits expanded.
std::vector<Dil> components_prefix(const Dil& d, std::size_t k);
std::string segments_str(const std::vector<Segment>& segs);

}  // namespace artifact

#endif
