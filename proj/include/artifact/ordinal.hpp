#ifndef ARTIFACT_ORDINAL_HPP
#define ARTIFACT_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "artifact/error.hpp"

namespace artifact {

// Ordinal notation below epsilon_0 in Cantor normal form:
//   a = w^e1*c1 + ... + w^ek*ck  with e1 > ... > ek and ci >= 1.
// Values are immutable; exponents are shared between copies.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> exp;
    std::uint64_t coef;
  };

  Ordinal() = default;
  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();
  // w^e
  static Ordinal omega_pow(const Ordinal& e);
  // w^e * c
  static Ordinal monomial(const Ordinal& e, std::uint64_t c);
  // Terms must already be in normal form (checked).
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;
  // Single term with coefficient 1; 1 = w^0 counts.
  bool is_principal() const;
  std::uint64_t to_nat() const;  // requires is_finite()

  // Leading exponent; 0 for the zero ordinal.
  Ordinal lead_exp() const;
  std::uint64_t lead_coef() const;

  std::strong_ordering operator<=>(const Ordinal& o) const;
  bool operator==(const Ordinal& o) const;

  Ordinal operator+(const Ordinal& o) const;
  // General product; a*w^e for e > 0 is w^(lead(a)+e).
  Ordinal operator*(const Ordinal& o) const;
  Ordinal mul_nat(std::uint64_t n) const;
  Ordinal mul_omega() const;

  // Predecessor of a successor ordinal.
  Ordinal pred() const;
  // The c with *this + c == b; requires *this <= b.
  std::optional<Ordinal> left_sub(const Ordinal& b) const;
  // b -_left *this, defaulting to 0 when *this > b.
  Ordinal left_sub_or_zero(const Ordinal& b) const;
  // Left division by a nonzero divisor: *this = d*q + r with r < d.
  std::pair<Ordinal, Ordinal> divmod(const Ordinal& d) const;

  // Canonical fundamental sequence of a limit ordinal.
  Ordinal fund(std::uint64_t k) const;

  std::string str() const;
  static Ordinal parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

enum class Cmp { Less, Equal, Greater };
Cmp ord_cmp(const Ordinal& a, const Ordinal& b);
const char* cmp_name(Cmp c);
inline Cmp to_cmp(std::strong_ordering o) {
  return o < 0 ? Cmp::Less : (o > 0 ? Cmp::Greater : Cmp::Equal);
}

inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) { return a + b; }
inline Ordinal ord_omega_pow(const Ordinal& e) { return Ordinal::omega_pow(e); }
inline bool ord_is_principal(const Ordinal& a) { return a.is_principal(); }

// Step map x -> x*multiplier + addend (AffineStep) or x -> x + c
// (ConstantIncrement). The multiplier may be infinite; the finite case is
// the common one.
struct LimitPattern {
  enum class Kind { ConstantIncrement, AffineStep, Unsupported };
  Kind kind = Kind::Unsupported;
  Ordinal increment;
  Ordinal multiplier;
  Ordinal addend;
  Ordinal start;

  static LimitPattern constant_increment(Ordinal start, Ordinal c);
  static LimitPattern affine_step(Ordinal start, Ordinal m, Ordinal a);
  static LimitPattern unsupported(Ordinal start);

  Ordinal step(const Ordinal& x) const;
  std::string str() const;
};

// Exact supremum of start, step(start), step(step(start)), ...
Ordinal ord_sup_solve(const LimitPattern& p);

// Fit a pattern to the tail of a nondecreasing sequence of iterates.
// Returns Unsupported when nothing in the family matches the last
// transitions.
LimitPattern detect_limit_pattern(const std::vector<Ordinal>& values);

// True when the last transitions grow at least like x -> w^x.
bool escapes_notation(const std::vector<Ordinal>& values);

// Detect and solve; raises UnsupportedLimit or OutOfNotation when the
// iterates do not fit.
Ordinal sup_of_iterates(const std::vector<Ordinal>& values,
                        LimitPattern* used = nullptr);

// A deterministic finite set of ordinals below `bound`, sorted, of size
// about `count`: small naturals plus points just above the limit
// landmarks of `bound`.
std::vector<Ordinal> sample_below(const Ordinal& bound, std::size_t count);

struct OrdinalHash {
  std::size_t operator()(const Ordinal& a) const;
};

}  // namespace artifact

#endif
