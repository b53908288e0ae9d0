#ifndef ARTIFACT_PSI_HPP
#define ARTIFACT_PSI_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "artifact/semantics.hpp"

namespace artifact {

// A collapse term: an element of D(gamma + terms). Right positions carry
// the sub-term in Pos::ref.
struct PsiTerm {
  Elem elem;
  std::size_t depth = 1;  // 1 + deepest sub-term
  std::string key;        // canonical text, equal keys mean equal terms
};
using PsiRef = std::shared_ptr<const PsiTerm>;

Pos psi_pos(const PsiRef& t);
const PsiTerm* psi_sub(const Pos& p);

enum class PsiStrategy { Levels, Incremental };

class PsiOrder {
 public:
  // With keep_raw the expression is used as written (no normalization).
  PsiOrder(Dil d, Ordinal gamma, Budget budget = {}, bool keep_raw = false);

  const Dil& dilator() const { return d_; }
  const Ordinal& gamma() const { return gamma_; }
  const Budget& budget() const { return budget_; }

  Cmp cmp(const PsiTerm& a, const PsiTerm& b) const;
  PosCmp pos_cmp() const;
  // Structural well-formedness, Left values below gamma and every sub-term
  // below the whole term. Throws MalformedTerm on a missing sub-term.
  bool valid(const PsiTerm& t) const;
  // Wraps an element as a term (key and depth computed).
  PsiRef make(Elem e) const;
  Ambient ambient(const std::vector<PsiRef>& universe) const;

 private:
  Dil d_;
  Ordinal gamma_;
  Budget budget_;
};

bool psi_term_valid(const PsiOrder& o, const PsiTerm& t);
Cmp psi_cmp(const PsiOrder& o, const PsiTerm& a, const PsiTerm& b);

// All valid terms of depth <= depth, sorted ascending. Not an initial
// segment of the order in general. Incremental adds one term per round in
// a seeded shuffled order; both strategies must agree.
std::vector<PsiRef> psi_enum(const PsiOrder& o, std::size_t depth, PsiStrategy s = PsiStrategy::Levels,
                             std::uint64_t seed = 0);

std::string psi_term_str(const PsiOrder& o, const PsiTerm& t);

// Order type of psi D^gamma by the clause recursion: constants, splitting
// of sums, suprema of limit sums, and the minus-split sequence for
// connected atoms.
Ordinal psi_clause_otp(const Dil& d, const Ordinal& gamma);
// gamma(0) = gamma, gamma(n+1) = psi of the iterated minus split, for
// n < count.
std::vector<Ordinal> psi_split_sequence(const Dil& atom, const Ordinal& gamma, std::size_t count);

// ---------------------------------------------------------------------------
// Descending-chain search

template <class T>
struct OrderHandle {
  std::function<Cmp(const T&, const T&)> cmp;
  std::function<T(std::mt19937_64&)> sample;
  // Optional targeted proposal for an element below x.
  std::function<std::optional<T>(const T&, std::mt19937_64&)> propose;
};

template <class T>
struct ChainResult {
  bool found = false;
  std::vector<T> chain;     // the counterexample, or the longest chain seen
  std::size_t trials = 0;
};

// Seeded random descending walks: each trial starts at a sample and steps
// to the first proposed element below the current one, giving up after
// `tries` failed proposals.
template <class T>
ChainResult<T> chain_search(const OrderHandle<T>& h, std::size_t trials, std::size_t depth, std::uint64_t seed,
                            std::size_t tries = 32) {
  ChainResult<T> r;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.trials;
    std::vector<T> chain{h.sample(rng)};
    while (chain.size() < depth) {
      std::optional<T> next;
      for (std::size_t i = 0; i < tries && !next; ++i) {
        std::optional<T> y = h.propose ? h.propose(chain.back(), rng) : std::optional<T>(h.sample(rng));
        if (y && h.cmp(*y, chain.back()) == Cmp::Less) next = y;
      }
      if (!next) break;
      chain.push_back(*next);
    }
    if (chain.size() > r.chain.size()) r.chain = chain;
    if (chain.size() >= depth) {
      r.found = true;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Prefix embedding checks

struct EmbedResult {
  bool verified = true;
  std::size_t checked = 0;
  std::size_t first = 0, second = 0;  // violating pair (source indices)
  std::string detail;
};

// Checks that `map` is injective and order preserving on the ascending
// source prefix of length k.
template <class S, class T>
EmbedResult embed_check(const std::vector<S>& source, const std::function<T(const S&)>& map,
                        const std::function<Cmp(const T&, const T&)>& target_cmp, std::size_t k) {
  if (source.size() < k)
    throw Error(ErrorKind::EnumerationShortfall, "source has " + std::to_string(source.size()) +
                                                     " elements, prefix needs " + std::to_string(k));
  EmbedResult r;
  std::vector<T> img;
  img.reserve(k);
  for (std::size_t i = 0; i < k; ++i) img.push_back(map(source[i]));
  r.checked = k;
  // The source is ascending, so adjacent pairs and transitivity of the
  // target suffice; all pairs are still checked to catch a bad target.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (target_cmp(img[i], img[j]) != Cmp::Less) {
        r.verified = false;
        r.first = i;
        r.second = j;
        r.detail = "images of source elements " + std::to_string(i) + " and " + std::to_string(j) +
                   " are not in ascending order";
        return r;
      }
  return r;
}

}  // namespace artifact

#endif
