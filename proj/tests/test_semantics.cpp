#include <doctest.h>

#include <algorithm>

#include "artifact/semantics.hpp"
#include "oracle.hpp"

using namespace artifact;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

Elem find(const Dil& d, std::size_t n, const std::string& text) {
  Budget b;
  b.consts = 12;
  for (const Elem& e : enum_elements(d, n, b))
    if (elem_str(d, e) == text) return e;
  FAIL("no element " << text);
  return {};
}

std::vector<std::string> texts(const Dil& d, const std::vector<Elem>& es) {
  std::vector<std::string> r;
  for (const Elem& e : es) r.push_back(elem_str(d, e));
  return r;
}

std::vector<std::int64_t> points(const std::vector<Pos>& ps) {
  std::vector<std::int64_t> r;
  for (const Pos& p : ps) r.push_back(p.point);
  return r;
}

}  // namespace

TEST_CASE("comparison examples") {
  Dil two = parse_dilator_raw("1+1");
  auto units = enum_elements(two, 0, Budget{});
  REQUIRE(units.size() == 2);
  CHECK(compare_elements(two, units[0], units[1]) == Cmp::Less);
  Dil id = parse_dilator("Id");
  CHECK(compare_elements(id, find(id, 3, "x1"), find(id, 3, "x2")) == Cmp::Less);
  Dil w = parse_dilator("omega[Id]");
  CHECK(compare_elements(w, find(w, 2, "w^{x0}+w^{x0}"), find(w, 2, "w^{x1}")) == Cmp::Less);
}

TEST_CASE("support examples") {
  Dil id = parse_dilator("Id");
  CHECK(points(support_of(id, find(id, 6, "x5"))) == std::vector<std::int64_t>{5});
  Dil c = parse_dilator("Const(w)");
  CHECK(support_of(c, find(c, 0, "c3")).empty());
  Dil w = parse_dilator("omega[Id]");
  CHECK(points(support_of(w, find(w, 2, "w^{x1}+w^{x0}"))) == std::vector<std::int64_t>{0, 1});
}

TEST_CASE("enumeration examples") {
  CHECK(texts(parse_dilator("1"), enum_elements(parse_dilator("1"), 0, Budget{})) == std::vector<std::string>{"*"});
  CHECK(texts(parse_dilator("Id"), enum_elements(parse_dilator("Id"), 2, Budget{})) ==
        std::vector<std::string>{"x0", "x1"});
  Budget b;
  b.mult = 2;
  Dil w = parse_dilator_raw("omega[Id]");
  CHECK(texts(w, enum_elements(w, 1, b)) == std::vector<std::string>{"0", "w^{x0}", "w^{x0}+w^{x0}"});
}

TEST_CASE("important index examples") {
  Dil id = parse_dilator("Id");
  CHECK(important_index(id, trace_of(id, find(id, 1, "x0"))) == 0);
  Dil w = parse_dilator_raw("omega[Id]");
  CHECK(important_index(w, trace_of(w, find(w, 2, "w^{x1}+w^{x0}"))) == 1);
  Dil h = parse_dilator_raw("head[Id]");
  CHECK(important_index(h, trace_of(h, find(h, 1, "w^{x0}"))) == 0);
  CHECK_THROWS_AS(important_index(parse_dilator("1"), Trace{}), Error);
}

TEST_CASE("much-less examples") {
  Dil c = parse_dilator("Const(w)");
  Elem c2, c5;
  c2.idx = Ordinal::nat(2);
  c5.idx = Ordinal::nat(5);
  CHECK(ll_relation(c, trace_of(c, c2), trace_of(c, c5)) == LL::MuchLess);
  CHECK(ll_relation(c, trace_of(c, c5), trace_of(c, c2)) == LL::MuchGreater);
  Dil id = parse_dilator("Id");
  Trace t = trace_of(id, find(id, 1, "x0"));
  CHECK(ll_relation(id, t, t) == LL::Equivalent);
  Dil s = parse_dilator_raw("Id+Id");
  CHECK(ll_relation(s, trace_of(s, find(s, 1, "l(x0)")), trace_of(s, find(s, 1, "r(x0)"))) == LL::MuchLess);
}

TEST_CASE("ranks invert on ordinal ambients") {
  for (const char* s : {"Id", "Id+1", "Const(w)+Id", "Id*3", "Id*w", "omega[Id]", "shift(Id,w)", "sep(Id*2,3)"}) {
    Dil d = parse_dilator_raw(s);
    CAPTURE(s);
    Ordinal a = O("w+2");
    Budget b;
    auto es = enumerate(d, Ambient::ordinal(a, 5), b);
    Ordinal prev;
    for (std::size_t i = 0; i < es.size(); ++i) {
      Ordinal r = rank_of(d, es[i], a);
      if (i) CHECK(prev < r);
      CHECK(elements_equal(d, unrank(d, a, r), es[i]));
      prev = r;
    }
  }
}

TEST_CASE("property: enumeration counts match the counting oracle") {
  std::mt19937_64 rng(31);
  Budget b;
  b.consts = 16;
  b.nat_copies = 16;
  for (int i = 0; i < 300; ++i) {
    oracle::Finite f = oracle::random_finite(rng, 3);
    std::string s = oracle::text(f);
    CAPTURE(s);
    Dil d = parse_dilator_raw(s);
    for (std::uint64_t n = 0; n <= 4; ++n) {
      std::uint64_t want = oracle::count(f, n);
      if (want > 2000) continue;
      CHECK(enum_elements(d, n, b).size() == want);
      CHECK(otp_symbolic(parse_dilator(s), Ordinal::nat(n)) == Ordinal::nat(want));
    }
  }
}

TEST_CASE("property: naturality, monotonicity and sortedness on random finite dilators") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 120; ++i) {
    std::string s = oracle::text(oracle::random_finite(rng, 2));
    if (rng() % 3 == 0) s = "omega[" + s + "]";
    CAPTURE(s);
    Dil d = parse_dilator_raw(s);
    Budget b;
    b.mult = 2;
    auto es = enum_elements(d, 3, b);
    if (es.size() > 60) es.resize(60);
    for (std::size_t j = 1; j < es.size(); ++j) CHECK(compare_elements(d, es[j - 1], es[j]) == Cmp::Less);
    auto fs = embeddings(3, 5);
    const auto& f = fs[rng() % fs.size()];
    const auto& g = fs[rng() % fs.size()];
    bool le = f[0] <= g[0] && f[1] <= g[1] && f[2] <= g[2];
    for (const Elem& e : es) {
      auto before = points(support_of(d, e));
      for (auto& x : before) x = f[static_cast<std::size_t>(x)];
      CHECK(points(support_of(d, apply_embedding(d, e, f))) == before);
      if (le) CHECK(compare_elements(d, apply_embedding(d, e, f), apply_embedding(d, e, g)) != Cmp::Greater);
    }
    // Embeddings preserve the order.
    for (std::size_t j = 1; j < es.size(); ++j)
      CHECK(compare_elements(d, apply_embedding(d, es[j - 1], f), apply_embedding(d, es[j], f)) == Cmp::Less);
  }
}

TEST_CASE("embeddings are the strictly increasing maps") {
  auto fs = embeddings(2, 4);
  CHECK(fs.size() == 6);
  for (const auto& f : fs) CHECK(f[0] < f[1]);
  CHECK(embeddings(0, 3).size() == 1);
  CHECK(embeddings(4, 3).empty());
}

TEST_CASE("head[Id+Id] is not max-dominated") {
  Dil a = parse_dilator_raw("head[Id+Id]");
  CHECK_FALSE(max_dominated(a));
  Trace t = trace_of(a, find(a, 2, "w^{r(x0)}+w^{l(x1)}"));
  CHECK(t.arity == 2);
  CHECK(important_index(a, t) == 0);
  CHECK_THROWS_AS(sep_normalized(parse_dilator("omega[Id*2]"), Ordinal::parse("w")), Error);
}
