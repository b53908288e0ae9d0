#include <doctest.h>

#include "artifact/psi.hpp"
#include "artifact/suites.hpp"
#include "oracle.hpp"

using namespace artifact;

namespace {

Ordinal O(const std::string& s) { return Ordinal::parse(s); }

Elem at(const Pos& p) {
  Elem e;
  e.pos = p;
  return e;
}

}  // namespace

TEST_CASE("term validity examples") {
  PsiOrder c2(parse_dilator("Const(2)"), O("0"));
  Elem one;
  one.idx = Ordinal::nat(1);
  CHECK(c2.valid(*c2.make(one)));
  PsiOrder id(parse_dilator("Id"), O("1"));
  PsiRef t0 = id.make(at(Pos::at_left(O("0"))));
  CHECK(id.valid(*t0));
  PsiOrder w(parse_dilator_raw("omega[Id]"), O("1"), Budget{}, true);
  PsiRef base = w.make(Elem{});
  Elem bad;
  bad.kids = {at(Pos::at_left(O("0"))), at(psi_pos(base))};
  CHECK_FALSE(w.valid(*w.make(bad)));
}

TEST_CASE("term comparison examples") {
  PsiOrder id(parse_dilator("Id"), O("1"));
  PsiRef t0 = id.make(at(Pos::at_left(O("0"))));
  PsiRef t1 = id.make(at(psi_pos(t0)));
  CHECK(id.cmp(*t0, *t1) == Cmp::Less);
  CHECK(id.cmp(*t1, *t1) == Cmp::Equal);
  PsiOrder c3(parse_dilator("Const(3)"), O("0"));
  auto ts = psi_enum(c3, 2);
  REQUIRE(ts.size() == 3);
  CHECK(c3.cmp(*ts[0], *ts[2]) == Cmp::Less);
  CHECK(ts[0]->key == "c0");
  CHECK(ts[2]->key == "c2");
}

TEST_CASE("enumeration examples") {
  CHECK(psi_enum(PsiOrder(parse_dilator("Id"), O("0")), 4).empty());
  auto chain = psi_enum(PsiOrder(parse_dilator("Id"), O("1")), 3);
  REQUIRE(chain.size() == 3);
  PsiOrder id(parse_dilator("Id"), O("1"));
  CHECK(id.cmp(*chain[0], *chain[1]) == Cmp::Less);
  CHECK(id.cmp(*chain[1], *chain[2]) == Cmp::Less);
  CHECK(chain[2]->depth == 3);
}

TEST_CASE("clause values") {
  CHECK(psi_clause_otp(parse_dilator("Const(w^2)"), O("w")) == O("w^2"));
  CHECK(psi_clause_otp(parse_dilator_raw("Const(2)+Const(3)"), O("0")) == O("5"));
  CHECK(psi_clause_otp(parse_dilator("Id"), O("w")) == O("w^2"));
  CHECK(psi_clause_otp(parse_dilator("Id"), O("0")) == O("0"));
  CHECK(psi_clause_otp(parse_dilator("Id+1"), O("w")) == O("w^2+1"));
  CHECK(psi_clause_otp(parse_dilator("Id*w"), O("w")) == O("w^w"));
}

TEST_CASE("closed form psi(Id*k)^g = g*w^k") {
  for (const char* g : {"1", "3", "w", "w+1", "w^2"})
    for (std::uint64_t k = 1; k <= 4; ++k) {
      Ordinal want = O(g) * Ordinal::omega_pow(Ordinal::nat(k));
      CHECK(psi_clause_otp(parse_dilator("Id*" + std::to_string(k)), O(g)) == want);
    }
}

TEST_CASE("split sequence of Id is constant after the start") {
  auto gs = psi_split_sequence(parse_dilator("Id"), O("w"), 4);
  REQUIRE(gs.size() == 5);
  for (const Ordinal& g : gs) CHECK(g == O("w"));
}

TEST_CASE("property: sums of constants and Id match the psi fold oracle") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 300; ++i) {
    std::vector<oracle::Summand> items(rng() % 4);
    for (auto& x : items) {
      x.id = rng() % 2 == 0;
      if (!x.id) x.c = oracle::random_small(rng, 2, 3);
    }
    auto g = oracle::random_small(rng, 2, 3);
    std::string s = oracle::dilator_text(items);
    CAPTURE(s);
    CAPTURE(oracle::str(g));
    CHECK(psi_clause_otp(parse_dilator_raw(s), O(oracle::str(g))).str() == oracle::str(oracle::psi_fold(items, g)));
  }
}

TEST_CASE("property: finite constants enumerate exactly their value") {
  for (std::uint64_t n = 0; n <= 7; ++n)
    for (const char* g : {"0", "2", "w"}) {
      Dil d = parse_dilator("Const(" + std::to_string(n) + ")");
      Budget b;
      b.consts = 16;
      CHECK(psi_enum(PsiOrder(d, O(g), b), 3).size() == n);
      CHECK(psi_clause_otp(d, O(g)) == Ordinal::nat(n));
    }
}

TEST_CASE("property: both enumeration strategies agree") {
  for (const char* s : {"Const(3)", "Id", "Id+1", "Id*2", "Const(2)+Id", "omega[Id]"})
    for (const char* g : {"0", "1", "w"})
      for (std::uint64_t seed : {1, 2, 3}) {
        // omega[Id] over a nonzero gamma outgrows the element cap at depth 3.
        if (std::string(s) == "omega[Id]" && std::string(g) != "0") continue;
        CAPTURE(s);
        CAPTURE(g);
        PsiOrder o(parse_dilator(s), O(g));
        auto a = psi_enum(o, 3), b = psi_enum(o, 3, PsiStrategy::Incremental, seed);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]->key == b[i]->key);
      }
}

TEST_CASE("property: enumerated terms are valid, sorted and above their sub-terms") {
  for (const char* s : {"Id", "Id*2", "1+Id", "Const(w)+Id", "omega[Id]"})
    for (const char* g : {"0", "1", "w"}) {
      if (std::string(s) == "omega[Id]" && std::string(g) != "0") continue;
      PsiOrder o(parse_dilator(s), O(g));
      auto ts = psi_enum(o, 3);
      if (ts.size() > 150) ts.resize(150);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(o.valid(*ts[i]));
        if (i) CHECK(o.cmp(*ts[i - 1], *ts[i]) == Cmp::Less);
        for (const Pos& p : support_of(o.dilator(), ts[i]->elem, o.pos_cmp()))
          CHECK(o.cmp(*psi_sub(p), *ts[i]) == Cmp::Less);
      }
    }
}

TEST_CASE("chain search") {
  auto o = std::make_shared<PsiOrder>(parse_dilator("Const(5)"), O("0"));
  auto pool = psi_enum(*o, 2);
  OrderHandle<PsiRef> h;
  h.cmp = [o](const PsiRef& a, const PsiRef& b) { return o->cmp(*a, *b); };
  h.sample = [&pool](std::mt19937_64& rng) { return pool[rng() % pool.size()]; };
  auto r = chain_search(h, 1000, 30, 1);
  CHECK_FALSE(r.found);
  CHECK(r.chain.size() <= 5);
  auto bad = chain_search(integer_fixture(), 10, 30, 1);
  CHECK(bad.found);
  CHECK(bad.chain.size() == 30);
}

TEST_CASE("prefix embeddings") {
  PsiOrder id(parse_dilator("Id"), O("1"));
  auto ts = psi_enum(id, 10);
  REQUIRE(ts.size() == 10);
  std::function<PsiRef(const PsiRef&)> same = [](const PsiRef& t) { return t; };
  std::function<Cmp(const PsiRef&, const PsiRef&)> cmp = [&](const PsiRef& a, const PsiRef& b) { return id.cmp(*a, *b); };
  CHECK(embed_check(ts, same, cmp, 10).verified);
  CHECK_THROWS_AS(embed_check(ts, same, cmp, 11), Error);
  TransportResult t = transport_check(dil::sep(parse_dilator("Id"), O("2")), sep_normalized(parse_dilator("Id"), O("5")),
                                      O("3"), 2, false, Budget{});
  CHECK(t.ok);
  CHECK(t.checked == 2);
}
