#include <doctest.h>

#include "artifact/dilator.hpp"
#include "oracle.hpp"

using namespace artifact;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }
std::string N(const char* s) { return parse_dilator(s)->key; }

std::string random_dilator(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 4);
  switch (pick(rng)) {
    case 0: return "0";
    case 1: return "1";
    case 2: return "Const(" + oracle::str(oracle::random_small(rng, 2, 3)) + ")";
    case 3:
    case 4: return "Id";
    case 5: return random_dilator(rng, depth - 1) + "+" + random_dilator(rng, depth - 1);
    case 6: return "(" + random_dilator(rng, depth - 1) + ")*" + std::to_string(1 + rng() % 3);
    case 7: return "(" + random_dilator(rng, depth - 1) + ")*w";
    case 8: return "omega[" + random_dilator(rng, depth - 1) + "]";
    default: return "shift(" + random_dilator(rng, depth - 1) + "," + oracle::str(oracle::random_small(rng, 1, 2)) + ")";
  }
}

}  // namespace

TEST_CASE("parsing examples") {
  CHECK(parse_dilator_raw("Id + 1")->kind == DKind::Sum);
  CHECK(parse_dilator_raw("omega[Id+1]")->kind == DKind::OmegaComp);
  Dil c = parse_dilator("Const(w^2+1)");
  REQUIRE(c->kind == DKind::Const);
  CHECK(c->ord == O("w^2+1"));
  CHECK_THROWS_AS(parse_dilator("Id+"), Error);
  CHECK_THROWS_AS(parse_dilator(""), Error);
}

TEST_CASE("classification examples") {
  CHECK(classify(parse_dilator("0")).kind == TypeClass::Kind::Zero);
  TypeClass one = classify(parse_dilator("Id+1"));
  REQUIRE(one.kind == TypeClass::Kind::One);
  CHECK(one.pred->key == "Id");
  TypeClass w = classify(parse_dilator("1*w"));
  REQUIRE(w.kind == TypeClass::Kind::Omega);
  for (std::uint64_t k = 0; k < 5; ++k) CHECK(const_value(w.fund(k)) == Ordinal::nat(k));
  CHECK(classify(parse_dilator("Id")).kind == TypeClass::Kind::BigOmega);
  CHECK(classify(parse_dilator("omega[Id]")).kind_name() == "Omega");
}

TEST_CASE("decomposition examples") {
  CHECK(decompose(parse_dilator("0")).empty());
  CHECK(segments_str(decompose(parse_dilator("Const(3)"))) == "[1, 1, 1]");
  CHECK(segments_str(decompose(parse_dilator("omega[Id]"))) == "[1, head[Id]]");
}

TEST_CASE("separation examples") {
  CHECK(sep_normalized(parse_dilator("Id"), O("w"))->key == "Const(w)");
  CHECK(sep_normalized(parse_dilator_raw("Id+Id"), O("w"))->key == N("Id+Const(w)"));
  CHECK(sep_normalized(parse_dilator("omega[Id]"), O("0"))->key == "1");
  CHECK_THROWS_AS(sep_normalized(parse_dilator("Id+1"), O("w")), Error);
}

TEST_CASE("shift examples") {
  CHECK(shift(parse_dilator("0"), O("w"))->key == "0");
  CHECK(shift(parse_dilator("Const(w+3)"), O("w"))->key == "Const(w+3)");
  CHECK(shift(parse_dilator("Id"), O("w"))->key == N("Const(w)+Id"));
}

TEST_CASE("signed separation examples") {
  auto [m0, p0] = sep_signed(parse_dilator("Id"), O("0"));
  CHECK(m0->key == "0");
  CHECK(p0->key == "Id");
  auto [m1, p1] = sep_signed(parse_dilator("Id"), O("w"));
  CHECK(m1->key == "Const(w)");
  CHECK(p1->key == "Id");
  auto [m2, p2] = sep_signed(parse_dilator("head[Id]"), O("1"));
  CHECK(m2->key == "Const(w)");
  CHECK(p2->kind == DKind::SepPlus);
}

TEST_CASE("symbolic order type examples") {
  CHECK(otp_symbolic(parse_dilator("Const(w^3)"), O("5")) == O("w^3"));
  CHECK(otp_symbolic(parse_dilator("Id+1"), O("w")) == O("w+1"));
  CHECK(otp_symbolic(parse_dilator("omega[Id]"), O("w")) == O("w^w"));
  CHECK(otp_symbolic(parse_dilator("Id*w"), O("3")) == O("w"));
}

TEST_CASE("property: normal forms print to text that parses back to themselves") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    std::string s = random_dilator(rng, 3);
    CAPTURE(s);
    Dil d = parse_dilator(s);
    CHECK(parse_dilator(d->key)->key == d->key);
    CHECK(normalize(d)->key == d->key);
  }
}

TEST_CASE("property: classification matches the decomposition shape") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    std::string s = random_dilator(rng, 2);
    CAPTURE(s);
    Dil d = parse_dilator(s);
    TypeClass tc;
    try {
      tc = classify(d);
    } catch (const Error& e) {
      CHECK(is_unsupported(e.kind()));
      continue;
    }
    switch (tc.kind) {
      case TypeClass::Kind::Zero: CHECK(d->key == "0"); break;
      case TypeClass::Kind::One:
        for (const char* a : {"0", "3", "w"})
          CHECK(otp_symbolic(tc.pred, O(a)) + Ordinal::nat(1) == otp_symbolic(d, O(a)));
        break;
      case TypeClass::Kind::Omega:
        for (std::uint64_t k = 0; k < 4; ++k)
          CHECK(otp_symbolic(tc.fund(k), O("3")) <= otp_symbolic(tc.fund(k + 1), O("3")));
        break;
      case TypeClass::Kind::BigOmega:
        CHECK(is_atom(tc.last));
        for (const char* a : {"0", "3", "w"})
          CHECK(otp_symbolic(dil::sum(tc.d0, tc.last), O(a)) == otp_symbolic(d, O(a)));
        break;
    }
  }
}

TEST_CASE("property: symbolic order types add and multiply") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    std::string a = random_dilator(rng, 2), b = random_dilator(rng, 2);
    Ordinal x = oracle::random_small(rng, 2, 3).zero() ? O("w") : O("w^2+3");
    CAPTURE(a);
    CAPTURE(b);
    try {
      Ordinal oa = otp_symbolic(parse_dilator(a), x), ob = otp_symbolic(parse_dilator(b), x);
      CHECK(otp_symbolic(parse_dilator("(" + a + ")+(" + b + ")"), x) == oa + ob);
      CHECK(otp_symbolic(parse_dilator("(" + a + ")*3"), x) == oa.mul_nat(3));
    } catch (const Error& e) {
      CHECK(is_unsupported(e.kind()));
    }
  }
}

TEST_CASE("property: shift by g agrees with the order type at g + a") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 300; ++i) {
    std::string s = random_dilator(rng, 2);
    Ordinal g = Ordinal::parse(oracle::str(oracle::random_small(rng, 1, 2)));
    CAPTURE(s);
    CAPTURE(g.str());
    try {
      Dil d = parse_dilator(s);
      for (const char* a : {"0", "2", "w"}) CHECK(otp_symbolic(shift(d, g), O(a)) == otp_symbolic(d, g + O(a)));
    } catch (const Error& e) {
      CHECK(is_unsupported(e.kind()));
    }
  }
}
