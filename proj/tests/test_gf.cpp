#include <random>
#include <set>

#include "doctest.h"
#include "prymrank/gf.hpp"

using namespace prymrank;

namespace {
const FieldCtx& f25() { return build_field(5, 2, std::vector<std::uint32_t>{2, 4, 1}); }
}  // namespace

TEST_CASE("build_field accepts an explicit irreducible modulus") {
  const FieldCtx& f = f25();
  CHECK(f.p() == 5);
  CHECK(f.k() == 2);
  CHECK(f.size() == 25);
  CHECK(f.spec() == "p=5,k=2,mod=2,4,1");
}

TEST_CASE("build_field prime field uses modulus x") {
  const FieldCtx& f = build_field(5, 1);
  CHECK(f.k() == 1);
  CHECK(f.modulus()[0] == 0);
  CHECK(f.modulus()[1] == 1);
}

TEST_CASE("build_field rejects bad input") {
  CHECK_THROWS_AS(build_field(5, 2, std::vector<std::uint32_t>{1, 0, 1}), MathError);
  CHECK_THROWS_AS(build_field(4, 1), MathError);
  CHECK_THROWS_AS(build_field(9, 1), MathError);
  CHECK_THROWS_AS(build_field(2, 1), MathError);
  CHECK_THROWS(build_field(5, 13));
  CHECK_THROWS(build_field(5, 0));
}

TEST_CASE("build_field interns contexts and picks the first irreducible") {
  CHECK(&build_field(7, 3) == &build_field(7, 3));
  CHECK(&f25() == &build_field(5, 2, std::vector<std::uint32_t>{2, 4, 1}));
  const FieldCtx& d = build_field(5, 2);
  CHECK(d.modulus()[0] == 2);
  CHECK(d.modulus()[1] == 0);
  CHECK(is_irreducible_mod_p(d.modulus(), 5));
}

TEST_CASE("arith examples") {
  const FieldCtx& f = f25();
  FieldElement a = f.generator();
  CHECK(a * a == a + f.from_int(3));
  CHECK(arith(a, a, ArithOp::mul) == a + f.from_int(3));
  CHECK(a * f.one() == a);
  const FieldCtx& f5 = build_field(5, 1);
  CHECK(arith(f5.from_int(2), f5.from_int(3), ArithOp::div) == f5.from_int(4));
  CHECK(arith(f5.from_int(2), f5.from_int(3), ArithOp::sub) == f5.from_int(4));
  CHECK(arith(f5.from_int(2), f5.from_int(3), ArithOp::add) == f5.zero());
}

TEST_CASE("arith errors") {
  const FieldCtx& f5 = build_field(5, 1);
  const FieldCtx& f7 = build_field(7, 1);
  CHECK_THROWS_AS(f5.one() + f7.one(), MathError);
  CHECK_THROWS_AS(f5.one() / f5.zero(), MathError);
  CHECK_THROWS_AS(f25().one() * build_field(5, 2).one(), MathError);
}

TEST_CASE("frobenius examples") {
  const FieldCtx& f = f25();
  FieldElement a = f.generator();
  CHECK(a.frobenius() == f.one() + a.scaled(4));
  const FieldCtx& f7 = build_field(7, 1);
  for (auto e : enumerate_field(f7)) CHECK(e.frobenius() == e);
  const FieldCtx& f3_5 = build_field(3, 5);
  FieldElement e = f3_5.element(123);
  FieldElement r = e;
  for (int i = 0; i < 5; ++i) r = r.frobenius();
  CHECK(r == e);
}

TEST_CASE("pow examples") {
  const FieldCtx& f = f25();
  FieldElement a = f.generator();
  CHECK(a.pow(4) == a.scaled(2) + f.from_int(2));
  CHECK(a.pow(1) == a);
  CHECK(a.pow(24) == f.one());
  CHECK(a.pow(0) == f.one());
  CHECK_THROWS_AS(f.zero().pow(0), MathError);
  CHECK(f.zero().pow(3) == f.zero());
}

TEST_CASE("enumerate_field cardinalities and order") {
  auto f5 = enumerate_field(build_field(5, 1));
  REQUIRE(f5.size() == 5);
  for (unsigned i = 0; i < 5; ++i) CHECK(f5[i].coeff(0) == i);
  for (auto [p, k] : {std::pair{5u, 2u}, {3u, 3u}, {7u, 2u}}) {
    auto all = enumerate_field(build_field(p, k));
    std::set<std::uint64_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].index() == i);
      idx.insert(all[i].index());
    }
    CHECK(idx.size() == build_field(p, k).size());
  }
  CHECK_THROWS_AS(enumerate_field(build_field(5, 2), 24), CapExceeded);
}

TEST_CASE("field properties on random elements") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair{3u, 4u}, {5u, 2u}, {7u, 3u}, {13u, 2u}, {11u, 1u}}) {
    const FieldCtx& f = build_field(p, k);
    std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
    for (int t = 0; t < 200; ++t) {
      FieldElement a = f.element(pick(rng)), b = f.element(pick(rng));
      CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == f.one());
        std::uint64_t pk1 = 1;
        for (unsigned i = 0; i + 1 < k; ++i) pk1 *= p;
        CHECK(a.pow(p).pow(pk1) == a);
      }
    }
  }
}

TEST_CASE("text encodings round trip") {
  const FieldCtx& f = f25();
  FieldElement a = f.generator();
  CHECK(to_string(a) == "0,1");
  CHECK(parse_element(f, "3,4") == f.from_int(3) + a.scaled(4));
  CHECK(&parse_field_spec("p=5,k=2,mod=2,4,1") == &f);
  CHECK(&parse_field_spec(build_field(7, 3).spec()) == &build_field(7, 3));
  CHECK(parse_element(f, "1") == f.one());
  CHECK_THROWS_AS(parse_element(f, "1,2,3"), ParseError);
  CHECK_THROWS_AS(parse_element(f, "1,5"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=5;k=2"), ParseError);
  CHECK_THROWS(parse_field_spec("p=5,k=2,mod=1,0,1"));
}

TEST_CASE("embedding is a ring homomorphism") {
  const FieldCtx& small = f25();
  const FieldCtx& big = build_field(5, 4);
  CHECK(can_embed(small, big));
  CHECK_FALSE(can_embed(build_field(5, 3), big));
  for (auto x : enumerate_field(small))
    for (std::uint64_t j : {0u, 3u, 11u, 24u}) {
      FieldElement y = small.element(j);
      CHECK(embed(x * y, big) == embed(x, big) * embed(y, big));
      CHECK(embed(x + y, big) == embed(x, big) + embed(y, big));
    }
}
