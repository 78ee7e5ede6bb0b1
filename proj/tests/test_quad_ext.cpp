#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dyadic/quad_ext.hpp"

using namespace dyadic;

namespace {

QuadExt q2_ext(std::int64_t a1, std::int64_t a2) {
  const auto f = BaseField::q2();
  return QuadExt(EisensteinPoly(f.from_int(a1), f.from_int(a2)));
}

// Plain-integer oracle over Q2: does some eta = c + d theta mod theta^{2n}
// (c, d mod 2^n) satisfy the trace/norm congruences mod 2^n? Used for the
// isomorphism criterion at modulus delta + 1.
bool oracle_iso(std::int64_t a1, std::int64_t a2, std::int64_t b1, std::int64_t b2, int n) {
  const std::int64_t mod = 1LL << n;
  auto red = [&](std::int64_t v) { return ((v % mod) + mod) % mod; };
  for (std::int64_t c = 0; c < mod; ++c)
    for (std::int64_t d = 0; d < mod; ++d) {
      if (red(2 * c - b1 * d - a1) != 0) continue;
      if (red(c * c - b1 * c * d + b2 * d * d - a2) == 0) return true;
    }
  return false;
}

int oracle_delta(std::int64_t a1, std::int64_t a2) {
  std::int64_t d = a1 * a1 - 4 * a2;
  int v = 0;
  while (d % 2 == 0) { d /= 2; ++v; }
  return v;
}

}  // namespace

TEST_CASE("trace and norm") {
  const auto f = BaseField::q2();
  const auto e1 = q2_ext(0, -2);
  CHECK(e1.trace(e1.theta()) == f.from_int(0));
  CHECK(e1.norm(e1.theta()) == f.from_int(-2));
  const auto e2 = q2_ext(2, 2);
  const ExtElem x = e2.one() + e2.theta();
  CHECK(e2.trace(x) == f.from_int(0));
  CHECK(e2.norm(x) == f.from_int(1));
  CHECK(e2.trace(e2.embed(f.from_int(5))) == f.from_int(10));
  CHECK(e2.norm(e2.embed(f.from_int(5))) == f.from_int(25));
}

TEST_CASE("delta and ell") {
  CHECK(q2_ext(0, -2).delta() == 3);
  CHECK(q2_ext(0, -2).ell() == 2);
  CHECK(q2_ext(2, 2).delta() == 2);
  CHECK(q2_ext(2, 2).ell() == 1);
  CHECK_THROWS_AS(q2_ext(1, 2), Error);
  CHECK_THROWS_AS(q2_ext(2, 4), Error);
}

TEST_CASE("field relations hold on random elements") {
  std::mt19937_64 rng(3);
  for (const auto& f : {BaseField::q2(), BaseField::step(0, -2)}) {
    for (const auto& e : enumerate_ramified(f)) {
      for (int t = 0; t < 300; ++t) {
        const ExtElem x = e.residue(rng() & 0xFFFFF, 20), y = e.residue(rng() & 0xFFFFF, 20);
        const ExtElem xy = e.mul(x, y);
        CHECK((e.norm(xy) - e.norm(x) * e.norm(y)).val().ge(18));
        CHECK((e.trace(x) - (x.c + e.conj(x).c)).val().ge(18));
        CHECK(e.conj(e.conj(x)) == x);
        if (x.is_unit()) CHECK(e.congruent(e.mul(x, e.inverse(x)), e.one(), 18));
      }
      // theta is a root of its polynomial.
      CHECK(e.congruent(e.eval_quadratic(e.a1(), e.a2(), e.theta()), e.zero(), 30));
    }
  }
}

TEST_CASE("trace bounds on uniformizers and higher orders") {
  std::mt19937_64 rng(5);
  for (const auto& f : {BaseField::q2(), BaseField::step(0, -2)}) {
    for (const auto& e : enumerate_ramified(f)) {
      int tested = 0;
      while (tested < 1000) {
        const ExtElem x = e.residue(rng() & 0xFFFFFF, 24);
        const Order v = x.ext_val();
        if (!v.is_exact() || v.value() > 12) continue;
        ++tested;
        const int j = v.value();
        const Order vt = e.trace(x).val();
        CHECK(vt.ge((j + e.delta()) / 2));
        if (j == 1) {
          CHECK(vt.ge(e.ell()));
          if (e.ell() <= f.m()) CHECK(vt.eq(e.ell()));
        }
      }
    }
  }
}

TEST_CASE("isomorphism tests") {
  const auto f = BaseField::q2();
  CHECK_FALSE(is_isomorphic(q2_ext(0, -2), q2_ext(0, -10)));
  // z -> z-2 in z^2-2 gives z^2-4z+2.
  CHECK(is_isomorphic(q2_ext(0, -2), q2_ext(-4, 2)));
  CHECK_FALSE(is_isomorphic(q2_ext(2, 2), q2_ext(0, -2)));
  const auto shifted = transform_presentation(EisensteinPoly(f.from_int(0), f.from_int(-2)), f.from_int(2), f.from_int(1));
  CHECK(shifted.to_string() == "z^2-4z+2");
}

TEST_CASE("enumeration over Q2 matches a plain-integer oracle") {
  const auto& list = enumerate_ramified(BaseField::q2());
  REQUIRE(list.size() == 6);
  for (const auto& e : list) {
    CHECK(e.delta() >= 2);
    CHECK(e.delta() <= 3);
  }
  // Every small Eisenstein polynomial is isomorphic to exactly one class, and
  // the S-set criterion agrees with both the integer oracle and square classes.
  for (std::int64_t a1 : {0, 2, 4, 6, -2, 10}) {
    for (std::int64_t a2 : {2, 6, 10, 14, -2, -6, 18, 22}) {
      const auto x = q2_ext(a1, a2);
      CHECK(x.delta() == oracle_delta(a1, a2));
      int hits = 0;
      for (const auto& e : list) {
        const bool iso = is_isomorphic(x, e);
        hits += iso;
        CHECK(iso == same_field_by_square_class(x, e));
        const std::int64_t b1 = e.a1().c0().centered(), b2 = e.a2().c0().centered();
        const bool o = x.delta() == e.delta() && oracle_iso(a1, a2, b1, b2, x.delta() + 1);
        CHECK(iso == o);
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("is_isomorphic is an equivalence relation on redundant presentations") {
  const auto f = BaseField::q2();
  std::vector<QuadExt> family;
  for (const auto& e : enumerate_ramified(f)) {
    family.push_back(e);
    for (std::int64_t c : {2, -2}) for (std::int64_t d : {1, 3})
      family.push_back(QuadExt(transform_presentation(e.poly(), f.from_int(c), f.from_int(d))));
  }
  for (const auto& x : family)
    for (const auto& y : family) {
      CHECK(is_isomorphic(x, y) == is_isomorphic(y, x));
      if (!is_isomorphic(x, y)) continue;
      for (const auto& z : family)
        if (is_isomorphic(y, z)) CHECK(is_isomorphic(x, z));
    }
}

TEST_CASE("enumeration over the step base") {
  for (const auto& f : {BaseField::step(0, -2), BaseField::step(2, 2)}) {
    const auto& list = enumerate_ramified(f);
    CHECK(list.size() == 14);
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK(list[i].delta() >= 2);
      CHECK(list[i].delta() <= 5);
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(same_field_by_square_class(list[i], list[j]));
    }
  }
}

TEST_CASE("from_square_class") {
  const auto f = BaseField::q2();
  const auto gi = from_square_class(f, f.from_int(-1));
  CHECK(gi.to_string() == "z^2+2z+2");
  CHECK(gi.delta() == 2);
  const auto r2 = from_square_class(f, f.from_int(2));
  CHECK(r2.to_string() == "z^2-2");
  CHECK(r2.delta() == 3);
  CHECK(from_square_class(f, f.from_int(-5)).delta() == 2);
  CHECK_THROWS_AS(from_square_class(f, f.from_int(9)), Error);
  CHECK_THROWS_AS(from_square_class(f, f.from_int(5)), Error);
  // Round trip through the discriminant: every nontrivial ramified class.
  for (const auto& base : {BaseField::q2(), BaseField::step(0, -2)}) {
    for (const auto& r : square_class_representatives(base)) {
      const auto cls = general_square_class(r);
      if (cls.kind == SquareClass::Kind::Square || cls.kind == SquareClass::Kind::UnramifiedUnit) continue;
      const auto e = from_square_class(base, cls);
      CHECK(same_square_class(e.poly().disc(), r));
      if (cls.kind == SquareClass::Kind::RamifiedUnit) CHECK(e.ell() == cls.ell);
    }
  }
}
