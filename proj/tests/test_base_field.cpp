#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "dyadic/base_field.hpp"

using namespace dyadic;

namespace {

// Plain-integer oracle: largest i <= cap with eps == a^2 mod 2^i solvable.
int oracle_square_depth(std::uint64_t eps, int cap) {
  int best = 0;
  for (int i = 1; i <= cap; ++i) {
    const std::uint64_t mod = 1ULL << i;
    bool ok = false;
    for (std::uint64_t a = 1; a < mod && !ok; a += 2) ok = ((a * a - eps) % mod) == 0;
    if (!ok) break;
    best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("truncated integers track precision") {
  const auto x = TruncatedInt::residue(12, 6);
  CHECK(x.order().get() == 2);
  CHECK(x.half().precision() == 5);
  CHECK(x.half().value() == 6);
  const auto z = TruncatedInt::residue(0, 5);
  CHECK_FALSE(z.order().is_exact());
  CHECK_THROWS_AS(z.order().get(), Error);
  // 4 * (x mod 2^3) is known mod 2^5.
  CHECK((TruncatedInt(4) * TruncatedInt::residue(3, 3)).precision() == 5);
  CHECK((TruncatedInt::residue(3, 7) * TruncatedInt::residue(3, 7).inverse()).value() == 1);
}

TEST_CASE("valuations") {
  const auto q2 = BaseField::q2();
  CHECK(q2.from_int(12).val().get() == 2);
  CHECK(q2.from_int(1).val().get() == 0);
  const auto k = BaseField::step(0, -2);
  CHECK(k.uniformizer().val().get() == 1);
  CHECK(k.from_int(2).val().get() == 2);
  CHECK(k.from_int(12).val().get() == 4);
  CHECK((k.uniformizer() * k.from_int(3)).val().get() == 1);
}

TEST_CASE("valuation is multiplicative on random pairs") {
  std::mt19937_64 rng(7);
  for (const auto& f : {BaseField::q2(), BaseField::step(0, -2), BaseField::step(2, 2)}) {
    for (int t = 0; t < 10000; ++t) {
      const BaseElem x = f.residue(rng() & 0xFFFFF, 20);
      const BaseElem y = f.residue(rng() & 0xFFFFF, 20);
      if (!x.val().is_exact() || !y.val().is_exact()) continue;
      const Order v = (x * y).val();
      REQUIRE(v.is_exact());
      CHECK(v.value() == x.val().value() + y.val().value());
    }
  }
}

TEST_CASE("step base arithmetic satisfies its relation") {
  const auto k = BaseField::step(2, 2);  // rho^2 + 2 rho + 2 = 0
  const BaseElem r = k.uniformizer();
  CHECK((r * r + k.from_int(2) * r + k.from_int(2)).val().ge(40));
  const BaseElem u = k.one() + r + k.from_int(3) * r * r;
  CHECK((u * u.inverse() - k.one()).val().ge(40));
  CHECK((k.from_int(6) * r).div_uniformizer().congruent(k.from_int(6), 40));
  CHECK((k.from_int(6) * r).half().congruent(k.from_int(3) * r, 40));
  CHECK((k.from_int(6) * r).div_uniformizer().precision() <= 127);
}

TEST_CASE("residues round-trip") {
  for (const auto& f : {BaseField::q2(), BaseField::step(0, -2)}) {
    for (int k = 0; k <= 7; ++k)
      for (std::uint64_t i = 0; i < (1ULL << k); ++i) CHECK(f.residue(i, k).residue_index(k) == i);
  }
}

TEST_CASE("squares and square classes over Q2") {
  const auto q2 = BaseField::q2();
  CHECK(is_square(q2.from_int(17)));
  CHECK_FALSE(is_square(q2.from_int(5)));
  CHECK(is_square(q2.from_int(1)));
  CHECK(square_class(q2.from_int(5)).kind == SquareClass::Kind::UnramifiedUnit);
  const auto c = square_class(q2.from_int(-1));
  CHECK(c.kind == SquareClass::Kind::RamifiedUnit);
  CHECK(c.ell == 1);
  CHECK(square_class(q2.from_int(9)).kind == SquareClass::Kind::Square);
  CHECK_THROWS_AS(is_square(q2.element(TruncatedInt::residue(1, 2), 0)), Error);

  // Against a plain-integer square-depth oracle for all units mod 32.
  for (std::uint64_t e = 1; e < 32; e += 2) {
    const int depth = oracle_square_depth(e, 3);
    const auto cls = square_class(q2.residue(e, 5));
    if (depth == 3) CHECK(cls.kind == SquareClass::Kind::Square);
    if (depth == 2) CHECK(cls.kind == SquareClass::Kind::UnramifiedUnit);
    if (depth == 1) {
      CHECK(cls.kind == SquareClass::Kind::RamifiedUnit);
      CHECK(cls.ell == 1);
    }
  }
}

TEST_CASE("square class group order is 2^{d+2}") {
  const auto q2 = BaseField::q2();
  // Exhaustive: units mod 2^5 times {1, 2}, bucketed by square class.
  std::vector<BaseElem> reps;
  for (std::uint64_t e = 1; e < 32; e += 2)
    for (int s : {1, 2}) {
      const BaseElem x = q2.from_int(s) * q2.residue(e, 5);
      bool fresh = true;
      for (const auto& r : reps) fresh = fresh && !same_square_class(r, x);
      if (fresh) reps.push_back(x);
    }
  CHECK(reps.size() == 8);
  CHECK(square_class_representatives(q2).size() == 8);
  CHECK(square_class_representatives(BaseField::step(0, -2)).size() == 16);
  CHECK(square_class_representatives(BaseField::step(2, 2)).size() == 16);
}

TEST_CASE("higher precision agrees on the overlap") {
  const auto k = BaseField::step(0, -2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const BaseElem hi = k.residue(rng() & 0xFFFFFF, 24);
    const BaseElem lo = hi.reduced(12);
    const BaseElem b = k.residue(rng() & 0xFFF, 12);
    CHECK((lo * b).congruent(hi * b, (lo * b).precision()));
  }
}
