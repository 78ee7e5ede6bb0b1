#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dyadic/level.hpp"

using namespace dyadic;

namespace {

const BaseField kQ2 = BaseField::q2();

QuadExt q2_ext(std::int64_t a1, std::int64_t a2) {
  return QuadExt(EisensteinPoly(kQ2.from_int(a1), kQ2.from_int(a2)));
}

// Plain-integer count of S_{i1,i2} over Q2. eta = c + d theta modulo
// theta^{i1+i2}, i.e. c mod 2^{ceil}, d mod 2^{floor}; the residues are
// lifted with a larger modulus and the congruences checked directly.
std::uint64_t oracle_s_count(std::int64_t a1, std::int64_t a2, std::int64_t b1, std::int64_t b2, int i1, int i2) {
  const int n = i1 + i2;
  const std::int64_t mc = 1LL << ((n + 1) / 2), md = 1LL << (n / 2);
  auto divisible = [](std::int64_t v, int k) { return (v % (1LL << k)) == 0; };
  std::uint64_t count = 0;
  for (std::int64_t c = 0; c < mc; ++c)
    for (std::int64_t d = 0; d < md; ++d)
      if (divisible(2 * c - b1 * d - a1, i1) && divisible(c * c - b1 * c * d + b2 * d * d - a2, i2)) ++count;
  return count;
}

std::int64_t coeff(const BaseElem& x) { return x.c0().centered(); }

const QuadExt kI = q2_ext(2, 2);                                         // Q2(sqrt -1)
const QuadExt kSqrt2 = q2_ext(0, -2);                                    // Q2(sqrt 2)
const QuadExt kSqrtM2 = q2_ext(0, 2);                                    // Q2(sqrt -2)
const QuadExt kSqrt10 = q2_ext(0, -10);                                  // Q2(sqrt 10)
const QuadExt kSqrtM5 = from_square_class(kQ2, kQ2.from_int(-5));       // Q2(sqrt -5)

}  // namespace

TEST_CASE("S-set base cases") {
  const auto& list = enumerate_ramified(kQ2);
  for (const auto& x : list)
    for (const auto& y : list) {
      CHECK(s_set_count(SSetQuery{x.poly(), y, 0, 0}) == 1);
      CHECK(s_set_count(SSetQuery{x.poly(), y, 1, 1}) == 2);
      const auto n = n_counts(x, y, 1);
      CHECK(n.n1 == 2);
      CHECK((n.n2 == 0 || n.n2 == 2));
      CHECK(n_counts(x, y, 0).n1 == 1);
      CHECK(n_counts(x, y, 0).n2 == 1);
    }
  CHECK(s_set(SSetQuery{kI.poly(), kSqrt2, 2, 2}).empty());
  CHECK_THROWS_AS(s_set(SSetQuery{kI.poly(), kSqrt2, 2, 4}), Error);
  CHECK_THROWS_AS(s_set(SSetQuery{kI.poly(), kSqrt2, 4, 5}), Error);
}

TEST_CASE("S-set counts match the integer oracle") {
  const auto& list = enumerate_ramified(kQ2);
  for (const auto& x : list)
    for (const auto& y : list)
      for (int i = 0; i <= 3; ++i)
        for (int i2 : {i, i + 1}) {
          if (i + i2 > s_set_modulus_cap(kQ2)) continue;
          const auto got = s_set_count(SSetQuery{x.poly(), y, i, i2});
          CHECK(got == oracle_s_count(coeff(x.a1()), coeff(x.a2()), coeff(y.a1()), coeff(y.a2()), i, i2));
        }
}

TEST_CASE("level examples") {
  CHECK(level_of(kI, kSqrtM5).lev == 2);
  CHECK(level_of(kI, kSqrtM5).certificate.kind == LevelCertificate::Kind::UnramifiedCompositum);
  const auto r = level_of(kI, kSqrt2);
  CHECK(r.lev == 1);
  CHECK(r.certificate.kind == LevelCertificate::Kind::TraceGap);
  CHECK(r.certificate.norm_modulus == 2);
  CHECK(level_of(kSqrt2, kSqrtM2).lev == 2);
  CHECK_THROWS_AS(level_of(kI, q2_ext(-2, 2)), Error);
  try {
    level_of(kSqrt2, q2_ext(-4, 2));
    FAIL("expected isomorphic-fields");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IsomorphicFields);
  }
}

TEST_CASE("third field") {
  CHECK(third_field(kSqrt2, kSqrt10).delta3 == 0);
  CHECK(third_field(kSqrt2, kSqrtM2).delta3 == 2);
  CHECK(third_field(kI, kSqrt2).delta3 == 3);
  // disc(p3) = disc(p1) disc(p2) as a polynomial identity, and delta3 is
  // bounded by the larger discriminant exponent.
  const auto check_pair = [](const QuadExt& x, const QuadExt& y) {
    const auto t = third_field(x, y);
    const BaseElem d3 = t.linear * t.linear - x.base().from_int(4) * t.constant;
    CHECK((d3 - x.poly().disc() * y.poly().disc()).val().ge(40));
    CHECK(t.delta3 <= std::max(x.delta(), y.delta()));
  };
  for (const auto& base : {kQ2, BaseField::step(0, -2)}) {
    const auto& list = enumerate_ramified(base);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) check_pair(list[i], list[j]);
  }
}

TEST_CASE("relative discriminants") {
  CHECK(relative_discriminants(kSqrt2, kSqrtM2) == std::pair{2, 2});
  CHECK(relative_discriminants(kI, kSqrtM5) == std::pair{0, 0});
  CHECK(relative_discriminants(kSqrt2, kI) == std::pair{2, 4});
  CHECK(relative_discriminants(kI, kSqrt2) == std::pair{4, 2});
  // Conductor-discriminant cross-check over both bases: the exponent of the
  // compositum over k2 is delta1 + delta3 - delta2 and over k1 is
  // delta2 + delta3 - delta1.
  for (const auto& base : {kQ2, BaseField::step(0, -2)}) {
    const auto& list = enumerate_ramified(base);
    for (const auto& x : list)
      for (const auto& y : list) {
        if (is_isomorphic(x, y)) continue;
        const auto [over1, over2] = relative_discriminants(x, y);
        const int d3 = third_field(x, y).delta3;
        CHECK(over2 == x.delta() + d3 - y.delta());
        CHECK(over1 == y.delta() + d3 - x.delta());
      }
  }
}

TEST_CASE("pair classification") {
  CHECK(classify_pair(kI, kI) == PairIndex::Star);
  CHECK(classify_pair(kSqrtM5, kI) == PairIndex::RmRmUr);
  CHECK(classify_pair(kSqrt2, kI) == PairIndex::RmRmRm);
  CHECK(std::string(pair_index_name(PairIndex::RmRmUr)) == "rm_rm_ur");
}

TEST_CASE("report invariants on every pair of both bases") {
  for (const auto& base : {kQ2, BaseField::step(0, -2), BaseField::step(2, 2)}) {
    const auto& list = enumerate_ramified(base);
    int pairs = 0;
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const auto r = level_of(list[i], list[j]);
        ++pairs;
        CHECK(2 * r.lev + r.delta3 <= r.delta1 + r.delta2);
        CHECK(r.lev >= std::min(list[i].ell(), list[j].ell()));
        if (list[i].ell() != list[j].ell()) CHECK(r.lev <= std::min(list[i].ell(), list[j].ell()));
        if (r.delta1 == r.delta2) CHECK(r.lev <= r.delta1);
        // Symmetry of the level.
        CHECK(level_by_scan(list[j], list[i]) == r.lev);
      }
    CHECK(pairs == (base.m() == 1 ? 15 : 91));
  }
}
