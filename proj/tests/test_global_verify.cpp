#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "dyadic/arith.hpp"
#include "dyadic/global_verify.hpp"

using namespace dyadic;

namespace {

// h for disc < 0 from the finite character sum -(w/2|D|) sum chi(a) a.
std::int64_t oracle_imaginary_h(std::int64_t disc) {
  const std::int64_t n = -disc;
  std::int64_t s = 0;
  for (std::int64_t a = 1; a < n; ++a) s += kronecker(disc, a) * a;
  const std::int64_t w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
  return -s * w / (2 * n);
}

// log of the smallest unit (x + y sqrt(D))/2 with x^2 - D y^2 = +-4.
double oracle_regulator(std::int64_t disc) {
  for (std::int64_t y = 1;; ++y) {
    for (std::int64_t sgn : {-4, 4}) {
      const std::int64_t x2 = disc * y * y + sgn;
      if (x2 <= 0) continue;
      const auto x = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x2))));
      if (x * x == x2) return std::log((static_cast<double>(x) + static_cast<double>(y) * std::sqrt(static_cast<double>(disc))) / 2);
    }
  }
}

// hR for disc > 0 from a plain partial sum of L(1, chi); h rounded.
double oracle_real_hr(std::int64_t disc) {
  double l = 0;
  for (std::int64_t n = 1; n <= 100000; ++n) l += kronecker(disc, n) / static_cast<double>(n);
  const double R = oracle_regulator(disc);
  const double h = std::round(std::sqrt(static_cast<double>(disc)) * l / (2 * R));
  return h * R;
}

bool fundamental_by_definition(std::int64_t d) {
  const std::int64_t r = ((d % 4) + 4) % 4;
  auto sqfree = [](std::int64_t v) {
    v = std::llabs(v);
    for (std::int64_t p = 2; p * p <= v; ++p)
      if (v % (p * p) == 0) return false;
    return true;
  };
  if (d == 1 || d == 0) return false;
  if (r == 1) return sqfree(d);
  if (r == 0) {
    const std::int64_t e = ((d / 4 % 4) + 4) % 4;
    return (e == 2 || e == 3) && sqfree(d / 4);
  }
  return false;
}

}  // namespace

TEST_CASE("discriminant enumeration") {
  CHECK(enumerate_discriminants(10, '+') == std::vector<std::int64_t>{5, 8});
  CHECK(enumerate_discriminants(9, '-') == std::vector<std::int64_t>{-3, -4, -7, -8});
  CHECK(enumerate_discriminants(9, '-', -1) == std::vector<std::int64_t>{-3, -7, -8});
  for (char sign : {'+', '-'}) {
    std::vector<std::int64_t> ref;
    for (std::int64_t n = 1; n < 3000; ++n)
      if (fundamental_by_definition(sign == '+' ? n : -n)) ref.push_back(sign == '+' ? n : -n);
    CHECK(enumerate_discriminants(3000, sign) == ref);
  }
  CHECK_THROWS_AS(enumerate_discriminants(4, '+'), Error);
}

TEST_CASE("class numbers and regulators") {
  CHECK(hr(-4).h == 1);
  CHECK(hr(-4).hR == 1.0);
  CHECK(hr(-23).h == 3);
  CHECK(*hr(5).R == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  CHECK(hr(5).h == 1);
  CHECK(hr(5).hR == doctest::Approx(0.481212).epsilon(1e-6));
  CHECK(regulator(12) == doctest::Approx(std::log(2 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(hr(40).h == 2);
  for (std::int64_t d : enumerate_discriminants(1500, '-')) {
    CAPTURE(d);
    CHECK(class_number_by_forms(d) == oracle_imaginary_h(d));
    CHECK(std::llround(class_number_analytic(d)) == class_number_by_forms(d));
  }
  for (std::int64_t d : enumerate_discriminants(200, '+')) {
    CAPTURE(d);
    CHECK(regulator(d) == doctest::Approx(oracle_regulator(d)).epsilon(1e-10));
    const QuadFieldData q = hr(d);
    CHECK(q.hR == doctest::Approx(oracle_real_hr(d)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(hr(12 * 4), Error);
}

TEST_CASE("pairing") {
  CHECK(pair_discriminant(5, -1) == -20);
  CHECK(pair_discriminant(-8, -1) == 8);
  CHECK_THROWS_AS(pair_discriminant(-4, -1), Error);
  for (std::int64_t d0 : {-1LL, 2LL, -3LL, 6LL, -7LL})
    for (char sign : {'+', '-'})
      for (std::int64_t d : enumerate_discriminants(2000, sign, d0)) {
        const std::int64_t p = pair_discriminant(d, d0);
        CHECK(pair_discriminant(p, d0) == d);
        CHECK(std::llabs(p) <= 4 * std::llabs(d0) * std::llabs(d));
        if (d0 == -1 && sign == '+') CHECK(p < 0);
      }
}

TEST_CASE("hR cache") {
  const auto path = std::filesystem::temp_directory_path() / "dyadic_cache_test.tsv";
  HrCache c;
  c.insert(hr(5));
  c.insert(hr(-23));
  c.save(path.string());
  HrCache d;
  d.load(path.string());
  CHECK(d.size() == 2);
  CHECK(*d.find(5) == hr(5).hR);
  CHECK(*d.find(-23) == 3.0);
  CHECK(!d.find(8));
  HrCache e;
  e.load((path.string() + ".missing"));
  CHECK(e.size() == 0);
  std::filesystem::remove(path);
  CHECK(round_significant(0.48121182505960344) == 0.481211825060);
}

TEST_CASE("mean value") {
  // independent direct sum over 0 < Delta < 100 for d0 = -1
  double direct = 0;
  int fields = 0;
  for (std::int64_t d = 5; d < 100; ++d) {
    if (!fundamental_by_definition(d)) continue;
    const std::int64_t kernel = d % 4 == 1 ? d : d / 4;
    const std::int64_t pd = fundamental_discriminant(-kernel);
    direct += oracle_real_hr(d) * static_cast<double>(oracle_imaginary_h(pd));
    ++fields;
  }
  direct /= 100.0 * 100.0;
  const auto r = mean_value(-1, '+', 100, nullptr, {});
  CHECK(r.field_count == fields);
  CHECK(r.empirical == doctest::Approx(direct).epsilon(1e-6));
  CHECK(r.empirical == doctest::Approx(0.047877425964103).epsilon(1e-12));
  CHECK(r.theoretical.c_symbolic == "8*pi");

  // (2, -): every partner is imaginary, so the sum is an integer
  const auto s = mean_value(2, '-', 100, nullptr, {});
  CHECK(s.empirical * 1e4 == doctest::Approx(std::round(s.empirical * 1e4)));
  CHECK(s.empirical == doctest::Approx(0.0508).epsilon(1e-12));

  // prefix values agree with separate runs, cache or not
  HrCache cache;
  const auto t = mean_value(-1, '+', 3000, &cache, {300, 1000});
  REQUIRE(t.trajectory.size() == 3);
  CHECK(t.trajectory[0].empirical == mean_value(-1, '+', 300).empirical);
  CHECK(t.trajectory[1].empirical == mean_value(-1, '+', 1000).empirical);
  CHECK(mean_value(-1, '+', 3000, &cache, {300, 1000}).empirical == t.empirical);
  CHECK(t.empirical > 0);
}
