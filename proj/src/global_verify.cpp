#include "dyadic/global_verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dyadic/arith.hpp"

namespace dyadic {

namespace {

constexpr double kPi = 3.14159265358979323846;

// squarefree[n] for 0 <= n < limit.
std::vector<bool> squarefree_sieve(std::int64_t limit) {
  std::vector<bool> sf(static_cast<std::size_t>(std::max<std::int64_t>(limit, 2)), true);
  sf[0] = false;
  for (std::int64_t p = 2; p * p < limit; ++p)
    for (std::int64_t k = p * p; k < limit; k += p * p) sf[static_cast<std::size_t>(k)] = false;
  return sf;
}

bool fundamental_with(std::int64_t disc, const std::vector<bool>& sf) {
  const std::int64_t a = std::llabs(disc);
  const std::int64_t r = ((disc % 4) + 4) % 4;
  if (r == 1) return disc != 1 && sf[static_cast<std::size_t>(a)];
  if (r != 0) return false;
  const std::int64_t d = disc / 4, s = ((d % 4) + 4) % 4;
  return (s == 2 || s == 3) && sf[static_cast<std::size_t>(a / 4)];
}

// Terms until pi n^2 / |disc| exceeds this; the neglected tail is below e^{-50}.
constexpr double kSeriesCut = 50.0;

}  // namespace

std::vector<std::int64_t> enumerate_discriminants(std::int64_t X, char sign, std::optional<std::int64_t> exclude_d0) {
  if (sign != '+' && sign != '-') throw Error(ErrorKind::InvalidArgument, "sign must be + or -");
  if (X < 5) throw Error(ErrorKind::InvalidArgument, "X must be at least 5");
  const auto sf = squarefree_sieve(X);
  const std::optional<std::int64_t> skip =
      exclude_d0 ? std::optional<std::int64_t>(fundamental_discriminant(*exclude_d0)) : std::nullopt;
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; n < X; ++n) {
    const std::int64_t disc = sign == '+' ? n : -n;
    if (fundamental_with(disc, sf) && disc != skip) out.push_back(disc);
  }
  return out;
}

std::int64_t class_number_by_forms(std::int64_t disc) {
  if (disc >= 0 || !is_fundamental_discriminant(disc)) throw Error(ErrorKind::NotFundamental, "need disc < 0 fundamental");
  const std::int64_t n = -disc;
  std::int64_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - disc) & 1) != 0) continue;
      const std::int64_t num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

double class_number_analytic(std::int64_t disc) {
  if (disc >= 0) throw Error(ErrorKind::InvalidArgument, "need disc < 0");
  const double d = static_cast<double>(-disc);
  const double w = disc == -3 ? 6.0 : disc == -4 ? 4.0 : 2.0;
  // h = (w/2) sum chi(n) [erfc(n sqrt(pi/d)) + sqrt(d)/(pi n) exp(-pi n^2/d)]
  double sum = 0;
  for (std::int64_t k = 1; kPi * static_cast<double>(k) * static_cast<double>(k) / d < kSeriesCut; ++k) {
    const int chi = kronecker(disc, k);
    if (chi == 0) continue;
    const double x = static_cast<double>(k);
    sum += chi * (std::erfc(x * std::sqrt(kPi / d)) + std::sqrt(d) / (kPi * x) * std::exp(-kPi * x * x / d));
  }
  return w / 2 * sum;
}

double hr_analytic(std::int64_t disc) {
  if (disc <= 0) throw Error(ErrorKind::InvalidArgument, "need disc > 0");
  const double d = static_cast<double>(disc);
  // hR = (1/2) sum chi(n) [sqrt(d)/n erfc(n sqrt(pi/d)) + E1(pi n^2/d)]
  double sum = 0;
  for (std::int64_t k = 1; kPi * static_cast<double>(k) * static_cast<double>(k) / d < kSeriesCut; ++k) {
    const int chi = kronecker(disc, k);
    if (chi == 0) continue;
    const double x = static_cast<double>(k);
    const double e1 = -std::expint(-kPi * x * x / d);
    sum += chi * (std::sqrt(d) / x * std::erfc(x * std::sqrt(kPi / d)) + e1);
  }
  return sum / 2;
}

double regulator(std::int64_t disc) {
  if (disc <= 0 || !is_fundamental_discriminant(disc)) throw Error(ErrorKind::NotFundamental, "need disc > 0 fundamental");
  // PQa on omega: (1 + sqrt D)/2 when D == 1 (4), sqrt(D/4) otherwise.
  const bool odd = disc % 4 == 1;
  const std::int64_t D = odd ? disc : disc / 4;
  const long double root = std::sqrt(static_cast<long double>(D));
  std::int64_t s = static_cast<std::int64_t>(root);
  while ((s + 1) * (s + 1) <= D) ++s;
  while (s * s > D) --s;
  std::int64_t P = odd ? 1 : 0, Q = odd ? 2 : 1;
  auto step = [&](std::int64_t& p, std::int64_t& q) {
    const std::int64_t a = (p + s) / q;
    const std::int64_t p2 = a * q - p;
    const std::int64_t q2 = (D - p2 * p2) / q;
    p = p2;
    q = q2;
  };
  step(P, Q);
  const std::int64_t P1 = P, Q1 = Q;
  long double log_eps = 0;
  do {
    log_eps += std::log((static_cast<long double>(P) + root) / static_cast<long double>(Q));
    step(P, Q);
  } while (P != P1 || Q != Q1);
  return static_cast<double>(log_eps);
}

double round_significant(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

QuadFieldData hr(std::int64_t disc) {
  if (!is_fundamental_discriminant(disc)) throw Error(ErrorKind::NotFundamental, std::to_string(disc) + " is not fundamental");
  if (disc < 0) {
    const std::int64_t h = class_number_by_forms(disc);
    return {disc, static_cast<double>(h), h, 1.0, "forms"};
  }
  const double value = hr_analytic(disc);
  const double R = regulator(disc);
  const double h = value / R;
  const double nearest = std::round(h);
  if (nearest < 1 || std::fabs(h - nearest) > 1e-3)
    throw Error(ErrorKind::RoundingInconsistency, "hR/R = " + std::to_string(h) + " for disc " + std::to_string(disc));
  return {disc, round_significant(value), static_cast<std::int64_t>(nearest), R, "series+pqa"};
}

std::int64_t pair_discriminant(std::int64_t discF, std::int64_t d0) {
  const std::int64_t d = squarefree_kernel(discF);
  if (discF == fundamental_discriminant(d0))
    throw Error(ErrorKind::DegeneratePair, "F equals Q(sqrt d0)");
  const std::int64_t g = std::gcd(std::llabs(d), std::llabs(d0));
  const std::int64_t dstar = (d / g) * (d0 / g);
  return fundamental_discriminant(dstar);
}

void HrCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::lock_guard<std::mutex> lock(mu_);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::int64_t disc;
    std::string value, method;
    if (!std::getline(ls, value, '\t')) continue;
    disc = std::stoll(value);
    if (!std::getline(ls, value, '\t')) continue;
    std::getline(ls, method);
    table_[disc] = {std::strtod(value.c_str(), nullptr), method};
  }
}

void HrCache::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write cache " + path);
  std::lock_guard<std::mutex> lock(mu_);
  char buf[64];
  for (const auto& [disc, entry] : table_) {
    std::snprintf(buf, sizeof buf, "%.12g", entry.first);
    out << disc << '\t' << buf << '\t' << entry.second << '\n';
  }
}

std::optional<double> HrCache::find(std::int64_t disc) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = table_.find(disc);
  if (it == table_.end()) return std::nullopt;
  return it->second.first;
}

void HrCache::insert(const QuadFieldData& d) {
  std::lock_guard<std::mutex> lock(mu_);
  table_[d.disc] = {d.hR, d.method};
}

std::size_t HrCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.size();
}

MeanValueReport mean_value(std::int64_t d0, char sign, std::int64_t X, HrCache* cache,
                           const std::vector<std::int64_t>& checkpoints, std::int64_t euler_bound) {
  if (X < 100) throw Error(ErrorKind::InvalidArgument, "X must be at least 100");
  if (!is_squarefree(d0) || d0 == 1) throw Error(ErrorKind::InvalidArgument, "d0 must be squarefree and not 1");
  const auto discs = enumerate_discriminants(X, sign, d0);
  std::vector<std::int64_t> partners(discs.size());
  for (std::size_t i = 0; i < discs.size(); ++i) partners[i] = pair_discriminant(discs[i], d0);

  // Every discriminant needed, each computed once.
  std::vector<std::int64_t> needed(discs);
  needed.insert(needed.end(), partners.begin(), partners.end());
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  std::vector<double> values(needed.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(needed.size()); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (cache) {
      if (auto v = cache->find(needed[k])) {
        values[k] = *v;
        continue;
      }
    }
    const QuadFieldData d = hr(needed[k]);
    values[k] = d.hR;
    if (cache) cache->insert(d);
  }
  auto value_of = [&](std::int64_t disc) {
    return values[static_cast<std::size_t>(std::lower_bound(needed.begin(), needed.end(), disc) - needed.begin())];
  };

  MeanValueReport rep{d0, sign, X, 0, theoretical_constant(d0, sign, euler_bound), 0, 0, {}, true};
  std::vector<std::int64_t> marks;
  for (auto c : checkpoints)
    if (c >= 5 && c < X) marks.push_back(c);
  std::sort(marks.begin(), marks.end());
  marks.push_back(X);
  const double theory = rep.theoretical.value;

  long double sum = 0;
  std::int64_t count = 0;
  std::size_t i = 0;
  for (const auto mark : marks) {
    for (; i < discs.size() && std::llabs(discs[i]) < mark; ++i) {
      sum += static_cast<long double>(value_of(discs[i])) * value_of(partners[i]);
      ++count;
    }
    const double emp = static_cast<double>(sum / (static_cast<long double>(mark) * mark));
    rep.trajectory.push_back({mark, emp, emp / theory, count});
  }
  rep.empirical = rep.trajectory.back().empirical;
  rep.ratio = rep.trajectory.back().ratio;
  rep.field_count = rep.trajectory.back().field_count;
  rep.approaching = std::fabs(rep.ratio - 1) <= std::fabs(rep.trajectory.front().ratio - 1);
  return rep;
}

}  // namespace dyadic
