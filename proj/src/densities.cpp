#include "dyadic/densities.hpp"

#include <cmath>
#include <numbers>

#include "dyadic/arith.hpp"

namespace dyadic {

std::string rational_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational qpow(int q, int e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(1) / Rational(p);
}

namespace {

Rational inv(int q) { return Rational(1, q); }
Rational one_minus_inv(int q, int k) { return Rational(1) - qpow(q, -k); }

int ell_of(int delta, int m) { return delta <= 2 * m ? delta / 2 : m + 1; }

void check_delta(int delta, int m, const char* what) {
  if (delta < 2 || delta > 2 * m + 1 || (delta % 2 == 1 && delta != 2 * m + 1))
    throw Error(ErrorKind::InvalidKey, std::string(what) + " must be even in [2, 2m] or equal 2m+1");
}

void check_params(const DensityParams& p) {
  if (p.q < 2) throw Error(ErrorKind::InvalidKey, "q must be at least 2");
  if (p.m < 1) throw Error(ErrorKind::InvalidKey, "m must be positive");
  if (p.delta_tilde) check_delta(*p.delta_tilde, p.m, "delta~");
}

int need_delta_tilde(const DensityParams& p) {
  if (!p.delta_tilde) throw Error(ErrorKind::InvalidKey, "this key needs delta~");
  return *p.delta_tilde;
}

void validate_key(const OrbitDensityKey& k) {
  const auto& p = k.params;
  check_params(p);
  switch (k.index) {
    case PairIndex::Star:
    case PairIndex::RmRmUr: {
      const int dt = need_delta_tilde(p);
      if (k.delta_x != dt) throw Error(ErrorKind::InvalidKey, "delta_x must equal delta~ for this index");
      if (k.index == PairIndex::RmRmUr && k.lambda_x != dt)
        throw Error(ErrorKind::InvalidKey, "the unramified-compositum class has lambda = delta~");
      return;
    }
    case PairIndex::RmRmRm: break;
  }
  check_delta(k.delta_x, p.m, "delta_x");
  const int lx = ell_of(k.delta_x, p.m);
  if (p.delta_tilde && *p.delta_tilde == k.delta_x) {
    const int dt = *p.delta_tilde, lt = ell_of(dt, p.m);
    if (k.lambda_x < lt || k.lambda_x >= dt)
      throw Error(ErrorKind::InvalidKey, "need ell~ <= lambda < delta~ when delta_x = delta~");
    return;
  }
  if (p.delta_tilde) {
    const int lt = ell_of(*p.delta_tilde, p.m);
    if (k.lambda_x != std::min(lx, lt))
      throw Error(ErrorKind::InvalidKey, "lambda must be min(ell_x, ell~) when delta_x != delta~");
  } else if (k.lambda_x < 1 || k.lambda_x > lx) {
    throw Error(ErrorKind::InvalidKey, "lambda must lie in [1, ell_x]");
  }
}

}  // namespace

int rmrmrm_row(const OrbitDensityKey& k) {
  if (k.index != PairIndex::RmRmRm) throw Error(ErrorKind::InvalidKey, "not an (rm rm rm) key");
  validate_key(k);
  const int m = k.params.m;
  const bool diagonal = k.params.delta_tilde && *k.params.delta_tilde == k.delta_x;
  if (!diagonal) return k.delta_x <= 2 * m ? 1 : 2;
  if (k.delta_x == 2 * m + 1) return 5;
  return 2 * k.lambda_x == k.delta_x ? 3 : 4;
}

Rational epsilon_bar(const OrbitDensityKey& k) {
  validate_key(k);
  const int q = k.params.q, m = k.params.m, lam = k.lambda_x;
  const Rational a = Rational(1) - inv(q), b = one_minus_inv(q, 2);
  switch (k.index) {
    case PairIndex::Star: {
      const int dt = *k.params.delta_tilde;
      return Rational(1, 2) * qpow(q, -2 * dt - 2 * (dt / 2)) * b * b;
    }
    case PairIndex::RmRmUr: {
      const int dt = *k.params.delta_tilde;
      return qpow(q, -2 * dt) * (Rational(1) - Rational(1, 2) * qpow(q, -2 * (dt / 2))) * a * a * b;
    }
    case PairIndex::RmRmRm: break;
  }
  switch (rmrmrm_row(k)) {
    case 1: return qpow(q, -(k.delta_x / 2 + lam)) * a * a * b * b;
    case 2: return qpow(q, -(m + lam + 1)) * a * b * b;
    case 3: return qpow(q, -2 * lam) * a * (Rational(1) - Rational(2, q)) * b * b;
    default: return qpow(q, -2 * lam) * a * a * b * b;
  }
}

Rational stab_volume(const OrbitDensityKey& k) {
  validate_key(k);
  const int q = k.params.q;
  switch (k.index) {
    case PairIndex::Star:
      throw Error(ErrorKind::StarNotCovered, "the star stabilizer volume is not derived here");
    case PairIndex::RmRmUr:
      return qpow(q, -*k.params.delta_tilde) / (Rational(1) + inv(q));
    case PairIndex::RmRmRm: return qpow(q, -k.lambda_x);
  }
  return 0;
}

Rational ur_star_volume_sum(const DensityParams& p) {
  check_params(p);
  const int dt = need_delta_tilde(p);
  const Rational b = one_minus_inv(p.q, 2);
  return qpow(p.q, -dt) * (Rational(1) - inv(p.q)) * b * b;
}

Rational orbit_volume_sum(const OrbitDensityKey& k) {
  validate_key(k);
  const int q = k.params.q, m = k.params.m;
  const Rational a = Rational(1) - inv(q), b = one_minus_inv(q, 2);
  switch (k.index) {
    case PairIndex::Star: {
      const int dt = *k.params.delta_tilde;
      return Rational(1, 2) * qpow(q, -dt - 2 * (dt / 2)) * a * b * b;
    }
    case PairIndex::RmRmUr: {
      const int dt = *k.params.delta_tilde;
      return qpow(q, -dt) * (Rational(1) - Rational(1, 2) * qpow(q, -2 * (dt / 2))) * a * b * b;
    }
    case PairIndex::RmRmRm: break;
  }
  const int l1 = ell_of(k.delta_x, m);
  switch (rmrmrm_row(k)) {
    case 1: return qpow(q, -l1) * a * a * b * b;
    case 2: return qpow(q, -l1) * a * b * b;
    case 3: return qpow(q, -ell_of(*k.params.delta_tilde, m)) * a * (Rational(1) - Rational(2, q)) * b * b;
    default: return qpow(q, -k.lambda_x) * a * a * b * b;
  }
}

Rational q_index(int j, int q) {
  const Rational s = Rational(1) + inv(q);
  return qpow(q, j + 2) * s * s;
}

Rational d_volume(const DFamily& f, const DensityParams& p) {
  check_params(p);
  const int q = p.q, m = p.m, dt = need_delta_tilde(p), lt = ell_of(dt, m);
  const Rational a = Rational(1) - inv(q);
  switch (f.kind) {
    case DFamily::Kind::Ell1: {
      const int l1 = f.param;
      if (l1 < 1 || l1 > m + 1 || l1 == lt) throw Error(ErrorKind::InvalidKey, "D_ell1 needs ell1 != ell~");
      const int l = std::min(l1, lt);
      if (l1 <= m) return qpow(q, -l1 - l - 2) * a * a * a * a;
      return qpow(q, -l1 - l - 2) * a * a * a;
    }
    case DFamily::Kind::EllTilde: {
      const int i = f.param;
      if (i < lt || i >= dt) throw Error(ErrorKind::InvalidKey, "D_ell_tilde(i) needs ell~ <= i < delta~");
      if (i == lt && lt <= m) return qpow(q, -2 * lt - 2) * a * a * a * (Rational(1) - Rational(2, q));
      return qpow(q, -2 * i - 2) * a * a * a * a;
    }
    case DFamily::Kind::UrStar: return qpow(q, -2 * dt - 1) * a * a * a;
    case DFamily::Kind::Star: return qpow(q, -8 * (dt + 1));
  }
  return 0;
}

Covering covering_for(const OrbitDensityKey& k) {
  validate_key(k);
  const int m = k.params.m;
  const int dt = need_delta_tilde(k.params);
  switch (k.index) {
    case PairIndex::Star: return {DFamily::star(), -1};
    case PairIndex::RmRmUr: return {DFamily::ur_star(), dt - 1};
    case PairIndex::RmRmRm: break;
  }
  switch (rmrmrm_row(k)) {
    case 1:
    case 2: return {DFamily::ell1(ell_of(k.delta_x, m)), k.lambda_x};
    case 3: return {DFamily::ell_tilde(ell_of(dt, m)), ell_of(dt, m)};
    default: return {DFamily::ell_tilde(k.lambda_x), k.lambda_x};
  }
}

Rational star_group_order(int delta_tilde, int q) { return qpow(q, 4 * delta_tilde + 3) * (q - 1); }

Rational star_coset_index(int delta_tilde, int m, int q) {
  (void)m;
  return 2 * qpow(q, delta_tilde + 2 * (delta_tilde / 2));
}

Rational star_volume_from_counts(int dt, int q, const Rational& group_order, const Rational& coset_index) {
  // #G over O/p^{dt+1}: GL2 of O~/p~^{2(dt+1)} times GL2 of O/p^{dt+1}.
  const Rational gl_ext = Rational((q * q - q) * (q * q - 1)) * qpow(q, 4 * (2 * dt + 1));
  const Rational gl_base = Rational((q * q - q) * (q * q - 1)) * qpow(q, 4 * dt);
  return qpow(q, -8 * (dt + 1)) * gl_ext * gl_base / (coset_index * group_order);
}

std::vector<OrbitDensityKey> admissible_keys(int q, int m, int dt) {
  check_delta(dt, m, "delta~");
  const DensityParams p{q, m, dt};
  std::vector<OrbitDensityKey> out;
  out.push_back({PairIndex::Star, dt, 0, p});
  out.push_back({PairIndex::RmRmUr, dt, dt, p});
  const int lt = ell_of(dt, m);
  std::vector<int> deltas;
  for (int d = 2; d <= 2 * m; d += 2) deltas.push_back(d);
  deltas.push_back(2 * m + 1);
  for (int dx : deltas) {
    if (dx != dt) {
      out.push_back({PairIndex::RmRmRm, dx, std::min(ell_of(dx, m), lt), p});
      continue;
    }
    for (int lam = lt; lam < dt; ++lam) out.push_back({PairIndex::RmRmRm, dx, lam, p});
  }
  return out;
}

Rational e_prime(std::int64_t p, std::int64_t d0) {
  const std::int64_t disc = fundamental_discriminant(d0);
  const Rational x = Rational(1, 1) / Rational(mpz_class(std::to_string(p)));
  auto pw = [&](int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  const int chi = kronecker(disc, p);
  if (chi == 1) return 1 - 3 * pw(3) + 2 * pw(4) + pw(5) - 2 * pw(6);
  if (chi == -1) return (1 + pw(2)) * (1 - pw(2) - pw(3) + pw(4));
  const int dt = ord_p(disc, p);
  return (1 - x) * (1 + pw(2) - pw(3) + pw(2 * dt + 2 * (dt / 2) + 1));
}

TheoreticalConstant theoretical_constant(std::int64_t d0, char sign, std::int64_t euler_bound) {
  if (sign != '+' && sign != '-') throw Error(ErrorKind::InvalidArgument, "sign must be + or -");
  const std::int64_t disc = fundamental_discriminant(d0);
  const std::int64_t ad = disc < 0 ? -disc : disc;
  if (euler_bound < ad) euler_bound = ad;  // every tail prime must be unramified
  constexpr long double pi = std::numbers::pi_v<long double>;

  TheoreticalConstant out{};
  out.d0 = d0;
  out.sign = sign;
  if (d0 < 0) {
    out.c_symbolic = "8*pi";
    out.c_value = static_cast<double>(8 * pi);
  } else if (sign == '+') {
    out.c_symbolic = "16";
    out.c_value = 16.0;
  } else {
    out.c_symbolic = "4*pi^2";
    out.c_value = static_cast<double>(4 * pi * pi);
  }

  // L(2, chi) by partial sums; partial character sums are bounded by |disc|,
  // so the Abel tail is at most 2 |disc| / (N+1)^2.
  const std::int64_t terms = 2000000;
  long double l2 = 0;
  for (std::int64_t n = terms; n >= 1; --n) {
    const int c = kronecker(disc, n);
    if (c != 0) l2 += static_cast<long double>(c) / (static_cast<long double>(n) * n);
  }
  const long double l_tail = 2.0L * ad / ((terms + 1.0L) * (terms + 1.0L));

  // Euler product; for p > bound, -4 p^{-3} <= log E'_p <= 0 and
  // sum_{p > P} p^{-3} < 1 / (2 P^2).
  long double log_e = 0;
  for (std::int64_t p : primes_up_to(euler_bound)) log_e += std::log(e_prime(p, d0).get_d());
  const long double euler = std::exp(log_e);
  const long double euler_lo = euler * std::exp(-2.0L / (static_cast<long double>(euler_bound) * euler_bound));

  const long double zeta2 = pi * pi / 6;
  const long double root = std::sqrt(static_cast<long double>(ad));
  const long double c = static_cast<long double>(out.c_value);
  // Slack for floating-point accumulation over ~1e6 terms.
  const long double slack = 1e-12L;
  out.sqrt_abs_disc = static_cast<double>(root);
  out.zeta_k2 = static_cast<double>(zeta2 * l2);
  out.euler_product = static_cast<double>(euler);
  out.euler_bound = euler_bound;
  out.value = static_cast<double>(root * zeta2 * l2 * euler / c);
  out.lower = static_cast<double>(root * zeta2 * (l2 - l_tail) * euler_lo / c * (1 - slack));
  out.upper = static_cast<double>(root * zeta2 * (l2 + l_tail) * euler / c * (1 + slack));
  return out;
}

}  // namespace dyadic
