#include "dyadic/arith.hpp"

#include <cstdlib>

#include "dyadic/errors.hpp"

namespace dyadic {

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  std::int64_t a = std::llabs(n);
  for (std::int64_t p = 2; p * p <= a; ++p) {
    if (a % p != 0) continue;
    a /= p;
    if (a % p == 0) return false;
  }
  return true;
}

std::int64_t fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    throw Error(ErrorKind::InvalidArgument, "need a squarefree integer other than 0 and 1");
  const std::int64_t r = ((d % 4) + 4) % 4;
  return r == 1 ? d : 4 * d;
}

bool is_fundamental_discriminant(std::int64_t disc) {
  if (disc == 0 || disc == 1) return false;
  const std::int64_t r = ((disc % 4) + 4) % 4;
  if (r == 1) return is_squarefree(disc);
  if (r != 0) return false;
  const std::int64_t d = disc / 4;
  const std::int64_t s = ((d % 4) + 4) % 4;
  return (s == 2 || s == 3) && is_squarefree(d);
}

std::int64_t squarefree_kernel(std::int64_t disc) {
  if (!is_fundamental_discriminant(disc)) throw Error(ErrorKind::NotFundamental, "not a fundamental discriminant");
  return (((disc % 4) + 4) % 4 == 1) ? disc : disc / 4;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a / n) for odd n.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int ord_p(std::int64_t n, std::int64_t p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "order of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace dyadic
