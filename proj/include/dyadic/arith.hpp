#pragma once

#include <cstdint>
#include <vector>

namespace dyadic {

bool is_squarefree(std::int64_t n);
/// Discriminant of Q(sqrt d) for squarefree d != 0, 1.
std::int64_t fundamental_discriminant(std::int64_t d);
bool is_fundamental_discriminant(std::int64_t disc);
/// Squarefree d with Q(sqrt d) of discriminant `disc`.
std::int64_t squarefree_kernel(std::int64_t disc);
/// Kronecker symbol (a / n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);
/// Order of p in |n|, n != 0.
int ord_p(std::int64_t n, std::int64_t p);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

}  // namespace dyadic
