#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dyadic/level.hpp"
#include "dyadic/orbits.hpp"

namespace dyadic {

using Rational = mpq_class;

/// "num/den" (denominator always printed).
std::string rational_string(const Rational& r);
/// q^e for any integer e.
Rational qpow(int q, int e);

struct DensityParams {
  int q = 2;
  int m = 1;
  /// Needed for every row except the two off-diagonal (rm rm rm) rows.
  std::optional<int> delta_tilde;
};

struct OrbitDensityKey {
  PairIndex index;
  int delta_x = 0;
  int lambda_x = 0;
  DensityParams params;
};

/// Table value of the grouped density.
Rational epsilon_bar(const OrbitDensityKey& key);
/// Row (1..5) of the (rm rm rm) table selected by the key.
int rmrmrm_row(const OrbitDensityKey& key);
/// Stabilizer volume; star-not-covered for the star class.
Rational stab_volume(const OrbitDensityKey& key);
/// Summed orbital volume over the grouped class.
Rational orbit_volume_sum(const OrbitDensityKey& key);
/// vol(K w^ur) + vol(K w_eta): the D^{ur*} covering total.
Rational ur_star_volume_sum(const DensityParams& params);

/// #(K / H(j)) = q^{j+2} (1 + 1/q)^2.
Rational q_index(int j, int q);
Rational d_volume(const DFamily& family, const DensityParams& params);

/// The covering statement: which family covers a key's orbits and with
/// what subgroup index j (orbit volume = Q(j) vol(D)).
struct Covering {
  DFamily family;
  int j;
};
Covering covering_for(const OrbitDensityKey& key);

/// Stabilizer group order and coset index for the star orbit, in closed form.
Rational star_group_order(int delta_tilde, int q);
Rational star_coset_index(int delta_tilde, int m, int q);
/// The star orbit volume rebuilt from the D* volume and the two counts.
Rational star_volume_from_counts(int delta_tilde, int q, const Rational& group_order, const Rational& coset_index);

/// Every key admitted by the level bounds for (q, m, delta~), all indices.
std::vector<OrbitDensityKey> admissible_keys(int q, int m, int delta_tilde);

/// Local factor E'_p(d0).
Rational e_prime(std::int64_t p, std::int64_t d0);

struct TheoreticalConstant {
  std::int64_t d0;
  char sign;
  std::string c_symbolic;
  double c_value;
  double sqrt_abs_disc;
  double zeta_k2;      // zeta(2) L(2, chi)
  double euler_product;  // prod_{p <= bound} E'_p
  std::int64_t euler_bound;
  double value;  // c^{-1} M(d0)
  double lower;
  double upper;
};
TheoreticalConstant theoretical_constant(std::int64_t d0, char sign, std::int64_t euler_bound = 100000);

}  // namespace dyadic
