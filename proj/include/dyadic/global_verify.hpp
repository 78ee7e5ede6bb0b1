#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/densities.hpp"

namespace dyadic {

/// Fundamental discriminants with 0 < sign*disc < X, ascending in |disc|,
/// skipping the discriminant of Q(sqrt d0) when given.
std::vector<std::int64_t> enumerate_discriminants(std::int64_t X, char sign,
                                                  std::optional<std::int64_t> exclude_d0 = std::nullopt);

/// Reduced primitive forms of a negative discriminant.
std::int64_t class_number_by_forms(std::int64_t disc);
/// h for disc < 0 from the class number formula, before rounding.
double class_number_analytic(std::int64_t disc);
/// log of the fundamental unit of the maximal order, disc > 0.
double regulator(std::int64_t disc);
/// h R for disc > 0 from the exponentially convergent series.
double hr_analytic(std::int64_t disc);

struct QuadFieldData {
  std::int64_t disc;
  double hR;
  std::optional<std::int64_t> h;
  std::optional<double> R;
  std::string method;  // "forms", "series+pqa" or "cache"
};

/// hR kept to 12 significant digits so cached and fresh values coincide.
double round_significant(double x);
QuadFieldData hr(std::int64_t disc);

/// Discriminant of Q(sqrt(d d0)) / squares, d the kernel of discF.
std::int64_t pair_discriminant(std::int64_t discF, std::int64_t d0);

/// Memo of hR by discriminant; safe for concurrent lookups.
class HrCache {
 public:
  HrCache() = default;
  /// Lines "disc<TAB>hR<TAB>method"; a missing file is an empty cache.
  void load(const std::string& path);
  void save(const std::string& path) const;
  std::optional<double> find(std::int64_t disc) const;
  void insert(const QuadFieldData& d);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::int64_t, std::pair<double, std::string>> table_;
};

struct MeanValuePoint {
  std::int64_t X;
  double empirical;
  double ratio;
  std::int64_t field_count;
};

struct MeanValueReport {
  std::int64_t d0;
  char sign;
  std::int64_t X;
  double empirical;
  TheoreticalConstant theoretical;
  double ratio;
  std::int64_t field_count;
  std::vector<MeanValuePoint> trajectory;
  /// |ratio - 1| at X is no larger than at the smallest checkpoint.
  bool approaching = true;
};

/// X^{-2} sum of hR(F) hR(F*) over 0 < sign*disc_F < X, F != Q(sqrt d0);
/// prefix values at each checkpoint below X come from the same pass.
MeanValueReport mean_value(std::int64_t d0, char sign, std::int64_t X, HrCache* cache = nullptr,
                           const std::vector<std::int64_t>& checkpoints = {},
                           std::int64_t euler_bound = 100000);

}  // namespace dyadic
