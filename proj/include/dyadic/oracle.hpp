#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/densities.hpp"
#include "dyadic/orbits.hpp"

namespace dyadic {

struct MeasureEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
  std::optional<Rational> exact;
};

struct MeasureMode {
  enum class Kind { Exhaustive, MonteCarlo };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Residue precision for the exhaustive count; 0 means delta~ + 2.
  int digits = 0;
};

/// Every congruence family with a valid parameter for the extension.
std::vector<DFamily> families_for(const OrbitSpace& space);

/// Additive measure of the family's set, vol(V_O) = 1.
MeasureEstimate measure(const OrbitSpace& space, const DFamily& family, const MeasureMode& mode);
/// Exact count at `digits`; the (x11, x21) and (x10, x12, x20, x22) blocks are
/// histogrammed separately and joined on the a1 condition.
MeasureEstimate measure_exhaustive(const OrbitSpace& space, const DFamily& family, int digits);
/// Uniform points of V at the working precision; sample i draws from stream i,
/// so the result does not depend on the thread count.
MeasureEstimate measure_montecarlo(const OrbitSpace& space, const DFamily& family, std::uint64_t samples,
                                   std::uint64_t seed);
MeasureEstimate measure_montecarlo_serial(const OrbitSpace& space, const DFamily& family, std::uint64_t samples,
                                          std::uint64_t seed);

struct StabCount {
  std::uint64_t group_order;
  std::uint64_t coset_index;
};

/// Shape of the matrices A(c, d) spanning the identity component of the
/// stabilizer of w_{p~} modulo p^{delta~+1}.
enum class StabMatrixForm {
  LowerB1,  // [[c, -d], [b1 d, c - b1 d]]
  LowerB2,  // [[c, -d], [b2 d, c - b1 d]]
};

/// Counts (c1, d1) over O~/p~^{2(delta~+1)}, c1 a unit, for which
/// (A(c1, d1), (A(c1, d1) A(c1^s, d1^s))^{-1}) is integral on the base side and
/// fixes w_{p~} modulo p^{delta~+1}.
std::uint64_t stab_group_order(const QuadExt& ktilde, StabMatrixForm form);
/// Solutions (u, t), t a unit, of t = t^s, u^s = -u, u(u + D) = 0,
/// 2u = D(t - 1) with D = eta1 - eta2.
std::uint64_t stab_coset_by_equations(const QuadExt& ktilde);
/// (u, t) with ([[1, 0], [u, t]], 1) w_eta in Span(w_eta) modulo p^{delta~+1}.
std::uint64_t stab_coset_by_action(const QuadExt& ktilde);
/// Both counts; the two coset routes must agree.
StabCount stab_enumerate(const QuadExt& ktilde);

struct LiftingCheck {
  std::string name;
  std::string pair;
  bool passed = true;
  bool skipped = false;
  /// Not a hard requirement; reported only.
  bool informational = false;
  std::string detail;
};

struct LiftingReport {
  std::vector<LiftingCheck> checks;
  int pairs = 0;
  /// True when every non-informational, non-skipped check passed.
  bool all_passed() const;
};

LiftingReport lifting_suite(const BaseField& base);

struct InvarianceReport {
  DFamily family;
  std::uint64_t samples = 0;
  /// act(g, x) left the family for g in the stabilizing subgroup.
  std::uint64_t stability_violations = 0;
  /// Random g in K with act(g, x) back in the family.
  std::uint64_t transitions = 0;
  std::uint64_t transitions_outside_subgroup = 0;
  /// Sampled members whose orbit class disagrees with the family.
  std::uint64_t classification_mismatches = 0;
};

/// Subgroup stability and rigidity for every family with points.
std::vector<InvarianceReport> invariance_suite(const OrbitSpace& space, std::uint64_t samples, std::uint64_t seed);

}  // namespace dyadic
