#pragma once

#include <optional>

#include "dyadic/level.hpp"
#include "dyadic/rng.hpp"

namespace dyadic {

/// A point (x1, x2) of the space of pairs of binary Hermitian forms over the
/// fixed extension; x_r = [[x_r0, x_r1], [x_r1^sigma, x_r2]].
struct VPoint {
  BaseElem x10, x12, x20, x22;
  ExtElem x11, x21;
};

struct ExtMat {
  ExtElem e11, e12, e21, e22;
};

struct BaseMat {
  BaseElem e11, e12, e21, e22;
};

/// (g1, g2) with g1 over the extension's integers and g2 over the base's.
struct GroupElem {
  ExtMat g1;
  BaseMat g2;
};

/// Coefficients of F_x(v) = a0 v1^2 + a1 v1 v2 + a2 v2^2.
struct FormCoeffs {
  BaseElem a0, a1, a2;
};

struct OrbitClass {
  PairIndex index;
  int delta_x;
  /// Level against the fixed extension; empty for the star class.
  std::optional<int> lambda_x;
};

/// The congruence families used to cover the orbits.
struct DFamily {
  enum class Kind { Ell1, EllTilde, UrStar, Star };
  Kind kind;
  int param = 0;  // ell1 for Ell1, i for EllTilde

  static DFamily ell1(int l1) { return {Kind::Ell1, l1}; }
  static DFamily ell_tilde(int i) { return {Kind::EllTilde, i}; }
  static DFamily ur_star() { return {Kind::UrStar, 0}; }
  static DFamily star() { return {Kind::Star, 0}; }
};

std::string family_name(const DFamily& f);

/// The prehomogeneous space attached to a fixed ramified extension k~.
class OrbitSpace {
 public:
  explicit OrbitSpace(QuadExt ktilde);

  const QuadExt& ktilde() const { return kt_; }
  const BaseField& base() const { return kt_.base(); }
  int delta_tilde() const { return kt_.delta(); }
  int ell_tilde() const { return kt_.ell(); }
  /// Working precision in base digits, 2 delta~ + 4.
  int working_precision() const { return 2 * kt_.delta() + 4; }

  FormCoeffs form_coeffs(const VPoint& x) const;
  BaseElem disc(const VPoint& x) const;

  VPoint act(const GroupElem& g, const VPoint& x) const;
  GroupElem compose(const GroupElem& g, const GroupElem& h) const;
  GroupElem identity() const;
  /// (n(u), 1) with n(u) = [[1, 0], [u, 1]].
  GroupElem lower_unipotent(const ExtElem& u) const;
  /// (diag(t1, t2), 1).
  GroupElem torus(const ExtElem& t1, const ExtElem& t2) const;
  ExtElem det1(const GroupElem& g) const;
  BaseElem det2(const GroupElem& g) const;

  /// Standard representative w_p with F_{w_p}(z, 1) = p(z).
  VPoint standard_rep(const EisensteinPoly& p) const;
  /// w_eta = (n(theta), 1) w_{p~}, theta the distinguished root of p~.
  VPoint w_eta() const;
  /// (n(eta - a1), 1) w_p: x11 = 1, x21 = eta^sigma, x12 = Tr eta - a1,
  /// x22 = N eta - a2.
  VPoint lifted_point(const EisensteinPoly& p, const ExtElem& eta) const;

  OrbitClass classify_orbit(const VPoint& x) const;

  /// Throws invalid-key when the family's parameter is out of range.
  void validate(const DFamily& f) const;
  bool d_membership(const VPoint& x, const DFamily& f) const;
  /// j with H(j) stabilizing the family (families other than Star).
  int family_subgroup_index(const DFamily& f) const;

  bool in_K(const GroupElem& g) const;
  bool in_H(const GroupElem& g, int j) const;
  bool in_G_deep(const GroupElem& g) const;

  /// kappa in K_v with act(kappa, w_{p2}) = w_p to the working precision.
  GroupElem transport_representative(const EisensteinPoly& p, const EisensteinPoly& p2) const;

  // Sampling at `digits` base digits (extension coordinates mod p^digits).
  VPoint sample_point(CounterRng& rng, int digits) const;
  GroupElem sample_K(CounterRng& rng, int digits) const;
  GroupElem sample_H(CounterRng& rng, int j, int digits) const;
  /// Uniform on the family's residues (rejection on the a1 condition).
  VPoint sample_family(CounterRng& rng, const DFamily& f, int digits) const;

  BaseElem random_base(CounterRng& rng, int digits) const;
  ExtElem random_ext(CounterRng& rng, int digits) const;

 private:
  bool a1_condition(const BaseElem& a1x, int ell) const;
  GroupElem sample_matrices(CounterRng& rng, int digits) const;
  ExtElem shift_theta(const ExtElem& x, int k) const;

  QuadExt kt_;
};

/// Root of p(z) in O_E to theta-adic precision n, where E = k(root of p2)
/// must be isomorphic to k(root of p). Returns (c, d) with root = c + d theta'.
std::pair<BaseElem, BaseElem> root_in(const EisensteinPoly& p, const QuadExt& e, int n);

}  // namespace dyadic
