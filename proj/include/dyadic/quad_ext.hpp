#pragma once

#include <string>
#include <vector>

#include "dyadic/base_field.hpp"

namespace dyadic {

/// z^2 + a1 z + a2 with ord(a1) >= 1 and ord(a2) = 1.
class EisensteinPoly {
 public:
  EisensteinPoly(BaseElem a1, BaseElem a2);

  const BaseElem& a1() const { return a1_; }
  const BaseElem& a2() const { return a2_; }
  const BaseField& base() const { return a1_.field(); }
  /// a1^2 - 4 a2.
  BaseElem disc() const;
  std::string to_string() const;

 private:
  BaseElem a1_, a2_;
};

/// Minimal polynomial of d*alpha + c when alpha is a root of p
/// (c in p_v, d a unit): another presentation of the same field.
EisensteinPoly transform_presentation(const EisensteinPoly& p, const BaseElem& c, const BaseElem& d);

/// c + d*theta, theta the distinguished root of the ambient Eisenstein
/// polynomial. Ring operations that need the polynomial live on QuadExt.
struct ExtElem {
  BaseElem c, d;

  int precision() const;
  /// min(2 ord c, 2 ord d + 1), in units of the extension's uniformizer.
  Order ext_val() const;
  bool is_unit() const { return c.is_unit(); }

  ExtElem operator-() const { return {-c, -d}; }
  friend ExtElem operator+(const ExtElem& x, const ExtElem& y) { return {x.c + y.c, x.d + y.d}; }
  friend ExtElem operator-(const ExtElem& x, const ExtElem& y) { return {x.c - y.c, x.d - y.d}; }
  friend ExtElem operator*(const BaseElem& s, const ExtElem& x) { return {s * x.c, s * x.d}; }
  friend bool operator==(const ExtElem& x, const ExtElem& y) { return x.c == y.c && x.d == y.d; }
};

/// Ramified quadratic extension K(theta), theta^2 + a1 theta + a2 = 0.
class QuadExt {
 public:
  explicit QuadExt(EisensteinPoly poly);

  const BaseField& base() const { return poly_.base(); }
  const EisensteinPoly& poly() const { return poly_; }
  const BaseElem& a1() const { return poly_.a1(); }
  const BaseElem& a2() const { return poly_.a2(); }
  int delta() const { return delta_; }
  int ell() const { return ell_; }
  int m() const { return base().m(); }

  ExtElem embed(const BaseElem& c) const { return {c, base().zero()}; }
  ExtElem make(const BaseElem& c, const BaseElem& d) const { return {c, d}; }
  ExtElem zero() const { return embed(base().zero()); }
  ExtElem one() const { return embed(base().one()); }
  ExtElem theta() const { return {base().zero(), base().one()}; }

  ExtElem mul(const ExtElem& x, const ExtElem& y) const;
  /// sigma(c + d theta) = (c - a1 d) - d theta.
  ExtElem conj(const ExtElem& x) const;
  BaseElem trace(const ExtElem& x) const;
  BaseElem norm(const ExtElem& x) const;
  ExtElem inverse(const ExtElem& x) const;
  /// Value of an arbitrary monic quadratic z^2 + b1 z + b0 at x.
  ExtElem eval_quadratic(const BaseElem& b1, const BaseElem& b0, const ExtElem& x) const;
  /// x == y modulo theta^n.
  bool congruent(const ExtElem& x, const ExtElem& y, int n) const;

  /// Canonical representative of class `index` in O_E / theta^n.
  ExtElem residue(std::uint64_t index, int n) const;
  std::uint64_t residue_index(const ExtElem& x, int n) const;

  std::string to_string() const { return poly_.to_string(); }

 private:
  EisensteinPoly poly_;
  int delta_;
  int ell_;
};

BaseElem trace(const ExtElem& x, const QuadExt& e);
BaseElem norm(const ExtElem& x, const QuadExt& e);

/// S-set criterion: same delta and S_{delta+1,delta+1} nonempty.
bool is_isomorphic(const QuadExt& e1, const QuadExt& e2);
/// Independent check: the discriminants lie in the same square class.
bool same_field_by_square_class(const QuadExt& e1, const QuadExt& e2);

/// One Eisenstein presentation per ramified quadratic extension, sorted by
/// delta. Memoized per base field.
const std::vector<QuadExt>& enumerate_ramified(const BaseField& base);

/// The extension K(sqrt(r)) for a class representative r; Eisenstein form.
QuadExt from_square_class(const BaseField& base, const SquareClass& cls);
QuadExt from_square_class(const BaseField& base, const BaseElem& representative);

}  // namespace dyadic
