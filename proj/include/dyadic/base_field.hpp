#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/truncated_int.hpp"

namespace dyadic {

class BaseElem;

/// A dyadic base field: Q2 itself, or Q2(rho) for rho a root of an Eisenstein
/// polynomial z^2 + A1 z + A2 over Z2. Handles are interned, so copies are
/// cheap and equality is identity.
class BaseField {
 public:
  struct Data {
    int m;                 // 2 O = p^m
    TruncatedInt step_a1;  // only meaningful when m == 2
    TruncatedInt step_a2;
  };

  /// The prime dyadic field Q2 (m = 1).
  static BaseField q2();
  /// Q2(rho) with rho^2 + a1 rho + a2 = 0, a1 even, a2 = 2 * odd (m = 2).
  static BaseField step(std::int64_t a1, std::int64_t a2);

  int m() const { return data_->m; }
  int q() const { return 2; }
  /// Degree over Q2.
  int degree() const { return data_->m; }
  bool is_prime() const { return data_->m == 1; }
  const TruncatedInt& step_a1() const { return data_->step_a1; }
  const TruncatedInt& step_a2() const { return data_->step_a2; }
  /// Largest precision (in uniformizer units) an element can carry.
  int max_precision() const { return data_->m == 1 ? 64 : 128; }

  BaseElem zero() const;
  BaseElem one() const;
  BaseElem from_int(std::int64_t v) const;
  BaseElem uniformizer() const;
  BaseElem uniformizer_pow(int k) const;
  /// c0 + c1 * rho (c1 must be 0 for Q2).
  BaseElem element(const TruncatedInt& c0, const TruncatedInt& c1) const;
  /// Canonical representative of residue class number `index` of O/p^k.
  /// Residues are indexed by [0, 2^k) since q = 2.
  BaseElem residue(std::uint64_t index, int k) const;

  std::string describe() const;

  friend bool operator==(const BaseField& a, const BaseField& b) { return a.data_ == b.data_; }

 private:
  explicit BaseField(const Data* d) : data_(d) {}
  const Data* data_;
};

/// An element c0 + c1*rho of O_K (c1 = 0 over Q2), each coordinate a
/// truncated 2-adic integer. Precision is derived from the coordinates.
class BaseElem {
 public:
  BaseElem(BaseField field, TruncatedInt c0, TruncatedInt c1);

  const BaseField& field() const { return field_; }
  const TruncatedInt& c0() const { return c0_; }
  const TruncatedInt& c1() const { return c1_; }

  /// Known modulo p^precision().
  int precision() const;
  Order val() const;
  bool is_unit() const { return c0_.is_unit(); }
  /// x == y mod p^k.
  bool congruent(const BaseElem& o, int k) const;

  BaseElem operator-() const;
  friend BaseElem operator+(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator-(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator*(const BaseElem& a, const BaseElem& b);

  /// Inverse of a unit.
  BaseElem inverse() const;
  /// x / pi for val(x) >= 1 (precision drops by one).
  BaseElem div_uniformizer() const;
  BaseElem div_uniformizer(int k) const;
  /// x / 2 for val(x) >= m.
  BaseElem half() const;
  /// Reduce to precision k.
  BaseElem reduced(int k) const;
  /// Index of the class of x in O/p^k, inverse of BaseField::residue.
  std::uint64_t residue_index(int k) const;

  /// Exact equality of representatives and precisions.
  friend bool operator==(const BaseElem& a, const BaseElem& b);
  std::string to_string() const;

 private:
  BaseField field_;
  TruncatedInt c0_, c1_;
};

/// Square-class descriptor of a nonzero element.
struct SquareClass {
  enum class Kind { Square, UnramifiedUnit, RamifiedUnit, Uniformizer };
  Kind kind;
  int ell = 0;  // for RamifiedUnit; m+1 for Uniformizer
  /// Normalized representative: unit, or uniformizer times unit.
  BaseElem representative;
};

/// eps == a^2 (p^k) solvable with a a unit (eps a unit).
bool square_solvable(const BaseElem& eps, int k);
/// eps a unit: true iff it is a square (Hensel: mod p^{2m+1} suffices).
bool is_square(const BaseElem& eps);
/// Square class of a unit.
SquareClass square_class(const BaseElem& eps);
/// Square class of any nonzero element (uniformizer classes for odd order).
SquareClass general_square_class(const BaseElem& x);
/// x / y is a square (both nonzero).
bool same_square_class(const BaseElem& x, const BaseElem& y);
/// Representatives of K^x / K^x2; there are 2^{degree+2} of them.
std::vector<BaseElem> square_class_representatives(const BaseField& f);

const char* square_class_kind_name(SquareClass::Kind kind);

}  // namespace dyadic
