#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dyadic/quad_ext.hpp"

namespace dyadic {

/// S_{i1,i2}(k1, k2): eta in O_2 / pi_2^{i1+i2} with
/// Tr(eta) == a1 (p^{i1}) and N(eta) == a2 (p^{i2}), (a1, a2) from k1_poly.
struct SSetQuery {
  EisensteinPoly k1_poly;
  QuadExt k2;
  int i1;
  int i2;
};

/// Largest admissible i1 + i2.
int s_set_modulus_cap(const BaseField& base);

std::vector<ExtElem> s_set(const SSetQuery& q);
std::uint64_t s_set_count(const SSetQuery& q);
bool s_set_nonempty(const SSetQuery& q);

struct NCounts {
  std::uint64_t n1;  // #S_{i,i}
  std::uint64_t n2;  // #S_{i,i+1}
};
NCounts n_counts(const QuadExt& k1, const QuadExt& k2, int i);

enum class PairIndex { Star, RmRmUr, RmRmRm };
const char* pair_index_name(PairIndex index);

/// Witness for the level. TraceGap: ord(Tr eta - a1) = i exactly and
/// N eta == a2 (p^{i+1}), norm_modulus = i + 1. UnramifiedCompositum: the
/// level equals delta, eta lies in S_{delta,delta} and both fields share delta;
/// here norm_modulus = trace_gap_order = delta.
struct LevelCertificate {
  enum class Kind { TraceGap, UnramifiedCompositum };
  Kind kind;
  ExtElem eta;
  int trace_gap_order;
  int norm_modulus;
};

/// Largest i with S_{i,i} nonempty (k1 != k2).
int level_by_scan(const QuadExt& k1, const QuadExt& k2);
/// Certificate search; its level is trace_gap_order.
LevelCertificate level_certificate(const QuadExt& k1, const QuadExt& k2);

/// Resolvent p3(z) = z^2 + linear z + constant whose roots generate the third
/// quadratic subfield of the compositum.
struct ThirdField {
  BaseElem linear;    // -[2(a2+b2) - a1 b1]
  BaseElem constant;  // J
  int delta3;
  /// pi^{-2a} p3(pi^a z) when it is Eisenstein (ord J odd).
  std::optional<EisensteinPoly> normalized;
};
ThirdField third_field(const QuadExt& k1, const QuadExt& k2);

/// (exponent of the relative discriminant of k1k2 over k1, over k2).
std::pair<int, int> relative_discriminants(const QuadExt& k1, const QuadExt& k2);

PairIndex classify_pair(const QuadExt& kx, const QuadExt& ktilde);

struct PairReport {
  int lev;
  int delta1;
  int delta2;
  int delta3;
  std::pair<int, int> rel_disc_exponents;
  PairIndex index;
  LevelCertificate certificate;
};
PairReport level_of(const QuadExt& k1, const QuadExt& k2);

}  // namespace dyadic
