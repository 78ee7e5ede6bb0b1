#include "dyadic/level.hpp"

#include <algorithm>
#include <string>

namespace dyadic {

namespace {

void check_query(const SSetQuery& q) {
  if (!(q.k1_poly.base() == q.k2.base()))
    throw Error(ErrorKind::InvalidArgument, "S-set fields over different bases");
  if (q.i1 < 0 || q.i2 < q.i1 || q.i2 > q.i1 + 1)
    throw Error(ErrorKind::InvalidArgument, "need 0 <= i1 <= i2 <= i1+1");
  if (q.i1 + q.i2 > s_set_modulus_cap(q.k2.base()))
    throw Error(ErrorKind::ModulusCapExceeded,
                "i1+i2 = " + std::to_string(q.i1 + q.i2) + " exceeds the working cap");
}

// Visits every eta in S_{i1,i2}; the visitor returns false to stop early.
template <typename Visit>
void for_each_in_s_set(const SSetQuery& q, Visit&& visit) {
  check_query(q);
  const int n = q.i1 + q.i2;
  const QuadExt& e = q.k2;
  const BaseElem& a1 = q.k1_poly.a1();
  const BaseElem& a2 = q.k1_poly.a2();
  for (std::uint64_t idx = 0; idx < (1ULL << n); ++idx) {
    const ExtElem eta = e.residue(idx, n);
    if (!e.trace(eta).congruent(a1, q.i1)) continue;
    if (!e.norm(eta).congruent(a2, q.i2)) continue;
    if (!visit(eta)) return;
  }
}

void require_distinct(const QuadExt& k1, const QuadExt& k2) {
  if (is_isomorphic(k1, k2))
    throw Error(ErrorKind::IsomorphicFields,
                k1.to_string() + " and " + k2.to_string() + " generate the same field");
}

int scan_bound(const QuadExt& k1, const QuadExt& k2) { return (k1.delta() + k2.delta()) / 2; }

}  // namespace

int s_set_modulus_cap(const BaseField& base) { return 2 * (2 * base.m() + 1) + 2; }

std::vector<ExtElem> s_set(const SSetQuery& q) {
  std::vector<ExtElem> out;
  for_each_in_s_set(q, [&](const ExtElem& eta) {
    out.push_back(eta);
    return true;
  });
  return out;
}

std::uint64_t s_set_count(const SSetQuery& q) {
  std::uint64_t n = 0;
  for_each_in_s_set(q, [&](const ExtElem&) {
    ++n;
    return true;
  });
  return n;
}

bool s_set_nonempty(const SSetQuery& q) {
  bool found = false;
  for_each_in_s_set(q, [&](const ExtElem&) {
    found = true;
    return false;
  });
  return found;
}

NCounts n_counts(const QuadExt& k1, const QuadExt& k2, int i) {
  return {s_set_count(SSetQuery{k1.poly(), k2, i, i}), s_set_count(SSetQuery{k1.poly(), k2, i, i + 1})};
}

const char* pair_index_name(PairIndex index) {
  switch (index) {
    case PairIndex::Star: return "star";
    case PairIndex::RmRmUr: return "rm_rm_ur";
    case PairIndex::RmRmRm: return "rm_rm_rm";
  }
  return "unknown";
}

int level_by_scan(const QuadExt& k1, const QuadExt& k2) {
  const int bound = scan_bound(k1, k2);
  int lev = 0;
  for (int i = 1; i <= bound + 1; ++i) {
    const bool nonempty = s_set_nonempty(SSetQuery{k1.poly(), k2, i, i});
    if (nonempty && lev != i - 1)
      throw Error(ErrorKind::InternalMismatch, "S_{i,i} nonempty after an empty level");
    if (nonempty) lev = i;
  }
  if (lev > bound)
    throw Error(ErrorKind::InternalMismatch, "S-set nonempty beyond the discriminant bound");
  return lev;
}

LevelCertificate level_certificate(const QuadExt& k1, const QuadExt& k2) {
  const int bound = scan_bound(k1, k2);
  const BaseElem& a1 = k1.a1();
  const BaseElem& a2 = k1.a2();
  std::optional<LevelCertificate> cert;
  for (int i = 1; i <= bound; ++i) {
    const int n = 2 * i + 2;
    if (n > s_set_modulus_cap(k2.base())) break;
    for (std::uint64_t idx = 0; idx < (1ULL << n); ++idx) {
      const ExtElem eta = k2.residue(idx, n);
      if (!k2.norm(eta).congruent(a2, i + 1)) continue;
      if (!(k2.trace(eta) - a1).val().eq(i)) continue;
      if (cert && cert->trace_gap_order != i)
        throw Error(ErrorKind::InternalMismatch, "certificates at two different indices");
      cert = LevelCertificate{LevelCertificate::Kind::TraceGap, eta, i, i + 1};
      break;
    }
  }
  if (cert) return *cert;
  // No trace-gap witness: the only remaining possibility is an unramified
  // compositum, where S_{delta,delta+1} is empty but S_{delta,delta} is not.
  if (k1.delta() == k2.delta()) {
    const int d = k1.delta();
    const auto s = s_set(SSetQuery{k1.poly(), k2, d, d});
    if (!s.empty()) return LevelCertificate{LevelCertificate::Kind::UnramifiedCompositum, s.front(), d, d};
  }
  throw Error(ErrorKind::InternalMismatch, "no level certificate found");
}

ThirdField third_field(const QuadExt& k1, const QuadExt& k2) {
  require_distinct(k1, k2);
  const BaseField& f = k1.base();
  const BaseElem &a1 = k1.a1(), &a2 = k1.a2(), &b1 = k2.a1(), &b2 = k2.a2();
  const BaseElem two = f.from_int(2), four = f.from_int(4);
  const BaseElem lin = two * (a2 + b2) - a1 * b1;
  const BaseElem J = (a2 - b2) * (a2 - b2) + (a1 - b1) * (a1 * b2 - a2 * b1);
  ThirdField out{-lin, J, 0, std::nullopt};

  const BaseElem d3 = lin * lin - four * J;
  const SquareClass cls = general_square_class(d3);
  switch (cls.kind) {
    case SquareClass::Kind::Square:
      throw Error(ErrorKind::InternalMismatch, "resolvent splits although k1 != k2");
    case SquareClass::Kind::UnramifiedUnit: out.delta3 = 0; break;
    case SquareClass::Kind::RamifiedUnit: out.delta3 = 2 * cls.ell; break;
    case SquareClass::Kind::Uniformizer: out.delta3 = 2 * f.m() + 1; break;
  }

  const int vj = J.val().get();
  const int a = vj / 2;
  if (vj % 2 == 1 && lin.val().ge(a + 1)) {
    EisensteinPoly p(-lin.div_uniformizer(a), J.div_uniformizer(2 * a));
    const int dn = p.disc().val().get();
    if (dn != out.delta3)
      throw Error(ErrorKind::InternalMismatch, "normalized resolvent disagrees with square class");
    out.normalized = p;
  }
  return out;
}

std::pair<int, int> relative_discriminants(const QuadExt& k1, const QuadExt& k2) {
  require_distinct(k1, k2);
  const int d1 = k1.delta(), d2 = k2.delta();
  if (k1.ell() == k2.ell()) {
    const int e = 2 * (d1 - level_by_scan(k1, k2));
    return {e, e};
  }
  if (k1.ell() > k2.ell()) return {d2, 2 * d1 - d2};
  return {2 * d2 - d1, d1};
}

PairIndex classify_pair(const QuadExt& kx, const QuadExt& ktilde) {
  if (is_isomorphic(kx, ktilde)) return PairIndex::Star;
  if (kx.delta() == ktilde.delta() && level_by_scan(kx, ktilde) == ktilde.delta())
    return PairIndex::RmRmUr;
  return PairIndex::RmRmRm;
}

PairReport level_of(const QuadExt& k1, const QuadExt& k2) {
  require_distinct(k1, k2);
  const int scanned = level_by_scan(k1, k2);
  const LevelCertificate cert = level_certificate(k1, k2);
  if (cert.trace_gap_order != scanned)
    throw Error(ErrorKind::InternalMismatch, "definition scan and certificate disagree");
  if (k1.ell() != k2.ell() && scanned != std::min(k1.ell(), k2.ell()))
    throw Error(ErrorKind::InternalMismatch, "unequal-ell level differs from min ell");
  const ThirdField t = third_field(k1, k2);
  PairReport r{scanned, k1.delta(), k2.delta(), t.delta3, relative_discriminants(k1, k2),
               PairIndex::RmRmRm, cert};
  if (k1.delta() == k2.delta() && scanned == k1.delta()) r.index = PairIndex::RmRmUr;
  return r;
}

}  // namespace dyadic
