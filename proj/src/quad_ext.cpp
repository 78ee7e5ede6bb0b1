#include "dyadic/quad_ext.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

#include "dyadic/level.hpp"

namespace dyadic {

namespace {

// Coefficient text for the polynomial printer; compound values get parentheses.
std::string coeff_term(const BaseElem& a, const char* monomial, bool first) {
  std::string s = a.to_string();
  if (s == "0") return "";
  const bool compound = s.find_first_of("+-", 1) != std::string::npos;
  std::string sign = "+";
  if (!compound && s[0] == '-') {
    sign = "-";
    s = s.substr(1);
  }
  if (compound) s = "(" + s + ")";
  if (*monomial != '\0' && s == "1") s = "";
  std::string out = (first && sign == "+") ? "" : sign;
  return out + s + monomial;
}

}  // namespace

EisensteinPoly::EisensteinPoly(BaseElem a1, BaseElem a2) : a1_(std::move(a1)), a2_(std::move(a2)) {
  if (!(a1_.field() == a2_.field()))
    throw Error(ErrorKind::InvalidArgument, "coefficients over different bases");
  if (!a1_.val().ge(1) || !a2_.val().eq(1))
    throw Error(ErrorKind::NotEisenstein, "need ord(a1) >= 1 and ord(a2) = 1");
}

BaseElem EisensteinPoly::disc() const { return a1_ * a1_ - base().from_int(4) * a2_; }

std::string EisensteinPoly::to_string() const {
  return "z^2" + coeff_term(a1_, "z", false) + coeff_term(a2_, "", false);
}

EisensteinPoly transform_presentation(const EisensteinPoly& p, const BaseElem& c, const BaseElem& d) {
  if (!c.val().ge(1) || !d.is_unit())
    throw Error(ErrorKind::InvalidArgument, "presentation change needs c in p and d a unit");
  // (z - c)^2 + a1 d (z - c) + a2 d^2
  const BaseElem two = c.field().from_int(2);
  return EisensteinPoly(p.a1() * d - two * c, c * c - p.a1() * c * d + p.a2() * d * d);
}

int ExtElem::precision() const { return std::min(2 * c.precision(), 2 * d.precision() + 1); }

Order ExtElem::ext_val() const {
  const int prec = precision();
  const Order oc = c.val(), od = d.val();
  int r = prec;
  if (oc.is_exact()) r = std::min(r, 2 * oc.value());
  if (od.is_exact()) r = std::min(r, 2 * od.value() + 1);
  return r < prec ? Order::exact(r) : Order::at_least(prec);
}

QuadExt::QuadExt(EisensteinPoly poly) : poly_(std::move(poly)) {
  delta_ = poly_.disc().val().get();
  const int m = base().m();
  const int v1 = poly_.a1().val().is_exact() ? poly_.a1().val().value() : m + 1;
  ell_ = v1 <= m ? v1 : m + 1;
  if (ell_ != (delta_ + 1) / 2 || delta_ < 2 || delta_ > 2 * m + 1)
    throw Error(ErrorKind::InternalMismatch, "discriminant exponent inconsistent with ell");
}

ExtElem QuadExt::mul(const ExtElem& x, const ExtElem& y) const {
  // theta^2 = -a1 theta - a2
  const BaseElem dd = x.d * y.d;
  return {x.c * y.c - a2() * dd, x.c * y.d + x.d * y.c - a1() * dd};
}

ExtElem QuadExt::conj(const ExtElem& x) const { return {x.c - a1() * x.d, -x.d}; }

BaseElem QuadExt::trace(const ExtElem& x) const {
  return base().from_int(2) * x.c - a1() * x.d;
}

BaseElem QuadExt::norm(const ExtElem& x) const {
  return x.c * x.c - a1() * x.c * x.d + a2() * x.d * x.d;
}

ExtElem QuadExt::inverse(const ExtElem& x) const {
  if (!x.is_unit()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit");
  return norm(x).inverse() * conj(x);
}

ExtElem QuadExt::eval_quadratic(const BaseElem& b1, const BaseElem& b0, const ExtElem& x) const {
  return mul(x, x) + b1 * x + embed(b0);
}

bool QuadExt::congruent(const ExtElem& x, const ExtElem& y, int n) const {
  return (x - y).ext_val().ge(n);
}

ExtElem QuadExt::residue(std::uint64_t index, int n) const {
  const int nc = (n + 1) / 2, nd = n / 2;
  return {base().residue(index & ((1ULL << nc) - 1), nc), base().residue(index >> nc, nd)};
}

std::uint64_t QuadExt::residue_index(const ExtElem& x, int n) const {
  const int nc = (n + 1) / 2, nd = n / 2;
  return x.c.residue_index(nc) | (x.d.residue_index(nd) << nc);
}

BaseElem trace(const ExtElem& x, const QuadExt& e) { return e.trace(x); }
BaseElem norm(const ExtElem& x, const QuadExt& e) { return e.norm(x); }

bool is_isomorphic(const QuadExt& e1, const QuadExt& e2) {
  if (!(e1.base() == e2.base())) throw Error(ErrorKind::InvalidArgument, "different base fields");
  if (e1.delta() != e2.delta()) return false;
  const int d = e1.delta();
  return s_set_nonempty(SSetQuery{e1.poly(), e2, d + 1, d + 1});
}

bool same_field_by_square_class(const QuadExt& e1, const QuadExt& e2) {
  return same_square_class(e1.poly().disc(), e2.poly().disc());
}

const std::vector<QuadExt>& enumerate_ramified(const BaseField& base) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<BaseField, std::vector<QuadExt>>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& bucket = cache[base.m()];
  for (const auto& [f, list] : bucket)
    if (f == base) return list;

  const int m = base.m();
  const int r = 2 * m + 1;
  std::vector<BaseElem> units;
  for (std::uint64_t idx = 0; idx < (1ULL << r); ++idx) {
    BaseElem u = base.residue(idx, r);
    if (u.is_unit()) units.push_back(u);
  }
  std::vector<BaseElem> a1s{base.zero()};
  for (int l = 1; l <= m; ++l) {
    const BaseElem pl = base.uniformizer_pow(l);
    for (const auto& u : units) a1s.push_back(pl * u);
  }
  const BaseElem pi = base.uniformizer();
  std::vector<QuadExt> reps;
  for (const auto& a1 : a1s) {
    for (const auto& u : units) {
      QuadExt e(EisensteinPoly(a1, pi * u));
      bool fresh = true;
      for (const auto& rep : reps)
        if (is_isomorphic(rep, e)) { fresh = false; break; }
      if (fresh) reps.push_back(e);
    }
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [](const QuadExt& x, const QuadExt& y) { return x.delta() < y.delta(); });
  bucket.emplace_back(base, std::move(reps));
  return bucket.back().second;
}

QuadExt from_square_class(const BaseField& base, const SquareClass& cls) {
  const int m = base.m();
  switch (cls.kind) {
    case SquareClass::Kind::Square:
      throw Error(ErrorKind::DegenerateClass, "square class gives the base field itself");
    case SquareClass::Kind::UnramifiedUnit:
      throw Error(ErrorKind::UnramifiedClass, "class generates the unramified extension");
    case SquareClass::Kind::Uniformizer:
      return QuadExt(EisensteinPoly(base.zero(), -cls.representative));
    case SquareClass::Kind::RamifiedUnit: break;
  }
  const int ell = cls.ell;
  const int i = 2 * (m - ell) + 1;
  const BaseElem& eps = cls.representative;
  // Normalize eps to 1 + pi^i c, then eta = (pi^ell / 2)(sqrt(eps) - 1) is a
  // root of z^2 + pi^ell z - (eps - 1) pi^{2 ell} / 4.
  std::optional<BaseElem> root;
  for (std::uint64_t idx = 0; idx < (1ULL << i) && !root; ++idx) {
    const BaseElem a = base.residue(idx, i);
    if (a.is_unit() && (a * a).congruent(eps, i)) root = a;
  }
  if (!root) throw Error(ErrorKind::InternalMismatch, "square class level inconsistent");
  const BaseElem e1 = eps * (*root * *root).inverse();
  const BaseElem pl = base.uniformizer_pow(ell);
  const BaseElem a2 = -((e1 - base.one()) * pl * pl).half().half();
  return QuadExt(EisensteinPoly(pl, a2));
}

QuadExt from_square_class(const BaseField& base, const BaseElem& representative) {
  return from_square_class(base, general_square_class(representative));
}

}  // namespace dyadic
