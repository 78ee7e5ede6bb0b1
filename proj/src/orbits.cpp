#include "dyadic/orbits.hpp"

#include <algorithm>
#include <string>

namespace dyadic {

std::string family_name(const DFamily& f) {
  switch (f.kind) {
    case DFamily::Kind::Ell1: return "D_ell1(" + std::to_string(f.param) + ")";
    case DFamily::Kind::EllTilde: return "D_ell_tilde(" + std::to_string(f.param) + ")";
    case DFamily::Kind::UrStar: return "D_ur_star";
    case DFamily::Kind::Star: return "D_star";
  }
  return "unknown";
}

OrbitSpace::OrbitSpace(QuadExt ktilde) : kt_(std::move(ktilde)) {}

FormCoeffs OrbitSpace::form_coeffs(const VPoint& x) const {
  const QuadExt& e = kt_;
  return {e.norm(x.x11) - x.x10 * x.x12,
          e.trace(e.mul(x.x11, e.conj(x.x21))) - x.x10 * x.x22 - x.x12 * x.x20,
          e.norm(x.x21) - x.x20 * x.x22};
}

BaseElem OrbitSpace::disc(const VPoint& x) const {
  const FormCoeffs f = form_coeffs(x);
  return f.a1 * f.a1 - base().from_int(4) * f.a0 * f.a2;
}

namespace {

struct Herm {
  BaseElem r0;
  ExtElem r1;
  BaseElem r2;
};

Herm scale_add(const BaseElem& s, const Herm& x, const BaseElem& t, const Herm& y) {
  return {s * x.r0 + t * y.r0, s * x.r1 + t * y.r1, s * x.r2 + t * y.r2};
}

// g1 M tg1^sigma for one Hermitian component.
Herm conj_by(const QuadExt& e, const ExtMat& g, const Herm& x) {
  const ExtElem x1s = e.conj(x.r1);
  const ExtElem g12s = e.conj(g.e12), g21s = e.conj(g.e21), g22s = e.conj(g.e22);
  Herm y{e.norm(g.e11) * x.r0 + e.trace(e.mul(e.mul(g.e11, g12s), x.r1)) + e.norm(g.e12) * x.r2,
         e.mul(e.mul(g.e11, g21s), e.embed(x.r0)) + e.mul(e.mul(g.e11, g22s), x.r1) +
             e.mul(e.mul(g.e12, g21s), x1s) + e.mul(e.mul(g.e12, g22s), e.embed(x.r2)),
         e.norm(g.e21) * x.r0 + e.trace(e.mul(e.mul(g.e21, g22s), x.r1)) + e.norm(g.e22) * x.r2};
  return y;
}

ExtMat mat_mul(const QuadExt& e, const ExtMat& a, const ExtMat& b) {
  return {e.mul(a.e11, b.e11) + e.mul(a.e12, b.e21), e.mul(a.e11, b.e12) + e.mul(a.e12, b.e22),
          e.mul(a.e21, b.e11) + e.mul(a.e22, b.e21), e.mul(a.e21, b.e12) + e.mul(a.e22, b.e22)};
}

BaseMat mat_mul(const BaseMat& a, const BaseMat& b) {
  return {a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
          a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
}

}  // namespace

VPoint OrbitSpace::act(const GroupElem& g, const VPoint& x) const {
  const Herm h1{x.x10, x.x11, x.x12}, h2{x.x20, x.x21, x.x22};
  const Herm m1 = scale_add(g.g2.e11, h1, g.g2.e12, h2);
  const Herm m2 = scale_add(g.g2.e21, h1, g.g2.e22, h2);
  const Herm y1 = conj_by(kt_, g.g1, m1), y2 = conj_by(kt_, g.g1, m2);
  return {y1.r0, y1.r2, y2.r0, y2.r2, y1.r1, y2.r1};
}

GroupElem OrbitSpace::compose(const GroupElem& g, const GroupElem& h) const {
  return {mat_mul(kt_, g.g1, h.g1), mat_mul(g.g2, h.g2)};
}

GroupElem OrbitSpace::identity() const {
  const auto& f = base();
  return {{kt_.one(), kt_.zero(), kt_.zero(), kt_.one()}, {f.one(), f.zero(), f.zero(), f.one()}};
}

GroupElem OrbitSpace::lower_unipotent(const ExtElem& u) const {
  GroupElem g = identity();
  g.g1.e21 = u;
  return g;
}

GroupElem OrbitSpace::torus(const ExtElem& t1, const ExtElem& t2) const {
  GroupElem g = identity();
  g.g1.e11 = t1;
  g.g1.e22 = t2;
  return g;
}

ExtElem OrbitSpace::det1(const GroupElem& g) const {
  return kt_.mul(g.g1.e11, g.g1.e22) - kt_.mul(g.g1.e12, g.g1.e21);
}

BaseElem OrbitSpace::det2(const GroupElem& g) const {
  return g.g2.e11 * g.g2.e22 - g.g2.e12 * g.g2.e21;
}

VPoint OrbitSpace::standard_rep(const EisensteinPoly& p) const {
  const auto& f = base();
  const BaseElem& a1 = p.a1();
  return {f.zero(), a1, f.one(), a1 * a1 - p.a2(), kt_.one(), kt_.embed(a1)};
}

VPoint OrbitSpace::w_eta() const {
  const auto& f = base();
  return {f.zero(), f.zero(), f.one(), f.zero(), kt_.one(), -kt_.theta()};
}

VPoint OrbitSpace::lifted_point(const EisensteinPoly& p, const ExtElem& eta) const {
  return act(lower_unipotent(eta - kt_.embed(p.a1())), standard_rep(p));
}

OrbitClass OrbitSpace::classify_orbit(const VPoint& x) const {
  const BaseElem d = disc(x);
  if (!d.val().is_exact()) throw Error(ErrorKind::Nonsemisimple, "disc(F_x) vanishes to its precision");
  const SquareClass cls = general_square_class(d);
  if (cls.kind == SquareClass::Kind::Square)
    throw Error(ErrorKind::OutOfScopeOrbit, "F_x splits over the base field");
  if (cls.kind == SquareClass::Kind::UnramifiedUnit)
    throw Error(ErrorKind::OutOfScopeOrbit, "F_x splits over the unramified extension");
  const QuadExt kx = from_square_class(base(), cls);
  const PairIndex index = classify_pair(kx, kt_);
  OrbitClass out{index, kx.delta(), std::nullopt};
  if (index != PairIndex::Star) out.lambda_x = level_by_scan(kx, kt_);
  return out;
}

void OrbitSpace::validate(const DFamily& f) const {
  const int m = base().m();
  switch (f.kind) {
    case DFamily::Kind::Ell1:
      if (f.param < 1 || f.param > m + 1 || f.param == ell_tilde())
        throw Error(ErrorKind::InvalidKey, "D_ell1 needs 1 <= ell1 <= m+1 and ell1 != ell~");
      return;
    case DFamily::Kind::EllTilde:
      if (f.param < ell_tilde() || f.param >= delta_tilde())
        throw Error(ErrorKind::InvalidKey, "D_ell_tilde(i) needs ell~ <= i < delta~");
      return;
    case DFamily::Kind::UrStar:
    case DFamily::Kind::Star: return;
  }
}

bool OrbitSpace::a1_condition(const BaseElem& a1x, int ell) const {
  const int m = base().m();
  return ell <= m ? a1x.val().eq(ell) : a1x.val().ge(m + 1);
}

bool OrbitSpace::d_membership(const VPoint& x, const DFamily& f) const {
  validate(f);
  const int dt = delta_tilde();
  if (f.kind == DFamily::Kind::Star) {
    const VPoint w = w_eta();
    const int n = dt + 1;
    return x.x10.congruent(w.x10, n) && x.x12.congruent(w.x12, n) && x.x20.congruent(w.x20, n) &&
           x.x22.congruent(w.x22, n) && kt_.congruent(x.x11, w.x11, 2 * n) &&
           kt_.congruent(x.x21, w.x21, 2 * n);
  }
  if (!x.x11.is_unit() || !x.x20.is_unit() || !x.x21.ext_val().eq(1)) return false;
  switch (f.kind) {
    case DFamily::Kind::Ell1: {
      const int l = std::min(f.param, ell_tilde());
      return x.x12.val().eq(l) && x.x22.val().ge(l + 1) && a1_condition(form_coeffs(x).a1, f.param);
    }
    case DFamily::Kind::EllTilde:
      return x.x12.val().eq(f.param) && x.x22.val().ge(f.param + 1) &&
             a1_condition(form_coeffs(x).a1, ell_tilde());
    case DFamily::Kind::UrStar:
      return x.x12.val().ge(dt) && x.x22.val().ge(dt) && a1_condition(form_coeffs(x).a1, ell_tilde());
    case DFamily::Kind::Star: break;
  }
  return false;
}

int OrbitSpace::family_subgroup_index(const DFamily& f) const {
  validate(f);
  switch (f.kind) {
    case DFamily::Kind::Ell1: return std::min(f.param, ell_tilde());
    case DFamily::Kind::EllTilde: return f.param;
    case DFamily::Kind::UrStar: return delta_tilde() - 1;
    case DFamily::Kind::Star: break;
  }
  throw Error(ErrorKind::InvalidKey, "D_star is stabilized by the deep congruence subgroup");
}

bool OrbitSpace::in_K(const GroupElem& g) const { return det1(g).is_unit() && det2(g).is_unit(); }

bool OrbitSpace::in_H(const GroupElem& g, int j) const {
  return in_K(g) && g.g1.e21.ext_val().ge(j + 1) && g.g2.e21.val().ge(1);
}

bool OrbitSpace::in_G_deep(const GroupElem& g) const {
  const int n = delta_tilde() + 1;
  const GroupElem id = identity();
  auto ext_ok = [&](const ExtElem& a, const ExtElem& b) { return kt_.congruent(a, b, 2 * n); };
  auto base_ok = [&](const BaseElem& a, const BaseElem& b) { return a.congruent(b, n); };
  return ext_ok(g.g1.e11, id.g1.e11) && ext_ok(g.g1.e12, id.g1.e12) && ext_ok(g.g1.e21, id.g1.e21) &&
         ext_ok(g.g1.e22, id.g1.e22) && base_ok(g.g2.e11, id.g2.e11) && base_ok(g.g2.e12, id.g2.e12) &&
         base_ok(g.g2.e21, id.g2.e21) && base_ok(g.g2.e22, id.g2.e22);
}

std::pair<BaseElem, BaseElem> root_in(const EisensteinPoly& p, const QuadExt& e, int n) {
  const QuadExt k1(p);
  if (!is_isomorphic(k1, e)) throw Error(ErrorKind::NotIsomorphic, "polynomial has no root in this field");
  const int delta = e.delta();
  const BaseField& f = e.base();
  // Classes beta mod theta^s close to a root satisfy ord p(beta) >= s + min(s, delta).
  std::vector<ExtElem> cands{e.zero()};
  for (int s = 0; s < n; ++s) {
    const ExtElem step = (s % 2 == 0) ? e.embed(f.uniformizer_pow(s / 2))
                                      : f.uniformizer_pow(s / 2) * e.theta();
    std::vector<ExtElem> next;
    for (const auto& b : cands)
      for (const ExtElem& lift : {b, b + step}) {
        const int need = (s + 1) + std::min(s + 1, delta);
        if (e.eval_quadratic(p.a1(), p.a2(), lift).ext_val().ge(need)) next.push_back(lift);
      }
    if (next.empty()) throw Error(ErrorKind::InternalMismatch, "root lifting lost every class");
    cands = std::move(next);
  }
  // Prefer the root whose d is closest to 1, so a pure shift gives d = 1.
  auto closeness = [&](const ExtElem& b) {
    const Order o = (b.d - f.one()).val();
    return o.is_exact() ? o.value() : o.value() + 1;
  };
  const auto best = std::max_element(cands.begin(), cands.end(), [&](const ExtElem& x, const ExtElem& y) {
    return closeness(x) < closeness(y);
  });
  return {best->c, best->d};
}

GroupElem OrbitSpace::transport_representative(const EisensteinPoly& p, const EisensteinPoly& p2) const {
  const int n = working_precision();
  const auto [c, d] = root_in(p, QuadExt(p2), 2 * n);
  const BaseElem dinv = d.inverse();
  GroupElem k = identity();
  k.g1.e21 = kt_.embed(-c);
  k.g1.e22 = kt_.embed(d);
  k.g2 = {dinv, base().zero(), -c * dinv, base().one()};
  const VPoint got = act(k, standard_rep(p2)), want = standard_rep(p);
  const bool ok = got.x10.congruent(want.x10, n) && got.x12.congruent(want.x12, n) &&
                  got.x20.congruent(want.x20, n) && got.x22.congruent(want.x22, n) &&
                  kt_.congruent(got.x11, want.x11, 2 * n) && kt_.congruent(got.x21, want.x21, 2 * n);
  if (!ok) throw Error(ErrorKind::InternalMismatch, "transported representative does not match");
  return k;
}

BaseElem OrbitSpace::random_base(CounterRng& rng, int digits) const {
  return base().residue(rng.bits(digits), digits);
}

ExtElem OrbitSpace::random_ext(CounterRng& rng, int digits) const {
  return kt_.residue(rng.bits(2 * digits), 2 * digits);
}

ExtElem OrbitSpace::shift_theta(const ExtElem& x, int k) const {
  ExtElem r = x;
  for (int i = 0; i < k; ++i) r = kt_.mul(r, kt_.theta());
  return r;
}

VPoint OrbitSpace::sample_point(CounterRng& rng, int digits) const {
  return {random_base(rng, digits), random_base(rng, digits), random_base(rng, digits),
          random_base(rng, digits), random_ext(rng, digits), random_ext(rng, digits)};
}

GroupElem OrbitSpace::sample_K(CounterRng& rng, int digits) const {
  for (;;) {
    GroupElem g = sample_matrices(rng, digits);
    if (in_K(g)) return g;
  }
}

GroupElem OrbitSpace::sample_matrices(CounterRng& rng, int digits) const {
  return {{random_ext(rng, digits), random_ext(rng, digits), random_ext(rng, digits), random_ext(rng, digits)},
          {random_base(rng, digits), random_base(rng, digits), random_base(rng, digits),
           random_base(rng, digits)}};
}

GroupElem OrbitSpace::sample_H(CounterRng& rng, int j, int digits) const {
  for (;;) {
    GroupElem g = sample_matrices(rng, digits);
    g.g1.e21 = shift_theta(kt_.residue(rng.bits(2 * digits - j - 1), 2 * digits - j - 1), j + 1);
    g.g2.e21 = base().uniformizer() * random_base(rng, digits - 1);
    if (in_K(g)) return g;
  }
}

VPoint OrbitSpace::sample_family(CounterRng& rng, const DFamily& f, int digits) const {
  validate(f);
  const BaseField& b = base();
  auto base_unit = [&](int k) {
    for (;;) {
      BaseElem u = random_base(rng, digits - k);
      if (u.is_unit()) return b.uniformizer_pow(k) * u;
    }
  };
  auto base_deep = [&](int k) { return b.uniformizer_pow(k) * random_base(rng, digits - k); };
  if (f.kind == DFamily::Kind::Star) {
    const int n = delta_tilde() + 1;
    const VPoint w = w_eta();
    const BaseElem pn = b.uniformizer_pow(n);
    return {w.x10 + base_deep(n), w.x12 + base_deep(n), w.x20 + base_deep(n), w.x22 + base_deep(n),
            w.x11 + pn * random_ext(rng, digits - n), w.x21 + pn * random_ext(rng, digits - n)};
  }
  int l12 = 0, l22 = 0;
  bool exact12 = true;
  switch (f.kind) {
    case DFamily::Kind::Ell1: l12 = std::min(f.param, ell_tilde()); l22 = l12 + 1; break;
    case DFamily::Kind::EllTilde: l12 = f.param; l22 = f.param + 1; break;
    case DFamily::Kind::UrStar: l12 = delta_tilde(); l22 = delta_tilde(); exact12 = false; break;
    case DFamily::Kind::Star: break;
  }
  // Rejection only acts on the a1 condition, which holds with probability
  // about 1/2 when the family is nonempty; a long dry run means it is empty.
  for (int attempt = 0; attempt < 4096; ++attempt) {
    ExtElem x11 = random_ext(rng, digits);
    while (!x11.is_unit()) x11 = random_ext(rng, digits);
    ExtElem u = random_ext(rng, digits);
    while (!u.is_unit()) u = random_ext(rng, digits);
    VPoint x{random_base(rng, digits), exact12 ? base_unit(l12) : base_deep(l12), base_unit(0),
             base_deep(l22), x11, kt_.mul(kt_.theta(), u)};
    if (d_membership(x, f)) return x;
  }
  throw Error(ErrorKind::InvalidKey, family_name(f) + " has no points for this extension");
}

}  // namespace dyadic
