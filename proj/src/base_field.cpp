#include "dyadic/base_field.hpp"

#include <deque>
#include <mutex>
#include <sstream>

namespace dyadic {

// ---------------------------------------------------------------- Order

bool Order::ge(int k) const {
  if (!lower_bound_) return value_ >= k;
  if (k <= value_) return true;
  throw Error(ErrorKind::InsufficientPrecision,
              "order test >= " + std::to_string(k) + " beyond precision " + std::to_string(value_));
}

bool Order::eq(int k) const {
  if (!lower_bound_) return value_ == k;
  if (k < value_) return false;
  throw Error(ErrorKind::InsufficientPrecision,
              "order test == " + std::to_string(k) + " beyond precision " + std::to_string(value_));
}

int Order::get() const {
  if (lower_bound_)
    throw Error(ErrorKind::InsufficientPrecision,
                "element vanishes to its precision " + std::to_string(value_));
  return value_;
}

// ---------------------------------------------------------- TruncatedInt

std::int64_t TruncatedInt::centered() const {
  if (precision_ == 0) return 0;
  if (precision_ >= 64) return static_cast<std::int64_t>(value_);
  const std::uint64_t half_range = 1ULL << (precision_ - 1);
  if (value_ > half_range) return static_cast<std::int64_t>(value_) - static_cast<std::int64_t>(1ULL << precision_);
  return static_cast<std::int64_t>(value_);
}

TruncatedInt TruncatedInt::half() const {
  if (value_ & 1U) throw Error(ErrorKind::InvalidArgument, "half of an odd 2-adic integer");
  if (precision_ == 0) throw Error(ErrorKind::PrecisionLoss, "half of an unknown value");
  return residue(value_ >> 1, precision_ - 1);
}

TruncatedInt TruncatedInt::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit");
  std::uint64_t x = value_;  // correct mod 8
  for (int i = 0; i < 5; ++i) x *= 2 - value_ * x;
  return residue(x, precision_);
}

TruncatedInt TruncatedInt::reduced(int n) const {
  if (n > precision_)
    throw Error(ErrorKind::InsufficientPrecision, "cannot raise precision by reduction");
  return residue(value_, n);
}

// ------------------------------------------------------------- BaseField

namespace {

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::deque<BaseField::Data>& registry() {
  static std::deque<BaseField::Data> fields;
  return fields;
}

}  // namespace

BaseField BaseField::q2() {
  static const Data data{1, TruncatedInt(0), TruncatedInt(0)};
  return BaseField(&data);
}

BaseField BaseField::step(std::int64_t a1, std::int64_t a2) {
  const TruncatedInt t1(a1), t2(a2);
  if (t1.is_unit() || t2.is_unit() || (t2.value() & 3U) == 0)
    throw Error(ErrorKind::NotEisenstein, "step polynomial must have even a1 and a2 = 2*odd");
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (const auto& d : registry())
    if (d.step_a1 == t1 && d.step_a2 == t2) return BaseField(&d);
  registry().push_back(Data{2, t1, t2});
  return BaseField(&registry().back());
}

BaseElem BaseField::zero() const { return element(TruncatedInt(0), TruncatedInt(0)); }
BaseElem BaseField::one() const { return element(TruncatedInt(1), TruncatedInt(0)); }
BaseElem BaseField::from_int(std::int64_t v) const { return element(TruncatedInt(v), TruncatedInt(0)); }

BaseElem BaseField::uniformizer() const {
  if (m() == 1) return from_int(2);
  return element(TruncatedInt(0), TruncatedInt(1));
}

BaseElem BaseField::uniformizer_pow(int k) const {
  BaseElem r = one();
  const BaseElem pi = uniformizer();
  for (int i = 0; i < k; ++i) r = r * pi;
  return r;
}

BaseElem BaseField::element(const TruncatedInt& c0, const TruncatedInt& c1) const {
  return BaseElem(*this, c0, c1);
}

BaseElem BaseField::residue(std::uint64_t index, int k) const {
  if (k < 0 || k > 62) throw Error(ErrorKind::InvalidArgument, "residue modulus out of range");
  if (m() == 1) return from_int(static_cast<std::int64_t>(index & ((1ULL << k) - 1)));
  const int k0 = (k + 1) / 2, k1 = k / 2;
  const std::uint64_t c0 = index & ((1ULL << k0) - 1);
  const std::uint64_t c1 = (index >> k0) & ((1ULL << k1) - 1);
  return element(TruncatedInt(static_cast<std::int64_t>(c0)), TruncatedInt(static_cast<std::int64_t>(c1)));
}

std::string BaseField::describe() const {
  if (m() == 1) return "Q2";
  std::ostringstream os;
  os << "Q2(pi), pi^2";
  const auto a1 = step_a1().centered(), a2 = step_a2().centered();
  if (a1 != 0) os << (a1 > 0 ? "+" : "") << a1 << "pi";
  os << (a2 > 0 ? "+" : "") << a2 << "=0";
  return os.str();
}

// -------------------------------------------------------------- BaseElem

BaseElem::BaseElem(BaseField field, TruncatedInt c0, TruncatedInt c1)
    : field_(field), c0_(c0), c1_(c1) {
  if (field_.m() == 1 && c1_.value() != 0)
    throw Error(ErrorKind::InvalidArgument, "Q2 element with a second coordinate");
}

int BaseElem::precision() const {
  if (field_.m() == 1) return c0_.precision();
  return std::min(2 * c0_.precision(), 2 * c1_.precision() + 1);
}

Order BaseElem::val() const {
  if (field_.m() == 1) return c0_.order();
  const int prec = precision();
  const Order o0 = c0_.order(), o1 = c1_.order();
  int r = prec;
  if (o0.is_exact()) r = std::min(r, 2 * o0.value());
  if (o1.is_exact()) r = std::min(r, 2 * o1.value() + 1);
  return r < prec ? Order::exact(r) : Order::at_least(prec);
}

bool BaseElem::congruent(const BaseElem& o, int k) const { return (*this - o).val().ge(k); }

BaseElem BaseElem::operator-() const { return BaseElem(field_, -c0_, -c1_); }

BaseElem operator+(const BaseElem& a, const BaseElem& b) {
  return BaseElem(a.field_, a.c0_ + b.c0_, a.c1_ + b.c1_);
}

BaseElem operator-(const BaseElem& a, const BaseElem& b) {
  return BaseElem(a.field_, a.c0_ - b.c0_, a.c1_ - b.c1_);
}

BaseElem operator*(const BaseElem& a, const BaseElem& b) {
  if (a.field_.m() == 1) return BaseElem(a.field_, a.c0_ * b.c0_, TruncatedInt(0));
  // rho^2 = -A1 rho - A2
  const TruncatedInt& A1 = a.field_.step_a1();
  const TruncatedInt& A2 = a.field_.step_a2();
  const TruncatedInt t = a.c1_ * b.c1_;
  return BaseElem(a.field_, a.c0_ * b.c0_ - A2 * t, a.c0_ * b.c1_ + a.c1_ * b.c0_ - A1 * t);
}

BaseElem BaseElem::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::InvalidArgument, "inverse of a non-unit");
  if (field_.m() == 1) return BaseElem(field_, c0_.inverse(), TruncatedInt(0));
  const TruncatedInt& A1 = field_.step_a1();
  const TruncatedInt& A2 = field_.step_a2();
  const TruncatedInt n = c0_ * c0_ - A1 * c0_ * c1_ + A2 * c1_ * c1_;
  const TruncatedInt ninv = n.inverse();
  return BaseElem(field_, (c0_ - A1 * c1_) * ninv, -(c1_ * ninv));
}

BaseElem BaseElem::div_uniformizer() const {
  if (!val().ge(1)) throw Error(ErrorKind::InvalidArgument, "division of a unit by the uniformizer");
  if (field_.m() == 1) return BaseElem(field_, c0_.half(), TruncatedInt(0));
  // 1/rho = -(rho + A1)/A2, and x (rho + A1) = (A1 c0 - A2 c1) + c0 rho.
  const TruncatedInt& A1 = field_.step_a1();
  const TruncatedInt& A2 = field_.step_a2();
  const TruncatedInt u = A2.half().inverse();
  const TruncatedInt y0 = (A1 * c0_ - A2 * c1_).half();
  const TruncatedInt y1 = c0_.half();
  return BaseElem(field_, -(y0 * u), -(y1 * u));
}

BaseElem BaseElem::div_uniformizer(int k) const {
  BaseElem r = *this;
  for (int i = 0; i < k; ++i) r = r.div_uniformizer();
  return r;
}

BaseElem BaseElem::half() const {
  if (field_.m() == 1) return BaseElem(field_, c0_.half(), TruncatedInt(0));
  if (!val().ge(2)) throw Error(ErrorKind::InvalidArgument, "half of an element of order < m");
  return BaseElem(field_, c0_.half(), c1_.half());
}

BaseElem BaseElem::reduced(int k) const {
  if (k > precision()) throw Error(ErrorKind::InsufficientPrecision, "reduction beyond precision");
  if (field_.m() == 1) return BaseElem(field_, c0_.reduced(k), TruncatedInt(0));
  return BaseElem(field_, c0_.reduced((k + 1) / 2), c1_.reduced(k / 2));
}

std::uint64_t BaseElem::residue_index(int k) const {
  if (k > precision())
    throw Error(ErrorKind::InsufficientPrecision, "residue index beyond precision");
  if (k == 0) return 0;
  auto mask = [](int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); };
  if (field_.m() == 1) return c0_.value() & mask(k);
  const int k0 = (k + 1) / 2, k1 = k / 2;
  return (c0_.value() & mask(k0)) | ((c1_.value() & mask(k1)) << k0);
}

bool operator==(const BaseElem& a, const BaseElem& b) {
  return a.field_ == b.field_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
}

std::string BaseElem::to_string() const {
  std::ostringstream os;
  if (field_.m() == 1 || c1_.value() == 0) return std::to_string(c0_.centered());
  const auto b = c1_.centered();
  if (c0_.value() != 0) os << c0_.centered() << (b >= 0 ? "+" : "");
  if (b == -1) os << "-";
  else if (b != 1) os << b;
  os << "pi";
  return os.str();
}

// ---------------------------------------------------------- square classes

bool square_solvable(const BaseElem& eps, int k) {
  if (k <= 0) return true;
  if (eps.precision() < k)
    throw Error(ErrorKind::InsufficientPrecision, "square test needs precision " + std::to_string(k));
  const BaseField& f = eps.field();
  const std::uint64_t target = eps.residue_index(k);
  for (std::uint64_t idx = 0; idx < (1ULL << k); ++idx) {
    const BaseElem a = f.residue(idx, k);
    if (!a.is_unit()) continue;
    if ((a * a).residue_index(k) == target) return true;
  }
  return false;
}

bool is_square(const BaseElem& eps) {
  if (!eps.is_unit()) throw Error(ErrorKind::InvalidArgument, "is_square expects a unit");
  return square_solvable(eps, 2 * eps.field().m() + 1);
}

SquareClass square_class(const BaseElem& eps) {
  if (!eps.is_unit()) throw Error(ErrorKind::InvalidArgument, "square_class expects a unit");
  const int m = eps.field().m();
  if (eps.precision() < 2 * m + 1)
    throw Error(ErrorKind::InsufficientPrecision, "square class needs precision 2m+1");
  int best = 0;
  for (int i = 1; i <= 2 * m + 1; ++i) {
    if (!square_solvable(eps, i)) break;
    best = i;
  }
  if (best == 2 * m + 1) return {SquareClass::Kind::Square, 0, eps};
  if (best == 2 * m) return {SquareClass::Kind::UnramifiedUnit, 0, eps};
  if (best % 2 == 0)
    throw Error(ErrorKind::InternalMismatch, "even maximal square level below 2m");
  return {SquareClass::Kind::RamifiedUnit, (2 * m + 1 - best) / 2, eps};
}

SquareClass general_square_class(const BaseElem& x) {
  const int v = x.val().get();
  if (v % 2 == 0) return square_class(x.div_uniformizer(v));
  return {SquareClass::Kind::Uniformizer, x.field().m() + 1, x.div_uniformizer(v - 1)};
}

bool same_square_class(const BaseElem& x, const BaseElem& y) {
  const int vx = x.val().get(), vy = y.val().get();
  if ((vx - vy) % 2 != 0) return false;
  const BaseElem ux = x.div_uniformizer(vx), uy = y.div_uniformizer(vy);
  return is_square(ux * uy.inverse());
}

std::vector<BaseElem> square_class_representatives(const BaseField& f) {
  const int k = 2 * f.m() + 1;
  std::vector<BaseElem> units;
  for (std::uint64_t idx = 0; idx < (1ULL << k); ++idx) {
    const BaseElem a = f.residue(idx, k);
    if (!a.is_unit()) continue;
    bool fresh = true;
    for (const auto& r : units)
      if (same_square_class(a, r)) { fresh = false; break; }
    if (fresh) units.push_back(a);
  }
  std::vector<BaseElem> reps = units;
  const BaseElem pi = f.uniformizer();
  for (const auto& u : units) reps.push_back(pi * u);
  return reps;
}

const char* square_class_kind_name(SquareClass::Kind kind) {
  switch (kind) {
    case SquareClass::Kind::Square: return "square";
    case SquareClass::Kind::UnramifiedUnit: return "unramified-unit";
    case SquareClass::Kind::RamifiedUnit: return "ramified-unit";
    case SquareClass::Kind::Uniformizer: return "uniformizer";
  }
  return "unknown";
}

}  // namespace dyadic
