#include "dyadic/parse.hpp"

#include <cctype>
#include <optional>

#include "dyadic/errors.hpp"

namespace dyadic {

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  // "z^2" followed by signed terms; returns (a1, a2).
  std::pair<LinearCoeff, LinearCoeff> parse() {
    if (s_.compare(0, 3, "z^2") != 0) fail("must start with z^2");
    pos_ = 3;
    LinearCoeff a1, a2;
    while (pos_ < s_.size()) {
      const std::int64_t sign = take_sign();
      if (sign == 0) fail("expected + or -");
      LinearCoeff c{1, 0};
      const bool has_coeff = peek() != 'z';
      if (has_coeff) c = coeff();
      const bool linear = peek() == 'z';
      if (linear) ++pos_;
      if (!has_coeff && !linear) fail("empty term");
      if (peek() == '^') fail("only z^2 may carry an exponent");
      LinearCoeff& dst = linear ? a1 : a2;
      dst.c0 += sign * c.c0;
      dst.c1 += sign * c.c1;
    }
    return {a1, a2};
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::InvalidArgument, "cannot parse polynomial '" + s_ + "': " + why);
  }

  std::int64_t take_sign() {
    if (peek() == '+') return ++pos_, 1;
    if (peek() == '-') return ++pos_, -1;
    return 0;
  }

  std::optional<std::int64_t> integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) return std::nullopt;
    if (pos_ - start > 15) fail("integer too large");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  bool take_pi() {
    if (peek() == '*') ++pos_;
    if (s_.compare(pos_, 2, "pi") != 0) return false;
    pos_ += 2;
    return true;
  }

  // integer, [integer]pi, or a parenthesized sum of those
  LinearCoeff atom() {
    const auto n = integer();
    if (take_pi()) return {0, n.value_or(1)};
    if (!n) fail("expected a coefficient");
    return {*n, 0};
  }

  LinearCoeff coeff() {
    if (peek() != '(') {
      const LinearCoeff c = atom();
      if (peek() == '*') ++pos_;
      return c;
    }
    ++pos_;
    LinearCoeff sum;
    std::int64_t sign = take_sign();
    if (sign == 0) sign = 1;
    for (;;) {
      const LinearCoeff a = atom();
      sum.c0 += sign * a.c0;
      sum.c1 += sign * a.c1;
      if (peek() == ')') break;
      sign = take_sign();
      if (sign == 0) fail("unbalanced parenthesis");
    }
    ++pos_;
    if (peek() == '*') ++pos_;
    return sum;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

BaseElem to_base(const BaseField& f, const LinearCoeff& c) {
  return f.from_int(c.c0) + f.from_int(c.c1) * f.uniformizer();
}

}  // namespace

std::pair<LinearCoeff, LinearCoeff> parse_monic_quadratic(const std::string& text) {
  return PolyParser(text).parse();
}

EisensteinPoly parse_poly(const std::string& text, const BaseField& base) {
  const auto [a1, a2] = parse_monic_quadratic(text);
  return EisensteinPoly(to_base(base, a1), to_base(base, a2));
}

BaseField parse_base(const std::string& name, const std::string& step) {
  if (name == "q2") return BaseField::q2();
  if (name != "q2-ram") throw Error(ErrorKind::InvalidArgument, "unknown base '" + name + "'");
  const auto [a1, a2] = parse_monic_quadratic(step);
  if (a1.c1 != 0 || a2.c1 != 0)
    throw Error(ErrorKind::InvalidArgument, "step polynomial needs integer coefficients");
  return BaseField::step(a1.c0, a2.c0);
}

}  // namespace dyadic
