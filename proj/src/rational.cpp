#include "invspan/rational.hpp"

#include <cctype>
#include <ostream>

namespace invspan {

Rational::Rational(long n, long d) {
  if (d == 0) throw Error("rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InternalError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw InternalError("reciprocal of zero");
  return Rational(mpq_class(q_.get_den(), q_.get_num()));
}

Rational Rational::parse(const std::string& raw) {
  std::string text = raw;
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  if (text.empty()) throw Error("empty rational literal");
  for (char ch : text) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '.'))
      throw Error("bad rational literal: '" + raw + "'");
  }
  try {
    mpq_class q;
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      if (text.find('/') != std::string::npos) throw Error("bad rational literal: '" + raw + "'");
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      const size_t frac_len = text.size() - dot - 1;
      if (frac_len == 0 || dot == 0 || digits.empty())
        throw Error("bad rational literal: '" + raw + "'");
      mpz_class num(digits, 10);  // explicit base: leading zeros are not octal
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      q = mpq_class(num, den);
    } else {
      q = mpq_class(text, 10);
      if (q.get_den() == 0) throw Error("rational with zero denominator: '" + raw + "'");
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: '" + raw + "'");
  }
}

std::string Rational::str() const {
  return is_integer() ? q_.get_num().get_str() : q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.sign() < 0 || b.sign() < 0) throw InternalError("rational_gcd of negative value");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  mpz_class num, den;
  mpz_gcd(num.get_mpz_t(), mpz_class(a.num() * b.den()).get_mpz_t(),
          mpz_class(b.num() * a.den()).get_mpz_t());
  den = a.den() * b.den();
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(q);
}

ExtRational ExtRational::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  return ExtRational(Rational::parse(text));
}

const Rational& ExtRational::finite() const {
  if (!is_finite()) throw InternalError("finite() on infinite value");
  return value_;
}

std::string ExtRational::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    default: return value_.str();
  }
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  auto rank = [](ExtRational::Kind k) { return k == ExtRational::Kind::NegInf ? -1
                                              : k == ExtRational::Kind::PosInf ? 1 : 0; };
  if (rank(a.kind_) != rank(b.kind_)) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != ExtRational::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.is_neg_inf() || b.is_neg_inf()) {
    if (a.is_pos_inf() || b.is_pos_inf()) throw InternalError("inf + -inf");
    return ExtRational::neg_inf();
  }
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtRational::pos_inf();
  return ExtRational(a.value_ + b.value_);
}

ExtRational operator-(const ExtRational& a) {
  if (a.is_neg_inf()) return ExtRational::pos_inf();
  if (a.is_pos_inf()) return ExtRational::neg_inf();
  return ExtRational(-a.value_);
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational operator*(const Rational& c, const ExtRational& a) {
  if (c.sign() <= 0) throw InternalError("ExtRational scaling needs a positive factor");
  if (!a.is_finite()) return a;
  return ExtRational(c * a.finite());
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

Rational clamp(const Rational& x, const ExtRational& lo, const ExtRational& hi) {
  if (lo > hi) throw InternalError("clamp with lo > hi");
  if (ExtRational(x) < lo) return lo.finite();
  if (ExtRational(x) > hi) return hi.finite();
  return x;
}

}  // namespace invspan
