#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace invspan {

// Raised on bad user input (files, CLI arguments, instance validation).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant is violated; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design
  Rational(long n, long d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "a", "-a/b", "+3", and decimal strings like "0.25".
  static Rational parse(const std::string& text);

  std::string str() const;  // "a" when integral, else "a/b"

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational reciprocal() const;

  const mpq_class& raw() const { return q_; }
  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// gcd of two non-negative rationals: gcd(a/b, c/d) = gcd(a*d, c*b)/(b*d) reduced.
Rational rational_gcd(const Rational& a, const Rational& b);

// A rational extended with -inf/+inf endpoints. Arithmetic is restricted to what
// the solver needs: addition with at most one infinite operand and subtraction
// that never forms inf - inf.
class ExtRational {
 public:
  ExtRational() : kind_(Kind::Finite) {}
  ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  ExtRational(long v) : kind_(Kind::Finite), value_(v) {}                 // NOLINT

  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational parse(const std::string& text);  // "inf", "-inf", or Rational

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  // Precondition: finite.
  const Rational& finite() const;

  std::string str() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a);
  // Scaling by a positive finite rational keeps infinities.
  friend ExtRational operator*(const Rational& c, const ExtRational& a);

 private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit ExtRational(Kind k) : kind_(k) {}

  Kind kind_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& r);

// Clamps x into [lo, hi]; lo <= hi required.
Rational clamp(const Rational& x, const ExtRational& lo, const ExtRational& hi);

}  // namespace invspan
