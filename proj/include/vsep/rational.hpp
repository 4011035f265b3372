#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsep/error.hpp"

namespace vsep {

/// Arbitrary-precision integer. All counter values, coefficients and label
/// counts go through this type; nothing in the pipeline truncates to 64 bits.
using Int = mpz_class;

Int int_from_string(const std::string& s);
std::string int_to_string(const Int& v);

/// Exact rational in canonical form: denominator > 0, gcd(|num|, den) = 1.
/// Equality is structural equality of the canonical form.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long v) : q_(v) {}
  Rational(const Int& v) : q_(v) {}
  Rational(const Int& num, const Int& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  const mpq_class& raw() const { return q_; }
  Int numerator() const { return Int(q_.get_num()); }
  Int denominator() const { return Int(q_.get_den()); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  bool operator==(const Rational& o) const { return q_ == o.q_; }
  bool operator!=(const Rational& o) const { return q_ != o.q_; }
  bool operator<(const Rational& o) const { return q_ < o.q_; }
  bool operator<=(const Rational& o) const { return q_ <= o.q_; }
  bool operator>(const Rational& o) const { return q_ > o.q_; }
  bool operator>=(const Rational& o) const { return q_ >= o.q_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Int floor() const;
  Int ceil() const;

  /// Unary size |num| + den, the magnitude measure used in diagnostics.
  Int unary_size() const { return Int(::abs(q_.get_num()) + q_.get_den()); }

  /// "p/q" in canonical form; parse accepts "p" and "p/q".
  std::string str() const;
  static Rational parse(const std::string& s);

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational rat_min(const Rational& a, const Rational& b);
Rational rat_max(const Rational& a, const Rational& b);

/// Rational extended with the two sentinels, totally ordered as
/// NEG_INF < every rational < POS_INF.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() : kind_(Kind::Finite) {}
  ExtRational(const Rational& r) : kind_(Kind::Finite), value_(r) {}
  static ExtRational neg_inf() { ExtRational e; e.kind_ = Kind::NegInf; return e; }
  static ExtRational pos_inf() { ExtRational e; e.kind_ = Kind::PosInf; return e; }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& finite() const;

  ExtRational operator+(const ExtRational& o) const;
  ExtRational operator*(const ExtRational& o) const;
  ExtRational operator-() const;

  int compare(const ExtRational& o) const;
  bool operator==(const ExtRational& o) const { return compare(o) == 0; }
  bool operator!=(const ExtRational& o) const { return compare(o) != 0; }
  bool operator<(const ExtRational& o) const { return compare(o) < 0; }
  bool operator<=(const ExtRational& o) const { return compare(o) <= 0; }
  bool operator>(const ExtRational& o) const { return compare(o) > 0; }
  bool operator>=(const ExtRational& o) const { return compare(o) >= 0; }

  std::string str() const;

 private:
  Kind kind_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& r);

/// Least common multiple of the denominators; 1 for an empty vector.
Int common_denominator(const std::vector<Rational>& v);

/// The rational with the smallest denominator in the closed interval
/// [lo, hi] (ties broken toward the canonical continued-fraction pick).
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

}  // namespace vsep
