#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsep/rational.hpp"

namespace vsep {

/// Univariate polynomial over Z, coefficients ascending by degree.
/// Normal form: empty vector is the zero polynomial, otherwise the
/// highest-index coefficient is nonzero. Conventions: deg(0) = 0,
/// maxc(0) = 1, l1(0) = 1 (they keep the bound formulas' bases positive).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  static IntPoly zero() { return IntPoly(); }
  static IntPoly constant(const Int& c);
  static IntPoly monomial(const Int& c, std::size_t degree);
  static IntPoly x() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
  const Int& leading() const;

  Int max_coeff() const;  // max |a_i|, 1 for the zero polynomial
  Int l1_norm() const;    // sum |a_i|, 1 for the zero polynomial

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& c) const;
  bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const IntPoly& o) const { return coeffs_ != o.coeffs_; }

  Rational eval(const Rational& t) const;  // exact Horner
  Int eval_int(const Int& t) const;
  int sign_at(const Rational& t) const { return eval(t).sign(); }

  IntPoly derivative() const;
  Int content() const;            // gcd of coefficients, 0 for zero
  IntPoly primitive_part() const; // content divided out, leading coeff > 0

  /// Quotient of an exact division; throws Internal if o does not divide.
  IntPoly divide_exact(const IntPoly& o) const;

  /// deg-ascending decimal strings, e.g. x^2 - 2 <-> ["-2","0","1"].
  std::vector<std::string> to_strings() const;
  static IntPoly from_strings(const std::vector<std::string>& v);
  std::string str() const;  // human-readable, for diagnostics

 private:
  std::vector<Int> coeffs_;
  void normalize();
};

IntPoly gcd(const IntPoly& a, const IntPoly& b);  // primitive, leading > 0

/// p with repeated roots stripped: p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);

/// Sturm chain of p (standard negative-remainder sequence, kept primitive
/// with sign-preserving pseudo-remainders).
std::vector<IntPoly> sturm_chain(const IntPoly& p);

/// Sign variations of the chain at t.
int sturm_variations(const std::vector<IntPoly>& chain, const Rational& t);

/// Number of distinct real roots of the chain's polynomial in (a, b],
/// assuming neither endpoint is a root of it.
int sturm_count(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b);

}  // namespace vsep
