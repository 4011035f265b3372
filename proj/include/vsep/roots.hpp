#pragma once

#include <optional>
#include <vector>

#include "vsep/poly.hpp"

namespace vsep {

/// One real root of a squarefree polynomial, certified by a Sturm count of 1
/// over [lo, hi]. Rational roots carry `exact` and a point interval.
struct IsolatedRoot {
  IntPoly poly;  // squarefree, primitive, leading > 0
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;

  bool is_exact() const { return exact.has_value(); }
};

/// Isolating intervals for all distinct real roots of p, sorted ascending.
/// Total count is certified against the Sturm count over the Cauchy
/// interval (-(1+l1), +(1+l1)). Rational roots are recognized exactly via
/// the bounded-denominator continued-fraction search.
std::vector<IsolatedRoot> isolate_real_roots(const IntPoly& p);

/// Same root, interval width <= width (exact bisection, sign-certified).
IsolatedRoot refine_root(const IsolatedRoot& r, const Rational& width);

/// Exactly the rational roots of p, ascending, each verified by evaluation.
std::vector<Rational> rational_roots(const IntPoly& p);

/// A root-or-sentinel bound of a DINC interval.
struct RootBound {
  ExtRational value;                 // used when algebraic is absent
  std::optional<IsolatedRoot> root;  // irrational algebraic bound

  static RootBound neg_inf() { return {ExtRational::neg_inf(), std::nullopt}; }
  static RootBound pos_inf() { return {ExtRational::pos_inf(), std::nullopt}; }
  static RootBound exact(const Rational& r) { return {ExtRational(r), std::nullopt}; }
  static RootBound algebraic(IsolatedRoot r) { return {ExtRational(), std::move(r)}; }

  bool is_algebraic() const { return root.has_value(); }
  bool is_finite() const { return is_algebraic() || value.is_finite(); }
  std::string str() const;
};

/// Total order on real algebraic numbers and sentinels: -1, 0, +1.
/// May refine the stored intervals while deciding.
int compare_bounds(RootBound& a, RootBound& b);

/// Position of the rational t relative to the bound.
int compare_rational_bound(const Rational& t, RootBound& b);

/// Exact sign of p at the (possibly algebraic) point b; b must be finite.
int sign_at_bound(const IntPoly& p, RootBound& b);

}  // namespace vsep
