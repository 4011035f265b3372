#include "vsep/roots.hpp"

#include <algorithm>

namespace vsep {

namespace {

Rational half(const Rational& a, const Rational& b) {
  return (a + b) * Rational(Int(1), Int(2));
}

// Bisect [lo, hi] (signs differ at the endpoints of the squarefree poly)
// until width <= target, detecting an exact rational hit at a midpoint.
void bisect_to(IsolatedRoot& r, const Rational& target) {
  if (r.is_exact()) return;
  while (r.hi - r.lo > target) {
    Rational mid = half(r.lo, r.hi);
    int sm = r.poly.sign_at(mid);
    if (sm == 0) {
      r.exact = mid;
      r.lo = mid;
      r.hi = mid;
      return;
    }
    if (sm == r.poly.sign_at(r.lo))
      r.lo = mid;
    else
      r.hi = mid;
  }
}

// Exact-rational detection per the bounded-denominator scheme: refine below
// 1/B^2 with B = |lc| + |c0|, then the interval holds at most one rational
// with denominator <= B; test the simplest one.
void detect_exact(IsolatedRoot& r) {
  if (r.is_exact()) return;
  const auto& cs = r.poly.coeffs();
  Int b = abs(cs.back()) + abs(cs.front());
  if (b == 0) return;
  Rational width(Int(1), b * b + 1);
  bisect_to(r, width);
  if (r.is_exact()) return;
  Rational cand = simplest_in_interval(r.lo, r.hi);
  if (cand.denominator() <= b && r.poly.eval(cand).is_zero()) {
    r.exact = cand;
    r.lo = cand;
    r.hi = cand;
  }
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root isolation of zero");
  std::vector<IsolatedRoot> out;
  if (p.degree() == 0) return out;

  IntPoly q = squarefree_part(p);
  // Strip the root at zero so the constant coefficient is nonzero.
  std::size_t shift = 0;
  while (shift < q.coeffs().size() && sgn(q.coeffs()[shift]) == 0) ++shift;
  bool zero_root = shift > 0;
  if (zero_root) {
    std::vector<Int> c(q.coeffs().begin() + shift, q.coeffs().end());
    q = IntPoly(std::move(c));
  }

  if (q.degree() >= 1) {
    auto chain = sturm_chain(q);
    Rational bound(Int(Int(1) + p.l1_norm()));  // Cauchy interval endpoint, never a root
    struct Work {
      Rational lo, hi;
      int count;
    };
    std::vector<Work> stack;
    int total = sturm_count(chain, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});
    std::vector<IsolatedRoot> found;
    while (!stack.empty()) {
      Work w = stack.back();
      stack.pop_back();
      if (w.count == 1) {
        found.push_back(IsolatedRoot{q, w.lo, w.hi, std::nullopt});
        continue;
      }
      Rational mid = half(w.lo, w.hi);
      if (q.sign_at(mid) == 0) {
        // Exact hit; carve out a root-free margin around it.
        found.push_back(IsolatedRoot{q, mid, mid, mid});
        Rational h = (w.hi - w.lo) * Rational(Int(1), Int(4));
        while (true) {
          Rational a = mid - h, b = mid + h;
          if (q.sign_at(a) != 0 && q.sign_at(b) != 0 && sturm_count(chain, a, b) == 1) break;
          h = h * Rational(Int(1), Int(2));
        }
        Rational a = mid - h, b = mid + h;
        int left = sturm_count(chain, w.lo, a);
        int right = sturm_count(chain, b, w.hi);
        if (left > 0) stack.push_back({w.lo, a, left});
        if (right > 0) stack.push_back({b, w.hi, right});
      } else {
        int left = sturm_count(chain, w.lo, mid);
        int right = w.count - left;
        if (left > 0) stack.push_back({w.lo, mid, left});
        if (right > 0) stack.push_back({mid, w.hi, right});
      }
    }
    for (auto& r : found) detect_exact(r);
    out = std::move(found);
  }

  if (zero_root) out.push_back(IsolatedRoot{IntPoly::x(), Rational(0), Rational(0), Rational(0)});
  std::sort(out.begin(), out.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  return out;
}

IsolatedRoot refine_root(const IsolatedRoot& r, const Rational& width) {
  if (width.sign() <= 0) throw Error(ErrorCode::Internal, "refine_root needs width > 0");
  IsolatedRoot out = r;
  bisect_to(out, width);
  return out;
}

std::vector<Rational> rational_roots(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "rational roots of zero");
  std::vector<Rational> out;
  for (const auto& r : isolate_real_roots(p))
    if (r.is_exact()) out.push_back(*r.exact);
  return out;
}

std::string RootBound::str() const {
  if (is_algebraic())
    return "root(" + root->poly.str() + ") in [" + root->lo.str() + ", " + root->hi.str() + "]";
  return value.str();
}

namespace {

// Shrink the isolating interval until the rational t falls outside.
// Terminates because t is never the (irrational) root itself.
int position_of(const Rational& t, IsolatedRoot& r) {
  if (r.is_exact()) {
    if (t < *r.exact) return -1;
    if (t == *r.exact) return 0;
    return 1;
  }
  while (r.lo <= t && t <= r.hi) {
    if (r.poly.eval(t).is_zero()) return 0;  // t is some root of poly; in the
                                             // isolating interval it is *the* root
    Rational w = (r.hi - r.lo) * Rational(Int(1), Int(4));
    if (w.is_zero()) break;
    bisect_to(r, w);
    if (r.is_exact()) return position_of(t, r);
  }
  return t < r.lo ? -1 : (t > r.hi ? 1 : 0);
}

}  // namespace

int compare_rational_bound(const Rational& t, RootBound& b) {
  if (!b.is_algebraic()) {
    switch (b.value.kind()) {
      case ExtRational::Kind::NegInf: return 1;
      case ExtRational::Kind::PosInf: return -1;
      default: {
        const Rational& v = b.value.finite();
        return t < v ? -1 : (t == v ? 0 : 1);
      }
    }
  }
  return position_of(t, *b.root);
}

int compare_bounds(RootBound& a, RootBound& b) {
  if (!a.is_algebraic() && !b.is_algebraic()) return a.value.compare(b.value);
  if (!a.is_algebraic()) {
    if (!a.value.is_finite())
      return a.value.kind() == ExtRational::Kind::NegInf ? -1 : 1;
    return compare_rational_bound(a.value.finite(), b);
  }
  if (!b.is_algebraic()) {
    if (!b.value.is_finite())
      return b.value.kind() == ExtRational::Kind::NegInf ? 1 : -1;
    return -compare_rational_bound(b.value.finite(), a);
  }
  IsolatedRoot& ra = *a.root;
  IsolatedRoot& rb = *b.root;
  if (ra.is_exact() && rb.is_exact()) {
    if (*ra.exact < *rb.exact) return -1;
    return *ra.exact == *rb.exact ? 0 : 1;
  }
  IntPoly g = gcd(ra.poly, rb.poly);
  std::vector<IntPoly> gchain;
  if (g.degree() >= 1) gchain = sturm_chain(g);
  while (true) {
    if (ra.hi < rb.lo) return -1;
    if (rb.hi < ra.lo) return 1;
    // Overlapping isolating intervals: equal iff the shared factor has its
    // (unique) root in the overlap.
    if (g.degree() >= 1) {
      Rational lo = rat_max(ra.lo, rb.lo);
      Rational hi = rat_min(ra.hi, rb.hi);
      if (lo < hi && g.sign_at(lo) != 0 && g.sign_at(hi) != 0 &&
          sturm_count(gchain, lo, hi) == 1)
        return 0;
    }
    Rational wa = (ra.hi - ra.lo) * Rational(Int(1), Int(2));
    Rational wb = (rb.hi - rb.lo) * Rational(Int(1), Int(2));
    if (wa.sign() > 0) bisect_to(ra, wa);
    if (wb.sign() > 0) bisect_to(rb, wb);
    if (ra.is_exact() || rb.is_exact()) {
      RootBound x = ra.is_exact() ? RootBound::exact(*ra.exact) : RootBound::algebraic(ra);
      RootBound y = rb.is_exact() ? RootBound::exact(*rb.exact) : RootBound::algebraic(rb);
      return compare_bounds(x, y);
    }
  }
}

int sign_at_bound(const IntPoly& p, RootBound& b) {
  if (!b.is_finite()) throw Error(ErrorCode::Internal, "sign at infinite bound");
  if (p.is_zero()) return 0;
  if (!b.is_algebraic()) return p.sign_at(b.value.finite());
  IsolatedRoot& r = *b.root;
  if (r.is_exact()) return p.sign_at(*r.exact);
  // Zero iff p shares r's root; otherwise refine until p is root-free on the
  // interval and read the sign at an endpoint.
  IntPoly g = gcd(p, r.poly);
  if (g.degree() >= 1) {
    auto gchain = sturm_chain(g);
    IsolatedRoot probe = r;
    // Make the interval endpoints root-free for g before counting.
    while (g.sign_at(probe.lo) == 0 || g.sign_at(probe.hi) == 0) {
      bisect_to(probe, (probe.hi - probe.lo) * Rational(Int(1), Int(4)));
      if (probe.is_exact()) return p.sign_at(*probe.exact);
    }
    if (sturm_count(gchain, probe.lo, probe.hi) >= 1) return 0;
  }
  auto pchain = sturm_chain(p);
  while (true) {
    if (p.sign_at(r.lo) != 0 && p.sign_at(r.hi) != 0 && sturm_count(pchain, r.lo, r.hi) == 0)
      return p.sign_at(r.lo);
    bisect_to(r, (r.hi - r.lo) * Rational(Int(1), Int(4)));
    if (r.is_exact()) return p.sign_at(*r.exact);
  }
}

}  // namespace vsep
