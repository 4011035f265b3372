#include "vsep/snls.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

namespace vsep {

using ordered_json = nlohmann::ordered_json;

std::size_t Snls::deg() const {
  std::size_t d = A.max_degree();
  for (const auto& p : b) d = std::max(d, p.degree());
  return d;
}

Int Snls::maxc() const {
  Int m = A.max_coeff();
  for (const auto& p : b) {
    if (p.is_zero()) continue;
    Int c = p.max_coeff();
    if (c > m) m = c;
  }
  return m;
}

std::string Snls::to_json() const {
  ordered_json j;
  j["A"] = ordered_json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < A.cols(); ++k) row.push_back(A.at(i, k).to_strings());
    j["A"].push_back(row);
  }
  j["b"] = ordered_json::array();
  for (const auto& p : b) j["b"].push_back(p.to_strings());
  return j.dump(2);
}

Snls Snls::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad SNLS JSON: ") + e.what());
  }
  if (!j.contains("A") || !j.contains("b") || !j["A"].is_array() || !j["b"].is_array())
    throw Error(ErrorCode::ParseError, "SNLS JSON needs arrays A and b");
  auto poly_of = [](const ordered_json& v) {
    if (!v.is_array()) throw Error(ErrorCode::ParseError, "polynomial must be an array");
    std::vector<std::string> s;
    for (const auto& e : v) s.push_back(e.get<std::string>());
    return IntPoly::from_strings(s);
  };
  std::size_t m = j["A"].size();
  std::size_t n = m == 0 ? 0 : j["A"][0].size();
  Snls s;
  s.A = PolyMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (j["A"][i].size() != n) throw Error(ErrorCode::ParseError, "ragged matrix A");
    for (std::size_t k = 0; k < n; ++k) s.A.at(i, k) = poly_of(j["A"][i][k]);
  }
  if (j["b"].size() != m) throw Error(ErrorCode::ParseError, "b length must equal rows of A");
  for (const auto& v : j["b"]) s.b.push_back(poly_of(v));
  return s;
}

ExtendedSystem build_extended(const Snls& s) {
  std::size_t m = s.row(), n = s.col();
  ExtendedSystem e;
  e.D = PolyMatrix(m + n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) e.D.at(i, k) = s.A.at(i, k);
  for (std::size_t k = 0; k < n; ++k) e.D.at(m + k, k) = IntPoly::constant(1);
  e.c = s.b;
  e.c.resize(m + n);
  return e;
}

bool Dnflb::holds_at(const Rational& t) const {
  for (const auto& conj : disjuncts) {
    bool ok = true;
    for (const auto& c : conj)
      if (!c.holds_at(t)) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

Int Dnflb::max_l1() const {
  Int m = 1;
  for (const auto& conj : disjuncts)
    for (const auto& c : conj) {
      Int l = c.poly.l1_norm();
      if (l > m) m = l;
    }
  return m;
}

namespace {

Int binomial(std::size_t n, std::size_t k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Next |R|=k subset of [0, n) in lexicographic order; false when done.
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Dnflb eliminate_quantifier(const Snls& s, const Config& cfg) {
  std::size_t m = s.row(), n = s.col();
  Dnflb phi;

  if (n == 0) {
    // No linear variables: rows read 0 >= b_i(x).
    std::vector<LowerBoundConstraint> conj;
    for (const auto& bi : s.b) conj.push_back({-bi, false});
    phi.disjuncts.push_back(std::move(conj));
    return phi;
  }

  if (binomial(m + n, n) > Int(static_cast<unsigned long>(cfg.subset_cap)))
    throw Error(ErrorCode::DimensionLimit,
                "C(" + std::to_string(m + n) + "," + std::to_string(n) + ") row subsets exceed cap");

  ExtendedSystem ext = build_extended(s);
  const std::size_t degS = s.deg();

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  do {
    PolyMatrix DR = ext.D.select_rows(idx);
    IntPoly detR = det(DR);
    if (detR.is_zero()) continue;  // both sign guards are unsatisfiable
    PolyMatrix adjR = adjugate(DR);
    std::vector<IntPoly> cR(n);
    for (std::size_t i = 0; i < n; ++i) cR[i] = ext.c[idx[i]];
    std::vector<IntPoly> w = ext.D.apply(adjR.apply(cR));  // D * adj(D_R) * c_R

    std::vector<LowerBoundConstraint> pos, neg;
    pos.push_back({detR, true});
    neg.push_back({-detR, true});
    for (std::size_t i = 0; i < m + n; ++i) {
      IntPoly diff = w[i] - detR * ext.c[i];
      pos.push_back({diff, false});
      neg.push_back({-diff, false});
    }
    // Every emitted polynomial stays within (m+2)*deg of the system; keep
    // the guarantee as a hard assert.
    for (const auto& c : pos)
      if (c.poly.degree() > (m + 2) * degS)
        throw Error(ErrorCode::Internal, "QE degree bound violated");
    phi.disjuncts.push_back(std::move(pos));
    phi.disjuncts.push_back(std::move(neg));
  } while (next_subset(idx, m + n));

  return phi;
}

bool Dinc::holds_at(const Rational& t) const {
  for (const auto& iv : intervals) {
    DincInterval copy = iv;
    int cl = compare_rational_bound(t, copy.lo);
    if (cl < 0 || (cl == 0 && copy.lo_strict)) continue;
    int ch = compare_rational_bound(t, copy.hi);
    if (ch > 0 || (ch == 0 && copy.hi_strict)) continue;
    return true;
  }
  return false;
}

namespace {

// All roots of the distinct non-constant polynomials of a constraint set,
// sorted ascending and deduplicated across polynomials.
std::vector<RootBound> collect_roots(const std::vector<const IntPoly*>& polys) {
  std::vector<RootBound> roots;
  for (const IntPoly* p : polys) {
    if (p->is_zero() || p->degree() == 0) continue;
    for (auto& r : isolate_real_roots(*p)) {
      RootBound b = r.is_exact() ? RootBound::exact(*r.exact) : RootBound::algebraic(r);
      bool dup = false;
      for (auto& existing : roots)
        if (compare_bounds(existing, b) == 0) { dup = true; break; }
      if (!dup) roots.push_back(std::move(b));
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RootBound& a, const RootBound& b) {
    RootBound x = a, y = b;
    return compare_bounds(x, y) < 0;
  });
  return roots;
}

std::vector<const IntPoly*> distinct_polys(const std::vector<LowerBoundConstraint>& conj) {
  std::vector<const IntPoly*> out;
  for (const auto& c : conj) {
    bool seen = false;
    for (const IntPoly* p : out)
      if (*p == c.poly) { seen = true; break; }
    if (!seen) out.push_back(&c.poly);
  }
  return out;
}

// Rational sample strictly inside each open region delimited by the sorted
// roots: below all, between consecutive (refined-gap midpoint), above all.
std::vector<Rational> region_samples(std::vector<RootBound>& roots, const Rational& outer) {
  std::vector<Rational> samples;
  if (roots.empty()) {
    samples.push_back(Rational(0));
    return samples;
  }
  // Refine all algebraic intervals until pairwise disjoint.
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      Rational hi_i = roots[i].is_algebraic() ? roots[i].root->hi : roots[i].value.finite();
      Rational lo_j =
          roots[i + 1].is_algebraic() ? roots[i + 1].root->lo : roots[i + 1].value.finite();
      if (hi_i < lo_j) continue;
      again = true;
      for (auto* rb : {&roots[i], &roots[i + 1]})
        if (rb->is_algebraic() && !rb->root->is_exact())
          *rb->root = refine_root(*rb->root, (rb->root->hi - rb->root->lo) * Rational(Int(1), Int(4)));
    }
  }
  Rational first_lo = roots.front().is_algebraic() ? roots.front().root->lo
                                                   : roots.front().value.finite();
  samples.push_back(rat_min(-outer, first_lo - Rational(1)));
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    Rational a = roots[i].is_algebraic() ? roots[i].root->hi : roots[i].value.finite();
    Rational b = roots[i + 1].is_algebraic() ? roots[i + 1].root->lo : roots[i + 1].value.finite();
    samples.push_back((a + b) * Rational(Int(1), Int(2)));
  }
  Rational last_hi =
      roots.back().is_algebraic() ? roots.back().root->hi : roots.back().value.finite();
  samples.push_back(rat_max(outer, last_hi + Rational(1)));
  return samples;
}

struct RegionAnalysis {
  std::vector<RootBound> roots;      // sorted, deduplicated
  std::vector<Rational> samples;     // |roots| + 1 open-region samples
  std::vector<bool> region_ok;       // open regions satisfying the conjunction
  std::vector<bool> root_ok;         // root points satisfying it
};

RegionAnalysis analyze_conjunction(const std::vector<LowerBoundConstraint>& conj,
                                   const Rational& outer) {
  RegionAnalysis ra;
  ra.roots = collect_roots(distinct_polys(conj));
  ra.samples = region_samples(ra.roots, outer);
  ra.region_ok.resize(ra.samples.size());
  ra.root_ok.resize(ra.roots.size());
  for (std::size_t i = 0; i < ra.samples.size(); ++i) {
    bool ok = true;
    for (const auto& c : conj)
      if (!c.holds_at(ra.samples[i])) { ok = false; break; }
    ra.region_ok[i] = ok;
  }
  for (std::size_t i = 0; i < ra.roots.size(); ++i) {
    bool ok = true;
    for (const auto& c : conj) {
      int s = sign_at_bound(c.poly, ra.roots[i]);
      if (c.strict ? s <= 0 : s < 0) { ok = false; break; }
    }
    ra.root_ok[i] = ok;
  }
  return ra;
}

}  // namespace

Dinc dnflb_to_dinc(const Dnflb& phi) {
  Dinc psi;
  for (const auto& conj : phi.disjuncts) {
    Rational outer(Int(2));  // any sample outside all roots works; widened below
    for (const IntPoly* p : distinct_polys(conj)) {
      if (p->is_zero() || p->degree() == 0) continue;
      Rational c = cauchy_root_bound(*p) + Rational(1);
      if (c > outer) outer = c;
    }
    RegionAnalysis ra = analyze_conjunction(conj, outer);
    // Merge consecutive satisfied pieces region/root/region... into maximal
    // interval constraints.
    std::size_t pieces = ra.samples.size() + ra.roots.size();
    auto piece_ok = [&](std::size_t k) {
      return k % 2 == 0 ? ra.region_ok[k / 2] : ra.root_ok[k / 2];
    };
    std::size_t k = 0;
    while (k < pieces) {
      if (!piece_ok(k)) { ++k; continue; }
      std::size_t start = k;
      while (k < pieces && piece_ok(k)) ++k;
      std::size_t end = k - 1;  // inclusive
      DincInterval iv;
      if (start % 2 == 0) {  // starts with an open region
        std::size_t region = start / 2;
        iv.lo = region == 0 ? RootBound::neg_inf() : ra.roots[region - 1];
        iv.lo_strict = region != 0;
      } else {
        iv.lo = ra.roots[start / 2];
        iv.lo_strict = false;
      }
      if (end % 2 == 0) {
        std::size_t region = end / 2;
        iv.hi = region == ra.samples.size() - 1 ? RootBound::pos_inf() : ra.roots[region];
        iv.hi_strict = region != ra.samples.size() - 1;
      } else {
        iv.hi = ra.roots[end / 2];
        iv.hi_strict = false;
      }
      psi.intervals.push_back(std::move(iv));
    }
  }
  return psi;
}

Rational rump_separation_bound(const IntPoly& p) {
  if (p.is_zero() || p.degree() == 0)
    throw Error(ErrorCode::ZeroPolynomial, "Rump bound needs degree >= 1");
  unsigned long d = p.degree();
  Int dd;
  mpz_ui_pow_ui(dd.get_mpz_t(), d, d + 1);
  Int l = Int(1) + p.l1_norm();
  Int lp;
  mpz_pow_ui(lp.get_mpz_t(), l.get_mpz_t(), 2 * d);
  return Rational(Int(1), dd * lp);
}

Rational cauchy_root_bound(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Cauchy bound of zero");
  return Rational(Int(Int(1) + p.l1_norm()));
}

std::vector<Rational> candidate_points(const Dnflb& phi) {
  std::vector<const IntPoly*> polys;
  Int c = 1;
  for (const auto& conj : phi.disjuncts)
    for (const auto& lc : conj) {
      Int l = lc.poly.l1_norm();
      if (l > c) c = l;
      if (lc.poly.is_zero() || lc.poly.degree() == 0) continue;
      bool seen = false;
      for (const IntPoly* p : polys)
        if (*p == lc.poly) { seen = true; break; }
      if (!seen) polys.push_back(&lc.poly);
    }

  std::vector<Rational> cands;
  std::vector<RootBound> roots = collect_roots(polys);
  for (auto& r : roots)
    if (!r.is_algebraic() || r.root->is_exact())
      cands.push_back(r.is_algebraic() ? *r.root->exact : r.value.finite());
  if (!roots.empty()) {
    Rational outer = Rational(Int(Int(2) + c));
    std::vector<Rational> samples = region_samples(roots, outer);
    // interior gap midpoints only; the unbounded tails are case 3
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) cands.push_back(samples[i]);
  }
  cands.push_back(Rational(Int(Int(2) + c)));
  cands.push_back(-Rational(Int(Int(2) + c)));

  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

namespace {

// Deterministic fast path tried inside each disjunct before sweeping it.
const long kProbeValues[] = {0, 1, -1, 2, -2};

std::optional<Rational> pick_from_conjunction(const std::vector<LowerBoundConstraint>& conj,
                                              const Int& global_c) {
  // Constant constraints decide without any isolation.
  for (const auto& c : conj) {
    if (c.poly.is_zero()) {
      if (c.strict) return std::nullopt;
      continue;
    }
    if (c.poly.degree() == 0) {
      int s = sgn(c.poly.coeffs()[0]);
      if (c.strict ? s <= 0 : s < 0) return std::nullopt;
    }
  }
  for (long v : kProbeValues) {
    Rational t(v);
    bool ok = true;
    for (const auto& c : conj)
      if (!c.holds_at(t)) { ok = false; break; }
    if (ok) return t;
  }

  Rational outer(Int(Int(2) + global_c));
  RegionAnalysis ra = analyze_conjunction(conj, outer);
  std::size_t pieces = ra.samples.size() + ra.roots.size();
  auto piece_ok = [&](std::size_t k) {
    return k % 2 == 0 ? ra.region_ok[k / 2] : ra.root_ok[k / 2];
  };
  std::size_t k = 0;
  while (k < pieces) {
    if (!piece_ok(k)) { ++k; continue; }
    std::size_t start = k;
    while (k < pieces && piece_ok(k)) ++k;
    // Canonical rational inside the maximal feasible run: a non-strict
    // rational endpoint if one exists, else an interior sample, else the
    // outer point on an unbounded side.
    for (std::size_t piece = start; piece < k; ++piece) {
      if (piece % 2 == 1) {
        RootBound& r = ra.roots[piece / 2];
        if (!r.is_algebraic()) return r.value.finite();
        if (r.root->is_exact()) return *r.root->exact;
      } else {
        return ra.samples[piece / 2];
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> find_small_t(const Snls& s, const Config& cfg) {
  if (s.row() == 0) return Rational(0);  // vacuous constraints
  Dnflb phi = eliminate_quantifier(s, cfg);
  Int c = phi.max_l1();
  for (const auto& conj : phi.disjuncts) {
    auto t = pick_from_conjunction(conj, c);
    if (t.has_value()) {
      if (!phi.holds_at(*t)) throw Error(ErrorCode::Internal, "candidate failed verification");
      return t;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Rational>> solve_for_y(const Snls& s, const Rational& t,
                                                 const Config& cfg) {
  std::size_t m = s.row(), n = s.col();
  if (n == 0) {
    for (const auto& bi : s.b)
      if (bi.eval(t).sign() > 0) return std::nullopt;
    return std::vector<Rational>{};
  }
  if (binomial(m + n, n) > Int(static_cast<unsigned long>(cfg.subset_cap)))
    throw Error(ErrorCode::DimensionLimit, "row subsets exceed cap in solve_for_y");

  // Evaluate D, c at t once.
  ExtendedSystem ext = build_extended(s);
  RatMatrix D(m + n, std::vector<Rational>(n));
  std::vector<Rational> c(m + n);
  for (std::size_t i = 0; i < m + n; ++i) {
    for (std::size_t j = 0; j < n; ++j) D[i][j] = ext.D.at(i, j).eval(t);
    c[i] = ext.c[i].eval(t);
  }

  auto feasible = [&](const std::vector<Rational>& y) {
    for (std::size_t i = 0; i < m + n; ++i) {
      Rational lhs(0);
      for (std::size_t j = 0; j < n; ++j) lhs += D[i][j] * y[j];
      if (lhs < c[i]) return false;
    }
    return true;
  };

  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  do {
    RatMatrix DR(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) DR[i] = D[idx[i]];
    Rational detR = rat_det(DR);
    if (detR.is_zero()) continue;
    RatMatrix adjR = rat_adjugate(DR);
    std::vector<Rational> y(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += adjR[i][j] * c[idx[j]];
      y[i] = acc / detR;
    }
    if (feasible(y)) return y;
  } while (next_subset(idx, m + n));
  return std::nullopt;
}

bool verify_solution(const Snls& s, const Rational& t, const std::vector<Rational>& y) {
  if (y.size() != s.col()) return false;
  for (const auto& yi : y)
    if (yi.sign() < 0) return false;
  for (std::size_t i = 0; i < s.row(); ++i) {
    // Power-accumulation evaluation, on purpose not the solver's Horner.
    Rational lhs(0);
    for (std::size_t j = 0; j < s.col(); ++j) {
      const auto& cs = s.A.at(i, j).coeffs();
      Rational val(0), tp(1);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        val += Rational(cs[k]) * tp;
        tp = tp * t;
      }
      lhs += val * y[j];
    }
    const auto& bs = s.b[i].coeffs();
    Rational rhs(0), tp(1);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      rhs += Rational(bs[k]) * tp;
      tp = tp * t;
    }
    if (lhs < rhs) return false;
  }
  return true;
}

std::optional<SnlsSolution> solve(const Snls& s, const Config& cfg) {
  if (s.row() == 0) {
    SnlsSolution sol{Rational(0), std::vector<Rational>(s.col(), Rational(0)), Int(1)};
    return sol;
  }
  auto t = find_small_t(s, cfg);
  if (!t.has_value()) return std::nullopt;
  auto y = solve_for_y(s, *t, cfg);
  if (!y.has_value())
    throw Error(ErrorCode::Internal, "minimal-face extraction failed at a feasible t");
  SnlsSolution sol{*t, *y, common_denominator(*y)};
  if (!verify_solution(s, sol.t, sol.y))
    throw Error(ErrorCode::Internal, "solution failed exact re-verification");
  return sol;
}

std::optional<std::pair<Rational, std::vector<Int>>> scale_to_integer(const Snls& s,
                                                                      const SnlsSolution& sol,
                                                                      std::string* diagnostic) {
  std::vector<Int> scaled;
  std::vector<Rational> check;
  for (const auto& yi : sol.y) {
    Rational v = yi * Rational(sol.common_denom);
    if (!v.is_integer()) {
      if (diagnostic) *diagnostic = "common denominator does not clear " + yi.str();
      return std::nullopt;
    }
    scaled.push_back(v.numerator());
    check.push_back(v);
  }
  if (!verify_solution(s, sol.t, check)) {
    if (diagnostic)
      *diagnostic = "scaled vector violates the system; instance is not monotone";
    return std::nullopt;
  }
  return std::make_pair(sol.t, std::move(scaled));
}

Int solution_size_bound(const Snls& s, unsigned C) {
  Int base = Int(s.col()) * Int(s.deg()) * s.maxc();
  Int expo = Int(C) * Int(s.deg()) * Int(s.deg());
  Int rows4 = Int(s.row());
  rows4 = rows4 * rows4;
  rows4 = rows4 * rows4;
  expo *= rows4;
  if (expo > 2000000) throw Error(ErrorCode::BoundOverflow, "size bound exponent too large");
  Int r;
  if (expo == 0) return Int(1);
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), expo.get_ui());
  return r;
}

namespace {

struct LinRow {
  std::vector<Rational> a;  // coefficients of y
  Rational rhs;             // a . y >= rhs
};

}  // namespace

bool per_t_lp_feasible(const Snls& s, const Rational& t, const Config& cfg) {
  std::size_t n = s.col();
  std::vector<LinRow> rows;
  for (std::size_t i = 0; i < s.row(); ++i) {
    LinRow r;
    r.a.resize(n);
    for (std::size_t j = 0; j < n; ++j) r.a[j] = s.A.at(i, j).eval(t);
    r.rhs = s.b[i].eval(t);
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinRow r;
    r.a.assign(n, Rational(0));
    r.a[j] = Rational(1);
    r.rhs = Rational(0);
    rows.push_back(std::move(r));
  }

  // Eliminate variables back to front.
  for (std::size_t var = n; var-- > 0;) {
    std::vector<LinRow> pos, neg, zero;
    for (auto& r : rows) {
      int sg = r.a[var].sign();
      if (sg > 0) pos.push_back(std::move(r));
      else if (sg < 0) neg.push_back(std::move(r));
      else zero.push_back(std::move(r));
    }
    std::vector<LinRow> next = std::move(zero);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p: a.y >= rhs with a[var] > 0 gives y_var >= lower; q gives upper.
        LinRow r;
        r.a.assign(var, Rational(0));
        Rational cp = p.a[var], cq = -q.a[var];
        for (std::size_t j = 0; j < var; ++j) r.a[j] = p.a[j] * cq + q.a[j] * cp;
        r.rhs = p.rhs * cq + q.rhs * cp;
        next.push_back(std::move(r));
        if (next.size() > cfg.fm_cap)
          throw Error(ErrorCode::FmBlowup, "Fourier-Motzkin intermediate rows exceed cap");
      }
    }
    for (auto& r : next) r.a.resize(var);
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r.rhs.sign() > 0) return false;  // 0 >= rhs fails
  return true;
}

ProbeReport brute_feasibility_probe(const Snls& s, std::size_t extra_samples, std::uint64_t seed,
                                    const Config& cfg) {
  ProbeReport rep;
  std::vector<Rational> points;
  if (s.row() == 0) {
    points.push_back(Rational(0));
  } else {
    Dnflb phi = eliminate_quantifier(s, cfg);
    points = candidate_points(phi);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 12);
  for (std::size_t i = 0; i < extra_samples; ++i)
    points.push_back(Rational(Int(num(rng)), Int(den(rng))));
  for (const auto& t : points) {
    ++rep.tried;
    if (per_t_lp_feasible(s, t, cfg)) rep.feasible_points.push_back(t);
  }
  return rep;
}

std::string solution_to_json(const std::optional<SnlsSolution>& sol) {
  ordered_json j;
  j["status"] = sol.has_value() ? "FEASIBLE" : "INFEASIBLE";
  if (sol.has_value()) {
    j["t"] = sol->t.str();
    ordered_json y = ordered_json::array();
    for (const auto& v : sol->y) y.push_back(v.str());
    j["y"] = y;
    j["common_denominator"] = sol->common_denom.get_str();
  }
  return j.dump(2);
}

}  // namespace vsep
