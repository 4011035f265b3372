#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsep/config.hpp"
#include "vsep/matrix.hpp"
#include "vsep/roots.hpp"

namespace vsep {

/// Singly non-linear system A(x) * y >= b(x), y >= 0, solved over Q.
struct Snls {
  PolyMatrix A;              // m x n
  std::vector<IntPoly> b;    // length m

  std::size_t row() const { return A.rows(); }
  std::size_t col() const { return A.cols(); }
  std::size_t deg() const;
  Int maxc() const;

  std::string to_json() const;
  static Snls from_json(const std::string& text);
};

/// D = [A; I_n], c = [b; 0_n]; same solution set for every t.
struct ExtendedSystem {
  PolyMatrix D;              // (m+n) x n
  std::vector<IntPoly> c;    // length m+n
};

ExtendedSystem build_extended(const Snls& s);

struct LowerBoundConstraint {
  IntPoly poly;
  bool strict = false;  // true: poly(x) > 0, false: poly(x) >= 0

  bool holds_at(const Rational& t) const {
    int s = poly.sign_at(t);
    return strict ? s > 0 : s >= 0;
  }
};

/// Disjunctive normal form over lower-bound constraints. Disjunct order is
/// the construction order (row subsets lexicographic, det>0 branch first);
/// downstream determinism leans on it.
struct Dnflb {
  std::vector<std::vector<LowerBoundConstraint>> disjuncts;

  bool holds_at(const Rational& t) const;
  Int max_l1() const;  // max l1 over all polynomials, 1 if none
};

/// Pointwise Q-equivalent formula over t; DIMENSION_LIMIT if C(m+n, n)
/// exceeds cfg.subset_cap.
Dnflb eliminate_quantifier(const Snls& s, const Config& cfg = Config::defaults());

/// Disjunction of interval constraints with root bounds.
struct DincInterval {
  RootBound lo;
  bool lo_strict = false;
  RootBound hi;
  bool hi_strict = false;
};

struct Dinc {
  std::vector<DincInterval> intervals;

  bool holds_at(const Rational& t) const;
};

Dinc dnflb_to_dinc(const Dnflb& phi);

/// (d^{d+1} * (1 + l1(p))^{2d})^{-1}; strictly below any root gap of p.
Rational rump_separation_bound(const IntPoly& p);

/// 1 + l1(p); every real root r of p has |r| <= this.
Rational cauchy_root_bound(const IntPoly& p);

/// Candidate rationals: rational roots, gap midpoints between refined
/// isolating intervals, and +-(2+c). Sorted ascending, deduplicated.
std::vector<Rational> candidate_points(const Dnflb& phi);

/// Smallest witness t per the deterministic disjunct-major order; absent
/// iff the system is Q-infeasible.
std::optional<Rational> find_small_t(const Snls& s, const Config& cfg = Config::defaults());

/// Vertex-style solution of the linear system at t (minimal-face
/// enumeration); absent iff infeasible at t.
std::optional<std::vector<Rational>> solve_for_y(const Snls& s, const Rational& t,
                                                 const Config& cfg = Config::defaults());

struct SnlsSolution {
  Rational t;
  std::vector<Rational> y;
  Int common_denom;
};

std::optional<SnlsSolution> solve(const Snls& s, const Config& cfg = Config::defaults());

/// (t, K*y) re-verified against s; absent with a diagnostic if the scaled
/// vector violates the system (non-monotone instances).
std::optional<std::pair<Rational, std::vector<Int>>> scale_to_integer(
    const Snls& s, const SnlsSolution& sol, std::string* diagnostic = nullptr);

/// (col*deg*maxc)^(C*deg^2*row^4); informational only.
Int solution_size_bound(const Snls& s, unsigned C);

/// Exact Fourier-Motzkin feasibility of the linear system at t; independent
/// of the quantifier-elimination route. FM_BLOWUP beyond cfg.fm_cap.
bool per_t_lp_feasible(const Snls& s, const Rational& t, const Config& cfg = Config::defaults());

struct ProbeReport {
  std::vector<Rational> feasible_points;
  std::size_t tried = 0;
};

/// Test oracle: probes every candidate point plus random rationals.
ProbeReport brute_feasibility_probe(const Snls& s, std::size_t extra_samples, std::uint64_t seed,
                                    const Config& cfg = Config::defaults());

/// Independent re-verification used by the soundness gate; deliberately
/// avoids the solver's evaluation helpers.
bool verify_solution(const Snls& s, const Rational& t, const std::vector<Rational>& y);

std::string solution_to_json(const std::optional<SnlsSolution>& sol);

}  // namespace vsep
