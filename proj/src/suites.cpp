#include "vsep/suites.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace vsep::suites {

namespace {

using Clock = std::chrono::steady_clock;

}  // namespace

const std::vector<SepFixture>& sep_fixtures() {
  // All six over Sigma_1 with d = 0; the verdicts are hand-derived, see the
  // fixture files for the trace notes.
  static const std::vector<SepFixture> fixtures = {
      {"no-finals",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init\n"
          "trans q0 -> q0 label=a1 update=()\n"),
       Verdict::Separable, ""},
      {"a1-self-loop",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init final\n"
          "trans q0 -> q0 label=a1 update=()\n"),
       Verdict::Inseparable, "3/1"},
      {"A1-self-loop",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init final\n"
          "trans q0 -> q0 label=A1 update=()\n"),
       Verdict::Separable, ""},
      {"a1-loop-then-A1-loop",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init\n"
          "state q1 final\n"
          "trans q0 -> q0 label=a1 update=()\n"
          "trans q0 -> q1 label=A1 update=()\n"
          "trans q1 -> q1 label=A1 update=()\n"),
       Verdict::Separable, ""},
      {"both-loops",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init final\n"
          "trans q0 -> q0 label=A1 update=()\n"
          "trans q0 -> q0 label=a1 update=()\n"),
       Verdict::Inseparable, "1/1"},
      {"A1-then-a1-loop",
       std::string("vass dim=0 alphabet=a1,A1\n"
          "state q0 init\n"
          "state q1 final\n"
          "trans q0 -> q1 label=A1 update=()\n"
          "trans q1 -> q1 label=a1 update=()\n"),
       Verdict::Separable, ""},
  };
  return fixtures;
}

Snls random_snls(std::uint64_t seed, std::size_t max_m, std::size_t max_n, std::size_t max_deg,
                 long max_coeff) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> md(0, max_m), nd(1, max_n), dd(0, max_deg);
  std::uniform_int_distribution<long> cd(-max_coeff, max_coeff);
  std::uniform_int_distribution<int> sparse(0, 3);
  std::size_t m = md(rng), n = nd(rng);
  Snls s;
  s.A = PolyMatrix(m, n);
  auto poly = [&]() {
    std::size_t deg = dd(rng);
    std::vector<Int> c(deg + 1, Int(0));
    for (auto& v : c)
      if (sparse(rng) != 0) v = cd(rng);
    return IntPoly(std::move(c));
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) s.A.at(i, j) = poly();
  for (std::size_t i = 0; i < m; ++i) s.b.push_back(poly());
  return s;
}

IntPoly random_poly(std::uint64_t seed, std::size_t max_deg, long max_coeff) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dd(1, max_deg);
  std::uniform_int_distribution<long> cd(-max_coeff, max_coeff);
  std::size_t deg = dd(rng);
  std::vector<Int> c(deg + 1, Int(0));
  for (auto& v : c) v = cd(rng);
  if (sgn(c.back()) == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

Vass random_vass(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> sd(1, 4), dd(0, 2), td(1, 5);
  std::size_t states = sd(rng), dim = dd(rng), trans = td(rng);
  std::uniform_int_distribution<std::size_t> qd(0, states - 1);
  std::uniform_int_distribution<long> ud(-2, 2);
  Vass v;
  v.dim = dim;
  for (std::size_t i = 0; i < states; ++i) v.add_state("q" + std::to_string(i), rng() % 2 == 0);
  v.init = 0;
  for (std::size_t i = 0; i < trans; ++i) {
    Transition t;
    t.src = qd(rng);
    t.dst = qd(rng);
    for (std::size_t j = 0; j < dim; ++j) t.update.push_back(Int(ud(rng)));
    v.transitions.push_back(std::move(t));
  }
  return v;
}

Vass random_buchi_automaton(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> sd(1, 3), td(1, 4);
  std::size_t states = sd(rng), trans = td(rng);
  std::uniform_int_distribution<std::size_t> qd(0, states - 1), ld(0, 1);
  Vass v;
  v.dim = 0;
  v.alphabet = dyck_alphabet(1);
  for (std::size_t i = 0; i < states; ++i) v.add_state("q" + std::to_string(i), rng() % 2 == 0);
  v.init = 0;
  for (std::size_t i = 0; i < trans; ++i) {
    Transition t;
    t.src = qd(rng);
    t.dst = qd(rng);
    t.label.pairs.emplace_back(ld(rng), Int(1));
    bool dup = false;
    for (const auto& e : v.transitions)
      dup = dup || (e.src == t.src && e.dst == t.dst && e.label.pairs == t.label.pairs);
    if (!dup) v.transitions.push_back(std::move(t));
  }
  return v;
}

Vass random_nvisible_vass(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> sd(1, 3), dd(0, 1), td(1, 4);
  std::size_t states = sd(rng), dim = dd(rng), trans = td(rng);
  std::uniform_int_distribution<std::size_t> qd(0, states - 1), ld(0, 1);
  std::uniform_int_distribution<long> ud(-1, 1);
  Vass v;
  v.dim = dim;
  v.alphabet = dyck_alphabet(1);
  for (std::size_t i = 0; i < states; ++i) v.add_state("q" + std::to_string(i), rng() % 2 == 0);
  v.init = 0;
  for (std::size_t i = 0; i < trans; ++i) {
    Transition t;
    t.src = qd(rng);
    t.dst = qd(rng);
    t.label.pairs.emplace_back(ld(rng), Int(1));
    for (std::size_t j = 0; j < dim; ++j) t.update.push_back(Int(ud(rng)));
    bool dup = false;
    for (const auto& e : v.transitions)
      dup = dup || (e.src == t.src && e.dst == t.dst && e.label.pairs == t.label.pairs &&
                    e.update == t.update);
    if (!dup) v.transitions.push_back(std::move(t));
  }
  return v;
}

namespace {

Snls sqrt2_trap() {
  // rows (x^2-2)y >= 0, (2-x^2)y >= 0, y >= 1: real solutions need t^2 = 2
  Snls s;
  s.A = PolyMatrix(3, 1);
  s.A.at(0, 0) = IntPoly(std::vector<Int>{-2, 0, 1});
  s.A.at(1, 0) = IntPoly(std::vector<Int>{2, 0, -1});
  s.A.at(2, 0) = IntPoly::constant(1);
  s.b = {IntPoly(), IntPoly(), IntPoly::constant(1)};
  return s;
}

Snls forced_t_system() {
  // rows force (4-2t)y = 0 and (t-2)y = 0 with y >= 1, hence t = 2
  Snls s;
  s.A = PolyMatrix(5, 1);
  s.A.at(0, 0) = IntPoly(std::vector<Int>{4, -2});
  s.A.at(1, 0) = IntPoly(std::vector<Int>{-4, 2});
  s.A.at(2, 0) = IntPoly(std::vector<Int>{-2, 1});
  s.A.at(3, 0) = IntPoly(std::vector<Int>{2, -1});
  s.A.at(4, 0) = IntPoly::constant(1);
  s.b = {IntPoly(), IntPoly(), IntPoly(), IntPoly(), IntPoly::constant(1)};
  return s;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 10);
  return Rational(Int(num(rng)), Int(den(rng)));
}

CriterionResult ac1(std::uint64_t seed) {
  Config cfg;
  for (std::size_t i = 0; i < 200; ++i) {
    Snls s = random_snls(seed * 977 + i);
    Dnflb phi = eliminate_quantifier(s, cfg);
    std::mt19937_64 rng(seed * 31 + i);
    for (int j = 0; j < 25; ++j) {
      Rational t = random_rational(rng);
      bool qe = phi.holds_at(t);
      bool fm = per_t_lp_feasible(s, t, cfg);
      if (qe != fm)
        return {1, "", false,
                "mismatch on instance " + std::to_string(i) + " at t = " + t.str(), 0};
    }
  }
  return {1, "", true, "5000/5000 checks agree", 0};
}

CriterionResult ac2(std::uint64_t seed) {
  Config cfg;
  std::size_t feasible = 0, infeasible = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Snls s = random_snls(seed * 1299721 + i);
    auto sol = solve(s, cfg);
    if (sol.has_value()) {
      ++feasible;
      if (!verify_solution(s, sol->t, sol->y))
        return {2, "", false, "solution failed re-verification on " + std::to_string(i), 0};
    } else {
      ++infeasible;
      ProbeReport rep = brute_feasibility_probe(s, 100, seed + i, cfg);
      if (!rep.feasible_points.empty())
        return {2, "", false,
                "INFEASIBLE contradicted at t = " + rep.feasible_points[0].str() + " on " +
                    std::to_string(i), 0};
    }
  }
  return {2, "", true,
          std::to_string(feasible) + " feasible / " + std::to_string(infeasible) + " infeasible, all verified", 0};
}

CriterionResult ac3(std::uint64_t) {
  Config cfg;
  auto trap = solve(sqrt2_trap(), cfg);
  if (trap.has_value()) return {3, "", false, "sqrt2 trap reported feasible", 0};
  auto forced = solve(forced_t_system(), cfg);
  if (!forced.has_value()) return {3, "", false, "forced-t system reported infeasible", 0};
  if (forced->t != Rational(2))
    return {3, "", false, "forced-t returned t = " + forced->t.str(), 0};
  return {3, "", true, "trap INFEASIBLE, forced-t FEASIBLE with t = 2", 0};
}

CriterionResult ac4(std::uint64_t seed) {
  Config cfg;
  for (std::size_t i = 0; i < 200; ++i) {
    Snls s = random_snls(seed * 977 + i);
    Dnflb phi = eliminate_quantifier(s, cfg);
    std::size_t bound = (s.row() + 2) * s.deg();
    for (const auto& conj : phi.disjuncts)
      for (const auto& c : conj)
        if (!c.poly.is_zero() && c.poly.degree() > bound)
          return {4, "", false,
                  "degree " + std::to_string(c.poly.degree()) + " exceeds bound " +
                      std::to_string(bound), 0};
  }
  return {4, "", true, "deg(Phi) <= (m+2)*deg(S') on all instances", 0};
}

CriterionResult ac5(std::uint64_t seed) {
  for (std::size_t i = 0; i < 200; ++i) {
    IntPoly p = random_poly(seed * 50413 + i);
    auto roots = isolate_real_roots(p);
    IntPoly q = squarefree_part(p);
    Rational cauchy = cauchy_root_bound(p);
    if (q.degree() >= 1) {
      auto chain = sturm_chain(q);
      int expected = sturm_count(chain, -cauchy, cauchy);
      if (static_cast<int>(roots.size()) != expected)
        return {5, "", false, "isolation count mismatch on instance " + std::to_string(i), 0};
    } else if (!roots.empty()) {
      return {5, "", false, "constant squarefree part but roots found", 0};
    }
    if (roots.size() >= 2) {
      Rational rump = rump_separation_bound(p);
      Rational quarter = rump * Rational(Int(1), Int(4));
      std::vector<IsolatedRoot> refined;
      for (const auto& r : roots) refined.push_back(refine_root(r, quarter));
      for (std::size_t a = 0; a + 1 < refined.size(); ++a) {
        // the roots sit inside the intervals, so the outer span witnesses
        // the Rump gap and the inner gap keeps at least half of it
        Rational outer = refined[a + 1].hi - refined[a].lo;
        Rational inner = refined[a + 1].lo - refined[a].hi;
        Rational half = rump * Rational(Int(1), Int(2));
        if (!(outer > rump) || !(inner > half))
          return {5, "", false, "Rump separation violated on instance " + std::to_string(i), 0};
      }
    }
    for (const auto& r : roots)
      if (r.lo < -cauchy || r.hi > cauchy)
        return {5, "", false, "root outside Cauchy interval on " + std::to_string(i), 0};
  }
  return {5, "", true, "isolation counts, Rump separation and Cauchy bounds hold", 0};
}

CriterionResult ac6(std::uint64_t seed) {
  Config cfg;
  for (std::size_t i = 0; i < 50; ++i) {
    Vass v = random_vass(seed * 40427 + i);
    KmGraph km;
    try {
      km = build_km(v, cfg);
    } catch (const Error& e) {
      return {6, "", false, std::string("KM build failed: ") + e.what(), 0};
    }
    for (std::size_t node = 0; node < km.nodes.size(); ++node) {
      auto path = witness_cover(km, node, 3, cfg);
      ExtConfig start;
      start.state = v.init;
      start.values.assign(v.dim, ExtValue::of(0));
      RunReport rep = check_run(v, start, path);
      if (!rep.ok || rep.final_config.state != km.nodes[node].state)
        return {6, "", false, "witness run invalid on instance " + std::to_string(i), 0};
    }
    // explicit BFS with per-counter cap 40
    std::set<std::vector<long>> seen;
    std::deque<std::pair<std::size_t, std::vector<long>>> work;
    std::vector<long> zero(v.dim, 0);
    auto key = [&](std::size_t q, const std::vector<long>& vals) {
      std::vector<long> k{static_cast<long>(q)};
      k.insert(k.end(), vals.begin(), vals.end());
      return k;
    };
    work.emplace_back(v.init, zero);
    seen.insert(key(v.init, zero));
    while (!work.empty()) {
      auto [q, vals] = work.front();
      work.pop_front();
      ExtConfig target;
      target.state = q;
      for (long x : vals) target.values.push_back(ExtValue::of(x));
      if (!coverable(km, target))
        return {6, "", false, "BFS-reachable config not KM-coverable on " + std::to_string(i), 0};
      for (const auto& t : v.transitions) {
        if (t.src != q) continue;
        std::vector<long> nv = vals;
        bool ok = true;
        for (std::size_t j = 0; j < v.dim; ++j) {
          nv[j] += t.update[j].get_si();
          if (nv[j] < 0 || nv[j] > 40) ok = false;
        }
        if (!ok) continue;
        auto kk = key(t.dst, nv);
        if (seen.insert(kk).second) work.emplace_back(t.dst, nv);
      }
    }
  }
  return {6, "", true, "witness runs validate; BFS coverability contained in KM", 0};
}

CriterionResult ac7(std::uint64_t) {
  Config cfg;
  std::ostringstream detail;
  for (const auto& f : sep_fixtures()) {
    Vass v = parse_vass(f.text);
    Decision dec = decide_dyck(v, cfg);
    if (dec.verdict != f.expected)
      return {7, "", false, "fixture " + f.name + " verdict mismatch", 0};
    if (dec.verdict == Verdict::Inseparable) {
      if (!dec.certificate.has_value())
        return {7, "", false, "fixture " + f.name + " missing certificate", 0};
      Vass vn = normalize_labels(v);
      KmGraph km = build_km(product_dyck(vn), cfg);
      ValidationReport rep = validate_flower(vn, dec.certificate->flower, km);
      if (!rep.all_pass())
        return {7, "", false, "fixture " + f.name + " certificate rejected:\n" + rep.str(), 0};
      if (!f.expected_t.empty() && dec.certificate->t != Rational::parse(f.expected_t))
        return {7, "", false,
                "fixture " + f.name + " certificate t = " + dec.certificate->t.str() +
                    ", expected " + f.expected_t, 0};
    }
    detail << f.name << "=" << (dec.verdict == Verdict::Inseparable ? "INSEP" : "SEP") << " ";
  }
  return {7, "", true, "6/6 verdicts match; certificates validate (" + detail.str() + ")", 0};
}

CriterionResult ac8(std::uint64_t seed) {
  Config cfg;
  for (std::size_t i = 0; i < 100; ++i) {
    Vass v = random_buchi_automaton(seed * 7919 + i);
    Decision dec = decide_dyck(v, cfg);
    bool nonempty = buchi_nonempty(product_dyck(v), cfg);
    bool insep = dec.verdict == Verdict::Inseparable;
    if (insep != nonempty)
      return {8, "", false,
              "oracle disagreement on instance " + std::to_string(i) + ": decide=" +
                  (insep ? "INSEP" : "SEP") + " nonempty=" + (nonempty ? "yes" : "no"), 0};
  }
  return {8, "", true, "100/100 dim-0 verdicts agree with the product emptiness oracle", 0};
}

CriterionResult ac9(std::uint64_t) {
  Config cfg;
  for (const auto& f : sep_fixtures()) {
    if (f.expected != Verdict::Inseparable) continue;
    Vass v = parse_vass(f.text);
    Decision dec = decide_dyck(v, cfg);
    if (!dec.certificate.has_value()) return {9, "", false, "missing certificate", 0};
    for (long k = 0; k <= 2; ++k) {
      DemoReport rep = demonstrate(v, *dec.certificate, Int(k),
                                   {std::vector<Int>{Int(1)}}, cfg);
      if (!rep.escapes_all())
        return {9, "", false,
                "fixture " + f.name + " at k=" + std::to_string(k) + ": " + rep.str(), 0};
    }
  }
  return {9, "", true, "demonstrator escapes every sampled basic separator, runs valid", 0};
}

Vass permute_internal_counters(const Vass& v, std::uint64_t seed) {
  if (v.dim <= 1) return v;
  std::vector<std::size_t> perm(v.dim);
  for (std::size_t i = 0; i < v.dim; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  Vass out = v;
  for (std::size_t ti = 0; ti < out.transitions.size(); ++ti)
    for (std::size_t i = 0; i < v.dim; ++i)
      out.transitions[ti].update[i] = v.transitions[ti].update[perm[i]];
  return out;
}

CriterionResult ac10(std::uint64_t seed) {
  Config cfg;
  for (const auto& f : sep_fixtures()) {
    Vass v = parse_vass(f.text);
    Verdict base = decide_dyck(v, cfg).verdict;

    Vass renamed = v;
    for (std::size_t i = 0; i < renamed.states.size(); ++i)
      renamed.states[i] = "s" + std::to_string(i * 7 + 1);
    if (decide_dyck(renamed, cfg).verdict != base)
      return {10, "", false, f.name + ": state renaming changed the verdict", 0};

    Vass reordered = v;
    std::reverse(reordered.transitions.begin(), reordered.transitions.end());
    if (decide_dyck(reordered, cfg).verdict != base)
      return {10, "", false, f.name + ": transition reordering changed the verdict", 0};

    Vass padded = v;
    std::size_t extra = padded.add_state("unreachable", true);
    Transition loop;
    loop.src = extra;
    loop.dst = extra;
    loop.label.pairs.emplace_back(0, Int(1));
    loop.update.assign(padded.dim, Int(0));
    padded.transitions.push_back(std::move(loop));
    if (decide_dyck(padded, cfg).verdict != base)
      return {10, "", false, f.name + ": unreachable state changed the verdict", 0};

    Vass permuted = permute_internal_counters(v, seed);
    if (decide_dyck(permuted, cfg).verdict != base)
      return {10, "", false, f.name + ": counter permutation changed the verdict", 0};
  }
  return {10, "", true, "verdicts stable under all four transformations", 0};
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  static const char* names[] = {
      "QE equivalence against Fourier-Motzkin",
      "SNLS soundness and sampling completeness",
      "Q-vs-R discrimination (sqrt2 trap, forced-t)",
      "degree bound of the eliminated formula",
      "root machinery (Sturm counts, Rump, Cauchy)",
      "KM soundness and BFS completeness",
      "analytic separability fixtures",
      "dim-0 oracle agreement",
      "basic-separator demonstrator",
      "metamorphic verdict stability",
  };
  auto start = Clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = ac1(seed); break;
    case 2: r = ac2(seed); break;
    case 3: r = ac3(seed); break;
    case 4: r = ac4(seed); break;
    case 5: r = ac5(seed); break;
    case 6: r = ac6(seed); break;
    case 7: r = ac7(seed); break;
    case 8: r = ac8(seed); break;
    case 9: r = ac9(seed); break;
    case 10: r = ac10(seed); break;
    default: throw Error(ErrorCode::SemanticError, "criterion id must be 1..10");
  }
  r.name = names[id - 1];
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::vector<int> criteria_for_suite(const std::string& name) {
  if (name == "snls-props") return {1, 2, 3, 4, 5};
  if (name == "km-props") return {6};
  if (name == "sep-fixtures") return {7, 10};
  if (name == "oracles") return {8, 9};
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return {};
}

}  // namespace vsep::suites
