#include "vsep/sep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace vsep {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

long dyck_code(const std::string& name) {
  if (name.size() < 2) return 0;
  char c = name[0];
  if (c != 'a' && c != 'A') return 0;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(name[i]))) return 0;
  long idx = std::stol(name.substr(1));
  return c == 'a' ? idx : -idx;
}

std::size_t canonical_letter(const std::string& name) {
  long code = dyck_code(name);
  if (code == 0) throw Error(ErrorCode::AlphabetMismatch, "non-Dyck letter " + name);
  return code > 0 ? 2 * (code - 1) : 2 * (-code - 1) + 1;
}

}  // namespace

Snls flower_snls(const CycleBasis& basis, const std::vector<std::size_t>& s_alpha,
                 const std::vector<std::size_t>& s_beta, const std::vector<std::size_t>& s_gamma,
                 std::size_t d, std::size_t n) {
  const std::size_t na = s_alpha.size(), nb = s_beta.size(), ng = s_gamma.size();
  const std::size_t cols = na + nb + ng;
  const std::size_t rows = cols + d + n + 2 * n;
  Snls s;
  s.A = PolyMatrix(rows, cols);
  s.b.assign(rows, IntPoly());
  std::size_t r = 0;
  // repeat every support loop at least once
  for (std::size_t c = 0; c < cols; ++c, ++r) {
    s.A.at(r, c) = IntPoly::constant(1);
    s.b[r] = IntPoly::constant(1);
  }
  auto delta_of = [&](std::size_t cyc, std::size_t i) { return basis.cycles[cyc].delta[i]; };
  auto phi_of = [&](std::size_t cyc, std::size_t j) { return basis.cycles[cyc].phi[j]; };
  // internal: combined effect of all three loops non-negative
  for (std::size_t i = 0; i < d; ++i, ++r) {
    for (std::size_t c = 0; c < na; ++c) s.A.at(r, c) = IntPoly::constant(delta_of(s_alpha[c], i));
    for (std::size_t c = 0; c < nb; ++c)
      s.A.at(r, na + c) = IntPoly::constant(delta_of(s_beta[c], i));
    for (std::size_t c = 0; c < ng; ++c)
      s.A.at(r, na + nb + c) = IntPoly::constant(delta_of(s_gamma[c], i));
  }
  // external: alpha+beta balance non-negative
  for (std::size_t j = 0; j < n; ++j, ++r) {
    for (std::size_t c = 0; c < na; ++c) s.A.at(r, c) = IntPoly::constant(phi_of(s_alpha[c], j));
    for (std::size_t c = 0; c < nb; ++c)
      s.A.at(r, na + c) = IntPoly::constant(phi_of(s_beta[c], j));
  }
  // scalar-multiple equality as two rows per coordinate; the alpha columns
  // carry the degree-1 polynomial phi*(1 - t)
  for (std::size_t j = 0; j < n; ++j) {
    for (int sign = 0; sign < 2; ++sign, ++r) {
      for (std::size_t c = 0; c < na; ++c) {
        Int p = phi_of(s_alpha[c], j);
        IntPoly e(std::vector<Int>{sign == 0 ? p : -p, sign == 0 ? -p : p});
        s.A.at(r, c) = e;
      }
      for (std::size_t c = 0; c < nb; ++c) {
        Int p = phi_of(s_beta[c], j);
        s.A.at(r, na + c) = IntPoly::constant(sign == 0 ? p : -p);
      }
      for (std::size_t c = 0; c < ng; ++c) {
        Int p = phi_of(s_gamma[c], j);
        s.A.at(r, na + nb + c) = IntPoly::constant(sign == 0 ? p : -p);
      }
    }
  }
  return s;
}

namespace {

/// The graph the flower search walks, with mappings back to KM(V x D_n).
struct SearchSpace {
  Vass vn;     // normalized n-visible input
  std::size_t d = 0, n = 0;
  Vass prod;   // product_dyck(vn)
  KmGraph kmP;
  PumpVass pump;
  Vass prod2;  // pump-external-product mode
  KmGraph km2;
  bool single = false;

  std::size_t kmp_node(std::size_t node) const {
    if (single) return node;
    return pump.node_of_state[km2.nodes[node].state];
  }
  std::size_t vtrans_of_edge(std::size_t edge) const {
    std::size_t t = km2.edges[edge].transition;
    if (single) return t;  // km2 over prod: transitions are V's
    return kmP.edges[t].transition;  // pump transition id == kmP edge id
  }
  bool node_final(std::size_t node) const {
    if (single) return vn.final_state[kmP.nodes[node].state];
    return pump.vass.final_state[km2.nodes[node].state];
  }
};

// The graphs keep pointers into the space's own Vass members, so the space
// is filled in place and must not be moved afterwards.
void init_space(SearchSpace& sp, const Vass& v, const Config& cfg) {
  sp.vn = normalize_labels(v);
  auto n = dyck_arity(sp.vn);
  if (!n.has_value())
    throw Error(ErrorCode::AlphabetMismatch, "separability needs an n-visible VASS");
  sp.n = *n;
  sp.d = sp.vn.dim;
  sp.prod = product_dyck(sp.vn);
  sp.kmP = build_km(sp.prod, cfg);
  sp.single = cfg.single_km;
  if (sp.single) {
    sp.km2 = sp.kmP;
  } else {
    sp.pump = build_pump(sp.kmP, sp.vn);
    if (cfg.pump_external_product) {
      sp.prod2 = product_dyck(sp.pump.vass);
      sp.km2 = build_km(sp.prod2, cfg);
    } else {
      sp.km2 = build_km(sp.pump.vass, cfg);
    }
  }
}

// Per-coordinate necessary condition for a support set: with every
// multiplicity >= 1, an all-negative coordinate can never sum >= 0.
bool support_filter(const CycleBasis& basis, const std::vector<const std::vector<std::size_t>*>& sets,
                    bool external, std::size_t coords) {
  for (std::size_t c = 0; c < coords; ++c) {
    bool any_pos = false, any_neg = false;
    for (const auto* s : sets)
      for (std::size_t cyc : *s) {
        const Int& e = external ? basis.cycles[cyc].phi[c] : basis.cycles[cyc].delta[c];
        if (sgn(e) > 0) any_pos = true;
        if (sgn(e) < 0) any_neg = true;
      }
    if (!any_pos && any_neg) return false;
  }
  return true;
}

std::string effect_signature(const CycleBasis& basis, const std::vector<std::size_t>& s) {
  std::vector<std::string> parts;
  for (std::size_t cyc : s) {
    std::string p = "[";
    for (const auto& v : basis.cycles[cyc].delta) p += v.get_str() + ",";
    p += "|";
    for (const auto& v : basis.cycles[cyc].phi) p += v.get_str() + ",";
    p += "]";
    parts.push_back(std::move(p));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (auto& p : parts) out += p;
  return out;
}

// Enumerate candidate flowers in deterministic order; the visitor returns
// true to stop. Internal delta of a cycle is the first d tracked counters.
void enumerate_flowers(const SearchSpace& sp, const Config& cfg,
                       const std::function<bool(const KmFlower&, const CycleBasis&)>& visit) {
  for (std::size_t node = 0; node < sp.km2.nodes.size(); ++node) {
    if (!sp.node_final(node)) continue;
    CycleBasis raw = scc_and_cycles(sp.km2, node, cfg);
    if (raw.cycles.empty()) continue;
    // Reduce delta to the internal coordinates.
    CycleBasis basis = raw;
    for (auto& c : basis.cycles) {
      c.delta.resize(sp.d);
      if (c.phi.size() != sp.n) throw Error(ErrorCode::Internal, "cycle balance arity");
    }
    auto supports = connected_supports(basis, node, cfg.support_cap);
    std::set<std::string> infeasible;
    std::uint64_t triples = 0;
    for (const auto& sa : supports) {
      for (const auto& sb : supports) {
        if (!support_filter(basis, {&sa, &sb}, true, sp.n)) continue;
        for (const auto& sg : supports) {
          if (++triples > cfg.support_cap)
            throw Error(ErrorCode::SubsetCapExceeded, "support triples exceed cap");
          if (!support_filter(basis, {&sa, &sb, &sg}, false, sp.d)) continue;
          std::string key = effect_signature(basis, sa) + "#" + effect_signature(basis, sb) +
                            "#" + effect_signature(basis, sg);
          if (infeasible.count(key)) continue;
          Snls sys = flower_snls(basis, sa, sb, sg, sp.d, sp.n);
          auto sol = solve(sys, cfg);
          if (!sol.has_value()) {
            infeasible.insert(key);
            continue;
          }
          auto scaled = scale_to_integer(sys, *sol);
          if (!scaled.has_value())
            throw Error(ErrorCode::Internal, "flower system is monotone by construction");
          KmFlower kf;
          kf.node = node;
          kf.support_alpha = sa;
          kf.support_beta = sb;
          kf.support_gamma = sg;
          kf.t = sol->t;
          const auto& z = scaled->second;
          kf.x_alpha.assign(z.begin(), z.begin() + sa.size());
          kf.x_beta.assign(z.begin() + sa.size(), z.begin() + sa.size() + sb.size());
          kf.x_gamma.assign(z.begin() + sa.size() + sb.size(), z.end());
          if (visit(kf, basis)) return;
        }
      }
    }
  }
}

// Euler circuit of the support multigraph, starting at the anchor.
std::vector<std::size_t> compose_walk(const SearchSpace& sp, const CycleBasis& basis,
                                      const std::vector<std::size_t>& support,
                                      const std::vector<Int>& mult, std::size_t anchor) {
  Int total = 0;
  for (std::size_t i = 0; i < support.size(); ++i)
    total += mult[i] * Int(basis.cycles[support[i]].edges.size());
  if (total > 100000)
    throw Error(ErrorCode::DimensionLimit, "composed loop longer than 100000 transitions");

  std::map<std::size_t, std::vector<std::size_t>> arcs;  // node -> km2 edge ids
  for (std::size_t i = 0; i < support.size(); ++i) {
    const Cycle& cyc = basis.cycles[support[i]];
    for (Int copy = 0; copy < mult[i]; ++copy)
      for (std::size_t e : cyc.edges) arcs[sp.km2.edges[e].src].push_back(e);
  }
  std::map<std::size_t, std::size_t> next_arc;
  std::vector<std::size_t> stack{anchor};
  std::vector<std::size_t> circuit_edges;
  std::vector<std::size_t> edge_stack;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    auto& pos = next_arc[u];
    auto it = arcs.find(u);
    if (it != arcs.end() && pos < it->second.size()) {
      std::size_t e = it->second[pos++];
      stack.push_back(sp.km2.edges[e].dst);
      edge_stack.push_back(e);
    } else {
      stack.pop_back();
      if (!edge_stack.empty() && !stack.empty()) {
        circuit_edges.push_back(edge_stack.back());
        edge_stack.pop_back();
      }
    }
  }
  std::reverse(circuit_edges.begin(), circuit_edges.end());
  if (Int(circuit_edges.size()) != total)
    throw Error(ErrorCode::Internal, "support multigraph is not Eulerian-connected");
  std::vector<std::size_t> vtrans;
  vtrans.reserve(circuit_edges.size());
  for (std::size_t e : circuit_edges) vtrans.push_back(sp.vtrans_of_edge(e));
  return vtrans;
}

}  // namespace

std::optional<KmFlower> km_flower_search(const Vass& v, const Config& cfg) {
  SearchSpace sp;
  init_space(sp, v, cfg);
  std::optional<KmFlower> out;
  enumerate_flowers(sp, cfg, [&](const KmFlower& kf, const CycleBasis&) {
    out = kf;
    return true;
  });
  return out;
}

namespace {

Flower flower_from_hit(const SearchSpace& sp, const KmFlower& kf, const CycleBasis& basis) {
  Flower f;
  std::size_t kmp_node = sp.kmp_node(kf.node);
  f.root = sp.kmP.nodes[kmp_node];
  f.bloom.final_state = f.root.state;
  for (std::size_t i = 0; i < sp.d + sp.n; ++i)
    if (!f.root.values[i].omega) f.bloom.gamma.insert(i);
  f.bloom.t = kf.t;
  f.bloom.alpha = compose_walk(sp, basis, kf.support_alpha, kf.x_alpha, kf.node);
  f.bloom.beta = compose_walk(sp, basis, kf.support_beta, kf.x_beta, kf.node);
  f.bloom.gamma_loop = compose_walk(sp, basis, kf.support_gamma, kf.x_gamma, kf.node);
  return f;
}

bool loops_all_silent(const Vass& v, const Flower& f) {
  for (const auto* loop : {&f.bloom.alpha, &f.bloom.beta, &f.bloom.gamma_loop})
    for (std::size_t t : *loop)
      if (!v.transitions[t].label.is_epsilon()) return false;
  return true;
}

}  // namespace

Flower km_flower_to_flower(const Vass& v, const KmFlower& kf, const Config& cfg) {
  SearchSpace sp;
  init_space(sp, v, cfg);
  // Recover the basis for the node; deterministic rebuild.
  CycleBasis raw = scc_and_cycles(sp.km2, kf.node, cfg);
  CycleBasis basis = raw;
  for (auto& c : basis.cycles) c.delta.resize(sp.d);
  return flower_from_hit(sp, kf, basis);
}

bool ValidationReport::all_pass() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& c : clauses)
    os << (c.pass ? "PASS " : "FAIL ") << c.clause
       << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  return os.str();
}

ValidationReport validate_flower(const Vass& v, const Flower& f, const KmGraph& km_of_product) {
  ValidationReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rep.clauses.push_back({name, pass, detail});
  };
  Vass vn = normalize_labels(v);
  auto n_opt = dyck_arity(vn);
  if (!n_opt.has_value()) {
    add("alphabet", false, "not n-visible");
    return rep;
  }
  std::size_t n = *n_opt, d = vn.dim;
  Vass prod = product_dyck(vn);

  // Structure: loops at the final state, stem from the root.
  bool structure = f.root.values.size() == d + n && vn.final_state[f.bloom.final_state];
  auto check_path = [&](const std::vector<std::size_t>& path, std::size_t from, std::size_t to) {
    std::size_t cur = from;
    for (std::size_t t : path) {
      if (t >= prod.transitions.size() || prod.transitions[t].src != cur) return false;
      cur = prod.transitions[t].dst;
    }
    return cur == to;
  };
  {
    std::size_t cur = f.root.state;
    bool ok = true;
    for (std::size_t t : f.stem) {
      if (t >= prod.transitions.size() || prod.transitions[t].src != cur) { ok = false; break; }
      cur = prod.transitions[t].dst;
    }
    structure = structure && ok && cur == f.bloom.final_state;
  }
  for (const auto* loop : {&f.bloom.alpha, &f.bloom.beta, &f.bloom.gamma_loop})
    structure = structure && !loop->empty() &&
                check_path(*loop, f.bloom.final_state, f.bloom.final_state);
  add("structure", structure);
  if (!structure) return rep;

  // Effects straight from the product updates, independent of the search.
  auto effect = [&](const std::vector<std::size_t>& path) {
    std::vector<Int> e(d + n, Int(0));
    for (std::size_t t : path)
      for (std::size_t i = 0; i < d + n; ++i) e[i] += prod.transitions[t].update[i];
    return e;
  };
  auto ea = effect(f.bloom.alpha), eb = effect(f.bloom.beta), eg = effect(f.bloom.gamma_loop);

  bool c1 = true;
  for (std::size_t i : f.bloom.gamma) {
    if (i >= d + n) { c1 = false; break; }
    if (sgn(ea[i]) < 0 || sgn(eb[i]) < 0 || sgn(eg[i]) < 0) c1 = false;
  }
  add("condition (i): Gamma effects non-negative", c1);

  bool c2 = true;
  for (std::size_t i = 0; i < d; ++i)
    if (sgn(ea[i] + eb[i] + eg[i]) < 0) c2 = false;
  add("condition (ii): internal sum non-negative", c2);

  bool c3 = true;
  for (std::size_t j = d; j < d + n; ++j)
    if (sgn(ea[j] + eb[j]) < 0) c3 = false;
  add("condition (iii): alpha+beta balance non-negative", c3);

  bool c4 = true;
  for (std::size_t j = d; j < d + n; ++j)
    if (Rational(Int(ea[j] + eb[j] + eg[j])) != f.bloom.t * Rational(ea[j])) c4 = false;
  add("condition (iv): scalar multiple with t = " + f.bloom.t.str(), c4);

  // Stem clause: final state reached, Omega within the end's omega set,
  // Gamma stays non-negative along stem and each loop.
  RunReport stem_run = check_run(prod, f.root, f.stem, f.bloom.gamma);
  bool omega_ok = true;
  for (std::size_t i = 0; i < d + n; ++i) {
    bool in_gamma = f.bloom.gamma.count(i) > 0;
    if (!in_gamma && !stem_run.final_config.values[i].omega) omega_ok = false;
  }
  add("stem: ends final with Omega subset of omega(end)",
      stem_run.final_config.state == f.bloom.final_state && omega_ok);
  bool nonneg = stem_run.ok;
  for (const auto* loop : {&f.bloom.alpha, &f.bloom.beta, &f.bloom.gamma_loop}) {
    RunReport r = check_run(prod, stem_run.final_config, *loop, f.bloom.gamma);
    nonneg = nonneg && r.ok;
  }
  add("stem: Gamma non-negative along stem and loops", nonneg);

  add("root coverable in KM(V x D_n)", coverable(km_of_product, f.root));
  return rep;
}

namespace {

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

Decision decide_dyck(const Vass& v, const Config& cfg) {
  SearchSpace sp;
  init_space(sp, v, cfg);
  Decision dec;
  dec.verdict = Verdict::Separable;
  enumerate_flowers(sp, cfg, [&](const KmFlower& kf, const CycleBasis& basis) {
    Flower f = flower_from_hit(sp, kf, basis);
    if (loops_all_silent(sp.prod, f)) {
      dec.diagnostics.push_back("skipped flower with label-free loops at node " +
                                std::to_string(kf.node));
      return false;
    }
    ValidationReport rep = validate_flower(sp.vn, f, sp.kmP);
    if (!rep.all_pass()) {
      dec.diagnostics.push_back("search hit failed validation at node " +
                                std::to_string(kf.node) + "\n" + rep.str());
      return false;
    }
    Certificate cert;
    cert.flower = f;
    cert.t = f.bloom.t;
    ordered_json prov;
    prov["mode"] = sp.single ? "single-km" : (cfg.pump_external_product ? "pump-external" : "pump");
    prov["km_node"] = kf.node;
    ordered_json sup;
    sup["alpha"] = kf.support_alpha;
    sup["beta"] = kf.support_beta;
    sup["gamma"] = kf.support_gamma;
    prov["supports"] = sup;
    auto mults = [&](const std::vector<Int>& xs) {
      ordered_json a = ordered_json::array();
      for (const auto& x : xs) a.push_back(x.get_str());
      return a;
    };
    prov["multiplicities"] = {{"alpha", mults(kf.x_alpha)},
                              {"beta", mults(kf.x_beta)},
                              {"gamma", mults(kf.x_gamma)}};
    Snls sys = flower_snls(basis, kf.support_alpha, kf.support_beta, kf.support_gamma, sp.d, sp.n);
    std::string sys_json = sys.to_json();
    prov["snls"] = ordered_json::parse(sys_json);
    prov["snls_hash"] = fnv1a(sys_json);
    cert.provenance_json = prov.dump();
    dec.verdict = Verdict::Inseparable;
    dec.certificate = std::move(cert);
    return true;
  });
  return dec;
}

Decision decide(const Vass& v1, const Vass& v2, const Config& cfg) {
  Vass n1 = expand_labels(normalize_labels(v1));
  Vass n2 = expand_labels(normalize_labels(v2));
  Vass reduced = reduce(n1, n2);
  Decision dec = decide_dyck(reduced, cfg);
  dec.diagnostics.insert(dec.diagnostics.begin(),
                         "reduced two-VASS instance: " + std::to_string(reduced.states.size()) +
                             " states over Dyck arity " + std::to_string(v2.dim));
  return dec;
}

Int flower_size_bound(const Vass& v, unsigned C) {
  auto n = dyck_arity(v);
  std::size_t dn = v.dim + n.value_or(0);
  Int size = v.size_measure();
  unsigned long exp2 = C * dn * dn;
  Int e;
  mpz_pow_ui(e.get_mpz_t(), size.get_mpz_t(), exp2);
  if (e > 10000000) throw Error(ErrorCode::BoundOverflow, "flower bound exponent 2^" + e.get_str());
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e.get_ui());
  return r;
}

namespace {

int letter_effect(std::size_t letter, std::size_t coord) {
  if (letter == 2 * coord) return 1;
  if (letter == 2 * coord + 1) return -1;
  return 0;
}

Int weighted_effect(std::size_t letter, const std::vector<Int>& weights) {
  std::size_t pair = letter / 2;
  if (pair >= weights.size()) return 0;
  return letter % 2 == 0 ? weights[pair] : -weights[pair];
}

}  // namespace

bool member_P(const UPWord& w, std::size_t i, const Int& k) {
  if (w.period.empty()) throw Error(ErrorCode::Arity, "period must be nonempty");
  Int balance = 0;
  auto scan = [&](std::size_t letter) -> std::optional<bool> {
    balance += letter_effect(letter, i);
    if (sgn(balance) < 0) return true;   // negative with all earlier prefixes <= k
    if (balance > k) return false;       // the bound broke before any negative
    return std::nullopt;
  };
  for (std::size_t l : w.prefix) {
    auto r = scan(l);
    if (r.has_value()) return *r;
  }
  Int phi = 0, off = 0, minoff = 0, maxoff = 0;
  for (std::size_t l : w.period) {
    off += letter_effect(l, i);
    if (off < minoff) minoff = off;
    if (off > maxoff) maxoff = off;
  }
  phi = off;
  Int periods;
  if (sgn(phi) == 0) {
    periods = 2;
  } else if (sgn(phi) > 0) {
    // stops once the period minimum climbs past k
    periods = (k - balance - minoff) / phi + 3;
  } else {
    periods = (balance + maxoff) / (-phi) + 3;
  }
  if (periods < 2) periods = 2;
  for (Int p = 0; p < periods; ++p)
    for (std::size_t l : w.period) {
      auto r = scan(l);
      if (r.has_value()) return *r;
    }
  return false;  // flat or rising drift with no event
}

bool member_S(const UPWord& w, const std::vector<Int>& weights, const Int& k) {
  if (w.period.empty()) throw Error(ErrorCode::Arity, "period must be nonempty");
  if (weights.size() != w.n) throw Error(ErrorCode::Arity, "weight arity mismatch");
  Int drift = 0, off = 0, minoff = 0, maxoff = 0;
  for (std::size_t l : w.period) {
    off += weighted_effect(l, weights);
    if (off < minoff) minoff = off;
    if (off > maxoff) maxoff = off;
  }
  drift = off;
  if (sgn(drift) >= 0) return false;  // whole periods must strictly decrease

  Int range = maxoff - minoff;
  Int periods = (k + range) / (-drift) + 3;
  std::size_t total = w.prefix.size() + w.period.size();
  auto letter_at = [&](std::size_t pos) {
    if (pos < w.prefix.size()) return w.prefix[pos];
    return w.period[(pos - w.prefix.size()) % w.period.size()];
  };
  // scan length past the split: the whole prefix remainder plus enough
  // periods that the negative drift dominates any later infix
  for (std::size_t split = 0; split < total; ++split) {
    Int scan_letters = Int(w.prefix.size() + w.period.size()) +
                       (periods + 2) * Int(w.period.size());
    Int p = 0, minp = 0;
    bool ok = true;
    std::size_t pos = split;
    for (Int step = 0; step < scan_letters; ++step, ++pos) {
      p += weighted_effect(letter_at(pos), weights);
      if (p - minp > k) { ok = false; break; }
      if (p < minp) minp = p;
    }
    if (ok) return true;
  }
  return false;
}

bool DemoReport::escapes_all() const {
  if (!run_valid) return false;
  for (bool b : in_P)
    if (b) return false;
  for (bool b : in_S)
    if (b) return false;
  return true;
}

std::string DemoReport::str() const {
  std::ostringstream os;
  os << "run_valid=" << (run_valid ? "yes" : "no");
  for (std::size_t i = 0; i < in_P.size(); ++i)
    os << " P_" << i + 1 << "=" << (in_P[i] ? "in" : "out");
  for (std::size_t i = 0; i < in_S.size(); ++i)
    os << " S_" << i + 1 << "=" << (in_S[i] ? "in" : "out");
  return os.str();
}

namespace {

void append_label_letters(const Vass& v, const Label& lab, std::vector<std::size_t>& out) {
  for (const auto& [l, k] : lab.pairs) {
    if (k > 100000) throw Error(ErrorCode::DimensionLimit, "label expansion too large");
    std::size_t letter = canonical_letter(v.alphabet[l]);
    for (Int c = 0; c < k; ++c) out.push_back(letter);
  }
}

}  // namespace

DemoReport demonstrate(const Vass& v, const Certificate& cert, const Int& k,
                       const std::vector<std::vector<Int>>& weight_vectors, const Config& cfg) {
  Vass vn = normalize_labels(v);
  auto n_opt = dyck_arity(vn);
  if (!n_opt.has_value()) throw Error(ErrorCode::AlphabetMismatch, "demonstrate needs n-visible");
  std::size_t n = *n_opt, d = vn.dim;
  Vass prod = product_dyck(vn);
  KmGraph kmP = build_km(prod, cfg);

  ValidationReport vr = validate_flower(vn, cert.flower, kmP);
  if (!vr.all_pass())
    throw Error(ErrorCode::SemanticError, "certificate does not validate:\n" + vr.str());

  // y bounds the worst prefix drop over the loops (at least 1).
  Int y = 1;
  for (const auto* loop : {&cert.flower.bloom.alpha, &cert.flower.bloom.beta,
                           &cert.flower.bloom.gamma_loop}) {
    std::vector<Int> run(d + n, Int(0));
    for (std::size_t t : *loop)
      for (std::size_t i = 0; i < d + n; ++i) {
        run[i] += prod.transitions[t].update[i];
        if (-run[i] > y) y = -run[i];
      }
  }
  Int slack = Int(3) * (k + 1) * y;

  std::size_t root_node = kmP.find_node(cert.flower.root);
  if (root_node == kNpos)
    throw Error(ErrorCode::SemanticError, "certificate root is not a KM node");
  std::vector<std::size_t> pi = witness_cover(kmP, root_node, slack, cfg);
  // The stem follows the covering prefix (empty for pipeline certificates).
  pi.insert(pi.end(), cert.flower.stem.begin(), cert.flower.stem.end());

  DemoReport rep;
  rep.word.n = n;
  for (std::size_t t : pi) append_label_letters(vn, vn.transitions[t].label, rep.word.prefix);
  std::vector<std::size_t> block;
  Int reps = k + 1;
  for (const auto* loop : {&cert.flower.bloom.alpha, &cert.flower.bloom.beta,
                           &cert.flower.bloom.gamma_loop})
    for (Int r = 0; r < reps; ++r)
      for (std::size_t t : *loop) block.push_back(t);
  for (std::size_t t : block) append_label_letters(vn, vn.transitions[t].label, rep.word.period);
  if (rep.word.period.empty())
    throw Error(ErrorCode::SemanticError, "certificate loops carry no letters");

  // Run validity in V: prefix plus three blocks exactly, the tail certified
  // by the block's non-negative internal effect.
  std::vector<std::size_t> run_path = pi;
  for (int i = 0; i < 3; ++i) run_path.insert(run_path.end(), block.begin(), block.end());
  ExtConfig start;
  start.state = vn.init;
  start.values.assign(d, ExtValue::of(0));
  RunReport rr = check_run(vn, start, run_path);
  std::vector<Int> block_eff(d, Int(0));
  for (std::size_t t : block)
    for (std::size_t i = 0; i < d; ++i) block_eff[i] += vn.transitions[t].update[i];
  bool eff_ok = true;
  for (std::size_t i = 0; i < d; ++i)
    if (sgn(block_eff[i]) < 0) eff_ok = false;
  rep.run_valid = rr.ok && eff_ok;

  for (std::size_t i = 0; i < n; ++i) rep.in_P.push_back(member_P(rep.word, i, k));
  for (const auto& x : weight_vectors) rep.in_S.push_back(member_S(rep.word, x, k));
  return rep;
}

std::string Certificate::to_json(const Vass& v) const {
  Vass vn = normalize_labels(v);
  ordered_json j;
  j["version"] = 1;
  j["verdict"] = "INSEPARABLE";
  ordered_json root;
  root["state"] = vn.states[flower.root.state];
  ordered_json vals = ordered_json::array();
  for (const auto& val : flower.root.values) vals.push_back(val.str());
  root["values"] = vals;
  j["root"] = root;
  j["stem"] = flower.stem;
  j["gamma"] = std::vector<std::size_t>(flower.bloom.gamma.begin(), flower.bloom.gamma.end());
  ordered_json loops;
  loops["alpha"] = flower.bloom.alpha;
  loops["beta"] = flower.bloom.beta;
  loops["gamma"] = flower.bloom.gamma_loop;
  j["loops"] = loops;
  j["t"] = t.str();
  j["provenance"] = provenance_json.empty() ? ordered_json::object()
                                            : ordered_json::parse(provenance_json);
  return j.dump(2);
}

Certificate Certificate::from_json(const Vass& v, const std::string& text) {
  Vass vn = normalize_labels(v);
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad certificate JSON: ") + e.what());
  }
  Certificate c;
  const auto& root = j.at("root");
  std::string state = root.at("state").get<std::string>();
  c.flower.root.state = kNpos;
  for (std::size_t i = 0; i < vn.states.size(); ++i)
    if (vn.states[i] == state) c.flower.root.state = i;
  if (c.flower.root.state == kNpos)
    throw Error(ErrorCode::SemanticError, "certificate root state '" + state + "' unknown");
  for (const auto& val : root.at("values")) {
    std::string s = val.get<std::string>();
    c.flower.root.values.push_back(s == "w" ? ExtValue::omega_v() : ExtValue::of(int_from_string(s)));
  }
  c.flower.bloom.final_state = c.flower.root.state;
  for (const auto& g : j.at("gamma")) c.flower.bloom.gamma.insert(g.get<std::size_t>());
  auto ids = [&](const ordered_json& arr) {
    std::vector<std::size_t> out;
    for (const auto& e : arr) {
      std::size_t id = e.get<std::size_t>();
      if (id >= vn.transitions.size())
        throw Error(ErrorCode::SemanticError, "certificate references unknown transition");
      out.push_back(id);
    }
    return out;
  };
  c.flower.stem = ids(j.at("stem"));
  if (!c.flower.stem.empty()) {
    std::size_t cur = c.flower.root.state;
    for (std::size_t t : c.flower.stem) cur = vn.transitions[t].dst;
    c.flower.bloom.final_state = cur;
  }
  c.flower.bloom.alpha = ids(j.at("loops").at("alpha"));
  c.flower.bloom.beta = ids(j.at("loops").at("beta"));
  c.flower.bloom.gamma_loop = ids(j.at("loops").at("gamma"));
  c.flower.bloom.t = Rational::parse(j.at("t").get<std::string>());
  c.t = c.flower.bloom.t;
  if (j.contains("provenance")) c.provenance_json = j["provenance"].dump();
  return c;
}

}  // namespace vsep
