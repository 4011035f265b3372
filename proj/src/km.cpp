#include "vsep/km.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace vsep {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

bool leq_ext(const std::vector<ExtValue>& a, const std::vector<ExtValue>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].omega && !b[i].omega) return false;
    if (!a[i].omega && !b[i].omega && a[i].value > b[i].value) return false;
  }
  return true;
}

}  // namespace

std::size_t KmGraph::find_node(const ExtConfig& c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == c) return i;
  return kNpos;
}

std::string KmGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph km {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << nodes[i].str(vass) << "\"";
    if (vass.final_state[nodes[i].state]) os << " shape=doublecircle";
    os << "];\n";
  }
  for (const auto& e : edges)
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"t" << e.transition << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string KmGraph::nodes_to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nlohmann::ordered_json n;
    n["id"] = i;
    n["state"] = vass.states[nodes[i].state];
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (const auto& v : nodes[i].values) vals.push_back(v.str());
    n["values"] = vals;
    j.push_back(n);
  }
  return j.dump(2);
}

namespace {

// Reachability over the current edge set (trivial path allowed).
bool reaches(const std::vector<std::vector<std::size_t>>& out_edges,
             const std::vector<KmEdge>& edges, std::size_t from, std::size_t to) {
  if (from == to) return true;
  std::vector<bool> seen(out_edges.size(), false);
  std::deque<std::size_t> work{from};
  seen[from] = true;
  while (!work.empty()) {
    std::size_t u = work.front();
    work.pop_front();
    for (std::size_t e : out_edges[u]) {
      std::size_t v = edges[e].dst;
      if (v == to) return true;
      if (!seen[v]) {
        seen[v] = true;
        work.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

KmGraph build_km(const Vass& v, const Config& cfg) {
  if (cfg.node_cap < 1) throw Error(ErrorCode::NodeCapExceeded, "node cap must be >= 1");
  KmGraph km;
  km.vass = v;
  ExtConfig root;
  root.state = v.init;
  root.values.assign(v.dim, ExtValue::of(0));
  km.nodes.push_back(root);
  km.derivations.push_back(std::nullopt);
  km.out_edges.emplace_back();

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t src = 0; src < km.nodes.size(); ++src) {
      for (std::size_t ti = 0; ti < v.transitions.size(); ++ti) {
        const auto& t = v.transitions[ti];
        if (t.src != km.nodes[src].state) continue;
        // Simulate.
        std::vector<ExtValue> base(v.dim);
        bool negative = false;
        for (std::size_t i = 0; i < v.dim; ++i) {
          base[i] = km.nodes[src].values[i].plus(t.update[i]);
          if (!base[i].omega && sgn(base[i].value) < 0) negative = true;
        }
        if (negative) continue;
        // Accelerate each finite coordinate with its own witness.
        std::vector<std::pair<std::size_t, std::size_t>> accels;
        std::vector<ExtValue> lifted = base;
        for (std::size_t i = 0; i < v.dim; ++i) {
          if (base[i].omega) continue;
          for (std::size_t w = 0; w < km.nodes.size(); ++w) {
            const auto& cand = km.nodes[w];
            if (cand.state != t.dst) continue;
            if (!leq_ext(cand.values, base)) continue;
            if (cand.values[i].omega || cand.values[i].value >= base[i].value) continue;
            if (!reaches(km.out_edges, km.edges, w, src)) continue;
            lifted[i] = ExtValue::omega_v();
            accels.emplace_back(i, w);
            break;
          }
        }
        ExtConfig next;
        next.state = t.dst;
        next.values = std::move(lifted);
        std::size_t dst = km.find_node(next);
        if (dst == kNpos) {
          if (km.nodes.size() >= cfg.node_cap)
            throw Error(ErrorCode::NodeCapExceeded,
                        "Karp-Miller graph exceeds " + std::to_string(cfg.node_cap) +
                            " nodes (partial size " + std::to_string(km.nodes.size()) + ")");
          km.nodes.push_back(next);
          km.derivations.push_back(KmDerivation{src, ti, accels});
          km.out_edges.emplace_back();
          dst = km.nodes.size() - 1;
          changed = true;
        }
        bool have_edge = false;
        for (std::size_t e : km.out_edges[src])
          if (km.edges[e].transition == ti && km.edges[e].dst == dst) { have_edge = true; break; }
        if (!have_edge) {
          km.edges.push_back(KmEdge{src, ti, dst});
          km.out_edges[src].push_back(km.edges.size() - 1);
          changed = true;
        }
      }
    }
  }
  return km;
}

bool coverable(const KmGraph& km, const ExtConfig& target) {
  if (target.values.size() != km.vass.dim)
    throw Error(ErrorCode::Arity, "target arity mismatch");
  for (const auto& node : km.nodes) {
    if (node.state != target.state) continue;
    bool ok = true;
    for (std::size_t i = 0; i < target.values.size() && ok; ++i) {
      if (target.values[i].omega)
        ok = node.values[i].omega;
      else
        ok = node.values[i].geq(target.values[i]);
    }
    if (ok) return true;
  }
  return false;
}

namespace {

// Shortest km-edge path between nodes (BFS, deterministic tie-break by
// edge id). Returns edge ids.
std::vector<std::size_t> km_path(const KmGraph& km, std::size_t from, std::size_t to) {
  if (from == to) return {};
  std::vector<std::size_t> pred_edge(km.nodes.size(), kNpos);
  std::vector<bool> seen(km.nodes.size(), false);
  std::deque<std::size_t> work{from};
  seen[from] = true;
  while (!work.empty()) {
    std::size_t u = work.front();
    work.pop_front();
    for (std::size_t e : km.out_edges[u]) {
      std::size_t vtx = km.edges[e].dst;
      if (seen[vtx]) continue;
      seen[vtx] = true;
      pred_edge[vtx] = e;
      if (vtx == to) {
        std::vector<std::size_t> path;
        std::size_t cur = to;
        while (cur != from) {
          path.push_back(pred_edge[cur]);
          cur = km.edges[pred_edge[cur]].src;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      work.push_back(vtx);
    }
  }
  throw Error(ErrorCode::Internal, "witness pump loop lost its path");
}

struct Unfolder {
  const KmGraph& km;
  const Vass& v;
  Int multiplier;  // doubling retry factor
  Int slack;

  // Returns V-transition ids; guarantees (given enough multiplier) a run
  // ending at node's state with value >= demand everywhere.
  std::vector<std::size_t> realize(std::size_t node, std::vector<Int> demand) {
    for (std::size_t i = 0; i < v.dim; ++i)
      if (!km.nodes[node].values[i].omega && km.nodes[node].values[i].value < demand[i])
        demand[i] = km.nodes[node].values[i].value;  // exact coordinates supply exactly
    const auto& der = km.derivations[node];
    if (!der.has_value()) return {};  // root: demand is <= 0 by construction

    // Pump loops, one per accelerated coordinate, in coordinate order.
    struct Loop {
      std::size_t coord;
      std::vector<std::size_t> trans;  // V transitions of witness ~> parent + t
      std::vector<Int> effect;
      Int count;
    };
    std::vector<Loop> loops;
    for (const auto& [coord, witness] : der->accelerated) {
      Loop l;
      l.coord = coord;
      for (std::size_t e : km_path(km, witness, der->parent))
        l.trans.push_back(km.edges[e].transition);
      l.trans.push_back(der->transition);
      l.effect.assign(v.dim, Int(0));
      for (std::size_t ti : l.trans)
        for (std::size_t i = 0; i < v.dim; ++i) l.effect[i] += v.transitions[ti].update[i];
      Int need = demand[coord] > 0 ? demand[coord] : Int(0);
      l.count = (need > slack ? need : slack) * multiplier;
      if (l.count < 1) l.count = 1;
      loops.push_back(std::move(l));
    }
    std::sort(loops.begin(), loops.end(), [](const Loop& a, const Loop& b) {
      return a.coord < b.coord;
    });

    // Assemble the suffix executed after the parent: t, then the loops.
    std::vector<std::size_t> suffix{der->transition};
    for (const auto& l : loops)
      for (Int c = 0; c < l.count; ++c)
        suffix.insert(suffix.end(), l.trans.begin(), l.trans.end());

    // Exact demand on the parent: cover the worst prefix dip and the final
    // shortfall per coordinate.
    std::vector<Int> run(v.dim, Int(0)), low(v.dim, Int(0));
    for (std::size_t ti : suffix)
      for (std::size_t i = 0; i < v.dim; ++i) {
        run[i] += v.transitions[ti].update[i];
        if (run[i] < low[i]) low[i] = run[i];
      }
    std::vector<Int> parent_demand(v.dim);
    for (std::size_t i = 0; i < v.dim; ++i) {
      Int need = demand[i] - run[i];
      if (-low[i] > need) need = -low[i];
      if (need < 0) need = 0;
      parent_demand[i] = need;
    }
    std::vector<std::size_t> path = realize(der->parent, std::move(parent_demand));
    path.insert(path.end(), suffix.begin(), suffix.end());
    return path;
  }
};

}  // namespace

std::vector<std::size_t> witness_cover(const KmGraph& km, std::size_t node, const Int& slack,
                                       const Config& cfg) {
  if (node >= km.nodes.size()) throw Error(ErrorCode::Internal, "witness_cover: bad node");
  const Vass& v = km.vass;
  std::vector<Int> demand(v.dim);
  for (std::size_t i = 0; i < v.dim; ++i)
    demand[i] = km.nodes[node].values[i].omega ? slack : km.nodes[node].values[i].value;

  Int mult = 1;
  for (unsigned attempt = 0; attempt <= cfg.retry_cap; ++attempt, mult *= 2) {
    Unfolder u{km, v, mult, slack < 1 ? Int(1) : slack};
    std::vector<std::size_t> path = u.realize(node, demand);
    ExtConfig start;
    start.state = v.init;
    start.values.assign(v.dim, ExtValue::of(0));
    RunReport rep = check_run(v, start, path);
    if (!rep.ok) continue;
    if (rep.final_config.state != km.nodes[node].state) continue;
    bool enough = true;
    for (std::size_t i = 0; i < v.dim; ++i)
      if (rep.final_config.values[i].value < demand[i]) { enough = false; break; }
    if (enough) return path;
  }
  throw Error(ErrorCode::Internal, "witness unfolding failed after retries");
}

PumpVass build_pump(const KmGraph& km_of_product, const Vass& v) {
  auto n = dyck_arity(v);
  if (!n.has_value()) throw Error(ErrorCode::AlphabetMismatch, "pump needs an n-visible VASS");
  PumpVass p;
  p.vass.dim = v.dim;
  p.vass.alphabet = v.alphabet;
  for (std::size_t i = 0; i < km_of_product.nodes.size(); ++i) {
    const auto& node = km_of_product.nodes[i];
    p.vass.add_state("n" + std::to_string(i), v.final_state[node.state]);
    p.node_of_state.push_back(i);
  }
  p.vass.init = 0;
  for (const auto& e : km_of_product.edges) {
    const auto& orig = v.transitions[e.transition];
    Transition t;
    t.src = e.src;
    t.dst = e.dst;
    t.label = orig.label;
    t.update = std::vector<Int>(orig.update.begin(), orig.update.begin() + v.dim);
    p.vass.transitions.push_back(std::move(t));
  }
  p.vass.validate();
  return p;
}

namespace {

// Tarjan SCC over km nodes.
std::vector<std::size_t> scc_of(const KmGraph& g) {
  std::size_t n = g.nodes.size();
  std::vector<std::size_t> comp(n, kNpos), low(n), num(n, kNpos), stk;
  std::vector<bool> on(n, false);
  std::size_t counter = 0, comps = 0;
  // iterative Tarjan
  struct Frame { std::size_t node; std::size_t edge_pos; };
  for (std::size_t s = 0; s < n; ++s) {
    if (num[s] != kNpos) continue;
    std::vector<Frame> call{{s, 0}};
    num[s] = low[s] = counter++;
    stk.push_back(s);
    on[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge_pos < g.out_edges[f.node].size()) {
        std::size_t e = g.out_edges[f.node][f.edge_pos++];
        std::size_t w = g.edges[e].dst;
        if (num[w] == kNpos) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w] && num[w] < low[f.node]) {
          low[f.node] = num[w];
        }
      } else {
        std::size_t node = f.node;
        call.pop_back();
        if (!call.empty() && low[node] < low[call.back().node]) low[call.back().node] = low[node];
        if (low[node] == num[node]) {
          while (true) {
            std::size_t w = stk.back();
            stk.pop_back();
            on[w] = false;
            comp[w] = comps;
            if (w == node) break;
          }
          ++comps;
        }
      }
    }
  }
  return comp;
}

}  // namespace

CycleBasis scc_and_cycles(const KmGraph& g, std::size_t anchor, const Config& cfg) {
  if (anchor >= g.nodes.size()) throw Error(ErrorCode::Internal, "anchor out of range");
  auto comp = scc_of(g);
  std::size_t cid = comp[anchor];

  // Member nodes and edges of the SCC, in graph order.
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (comp[i] == cid) members.push_back(i);

  const Vass& v = g.vass;
  auto n_ext = dyck_arity(v);

  CycleBasis basis;
  // Johnson-style enumeration restricted to the SCC, rooted at each member
  // in order; cycles are found through their least node.
  std::vector<bool> blocked(g.nodes.size(), false);
  std::vector<std::vector<std::size_t>> block_map(g.nodes.size());
  std::vector<std::size_t> stack_nodes;
  std::vector<std::size_t> stack_edges;

  auto order_of = [&](std::size_t node) {
    return static_cast<std::size_t>(std::find(members.begin(), members.end(), node) -
                                    members.begin());
  };

  std::function<void(std::size_t)> unblock = [&](std::size_t u) {
    blocked[u] = false;
    for (std::size_t w : block_map[u])
      if (blocked[w]) unblock(w);
    block_map[u].clear();
  };

  std::size_t root = 0;
  std::function<bool(std::size_t)> circuit = [&](std::size_t u) -> bool {
    bool found = false;
    blocked[u] = true;
    stack_nodes.push_back(u);
    for (std::size_t e : g.out_edges[u]) {
      std::size_t w = g.edges[e].dst;
      if (comp[w] != cid) continue;
      if (order_of(w) < root) continue;  // cycles through the least member only
      if (w == members[root]) {
        if (basis.cycles.size() >= cfg.cycle_cap)
          throw Error(ErrorCode::CycleCapExceeded,
                      "simple cycles exceed " + std::to_string(cfg.cycle_cap));
        Cycle c;
        c.edges = stack_edges;
        c.edges.push_back(e);
        c.nodes = stack_nodes;
        c.delta.assign(v.dim, Int(0));
        for (std::size_t ei : c.edges) {
          const auto& t = v.transitions[g.edges[ei].transition];
          for (std::size_t i = 0; i < v.dim; ++i) c.delta[i] += t.update[i];
        }
        if (n_ext.has_value()) {
          c.phi.assign(*n_ext, Int(0));
          for (std::size_t ei : c.edges) {
            auto bal = label_balance(v, v.transitions[g.edges[ei].transition].label, *n_ext);
            for (std::size_t i = 0; i < *n_ext; ++i) c.phi[i] += bal[i];
          }
        }
        // Non-omega coordinates of the SCC are precisely tracked, so every
        // simple cycle must have zero effect there.
        for (std::size_t i = 0; i < v.dim; ++i)
          if (!g.nodes[u].values[i].omega && sgn(c.delta[i]) != 0)
            throw Error(ErrorCode::Internal, "cycle with nonzero effect on tracked counter");
        basis.cycles.push_back(std::move(c));
        found = true;
      } else if (!blocked[w]) {
        stack_edges.push_back(e);
        if (circuit(w)) found = true;
        stack_edges.pop_back();
      }
    }
    if (found) {
      unblock(u);
    } else {
      for (std::size_t e : g.out_edges[u]) {
        std::size_t w = g.edges[e].dst;
        if (comp[w] != cid || order_of(w) < root) continue;
        if (std::find(block_map[w].begin(), block_map[w].end(), u) == block_map[w].end())
          block_map[w].push_back(u);
      }
    }
    stack_nodes.pop_back();
    return found;
  };

  for (root = 0; root < members.size(); ++root) {
    for (std::size_t m : members) {
      blocked[m] = false;
      block_map[m].clear();
    }
    stack_nodes.clear();
    stack_edges.clear();
    circuit(members[root]);
  }

  // Keep only cycles through the anchor's component... all are; but the
  // caller anchors supports at a node, so record node sets as-is.
  return basis;
}

std::vector<std::vector<std::size_t>> connected_supports(const CycleBasis& basis,
                                                         std::size_t anchor,
                                                         std::size_t max_count) {
  // Candidate cycles must share the SCC with the anchor already; a support
  // is valid when the union of its cycles' node sets is connected (viewed
  // as overlapping sets) and contains the anchor.
  std::size_t k = basis.cycles.size();
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 || k > 20) {
    if (k > 20) throw Error(ErrorCode::SubsetCapExceeded, "cycle basis too large for support enumeration");
    return out;
  }
  std::vector<std::vector<bool>> overlap(k, std::vector<bool>(k, false));
  std::vector<bool> has_anchor(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    has_anchor[i] = std::find(basis.cycles[i].nodes.begin(), basis.cycles[i].nodes.end(),
                              anchor) != basis.cycles[i].nodes.end();
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t n : basis.cycles[i].nodes)
        if (std::find(basis.cycles[j].nodes.begin(), basis.cycles[j].nodes.end(), n) !=
            basis.cycles[j].nodes.end()) {
          overlap[i][j] = true;
          break;
        }
    }
  }
  // Enumerate subsets by (cardinality, lexicographic).
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      bool anchored = false;
      for (std::size_t i : idx) anchored = anchored || has_anchor[i];
      if (anchored) {
        // connectivity over the overlap graph restricted to idx
        std::vector<bool> seen(size, false);
        std::deque<std::size_t> work{0};
        seen[0] = true;
        std::size_t cnt = 1;
        while (!work.empty()) {
          std::size_t a = work.front();
          work.pop_front();
          for (std::size_t b = 0; b < size; ++b)
            if (!seen[b] && overlap[idx[a]][idx[b]]) {
              seen[b] = true;
              ++cnt;
              work.push_back(b);
            }
        }
        if (cnt == size) {
          out.push_back(idx);
          if (out.size() >= max_count)
            throw Error(ErrorCode::SubsetCapExceeded, "support enumeration exceeds cap");
        }
      }
      // next subset of this cardinality
      std::size_t i = size;
      bool done = true;
      while (i-- > 0) {
        if (idx[i] < k - (size - i)) {
          ++idx[i];
          for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  return out;
}

namespace {

// Exact rational feasibility of { x_c >= 1 (c in support), sum x_c * eff_c >= 0
// on the given coordinates } via Fourier-Motzkin on the small system.
bool support_feasible(const CycleBasis& basis, const std::vector<std::size_t>& support,
                      const std::vector<std::size_t>& coords) {
  // rows: a . x >= rhs
  struct Row {
    std::vector<Rational> a;
    Rational rhs;
  };
  std::size_t n = support.size();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.a.assign(n, Rational(0));
    r.a[i] = Rational(1);
    r.rhs = Rational(1);
    rows.push_back(std::move(r));
  }
  for (std::size_t c : coords) {
    Row r;
    r.a.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) r.a[i] = Rational(basis.cycles[support[i]].delta[c]);
    r.rhs = Rational(0);
    rows.push_back(std::move(r));
  }
  for (std::size_t var = n; var-- > 0;) {
    std::vector<Row> pos, neg, zero;
    for (auto& r : rows) {
      int s = r.a[var].sign();
      if (s > 0) pos.push_back(std::move(r));
      else if (s < 0) neg.push_back(std::move(r));
      else zero.push_back(std::move(r));
    }
    std::vector<Row> next = std::move(zero);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Row r;
        r.a.assign(var, Rational(0));
        Rational cp = p.a[var], cq = -q.a[var];
        for (std::size_t j = 0; j < var; ++j) r.a[j] = p.a[j] * cq + q.a[j] * cp;
        r.rhs = p.rhs * cq + q.rhs * cp;
        next.push_back(std::move(r));
      }
    for (auto& r : next) r.a.resize(var);
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r.rhs.sign() > 0) return false;
  return true;
}

}  // namespace

bool buchi_nonempty(const Vass& v, const Config& cfg) {
  KmGraph km = build_km(v, cfg);
  for (std::size_t node = 0; node < km.nodes.size(); ++node) {
    if (!v.final_state[km.nodes[node].state]) continue;
    CycleBasis basis = scc_and_cycles(km, node, cfg);
    if (basis.cycles.empty()) continue;
    std::vector<std::size_t> omega_coords;
    for (std::size_t i = 0; i < v.dim; ++i)
      if (km.nodes[node].values[i].omega) omega_coords.push_back(i);
    for (const auto& support : connected_supports(basis, node, cfg.support_cap))
      if (support_feasible(basis, support, omega_coords)) return true;
  }
  return false;
}

}  // namespace vsep
