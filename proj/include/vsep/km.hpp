#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsep/config.hpp"
#include "vsep/vass.hpp"

namespace vsep {

/// How a node first entered the graph: parent node, the transition taken,
/// and per accelerated coordinate the witness node whose pump loop raised
/// it. The root has no derivation.
struct KmDerivation {
  std::size_t parent;
  std::size_t transition;
  std::vector<std::pair<std::size_t, std::size_t>> accelerated;  // (coord, witness node)
};

struct KmEdge {
  std::size_t src;
  std::size_t transition;
  std::size_t dst;
};

/// Karp-Miller graph per the fixed-point construction: nodes are extended
/// configurations, acceleration sets coordinate i to omega when a strictly
/// smaller node can already reach the edge's source. Deterministic: FIFO
/// node order, transitions in declaration order, rounds to fixpoint.
struct KmGraph {
  Vass vass;  // owned copy of the analyzed VASS
  std::vector<ExtConfig> nodes;  // insertion order; node 0 is the root
  std::vector<KmEdge> edges;
  std::vector<std::optional<KmDerivation>> derivations;
  std::vector<std::vector<std::size_t>> out_edges;  // node -> edge ids

  std::size_t find_node(const ExtConfig& c) const;  // npos if absent
  std::string to_dot() const;
  std::string nodes_to_json() const;
};

KmGraph build_km(const Vass& v, const Config& cfg = Config::defaults());

/// True iff some node covers the target: same state, omega wherever the
/// target is omega, >= elsewhere.
bool coverable(const KmGraph& km, const ExtConfig& target);

/// Concrete run of the underlying VASS from (init, 0) whose final
/// configuration has the node's state, >= slack on the node's omega
/// coordinates and >= the exact value elsewhere. Accelerations unfold
/// innermost-first with doubling retries.
std::vector<std::size_t> witness_cover(const KmGraph& km, std::size_t node, const Int& slack,
                                       const Config& cfg = Config::defaults());

/// VASS whose states are the nodes of km (built over product_dyck(v)):
/// transitions mirror km edges carrying the original label and the
/// internal update of v; finals are nodes whose state is final in v.
struct PumpVass {
  Vass vass;                        // dim = v.dim, alphabet = Sigma_n
  std::vector<std::size_t> node_of_state;  // pump state -> km node id
};

PumpVass build_pump(const KmGraph& km_of_product, const Vass& v);

/// One simple cycle: km edge ids, the node set it visits, exact internal
/// effect (tracked counters of the graph's VASS) and external label balance.
struct Cycle {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> nodes;
  std::vector<Int> delta;
  std::vector<Int> phi;
};

struct CycleBasis {
  std::vector<Cycle> cycles;
};

/// All simple cycles of the anchor's strongly connected component
/// (Johnson-style), deterministic order. CYCLE_CAP_EXCEEDED beyond cap.
CycleBasis scc_and_cycles(const KmGraph& g, std::size_t anchor, const Config& cfg = Config::defaults());

/// L(v) != emptyset, via cycle supports with non-negative effect on the
/// omega coordinates of a final node.
bool buchi_nonempty(const Vass& v, const Config& cfg = Config::defaults());

/// Connected subsets of the basis whose union contains the anchor,
/// ordered by (cardinality, lexicographic cycle indices).
std::vector<std::vector<std::size_t>> connected_supports(const CycleBasis& basis,
                                                         std::size_t anchor,
                                                         std::size_t max_count);

}  // namespace vsep
