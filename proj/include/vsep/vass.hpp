#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsep/rational.hpp"

namespace vsep {

/// Compressed transition label: a sequence of (letter, count) pairs with
/// counts >= 1 stored in binary; the empty sequence is the empty word.
struct Label {
  std::vector<std::pair<std::size_t, Int>> pairs;  // letter index into alphabet

  bool is_epsilon() const { return pairs.empty(); }
  bool is_simple() const { return pairs.size() <= 1; }
  Int letter_length() const;
  std::string str(const std::vector<std::string>& alphabet) const;
};

struct Transition {
  std::size_t src;
  Label label;
  std::vector<Int> update;  // length dim
  std::size_t dst;
};

/// Labeled Büchi VASS. Acceptance: runs from (init, 0) visiting final
/// states infinitely often; the run's word must be infinite.
struct Vass {
  std::size_t dim = 0;
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::size_t init = 0;
  std::vector<bool> final_state;
  std::vector<Transition> transitions;

  std::size_t letter_index(const std::string& name) const;  // npos if unknown
  bool is_final(std::size_t q) const { return final_state[q]; }
  std::size_t add_state(const std::string& name, bool fin);

  /// Description size |Q| + |F| + sum(bits of counts + bits of updates);
  /// feeds the informational flower bound.
  Int size_measure() const;

  void validate() const;  // arity and endpoint checks
};

Vass parse_vass(const std::string& text);
std::string serialize_vass(const Vass& v);

/// Dyck alphabet letters a1..an, A1..An (Ai denotes the closing letter).
std::vector<std::string> dyck_alphabet(std::size_t n);

/// Returns n if v's alphabet is exactly the Dyck alphabet of some n >= 1.
std::optional<std::size_t> dyck_arity(const Vass& v);

/// External balance of a label over the n Dyck pairs (a_i up, A_i down).
std::vector<Int> label_balance(const Vass& v, const Label& lab, std::size_t n);

/// Labels reduced to epsilon or a single (letter, count) pair; multi-pair
/// labels become chains through fresh non-final states (update on the first
/// edge). Language preserved.
Vass normalize_labels(const Vass& v);

/// Compressed counts expanded to chains of single letters; needed by the
/// two-VASS reduction. Language preserved.
Vass expand_labels(const Vass& v);

/// Single-state acceptor of the Dyck language D_n.
Vass dyck_vass(std::size_t n);

/// Same states, dimension d+n: each transition's update extended by its
/// label's external effect. L(product) = L(v) ∩ D_n.
Vass product_dyck(const Vass& v);

struct PathEffect {
  std::vector<Int> internal;  // length dim
  std::vector<Int> external;  // length n for Dyck alphabets, else empty
};

PathEffect path_effect(const Vass& v, const std::vector<std::size_t>& path);

/// Value over Z ∪ {omega}; omega absorbs addition.
struct ExtValue {
  bool omega = false;
  Int value;

  static ExtValue omega_v() { return {true, 0}; }
  static ExtValue of(const Int& v) { return {false, v}; }
  ExtValue plus(const Int& d) const { return omega ? *this : of(value + d); }
  bool geq(const ExtValue& o) const {
    if (omega) return true;
    if (o.omega) return false;
    return value >= o.value;
  }
  bool operator==(const ExtValue& o) const {
    return omega == o.omega && (omega || value == o.value);
  }
  std::string str() const { return omega ? "w" : value.get_str(); }
};

struct ExtConfig {
  std::size_t state = 0;
  std::vector<ExtValue> values;

  std::set<std::size_t> omega_set() const;
  bool operator==(const ExtConfig& o) const { return state == o.state && values == o.values; }
  std::string str(const Vass& v) const;
};

ExtConfig parse_target(const Vass& v, const std::string& spec);  // "q1:(3,w,0)"

struct RunReport {
  bool ok = true;
  std::size_t violation_step = 0;     // 1-based index of the failing step
  std::size_t violation_counter = 0;  // 0-based counter index
  ExtConfig final_config;
};

/// Simulates path from start with omega absorption. A violation is a
/// watched non-omega counter going negative; watched defaults to all.
RunReport check_run(const Vass& v, const ExtConfig& start, const std::vector<std::size_t>& path,
                    const std::optional<std::set<std::size_t>>& watched = std::nullopt);

/// Reduction to the Dyck side: an n-visible lcVASS V with dim(V) = dim(v1),
/// n = dim(v2), such that L(v1) regular-separable from L(v2) iff
/// L(V) regular-separable from D_n. Inputs must carry only epsilon or
/// single-letter (count 1) labels.
Vass reduce(const Vass& v1, const Vass& v2);

}  // namespace vsep
