#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsep/km.hpp"
#include "vsep/snls.hpp"

namespace vsep {

/// Final state plus three loops of V x D_n and the scalar t of the
/// scalar-multiple condition phi(a)+phi(b)+phi(g) = t * phi(a).
struct Bloom {
  std::size_t final_state;
  std::set<std::size_t> gamma;       // subset of [0, d+n)
  std::vector<std::size_t> alpha, beta, gamma_loop;  // transition ids
  Rational t;
};

struct Flower {
  ExtConfig root;  // extended configuration of V x D_n
  std::vector<std::size_t> stem;
  Bloom bloom;
};

/// Search-level flower: a KM(V_pump) node with multiplicities over a
/// simple-cycle basis.
struct KmFlower {
  std::size_t node;  // km2 node id
  std::vector<std::size_t> support_alpha, support_beta, support_gamma;  // cycle ids
  std::vector<Int> x_alpha, x_beta, x_gamma;  // multiplicities aligned with supports
  Rational t;
};

struct Certificate {
  Flower flower;
  Rational t;
  std::string provenance_json;

  std::string to_json(const Vass& v) const;
  static Certificate from_json(const Vass& v, const std::string& text);
};

struct ClauseResult {
  std::string clause;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ClauseResult> clauses;
  bool all_pass() const;
  std::string str() const;
};

enum class Verdict { Separable, Inseparable };

struct Decision {
  Verdict verdict;
  std::optional<Certificate> certificate;
  std::vector<std::string> diagnostics;  // validator-rejected hits, loudly
};

/// SNLS over cycle multiplicities restricted to the supports; the single
/// non-linear variable t multiplies the alpha external balances.
Snls flower_snls(const CycleBasis& basis, const std::vector<std::size_t>& s_alpha,
                 const std::vector<std::size_t>& s_beta, const std::vector<std::size_t>& s_gamma,
                 std::size_t d, std::size_t n);

std::optional<KmFlower> km_flower_search(const Vass& v, const Config& cfg = Config::defaults());

Flower km_flower_to_flower(const Vass& v, const KmFlower& kf, const Config& cfg = Config::defaults());

/// Independent re-check of every flower clause against v and the product
/// Karp-Miller graph; shares no code with the search.
ValidationReport validate_flower(const Vass& v, const Flower& f, const KmGraph& km_of_product);

Decision decide_dyck(const Vass& v, const Config& cfg = Config::defaults());

Decision decide(const Vass& v1, const Vass& v2, const Config& cfg = Config::defaults());

/// 2^(|V|^(C*(d+n)^2)); informational only.
Int flower_size_bound(const Vass& v, unsigned C);

/// Ultimately periodic word u.v^omega over the canonical Dyck alphabet.
struct UPWord {
  std::size_t n = 1;
  std::vector<std::size_t> prefix;  // letter indices into dyck_alphabet(n)
  std::vector<std::size_t> period;  // nonempty
};

/// u.v^omega in P_{i,k}: some prefix balance at coordinate i goes negative
/// while all earlier prefixes stay <= k. i is 0-based.
bool member_P(const UPWord& w, std::size_t i, const Int& k);

/// u.v^omega in S_{x,k}: from some split point every infix has weighted
/// balance <= k and whole periods drift negative.
bool member_S(const UPWord& w, const std::vector<Int>& weights, const Int& k);

struct DemoReport {
  UPWord word;
  bool run_valid = false;
  std::vector<bool> in_P;                // per coordinate
  std::vector<bool> in_S;                // per weight vector
  bool escapes_all() const;
  std::string str() const;
};

/// The accepting-word demonstrator: covering prefix via witness_cover with
/// slack 3*(k+1)*y, period alpha^{k+1} beta^{k+1} gamma^{k+1}; the report
/// checks run validity and membership escape for P_{i,k} and S_{x,k}.
DemoReport demonstrate(const Vass& v, const Certificate& cert, const Int& k,
                       const std::vector<std::vector<Int>>& weight_vectors,
                       const Config& cfg = Config::defaults());

}  // namespace vsep
