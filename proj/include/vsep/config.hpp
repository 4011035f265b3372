#pragma once

#include <cstdint>
#include <string>

namespace vsep {

/// Shared resource caps and knobs. Defaults are the documented desk-scale
/// guardrails; every cap trips a structured error, never a silent result.
struct Config {
  std::uint64_t node_cap = 100000;    // Karp-Miller nodes
  std::uint64_t cycle_cap = 10000;    // simple cycles per SCC
  std::uint64_t subset_cap = 1000000; // row subsets in quantifier elimination
  std::uint64_t fm_cap = 20000;       // intermediate Fourier-Motzkin rows
  std::uint64_t support_cap = 200000; // support triples per flower search
  unsigned retry_cap = 20;            // witness unfolding retries
  unsigned bound_constant = 8;        // the C in the informational size bounds
  std::uint64_t seed = 0x5eed5eedULL;
  bool json_output = false;
  bool single_km = false;             // flower search over KM(V x D_n) directly
  bool pump_external_product = false; // product with D_n again before the second KM

  static Config defaults() { return Config{}; }
};

}  // namespace vsep
