#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vsep/sep.hpp"

namespace vsep::suites {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/// Runs acceptance criterion 1..10 with the given seed.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Suite names: snls-props (1-5), km-props (6), sep-fixtures (7,10),
/// oracles (8,9). Empty result means the name is unknown.
std::vector<int> criteria_for_suite(const std::string& name);

/// The six analytic separability fixtures, hand-derived; see
/// tests/fixtures/*.vass for the documented files.
struct SepFixture {
  std::string name;
  std::string text;          // VASS source
  Verdict expected;
  std::string expected_t;    // nonempty when the certificate's t is pinned
};

const std::vector<SepFixture>& sep_fixtures();

// Deterministic generators shared by suites and unit tests.
Snls random_snls(std::uint64_t seed, std::size_t max_m = 4, std::size_t max_n = 3,
                 std::size_t max_deg = 2, long max_coeff = 4);
IntPoly random_poly(std::uint64_t seed, std::size_t max_deg = 6, long max_coeff = 9);
Vass random_vass(std::uint64_t seed);            // <= 4 states, d <= 2, |updates| <= 2
Vass random_buchi_automaton(std::uint64_t seed); // <= 3 states over the Dyck pair a1/A1
Vass random_nvisible_vass(std::uint64_t seed);   // d <= 1, n = 1, <= 3 states

}  // namespace vsep::suites
