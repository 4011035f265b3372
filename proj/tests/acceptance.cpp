// Acceptance suite: runs the ten criteria (or a single one given as argv[1])
// and prints one pass/fail line each. Exit 0 iff everything passed.

#include <cstdlib>
#include <iostream>

#include "vsep/suites.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0x5eed5eedULL;
  if (const char* env = std::getenv("VSEP_SEED")) seed = std::strtoull(env, nullptr, 10);
  std::vector<int> ids;
  if (argc > 1) {
    int id = std::atoi(argv[1]);
    if (id < 1 || id > 10) {
      std::cerr << "usage: vsep_acceptance [1..10]\n";
      return 64;
    }
    ids.push_back(id);
  } else {
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) {
    vsep::suites::CriterionResult r;
    try {
      r = vsep::suites::run_criterion(id, seed);
    } catch (const std::exception& e) {
      r = {id, "criterion raised", false, e.what(), 0};
    }
    all = all && r.pass;
    std::cout << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << " — " << r.name
              << " — " << r.detail << " (" << r.seconds << "s)" << std::endl;
  }
  return all ? 0 : 1;
}
