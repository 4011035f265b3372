#include "doctest.h"

#include <random>

#include <fstream>
#include <sstream>

#include "vsep/km.hpp"
#include "vsep/suites.hpp"
#include "vsep/vass.hpp"

using namespace vsep;

namespace {

const char* kSample =
    "vass dim=2 alphabet=a1,A1\n"
    "state q0 init\n"
    "state q1 final\n"
    "trans q0 -> q1 label=a1^3 update=(1,-2)\n"
    "trans q1 -> q1 label=eps update=(0,0)\n";

Vass two_letter_loop() {
  return parse_vass(
      "vass dim=0 alphabet=a1,A1\n"
      "state q0 init final\n"
      "trans q0 -> q0 label=a1A1^2 update=()\n");
}

}  // namespace

TEST_CASE("parse and serialize round trip") {
  Vass v = parse_vass(kSample);
  CHECK(v.dim == 2);
  CHECK(v.states.size() == 2);
  CHECK(v.init == 0);
  CHECK(v.final_state[1]);
  REQUIRE(v.transitions.size() == 2);
  CHECK(v.transitions[0].label.pairs.size() == 1);
  CHECK(v.transitions[0].label.pairs[0].second == 3);
  CHECK(v.transitions[0].update == std::vector<Int>{Int(1), Int(-2)});
  CHECK(v.transitions[1].label.is_epsilon());
  // round trip modulo whitespace
  CHECK(serialize_vass(parse_vass(serialize_vass(v))) == serialize_vass(v));

  Vass minimal = parse_vass("vass dim=0\nstate q0 init\n");
  CHECK(minimal.states.size() == 1);
}

TEST_CASE("parser reports structured errors") {
  CHECK_THROWS_AS(parse_vass("state q0 init\n"), Error);  // before header
  CHECK_THROWS_AS(parse_vass("vass dim=1\nstate q0 init\ntrans q0 -> q9 update=(1)\n"), Error);
  // update arity mismatch
  try {
    parse_vass("vass dim=2\nstate q0 init\ntrans q0 -> q0 update=(1)\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SemanticError);
  }
  // duplicate transition
  CHECK_THROWS_AS(parse_vass("vass dim=0 alphabet=a1,A1\nstate q0 init\n"
                             "trans q0 -> q0 label=a1\ntrans q0 -> q0 label=a1\n"),
                  Error);
  // unknown letter in a label
  try {
    parse_vass("vass dim=0 alphabet=a1,A1\nstate q0 init\ntrans q0 -> q0 label=b2\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("normalize_labels splits multi-pair labels") {
  Vass v = two_letter_loop();
  Vass n = normalize_labels(v);
  CHECK(n.transitions.size() == 2);
  for (const auto& t : n.transitions) CHECK(t.label.pairs.size() == 1);
  CHECK(n.transitions[0].label.pairs[0].first == 0);   // a1 first
  CHECK(n.transitions[1].label.pairs[0].second == 2);  // A1^2 second
  CHECK(n.states.size() == 2);
  CHECK(!n.final_state[1]);  // fresh chain state is not final

  // idempotent on already-normalized input
  Vass nn = normalize_labels(n);
  CHECK(nn.states.size() == n.states.size());
  CHECK(nn.transitions.size() == n.transitions.size());

  // epsilon labels pass through
  Vass eps = parse_vass("vass dim=1\nstate q0 init\ntrans q0 -> q0 label=eps update=(1)\n");
  CHECK(normalize_labels(eps).transitions.size() == 1);
}

TEST_CASE("normalize preserves path effects end to end") {
  Vass v = parse_vass(
      "vass dim=1 alphabet=a1,A1\n"
      "state q0 init final\n"
      "trans q0 -> q0 label=a1^2A1 update=(3)\n");
  Vass n = normalize_labels(v);
  // chain of two transitions replacing the loop
  std::vector<std::size_t> chain{0, 1};
  PathEffect before = path_effect(v, {0});
  PathEffect after = path_effect(n, chain);
  CHECK(before.internal == after.internal);
  CHECK(before.external == after.external);
}

TEST_CASE("expand_labels unrolls counts") {
  Vass v = parse_vass(
      "vass dim=0 alphabet=a1,A1\n"
      "state q0 init final\n"
      "trans q0 -> q0 label=a1^3 update=()\n");
  Vass e = expand_labels(v);
  CHECK(e.transitions.size() == 3);
  for (const auto& t : e.transitions) {
    CHECK(t.label.pairs.size() == 1);
    CHECK(t.label.pairs[0].second == 1);
  }
}

TEST_CASE("dyck_vass shape and prefix semantics") {
  Vass d1 = dyck_vass(1);
  CHECK(d1.states.size() == 1);
  CHECK(d1.transitions.size() == 2);
  CHECK(d1.transitions[0].update == std::vector<Int>{Int(1)});
  CHECK(d1.transitions[1].update == std::vector<Int>{Int(-1)});
  CHECK(dyck_vass(3).transitions.size() == 6);

  // "a A a" is a valid prefix, "A" is not
  ExtConfig zero;
  zero.state = 0;
  zero.values = {ExtValue::of(0)};
  CHECK(check_run(d1, zero, {0, 1, 0}).ok);
  CHECK(!check_run(d1, zero, {1}).ok);
}

TEST_CASE("dyck prefix semantics cross-validated against a balance scan") {
  std::mt19937_64 rng(4242);
  Vass d2 = dyck_vass(2);
  std::uniform_int_distribution<std::size_t> ld(0, 3);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::size_t> word;
    for (int i = 0; i < 12; ++i) word.push_back(ld(rng));
    ExtConfig zero;
    zero.state = 0;
    zero.values = {ExtValue::of(0), ExtValue::of(0)};
    bool via_run = check_run(d2, zero, word).ok;
    long b0 = 0, b1 = 0;
    bool via_scan = true;
    for (std::size_t l : word) {
      if (l == 0) ++b0;
      if (l == 1) --b0;
      if (l == 2) ++b1;
      if (l == 3) --b1;
      if (b0 < 0 || b1 < 0) via_scan = false;
    }
    CHECK(via_run == via_scan);
  }
}

TEST_CASE("product_dyck extends updates by label balances") {
  Vass v = parse_vass(
      "vass dim=1 alphabet=a1,A1\n"
      "state q0 init final\n"
      "trans q0 -> q0 label=a1 update=(2)\n"
      "trans q0 -> q0 label=eps update=(0)\n"
      "trans q0 -> q0 label=A1^3 update=(0)\n");
  Vass p = product_dyck(v);
  CHECK(p.dim == 2);
  CHECK(p.transitions[0].update == std::vector<Int>{Int(2), Int(1)});
  CHECK(p.transitions[1].update == std::vector<Int>{Int(0), Int(0)});
  CHECK(p.transitions[2].update == std::vector<Int>{Int(0), Int(-3)});

  // projecting away the external counter recovers the original structure
  for (std::size_t i = 0; i < v.transitions.size(); ++i) {
    CHECK(p.transitions[i].src == v.transitions[i].src);
    CHECK(p.transitions[i].dst == v.transitions[i].dst);
    CHECK(std::vector<Int>(p.transitions[i].update.begin(),
                           p.transitions[i].update.begin() + v.dim) == v.transitions[i].update);
  }

  Vass bad = parse_vass("vass dim=0 alphabet=x\nstate q0 init\n");
  CHECK_THROWS_AS(product_dyck(bad), Error);
}

TEST_CASE("path_effect examples and additivity") {
  Vass v = parse_vass(
      "vass dim=1 alphabet=a1,A1\n"
      "state q0 init final\n"
      "trans q0 -> q0 label=a1^2 update=(-1)\n"
      "trans q0 -> q0 label=A1 update=(1)\n");
  PathEffect empty = path_effect(v, {});
  CHECK(empty.internal == std::vector<Int>{Int(0)});
  CHECK(empty.external == std::vector<Int>{Int(0)});

  PathEffect single = path_effect(v, {0});
  CHECK(single.internal == std::vector<Int>{Int(-1)});
  CHECK(single.external == std::vector<Int>{Int(2)});

  PathEffect cancel = path_effect(v, {0, 1, 1});
  CHECK(cancel.external == std::vector<Int>{Int(0)});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> td(0, 1);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::size_t> p1, p2;
    for (int i = 0; i < 4; ++i) p1.push_back(td(rng));
    for (int i = 0; i < 5; ++i) p2.push_back(td(rng));
    std::vector<std::size_t> cat = p1;
    cat.insert(cat.end(), p2.begin(), p2.end());
    PathEffect a = path_effect(v, p1), b = path_effect(v, p2), c = path_effect(v, cat);
    CHECK(c.internal[0] == a.internal[0] + b.internal[0]);
    CHECK(c.external[0] == a.external[0] + b.external[0]);
  }

  Vass two = parse_vass(
      "vass dim=0\nstate q0 init\nstate q1\ntrans q0 -> q1\n");
  CHECK_THROWS_AS(path_effect(two, {0, 0}), Error);  // disconnected
}

TEST_CASE("check_run reports violations and absorbs omega") {
  Vass v = parse_vass("vass dim=1\nstate q0 init\ntrans q0 -> q0 update=(-1)\n");
  ExtConfig zero;
  zero.state = 0;
  zero.values = {ExtValue::of(0)};
  RunReport r1 = check_run(v, zero, {0});
  CHECK(!r1.ok);
  CHECK(r1.violation_step == 1);
  CHECK(r1.violation_counter == 0);

  ExtConfig omega;
  omega.state = 0;
  omega.values = {ExtValue::omega_v()};
  Vass big = parse_vass("vass dim=1\nstate q0 init\ntrans q0 -> q0 update=(-1000000)\n");
  RunReport r2 = check_run(big, omega, {0});
  CHECK(r2.ok);
  CHECK(r2.final_config.values[0].omega);

  RunReport r3 = check_run(v, zero, {});
  CHECK(r3.ok);
  CHECK(r3.final_config == zero);

  // watched subset: an unwatched counter may go negative
  RunReport r4 = check_run(v, zero, {0}, std::set<std::size_t>{});
  CHECK(r4.ok);
  CHECK(r4.final_config.values[0].value == -1);
}

TEST_CASE("reduce emits counter updates as Dyck letters") {
  Vass v1 = parse_vass(
      "vass dim=0 alphabet=a\n"
      "state p0 init final\n"
      "trans p0 -> p0 label=a\n");
  Vass v2 = parse_vass(
      "vass dim=1 alphabet=a\n"
      "state r0 init final\n"
      "trans r0 -> r0 label=a update=(1)\n");
  Vass red = reduce(v1, v2);
  CHECK(red.dim == 0);
  CHECK(dyck_arity(red) == 1);
  // every transition emits a1^1
  for (const auto& t : red.transitions) {
    REQUIRE(t.label.pairs.size() == 1);
    CHECK(t.label.pairs[0].first == 0);
    CHECK(t.label.pairs[0].second == 1);
  }
  CHECK(buchi_nonempty(red));
  // structural bound from the three-valued degeneralization flag
  CHECK(red.states.size() <= 3 * v1.states.size() * v2.states.size());
}

TEST_CASE("reduce with no final states in V1 yields the empty language") {
  Vass v1 = parse_vass(
      "vass dim=0 alphabet=a\nstate p0 init\ntrans p0 -> p0 label=a\n");
  Vass v2 = parse_vass(
      "vass dim=1 alphabet=a\nstate r0 init final\ntrans r0 -> r0 label=a update=(1)\n");
  Vass red = reduce(v1, v2);
  CHECK(!buchi_nonempty(red));
}

TEST_CASE("reduce padding keeps emissions nonempty") {
  // v2 moves with update 0: the step emits the neutral pair a1^1 A1^1
  Vass v1 = parse_vass(
      "vass dim=0 alphabet=a\nstate p0 init final\ntrans p0 -> p0 label=a\n");
  Vass v2 = parse_vass(
      "vass dim=1 alphabet=a\nstate r0 init final\ntrans r0 -> r0 label=a update=(0)\n");
  Vass red = reduce(v1, v2);
  for (const auto& t : red.transitions) {
    REQUIRE(t.label.pairs.size() == 2);
    CHECK(t.label.pairs[0].first == 0);
    CHECK(t.label.pairs[1].first == 1);
  }
}

TEST_CASE("reduce rejects mismatched inputs") {
  Vass v1 = parse_vass("vass dim=0 alphabet=a\nstate p0 init\n");
  Vass v2 = parse_vass("vass dim=1 alphabet=b\nstate r0 init\n");
  CHECK_THROWS_AS(reduce(v1, v2), Error);
  Vass v3 = parse_vass("vass dim=0 alphabet=a\nstate r0 init\n");
  CHECK_THROWS_AS(reduce(v1, v3), Error);  // dim(V2) must be >= 1
  Vass compressed = parse_vass(
      "vass dim=1 alphabet=a\nstate r0 init\ntrans r0 -> r0 label=a^2 update=(1)\n");
  CHECK_THROWS_AS(reduce(v1, compressed), Error);  // counts must be 1
}

TEST_CASE("vass size measure counts binary encodings") {
  Vass v = parse_vass(kSample);
  CHECK(v.size_measure() > 0);
  // lcVASS sizes use log of the counts, so compressing shrinks the measure
  Vass big = parse_vass(
      "vass dim=0 alphabet=a1,A1\nstate q0 init\ntrans q0 -> q0 label=a1^1024\n");
  Vass small = parse_vass(
      "vass dim=0 alphabet=a1,A1\nstate q0 init\ntrans q0 -> q0 label=a1\n");
  CHECK(big.size_measure() < Int(40));
  CHECK(small.size_measure() < big.size_measure());
}

TEST_CASE("parse_target") {
  Vass v = parse_vass(kSample);
  ExtConfig c = parse_target(v, "q1:(3,w)");
  CHECK(c.state == 1);
  CHECK(c.values[0].value == 3);
  CHECK(c.values[1].omega);
  CHECK_THROWS_AS(parse_target(v, "zz:(0,0)"), Error);
  CHECK_THROWS_AS(parse_target(v, "q1:(1)"), Error);
}

TEST_CASE("fixture corpus round-trips and matches the suite expectations") {
  const char* names[] = {"f1_no_finals.vass", "f2_a1_loop.vass",   "f3_A1_loop.vass",
                         "f4_a1_then_A1.vass", "f5_both_loops.vass", "f6_A1_then_a1.vass"};
  for (int i = 0; i < 6; ++i) {
    std::ifstream in(std::string(VSEP_FIXTURES) + "/" + names[i]);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    Vass from_file = parse_vass(os.str());
    CHECK(serialize_vass(parse_vass(serialize_vass(from_file))) == serialize_vass(from_file));
    // the in-library copy used by the suites must not drift from the files
    Vass from_lib = parse_vass(vsep::suites::sep_fixtures()[i].text);
    CHECK(serialize_vass(from_file) == serialize_vass(from_lib));
  }
}
