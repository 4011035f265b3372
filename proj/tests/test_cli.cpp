#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run(const std::string& args) {
  std::string tmp = std::string(VSEP_FIXTURES) + "/../cli_out.tmp";
  std::string cmd = std::string(VSEP_BIN) + " " + args + " > " + tmp + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::ostringstream os;
  os << in.rdbuf();
  std::remove(tmp.c_str());
  return {WEXITSTATUS(rc), os.str()};
}

std::string fixture(const std::string& name) { return std::string(VSEP_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("snls solve exit codes and output") {
  auto trap = run("snls solve " + fixture("trap.json"));
  CHECK(trap.exit_code == 0);
  CHECK(trap.out.find("INFEASIBLE") != std::string::npos);

  auto forced = run("snls solve " + fixture("forced_t.json") + " --json");
  CHECK(forced.exit_code == 0);
  CHECK(forced.out.find("\"status\": \"FEASIBLE\"") != std::string::npos);
  CHECK(forced.out.find("\"t\": \"2/1\"") != std::string::npos);
}

TEST_CASE("snls qe and brute") {
  auto qe = run("snls qe " + fixture("trap.json"));
  CHECK(qe.exit_code == 0);
  CHECK(qe.out.find("disjuncts") != std::string::npos);
  auto qej = run("snls qe " + fixture("trap.json") + " --json");
  CHECK(qej.exit_code == 0);
  CHECK(qej.out.find("\"strict\"") != std::string::npos);
  auto brute = run("snls brute " + fixture("trap.json") + " --samples 50 --seed 7");
  CHECK(brute.exit_code == 0);
  CHECK(brute.out.find("0 feasible") != std::string::npos);
}

TEST_CASE("vass subcommands") {
  auto print = run("vass print " + fixture("f2_a1_loop.vass"));
  CHECK(print.exit_code == 0);
  CHECK(print.out.find("state q0 init final") != std::string::npos);

  auto km = run("vass km " + fixture("f2_a1_loop.vass") + " --product-dyck");
  CHECK(km.exit_code == 0);
  CHECK(km.out.find("2 nodes") != std::string::npos);

  auto cover = run("vass nonempty " + fixture("f2_a1_loop.vass"));
  CHECK(cover.exit_code == 0);
  CHECK(cover.out.find("NONEMPTY") != std::string::npos);
}

TEST_CASE("sep dyck exit codes match the verdicts") {
  CHECK(run("sep dyck " + fixture("f1_no_finals.vass")).exit_code == 0);
  auto insep = run("sep dyck " + fixture("f2_a1_loop.vass"));
  CHECK(insep.exit_code == 10);
  CHECK(insep.out.find("INSEPARABLE") != std::string::npos);
  CHECK(insep.out.find("t = 3/1") != std::string::npos);
  CHECK(run("sep dyck " + fixture("f3_A1_loop.vass")).exit_code == 0);
  auto both = run("sep dyck " + fixture("f5_both_loops.vass"));
  CHECK(both.exit_code == 10);
  CHECK(both.out.find("t = 1/1") != std::string::npos);
}

TEST_CASE("deterministic JSON output") {
  std::string cmd = "sep dyck " + fixture("f5_both_loops.vass") + " --json";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.exit_code == 10);
  CHECK(a.out == b.out);
}

TEST_CASE("certificate round trip through check-cert and demo") {
  std::string cert = std::string(VSEP_FIXTURES) + "/../cert.tmp.json";
  auto d = run("sep dyck " + fixture("f2_a1_loop.vass") + " --certificate " + cert);
  CHECK(d.exit_code == 10);
  auto check = run("sep check-cert " + fixture("f2_a1_loop.vass") + " " + cert);
  CHECK(check.exit_code == 0);
  CHECK(check.out.find("VALID") != std::string::npos);
  auto demo = run("sep demo " + fixture("f2_a1_loop.vass") + " " + cert + " --k 1 --weights 1");
  CHECK(demo.exit_code == 0);
  CHECK(demo.out.find("ESCAPES") != std::string::npos);
  std::remove(cert.c_str());
}

TEST_CASE("usage and file errors") {
  CHECK(run("definitely-not-a-command").exit_code == 64);
  CHECK(run("sep dyck").exit_code == 64);
  CHECK(run("sep dyck /nonexistent/file.vass").exit_code == 66);
  CHECK(run("suite no-such-suite").exit_code == 64);
}

TEST_CASE("resource caps exit with code 2") {
  auto r = run("vass km " + fixture("f2_a1_loop.vass") + " --product-dyck --max-nodes 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("suite runner") {
  auto r = run("suite sep-fixtures");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("criterion 7") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("vass cover and config overrides") {
  auto cov = run("vass cover " + fixture("f2_a1_loop.vass") + " --target 'q0:()'");
  CHECK(cov.exit_code == 0);
  CHECK(cov.out.find("COVERABLE") != std::string::npos);

  std::string conf = std::string(VSEP_FIXTURES) + "/../conf.tmp.toml";
  {
    std::ofstream out(conf);
    out << "# tiny cap to prove the file is honored\nnode_cap = 1\n";
  }
  auto capped = run("vass km " + fixture("f2_a1_loop.vass") + " --product-dyck --config " + conf);
  CHECK(capped.exit_code == 2);
  std::remove(conf.c_str());
}

TEST_CASE("help text exists for every subcommand") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("snls --help").exit_code == 0);
  CHECK(run("sep decide --help").exit_code == 0);
  auto h = run("vass --help");
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("km") != std::string::npos);
}

TEST_CASE("suite outcomes are seed independent") {
  auto a = run("suite oracles --seed 1");
  auto b = run("suite oracles --seed 987654321");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
}

TEST_CASE("km DOT export") {
  std::string dot = std::string(VSEP_FIXTURES) + "/../km.tmp.dot";
  auto r = run("vass km " + fixture("f2_a1_loop.vass") + " --product-dyck --dot " + dot);
  CHECK(r.exit_code == 0);
  std::ifstream in(dot);
  std::ostringstream os;
  os << in.rdbuf();
  CHECK(os.str().find("digraph km") != std::string::npos);
  CHECK(os.str().find("->") != std::string::npos);
  std::remove(dot.c_str());
}
