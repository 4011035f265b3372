// vsep: exact SNLS solving and omega-regular separability of Büchi VASS
// from Dyck languages. One binary, subcommand groups snls / vass / sep /
// suite. Exit codes: 0 separable or success, 10 inseparable, 2 resource
// cap, 1 error, 64 usage, 66 missing file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <functional>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsep/sep.hpp"
#include "vsep/suites.hpp"

namespace {

constexpr int kExitSeparable = 0;
constexpr int kExitInseparable = 10;
constexpr int kExitCap = 2;
constexpr int kExitError = 1;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

using vsep::Config;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(kExitNoInput);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(kExitNoInput);
  }
  out << text;
}

// Minimal key = value config override, a TOML subset.
void load_config_file(Config& cfg, const std::string& path) {
  std::istringstream is(read_file(path));
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) continue;
    std::uint64_t num = std::strtoull(val.c_str(), nullptr, 10);
    if (key == "node_cap") cfg.node_cap = num;
    else if (key == "cycle_cap") cfg.cycle_cap = num;
    else if (key == "subset_cap") cfg.subset_cap = num;
    else if (key == "fm_cap") cfg.fm_cap = num;
    else if (key == "support_cap") cfg.support_cap = num;
    else if (key == "retry_cap") cfg.retry_cap = static_cast<unsigned>(num);
    else if (key == "bound_constant") cfg.bound_constant = static_cast<unsigned>(num);
    else if (key == "seed") cfg.seed = num;
  }
}

std::vector<vsep::Int> parse_weights(const std::string& s) {
  std::vector<vsep::Int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) out.push_back(vsep::int_from_string(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string flower_bound_string(const vsep::Vass& v, unsigned C) {
  try {
    return vsep::flower_size_bound(v, C).get_str();
  } catch (const vsep::Error&) {
    // fall back to the symbolic form when the tower is unrepresentable
    auto n = vsep::dyck_arity(v);
    std::size_t dn = v.dim + n.value_or(0);
    vsep::Int e;
    mpz_pow_ui(e.get_mpz_t(), v.size_measure().get_mpz_t(), C * dn * dn);
    return "2^" + e.get_str();
  }
}

int emit_decision(const vsep::Vass& v, const vsep::Decision& dec, const Config& cfg,
                  const std::string& cert_path) {
  for (const auto& d : dec.diagnostics) std::cerr << "note: " << d << "\n";
  bool insep = dec.verdict == vsep::Verdict::Inseparable;
  if (cfg.json_output) {
    ordered_json j;
    j["verdict"] = insep ? "INSEPARABLE" : "SEPARABLE";
    j["flower_size_bound"] = flower_bound_string(v, cfg.bound_constant);
    if (insep) j["certificate"] = ordered_json::parse(dec.certificate->to_json(v));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (insep ? "INSEPARABLE" : "SEPARABLE") << "\n";
    if (insep) std::cout << "t = " << dec.certificate->t.str() << "\n";
  }
  if (insep && !cert_path.empty()) write_file(cert_path, dec.certificate->to_json(v));
  return insep ? kExitInseparable : kExitSeparable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact SNLS feasibility and omega-regular separability of Büchi VASS"};
  app.require_subcommand(1);

  Config cfg;
  if (const char* env = std::getenv("VSEP_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  std::string config_path;
  app.add_option("--config", config_path, "key = value overrides for caps and seed");
  app.add_flag("--json", cfg.json_output, "emit a single JSON document on stdout");
  app.add_option("--seed", cfg.seed, "RNG seed for randomized commands");
  app.add_option("--max-nodes", cfg.node_cap, "Karp-Miller node cap");
  app.add_option("--max-cycles", cfg.cycle_cap, "simple-cycle cap per SCC");
  app.add_option("--max-subsets", cfg.subset_cap, "row-subset cap for quantifier elimination");

  // ---- snls ----
  auto* snls = app.add_subcommand("snls", "singly non-linear systems");
  snls->require_subcommand(1);
  std::string snls_file;
  auto* snls_solve = snls->add_subcommand("solve", "decide feasibility and print a solution");
  snls_solve->add_option("file", snls_file, "SNLS JSON file")->required();
  auto* snls_qe = snls->add_subcommand("qe", "print the quantifier-eliminated formula");
  snls_qe->add_option("file", snls_file, "SNLS JSON file")->required();
  std::size_t brute_samples = 100;
  auto* snls_brute = snls->add_subcommand("brute", "feasibility probe at candidate and random points");
  snls_brute->add_option("file", snls_file, "SNLS JSON file")->required();
  snls_brute->add_option("--samples", brute_samples, "extra random sample count");

  // ---- vass ----
  auto* vass_cmd = app.add_subcommand("vass", "VASS inspection and Karp-Miller analyses");
  vass_cmd->require_subcommand(1);
  std::string vass_file, dot_path, target_spec;
  bool km_product = false;
  auto* vass_print = vass_cmd->add_subcommand("print", "parse and reprint");
  vass_print->add_option("file", vass_file)->required();
  auto* vass_norm = vass_cmd->add_subcommand("normalize", "split multi-pair labels");
  vass_norm->add_option("file", vass_file)->required();
  auto* vass_prod = vass_cmd->add_subcommand("product-dyck", "extend updates by label balances");
  vass_prod->add_option("file", vass_file)->required();
  auto* vass_km = vass_cmd->add_subcommand("km", "build the Karp-Miller graph");
  vass_km->add_option("file", vass_file)->required();
  vass_km->add_flag("--product-dyck", km_product, "build over the Dyck product");
  vass_km->add_option("--dot", dot_path, "write DOT to this path");
  auto* vass_cover = vass_cmd->add_subcommand("cover", "decide coverability of a target");
  vass_cover->add_option("file", vass_file)->required();
  vass_cover->add_option("--target", target_spec, "q1:(3,w,0) with w = omega")->required();
  auto* vass_nonempty = vass_cmd->add_subcommand("nonempty", "Büchi nonemptiness");
  vass_nonempty->add_option("file", vass_file)->required();

  // ---- sep ----
  auto* sep = app.add_subcommand("sep", "omega-regular separability from Dyck languages");
  sep->require_subcommand(1);
  std::string v1_file, v2_file, cert_path, cert_file, weights_spec = "1";
  long demo_k = 0;
  auto* sep_decide = sep->add_subcommand("decide", "two Büchi VASS via the Dyck reduction");
  sep_decide->add_option("v1", v1_file)->required();
  sep_decide->add_option("v2", v2_file)->required();
  sep_decide->add_option("--certificate", cert_path, "write the certificate JSON here");
  sep_decide->add_flag("--single-km", cfg.single_km, "search KM(V x D_n) directly");
  sep_decide->add_flag("--pump-external-product", cfg.pump_external_product,
                       "product with D_n again before the second KM");
  auto* sep_dyck = sep->add_subcommand("dyck", "one n-visible VASS against D_n");
  sep_dyck->add_option("v", v1_file)->required();
  sep_dyck->add_option("--certificate", cert_path);
  sep_dyck->add_flag("--single-km", cfg.single_km);
  sep_dyck->add_flag("--pump-external-product", cfg.pump_external_product);
  auto* sep_reduce = sep->add_subcommand("reduce", "emit the reduced n-visible lcVASS");
  sep_reduce->add_option("v1", v1_file)->required();
  sep_reduce->add_option("v2", v2_file)->required();
  auto* sep_check = sep->add_subcommand("check-cert", "validate a certificate independently");
  sep_check->add_option("v", v1_file)->required();
  sep_check->add_option("cert", cert_file)->required();
  auto* sep_demo = sep->add_subcommand("demo", "emit the inseparability witness word");
  sep_demo->add_option("v", v1_file)->required();
  sep_demo->add_option("cert", cert_file)->required();
  sep_demo->add_option("--k", demo_k, "separator bound k");
  sep_demo->add_option("--weights", weights_spec, "comma-separated weight vector");

  // ---- suite ----
  auto* suite = app.add_subcommand("suite", "run a named property suite");
  std::string suite_name;
  suite->add_option("name", suite_name, "snls-props | km-props | sep-fixtures | oracles | all")
      ->required();

  // Let global flags appear after the subcommand as well.
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* sub : a->get_subcommands({})) allow_fallthrough(sub);
  };
  allow_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);

    if (snls_solve->parsed()) {
      auto s = vsep::Snls::from_json(read_file(snls_file));
      auto sol = vsep::solve(s, cfg);
      if (cfg.json_output) {
        ordered_json j = ordered_json::parse(vsep::solution_to_json(sol));
        if (sol.has_value()) {
          // Size accounting: unary magnitude and bit size of the canonical
          // fractions, plus the informational solution bound.
          ordered_json diag;
          diag["t_unary_size"] = sol->t.unary_size().get_str();
          diag["t_bit_size"] =
              mpz_sizeinbase(sol->t.numerator().get_mpz_t(), 2) +
              mpz_sizeinbase(sol->t.denominator().get_mpz_t(), 2);
          vsep::Int y_unary = 0;
          std::size_t y_bits = 0;
          for (const auto& yi : sol->y) {
            y_unary += yi.unary_size();
            y_bits += mpz_sizeinbase(yi.numerator().get_mpz_t(), 2) +
                      mpz_sizeinbase(yi.denominator().get_mpz_t(), 2);
          }
          diag["y_unary_size"] = y_unary.get_str();
          diag["y_bit_size"] = y_bits;
          try {
            diag["solution_size_bound"] = vsep::solution_size_bound(s, cfg.bound_constant).get_str();
          } catch (const vsep::Error&) {
            diag["solution_size_bound"] = "too large to materialize";
          }
          j["diagnostics"] = diag;
        }
        std::cout << j.dump(2) << "\n";
      } else if (sol.has_value()) {
        std::cout << "FEASIBLE t = " << sol->t.str() << " y = [";
        for (std::size_t i = 0; i < sol->y.size(); ++i)
          std::cout << (i ? ", " : "") << sol->y[i].str();
        std::cout << "] common_denominator = " << sol->common_denom.get_str() << "\n";
      } else {
        std::cout << "INFEASIBLE\n";
      }
      return 0;
    }
    if (snls_qe->parsed()) {
      auto s = vsep::Snls::from_json(read_file(snls_file));
      auto phi = vsep::eliminate_quantifier(s, cfg);
      if (cfg.json_output) {
        ordered_json j = ordered_json::array();
        for (const auto& conj : phi.disjuncts) {
          ordered_json c = ordered_json::array();
          for (const auto& lc : conj) {
            ordered_json e;
            e["poly"] = lc.poly.to_strings();
            e["strict"] = lc.strict;
            c.push_back(e);
          }
          j.push_back(c);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << phi.disjuncts.size() << " disjuncts\n";
        for (const auto& conj : phi.disjuncts) {
          std::cout << "  ";
          for (std::size_t i = 0; i < conj.size(); ++i)
            std::cout << (i ? " and " : "") << conj[i].poly.str()
                      << (conj[i].strict ? " > 0" : " >= 0");
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (snls_brute->parsed()) {
      auto s = vsep::Snls::from_json(read_file(snls_file));
      auto rep = vsep::brute_feasibility_probe(s, brute_samples, cfg.seed, cfg);
      if (cfg.json_output) {
        ordered_json j;
        j["tried"] = rep.tried;
        ordered_json pts = ordered_json::array();
        for (const auto& t : rep.feasible_points) pts.push_back(t.str());
        j["feasible_points"] = pts;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "tried " << rep.tried << " points, " << rep.feasible_points.size()
                  << " feasible";
        if (!rep.feasible_points.empty()) std::cout << ", first t = " << rep.feasible_points[0].str();
        std::cout << "\n";
      }
      return 0;
    }

    if (vass_print->parsed()) {
      std::cout << vsep::serialize_vass(vsep::parse_vass(read_file(vass_file)));
      return 0;
    }
    if (vass_norm->parsed()) {
      std::cout << vsep::serialize_vass(vsep::normalize_labels(vsep::parse_vass(read_file(vass_file))));
      return 0;
    }
    if (vass_prod->parsed()) {
      std::cout << vsep::serialize_vass(vsep::product_dyck(vsep::parse_vass(read_file(vass_file))));
      return 0;
    }
    if (vass_km->parsed()) {
      auto v = vsep::parse_vass(read_file(vass_file));
      if (km_product) v = vsep::product_dyck(vsep::normalize_labels(v));
      auto km = vsep::build_km(v, cfg);
      if (!dot_path.empty()) write_file(dot_path, km.to_dot());
      if (cfg.json_output)
        std::cout << km.nodes_to_json() << "\n";
      else
        std::cout << km.nodes.size() << " nodes, " << km.edges.size() << " edges\n";
      return 0;
    }
    if (vass_cover->parsed()) {
      auto v = vsep::parse_vass(read_file(vass_file));
      auto km = vsep::build_km(v, cfg);
      auto target = vsep::parse_target(v, target_spec);
      bool cov = vsep::coverable(km, target);
      std::cout << (cov ? "COVERABLE" : "NOT_COVERABLE") << "\n";
      return 0;
    }
    if (vass_nonempty->parsed()) {
      auto v = vsep::parse_vass(read_file(vass_file));
      bool ne = vsep::buchi_nonempty(vsep::normalize_labels(v), cfg);
      std::cout << (ne ? "NONEMPTY" : "EMPTY") << "\n";
      return 0;
    }

    if (sep_decide->parsed()) {
      auto v1 = vsep::parse_vass(read_file(v1_file));
      auto v2 = vsep::parse_vass(read_file(v2_file));
      auto reduced = vsep::reduce(vsep::expand_labels(vsep::normalize_labels(v1)),
                                  vsep::expand_labels(vsep::normalize_labels(v2)));
      auto dec = vsep::decide(v1, v2, cfg);
      return emit_decision(vsep::normalize_labels(reduced), dec, cfg, cert_path);
    }
    if (sep_dyck->parsed()) {
      auto v = vsep::parse_vass(read_file(v1_file));
      auto dec = vsep::decide_dyck(v, cfg);
      return emit_decision(v, dec, cfg, cert_path);
    }
    if (sep_reduce->parsed()) {
      auto v1 = vsep::parse_vass(read_file(v1_file));
      auto v2 = vsep::parse_vass(read_file(v2_file));
      std::cout << vsep::serialize_vass(vsep::reduce(vsep::expand_labels(vsep::normalize_labels(v1)),
                                                     vsep::expand_labels(vsep::normalize_labels(v2))));
      return 0;
    }
    if (sep_check->parsed()) {
      auto v = vsep::parse_vass(read_file(v1_file));
      auto vn = vsep::normalize_labels(v);
      auto cert = vsep::Certificate::from_json(v, read_file(cert_file));
      auto km = vsep::build_km(vsep::product_dyck(vn), cfg);
      auto rep = vsep::validate_flower(vn, cert.flower, km);
      std::cout << rep.str();
      std::cout << (rep.all_pass() ? "VALID" : "INVALID") << "\n";
      return rep.all_pass() ? 0 : 1;
    }
    if (sep_demo->parsed()) {
      auto v = vsep::parse_vass(read_file(v1_file));
      auto cert = vsep::Certificate::from_json(v, read_file(cert_file));
      auto weights = parse_weights(weights_spec);
      auto rep = vsep::demonstrate(v, cert, vsep::Int(demo_k), {weights}, cfg);
      if (cfg.json_output) {
        ordered_json j;
        auto letters = [&](const std::vector<std::size_t>& seq) {
          std::string s;
          auto names = vsep::dyck_alphabet(rep.word.n);
          for (std::size_t l : seq) s += names[l] + " ";
          if (!s.empty()) s.pop_back();
          return s;
        };
        j["prefix"] = letters(rep.word.prefix);
        j["period"] = letters(rep.word.period);
        j["run_valid"] = rep.run_valid;
        j["in_P"] = rep.in_P;
        j["in_S"] = rep.in_S;
        j["escapes_all"] = rep.escapes_all();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << rep.str() << "\n"
                  << (rep.escapes_all() ? "ESCAPES all sampled separators" : "FAILS") << "\n";
      }
      return rep.escapes_all() ? 0 : 1;
    }

    if (suite->parsed()) {
      auto ids = vsep::suites::criteria_for_suite(suite_name);
      if (ids.empty()) {
        std::cerr << "unknown suite '" << suite_name << "'\n";
        return kExitUsage;
      }
      bool all = true;
      for (int id : ids) {
        auto r = vsep::suites::run_criterion(id, cfg.seed);
        all = all && r.pass;
        std::cout << "criterion " << r.id << " [" << r.name << "]: "
                  << (r.pass ? "PASS" : "FAIL") << " — " << r.detail << " ("
                  << r.seconds << "s)\n";
      }
      return all ? 0 : 1;
    }
  } catch (const vsep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource_cap() ? kExitCap : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
