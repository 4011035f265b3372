#include "vsep/vass.hpp"

#include <algorithm>
#include <sstream>

namespace vsep {

Int Label::letter_length() const {
  Int n = 0;
  for (const auto& [l, k] : pairs) n += k;
  return n;
}

std::string Label::str(const std::vector<std::string>& alphabet) const {
  if (pairs.empty()) return "eps";
  std::string s;
  for (const auto& [l, k] : pairs) {
    s += alphabet[l];
    if (k != 1) s += "^" + k.get_str();
  }
  return s;
}

std::size_t Vass::letter_index(const std::string& name) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return i;
  return static_cast<std::size_t>(-1);
}

std::size_t Vass::add_state(const std::string& name, bool fin) {
  states.push_back(name);
  final_state.push_back(fin);
  return states.size() - 1;
}

Int Vass::size_measure() const {
  Int s = Int(states.size());
  for (bool f : final_state)
    if (f) s += 1;
  for (const auto& t : transitions) {
    for (const auto& [l, k] : t.label.pairs) s += Int(mpz_sizeinbase(k.get_mpz_t(), 2));
    for (const auto& u : t.update) s += Int(mpz_sizeinbase(u.get_mpz_t(), 2));
  }
  return s;
}

void Vass::validate() const {
  if (states.empty()) throw Error(ErrorCode::SemanticError, "VASS needs at least one state");
  if (init >= states.size()) throw Error(ErrorCode::SemanticError, "bad initial state");
  if (final_state.size() != states.size())
    throw Error(ErrorCode::Internal, "final flag arity mismatch");
  for (const auto& t : transitions) {
    if (t.src >= states.size() || t.dst >= states.size())
      throw Error(ErrorCode::SemanticError, "transition endpoint out of range");
    if (t.update.size() != dim)
      throw Error(ErrorCode::SemanticError, "update arity does not match dim");
    for (const auto& [l, k] : t.label.pairs) {
      if (l >= alphabet.size()) throw Error(ErrorCode::SemanticError, "unknown letter in label");
      if (sgn(k) <= 0) throw Error(ErrorCode::SemanticError, "label count must be >= 1");
    }
  }
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// Greedy longest-prefix match of a declared letter at position i.
std::size_t match_letter(const std::string& s, std::size_t i,
                         const std::vector<std::string>& alphabet) {
  std::size_t best = static_cast<std::size_t>(-1);
  std::size_t best_len = 0;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    const auto& name = alphabet[a];
    if (name.size() > best_len && s.compare(i, name.size(), name) == 0) {
      best = a;
      best_len = name.size();
    }
  }
  return best;
}

Label parse_label(const std::string& s, const std::vector<std::string>& alphabet,
                  std::size_t line) {
  Label lab;
  if (s == "eps") return lab;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t a = match_letter(s, i, alphabet);
    if (a == static_cast<std::size_t>(-1)) parse_fail(line, i + 1, "unknown letter in label '" + s + "'");
    i += alphabet[a].size();
    Int count = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && (isdigit(static_cast<unsigned char>(s[j])))) ++j;
      if (j == i) parse_fail(line, i + 1, "missing count after ^");
      count = int_from_string(s.substr(i, j - i));
      if (count <= 0) parse_fail(line, i + 1, "label count must be >= 1");
      i = j;
    }
    lab.pairs.emplace_back(a, count);
  }
  return lab;
}

std::vector<Int> parse_update(const std::string& s, std::size_t line) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    parse_fail(line, 1, "update must look like (1,-2)");
  std::vector<Int> u;
  std::string inner = s.substr(1, s.size() - 2);
  if (inner.empty()) return u;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = inner.find(',', start);
    std::string tok = inner.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    if (tok.empty()) parse_fail(line, 1, "empty component in update");
    u.push_back(int_from_string(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return u;
}

}  // namespace

Vass parse_vass(const std::string& text) {
  Vass v;
  bool header_seen = false;
  bool init_seen = false;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::tuple<std::string, std::string, std::string, std::string, std::size_t>> pending;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto words = split_ws(raw);
    if (words.empty()) continue;
    if (words[0] == "vass") {
      if (header_seen) parse_fail(lineno, 1, "duplicate header");
      header_seen = true;
      bool dim_seen = false;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto& w = words[i];
        if (w.rfind("dim=", 0) == 0) {
          long d = std::stol(w.substr(4));
          if (d < 0) parse_fail(lineno, 1, "dim must be >= 0");
          v.dim = static_cast<std::size_t>(d);
          dim_seen = true;
        } else if (w.rfind("alphabet=", 0) == 0) {
          std::string list = w.substr(9);
          std::size_t start = 0;
          while (start < list.size()) {
            std::size_t comma = list.find(',', start);
            std::string name =
                list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (name.empty()) parse_fail(lineno, 1, "empty letter name");
            if (v.letter_index(name) != static_cast<std::size_t>(-1))
              parse_fail(lineno, 1, "duplicate letter " + name);
            v.alphabet.push_back(name);
            if (comma == std::string::npos) break;
            start = comma + 1;
          }
        } else {
          parse_fail(lineno, 1, "unknown header field '" + w + "'");
        }
      }
      if (!dim_seen) parse_fail(lineno, 1, "header needs dim=");
    } else if (words[0] == "state") {
      if (!header_seen) parse_fail(lineno, 1, "state before header");
      if (words.size() < 2) parse_fail(lineno, 1, "state needs a name");
      const std::string& name = words[1];
      for (const auto& s : v.states)
        if (s == name) parse_fail(lineno, 1, "duplicate state " + name);
      bool is_init = false, is_final = false;
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (words[i] == "init") is_init = true;
        else if (words[i] == "final") is_final = true;
        else parse_fail(lineno, 1, "unknown state attribute '" + words[i] + "'");
      }
      std::size_t id = v.add_state(name, is_final);
      if (is_init) {
        if (init_seen) parse_fail(lineno, 1, "second init state");
        init_seen = true;
        v.init = id;
      }
    } else if (words[0] == "trans") {
      // trans q0 -> q1 label=a1^3 update=(1,-2)
      if (words.size() < 4 || words[2] != "->") parse_fail(lineno, 1, "trans needs 'src -> dst'");
      std::string lab = "eps", upd;
      for (std::size_t i = 4; i < words.size(); ++i) {
        if (words[i].rfind("label=", 0) == 0) lab = words[i].substr(6);
        else if (words[i].rfind("update=", 0) == 0) upd = words[i].substr(7);
        else parse_fail(lineno, 1, "unknown trans field '" + words[i] + "'");
      }
      pending.emplace_back(words[1], words[3], lab, upd, lineno);
    } else {
      parse_fail(lineno, 1, "unknown directive '" + words[0] + "'");
    }
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "missing 'vass' header");
  if (!init_seen) throw Error(ErrorCode::SemanticError, "no init state");

  auto state_id = [&](const std::string& name, std::size_t line) {
    for (std::size_t i = 0; i < v.states.size(); ++i)
      if (v.states[i] == name) return i;
    parse_fail(line, 1, "unknown state '" + name + "'");
  };
  for (const auto& [src, dst, lab, upd, line] : pending) {
    Transition t;
    t.src = state_id(src, line);
    t.dst = state_id(dst, line);
    t.label = parse_label(lab, v.alphabet, line);
    t.update = upd.empty() ? std::vector<Int>(v.dim, Int(0)) : parse_update(upd, line);
    if (t.update.size() != v.dim)
      throw Error(ErrorCode::SemanticError,
                  "line " + std::to_string(line) + ": update arity " +
                      std::to_string(t.update.size()) + " != dim " + std::to_string(v.dim));
    for (const auto& existing : v.transitions)
      if (existing.src == t.src && existing.dst == t.dst &&
          existing.label.pairs == t.label.pairs && existing.update == t.update)
        throw Error(ErrorCode::SemanticError,
                    "line " + std::to_string(line) + ": duplicate transition");
    v.transitions.push_back(std::move(t));
  }
  v.validate();
  return v;
}

std::string serialize_vass(const Vass& v) {
  std::ostringstream os;
  os << "vass dim=" << v.dim;
  if (!v.alphabet.empty()) {
    os << " alphabet=";
    for (std::size_t i = 0; i < v.alphabet.size(); ++i) {
      if (i) os << ",";
      os << v.alphabet[i];
    }
  }
  os << "\n";
  for (std::size_t i = 0; i < v.states.size(); ++i) {
    os << "state " << v.states[i];
    if (i == v.init) os << " init";
    if (v.final_state[i]) os << " final";
    os << "\n";
  }
  for (const auto& t : v.transitions) {
    os << "trans " << v.states[t.src] << " -> " << v.states[t.dst]
       << " label=" << t.label.str(v.alphabet) << " update=(";
    for (std::size_t i = 0; i < t.update.size(); ++i) {
      if (i) os << ",";
      os << t.update[i].get_str();
    }
    os << ")\n";
  }
  return os.str();
}

std::vector<std::string> dyck_alphabet(std::size_t n) {
  std::vector<std::string> a;
  for (std::size_t i = 1; i <= n; ++i) {
    a.push_back("a" + std::to_string(i));
    a.push_back("A" + std::to_string(i));
  }
  return a;
}

std::optional<std::size_t> dyck_arity(const Vass& v) {
  if (v.alphabet.empty() || v.alphabet.size() % 2 != 0) return std::nullopt;
  std::size_t n = v.alphabet.size() / 2;
  auto expect = dyck_alphabet(n);
  auto sorted_a = v.alphabet;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(expect.begin(), expect.end());
  if (sorted_a != expect) return std::nullopt;
  return n;
}

namespace {

// +index / -index of the Dyck pair for a letter name; 0 if not Dyck-shaped.
long dyck_letter_code(const std::string& name) {
  if (name.size() < 2) return 0;
  char c = name[0];
  if (c != 'a' && c != 'A') return 0;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(name[i]))) return 0;
  long idx = std::stol(name.substr(1));
  if (idx <= 0) return 0;
  return c == 'a' ? idx : -idx;
}

}  // namespace

Vass normalize_labels(const Vass& v) {
  Vass out = v;
  out.transitions.clear();
  std::size_t fresh = 0;
  for (const auto& t : v.transitions) {
    if (t.label.is_simple()) {
      out.transitions.push_back(t);
      continue;
    }
    std::size_t cur = t.src;
    for (std::size_t i = 0; i < t.label.pairs.size(); ++i) {
      bool last = i + 1 == t.label.pairs.size();
      std::size_t nxt =
          last ? t.dst : out.add_state("_n" + std::to_string(fresh++), false);
      Transition step;
      step.src = cur;
      step.dst = nxt;
      step.label.pairs.push_back(t.label.pairs[i]);
      step.update = i == 0 ? t.update : std::vector<Int>(v.dim, Int(0));
      out.transitions.push_back(std::move(step));
      cur = nxt;
    }
  }
  out.validate();
  return out;
}

Vass expand_labels(const Vass& v) {
  Vass out = v;
  out.transitions.clear();
  std::size_t fresh = 0;
  for (const auto& t : v.transitions) {
    Int total = t.label.letter_length();
    if (total <= 1) {
      out.transitions.push_back(t);
      continue;
    }
    if (total > 4096)
      throw Error(ErrorCode::DimensionLimit, "label expansion beyond 4096 letters");
    std::vector<std::size_t> letters;
    for (const auto& [l, k] : t.label.pairs)
      for (Int i = 0; i < k; ++i) letters.push_back(l);
    std::size_t cur = t.src;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      bool last = i + 1 == letters.size();
      std::size_t nxt = last ? t.dst : out.add_state("_x" + std::to_string(fresh++), false);
      Transition step;
      step.src = cur;
      step.dst = nxt;
      step.label.pairs.emplace_back(letters[i], Int(1));
      step.update = i == 0 ? t.update : std::vector<Int>(v.dim, Int(0));
      out.transitions.push_back(std::move(step));
      cur = nxt;
    }
  }
  out.validate();
  return out;
}

Vass dyck_vass(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::Arity, "Dyck language needs n >= 1");
  Vass v;
  v.dim = n;
  v.alphabet = dyck_alphabet(n);
  v.add_state("q0", true);
  v.init = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Transition plus{0, {}, std::vector<Int>(n, Int(0)), 0};
    plus.label.pairs.emplace_back(2 * i, Int(1));
    plus.update[i] = 1;
    v.transitions.push_back(std::move(plus));
    Transition minus{0, {}, std::vector<Int>(n, Int(0)), 0};
    minus.label.pairs.emplace_back(2 * i + 1, Int(1));
    minus.update[i] = -1;
    v.transitions.push_back(std::move(minus));
  }
  return v;
}

std::vector<Int> label_balance(const Vass& v, const Label& lab, std::size_t n) {
  std::vector<Int> ext(n, Int(0));
  for (const auto& [l, k] : lab.pairs) {
    long code = dyck_letter_code(v.alphabet[l]);
    if (code == 0 || static_cast<std::size_t>(std::abs(code)) > n)
      throw Error(ErrorCode::AlphabetMismatch, "letter " + v.alphabet[l] + " is not Dyck");
    if (code > 0)
      ext[code - 1] += k;
    else
      ext[-code - 1] -= k;
  }
  return ext;
}

Vass product_dyck(const Vass& v) {
  auto n = dyck_arity(v);
  if (!n.has_value())
    throw Error(ErrorCode::AlphabetMismatch, "alphabet is not a Dyck alphabet");
  Vass out = v;
  out.dim = v.dim + *n;
  out.transitions.clear();
  for (const auto& t : v.transitions) {
    Transition p = t;
    auto ext = label_balance(v, t.label, *n);
    p.update.insert(p.update.end(), ext.begin(), ext.end());
    out.transitions.push_back(std::move(p));
  }
  out.validate();
  return out;
}

PathEffect path_effect(const Vass& v, const std::vector<std::size_t>& path) {
  PathEffect e;
  e.internal.assign(v.dim, Int(0));
  auto n = dyck_arity(v);
  e.external.assign(n.value_or(0), Int(0));
  std::size_t prev_dst = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= v.transitions.size())
      throw Error(ErrorCode::SemanticError, "path references unknown transition");
    const auto& t = v.transitions[path[i]];
    if (i > 0 && t.src != prev_dst)
      throw Error(ErrorCode::DisconnectedPath, "path is not connected at step " + std::to_string(i));
    prev_dst = t.dst;
    for (std::size_t j = 0; j < v.dim; ++j) e.internal[j] += t.update[j];
    if (n.has_value()) {
      auto ext = label_balance(v, t.label, *n);
      for (std::size_t j = 0; j < *n; ++j) e.external[j] += ext[j];
    }
  }
  return e;
}

std::set<std::size_t> ExtConfig::omega_set() const {
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].omega) s.insert(i);
  return s;
}

std::string ExtConfig::str(const Vass& v) const {
  std::string s = v.states[state] + ":(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i].str();
  }
  return s + ")";
}

ExtConfig parse_target(const Vass& v, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::ParseError, "target must look like q1:(3,w,0)");
  std::string state = spec.substr(0, colon);
  ExtConfig c;
  c.state = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < v.states.size(); ++i)
    if (v.states[i] == state) c.state = i;
  if (c.state == static_cast<std::size_t>(-1))
    throw Error(ErrorCode::SemanticError, "unknown state '" + state + "'");
  std::string vec = spec.substr(colon + 1);
  if (vec.size() < 2 || vec.front() != '(' || vec.back() != ')')
    throw Error(ErrorCode::ParseError, "target vector must be parenthesized");
  std::string inner = vec.substr(1, vec.size() - 2);
  std::size_t start = 0;
  if (!inner.empty()) {
    while (true) {
      auto comma = inner.find(',', start);
      std::string tok =
          inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (tok == "w" || tok == "omega")
        c.values.push_back(ExtValue::omega_v());
      else
        c.values.push_back(ExtValue::of(int_from_string(tok)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (c.values.size() != v.dim)
    throw Error(ErrorCode::SemanticError, "target arity does not match dim");
  return c;
}

RunReport check_run(const Vass& v, const ExtConfig& start, const std::vector<std::size_t>& path,
                    const std::optional<std::set<std::size_t>>& watched) {
  if (start.values.size() != v.dim)
    throw Error(ErrorCode::Arity, "start configuration arity mismatch");
  RunReport rep;
  ExtConfig cur = start;
  std::size_t prev = start.state;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& t = v.transitions.at(path[i]);
    if (t.src != prev) throw Error(ErrorCode::DisconnectedPath, "run path mismatch");
    for (std::size_t j = 0; j < v.dim; ++j) {
      cur.values[j] = cur.values[j].plus(t.update[j]);
      bool watch = !watched.has_value() || watched->count(j) > 0;
      if (rep.ok && watch && !cur.values[j].omega && sgn(cur.values[j].value) < 0) {
        rep.ok = false;
        rep.violation_step = i + 1;
        rep.violation_counter = j;
      }
    }
    cur.state = t.dst;
    prev = t.dst;
  }
  rep.final_config = cur;
  return rep;
}

namespace {

enum Owed : std::size_t { kOwe1 = 0, kOwe2 = 1, kHit = 2 };

}  // namespace

Vass reduce(const Vass& v1, const Vass& v2) {
  if (v1.alphabet != v2.alphabet)
    throw Error(ErrorCode::AlphabetMismatch, "inputs must share one alphabet");
  std::size_t n = v2.dim;
  if (n < 1) throw Error(ErrorCode::Arity, "dim(V2) must be >= 1");
  for (const Vass* v : {&v1, &v2})
    for (const auto& t : v->transitions)
      if (!(t.label.is_epsilon() || (t.label.pairs.size() == 1 && t.label.pairs[0].second == 1)))
        throw Error(ErrorCode::Arity, "reduce inputs need single-letter or epsilon labels");

  Vass out;
  out.dim = v1.dim;
  out.alphabet = dyck_alphabet(n);

  // Emitted label for one V2 update: positives then negatives, index order;
  // the neutral pair pads emissions that would otherwise be empty.
  auto emit = [&](const std::vector<Int>& z) {
    Label lab;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(z[i]) > 0) lab.pairs.emplace_back(2 * i, z[i]);
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(z[i]) < 0) lab.pairs.emplace_back(2 * i + 1, -z[i]);
    if (lab.pairs.empty()) {
      lab.pairs.emplace_back(0, Int(1));
      lab.pairs.emplace_back(1, Int(1));
    }
    return lab;
  };

  auto flag_after = [&](std::size_t flag, bool v1_moved_to_final, bool v2_moved_to_final) {
    if (flag == kHit) flag = kOwe1;
    if (flag == kOwe1) return v1_moved_to_final ? kOwe2 : kOwe1;
    return v2_moved_to_final ? kHit : kOwe2;
  };

  auto id_of = [&](std::size_t p, std::size_t q, std::size_t f) {
    return (p * v2.states.size() + q) * 3 + f;
  };
  for (std::size_t p = 0; p < v1.states.size(); ++p)
    for (std::size_t q = 0; q < v2.states.size(); ++q)
      for (std::size_t f = 0; f < 3; ++f)
        out.add_state(v1.states[p] + "*" + v2.states[q] + "*" + std::to_string(f), f == kHit);
  out.init = id_of(v1.init, v2.init, kOwe1);

  std::vector<Int> zero_z(n, Int(0));
  for (std::size_t p = 0; p < v1.states.size(); ++p) {
    for (std::size_t q = 0; q < v2.states.size(); ++q) {
      for (std::size_t f = 0; f < 3; ++f) {
        // V1 moves alone on its epsilon transitions.
        for (const auto& t1 : v1.transitions) {
          if (t1.src != p || !t1.label.is_epsilon()) continue;
          Transition t;
          t.src = id_of(p, q, f);
          t.dst = id_of(t1.dst, q, flag_after(f, v1.final_state[t1.dst], false));
          t.update = t1.update;
          t.label = emit(zero_z);
          out.transitions.push_back(std::move(t));
        }
        // V2 moves alone on its epsilon transitions.
        for (const auto& t2 : v2.transitions) {
          if (t2.src != q || !t2.label.is_epsilon()) continue;
          Transition t;
          t.src = id_of(p, q, f);
          t.dst = id_of(p, t2.dst, flag_after(f, false, v2.final_state[t2.dst]));
          t.update = std::vector<Int>(v1.dim, Int(0));
          t.label = emit(t2.update);
          out.transitions.push_back(std::move(t));
        }
        // Letter moves synchronize.
        for (const auto& t1 : v1.transitions) {
          if (t1.src != p || t1.label.is_epsilon()) continue;
          for (const auto& t2 : v2.transitions) {
            if (t2.src != q || t2.label.is_epsilon()) continue;
            if (t1.label.pairs[0].first != t2.label.pairs[0].first) continue;
            Transition t;
            t.src = id_of(p, q, f);
            t.dst = id_of(t1.dst, t2.dst,
                          flag_after(f, v1.final_state[t1.dst], v2.final_state[t2.dst]));
            t.update = t1.update;
            t.label = emit(t2.update);
            out.transitions.push_back(std::move(t));
          }
        }
      }
    }
  }
  out.validate();
  return out;
}

}  // namespace vsep
