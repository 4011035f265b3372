#include "vsep/poly.hpp"

#include <algorithm>
#include <sstream>

namespace vsep {

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void IntPoly::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

IntPoly IntPoly::constant(const Int& c) {
  IntPoly p;
  if (sgn(c) != 0) p.coeffs_.push_back(c);
  return p;
}

IntPoly IntPoly::monomial(const Int& c, std::size_t degree) {
  IntPoly p;
  if (sgn(c) != 0) {
    p.coeffs_.assign(degree + 1, Int(0));
    p.coeffs_[degree] = c;
  }
  return p;
}

const Int& IntPoly::leading() const {
  static const Int kZero(0);
  return coeffs_.empty() ? kZero : coeffs_.back();
}

Int IntPoly::max_coeff() const {
  if (coeffs_.empty()) return 1;
  Int m = 0;
  for (const auto& c : coeffs_) {
    Int a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

Int IntPoly::l1_norm() const {
  if (coeffs_.empty()) return 1;
  Int s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(coeffs_.size(), o.coeffs_.size()), Int(0));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> r(coeffs_.size() + o.coeffs_.size() - 1, Int(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& c) const {
  if (sgn(c) == 0) return IntPoly();
  IntPoly r = *this;
  for (auto& a : r.coeffs_) a *= c;
  return r;
}

Rational IntPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + Rational(*it);
  return acc;
}

Int IntPoly::eval_int(const Int& t) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return IntPoly();
  std::vector<Int> r(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * Int(i);
  return IntPoly(std::move(r));
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  Int g = content();
  if (sgn(leading()) < 0) g = -g;
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c /= g;
  return r;
}

IntPoly IntPoly::divide_exact(const IntPoly& o) const {
  if (o.is_zero()) throw Error(ErrorCode::Internal, "exact division by zero polynomial");
  if (is_zero()) return IntPoly();
  if (degree() < o.degree()) throw Error(ErrorCode::Internal, "inexact polynomial division");
  std::vector<Int> rem = coeffs_;
  std::vector<Int> quo(degree() - o.degree() + 1, Int(0));
  for (std::size_t k = quo.size(); k-- > 0;) {
    Int num = rem[k + o.degree()];
    if (sgn(num) == 0) continue;
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), o.leading().get_mpz_t());
    if (sgn(r) != 0) throw Error(ErrorCode::Internal, "inexact polynomial division");
    quo[k] = q;
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) rem[k + i] -= q * o.coeffs_[i];
  }
  for (const auto& c : rem)
    if (sgn(c) != 0) throw Error(ErrorCode::Internal, "inexact polynomial division");
  return IntPoly(std::move(quo));
}

std::vector<std::string> IntPoly::to_strings() const {
  std::vector<std::string> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(c.get_str());
  return v;
}

IntPoly IntPoly::from_strings(const std::vector<std::string>& v) {
  std::vector<Int> c;
  c.reserve(v.size());
  for (const auto& s : v) c.push_back(int_from_string(s));
  return IntPoly(std::move(c));
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    Int a = abs(coeffs_[i]);
    if (first) {
      if (sgn(coeffs_[i]) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(coeffs_[i]) < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) {
      os << "x";
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Divide out |content| only: shrinks coefficients without touching signs.
IntPoly shrink_keep_sign(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int g = p.content();
  if (g == 1) return p;
  std::vector<Int> c = p.coeffs();
  for (auto& a : c) a /= g;
  return IntPoly(std::move(c));
}

// Pseudo-remainder of a by b scaled by an even power of lc(b), so the
// result is the true remainder times a positive factor.
IntPoly signed_prem(const IntPoly& a, const IntPoly& b) {
  if (a.degree() < b.degree()) throw Error(ErrorCode::Internal, "prem degree order");
  const Int& lc = b.leading();
  std::size_t steps = a.degree() - b.degree() + 1;
  if (steps % 2 == 1) ++steps;  // even power keeps the scaling positive
  IntPoly r = a;
  std::size_t mult_used = 0;
  while (!r.is_zero() && r.degree() >= b.degree() && !(r.degree() == 0 && b.degree() == 0)) {
    std::size_t k = r.degree() - b.degree();
    Int c = r.leading();
    r = r * lc - b * IntPoly::monomial(c, k);
    ++mult_used;
    if (b.degree() == 0) break;  // constant divisor: one step zeroes everything
  }
  for (; mult_used < steps; ++mult_used) r = r * lc;
  return r;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  while (!y.is_zero()) {
    if (x.degree() < y.degree()) { std::swap(x, y); continue; }
    if (y.degree() == 0) return IntPoly::constant(1);
    IntPoly r = signed_prem(x, y).primitive_part();
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return sgn(x.leading()) < 0 ? -x : x;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree part of zero");
  if (p.degree() == 0) return IntPoly::constant(1);
  IntPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.primitive_part();
  return p.primitive_part().divide_exact(g).primitive_part();
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Sturm chain of zero");
  std::vector<IntPoly> chain;
  // Fix the leading sign up front; the whole chain then derives from it,
  // so sign variations stay those of a genuine Sturm sequence.
  chain.push_back(p.primitive_part());
  if (p.degree() == 0) return chain;
  chain.push_back(shrink_keep_sign(chain[0].derivative()));
  while (chain.back().degree() > 0) {
    const IntPoly& s0 = chain[chain.size() - 2];
    const IntPoly& s1 = chain.back();
    IntPoly r = -signed_prem(s0, s1);
    if (r.is_zero()) break;
    chain.push_back(shrink_keep_sign(r));
  }
  return chain;
}

int sturm_variations(const std::vector<IntPoly>& chain, const Rational& t) {
  int var = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(t);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sturm_count(const std::vector<IntPoly>& chain, const Rational& a, const Rational& b) {
  if (a >= b) return 0;
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

}  // namespace vsep
