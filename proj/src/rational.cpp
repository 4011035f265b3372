#include "vsep/rational.hpp"

#include <ostream>

namespace vsep {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::IndeterminateForm: return "INDETERMINATE_FORM";
    case ErrorCode::NotSquare: return "NOT_SQUARE";
    case ErrorCode::ZeroPolynomial: return "ZERO_POLYNOMIAL";
    case ErrorCode::DimensionLimit: return "DIMENSION_LIMIT";
    case ErrorCode::FmBlowup: return "FM_BLOWUP";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::SemanticError: return "SEMANTIC_ERROR";
    case ErrorCode::AlphabetMismatch: return "ALPHABET_MISMATCH";
    case ErrorCode::Arity: return "ARITY";
    case ErrorCode::DisconnectedPath: return "DISCONNECTED_PATH";
    case ErrorCode::NodeCapExceeded: return "NODE_CAP_EXCEEDED";
    case ErrorCode::CycleCapExceeded: return "CYCLE_CAP_EXCEEDED";
    case ErrorCode::SubsetCapExceeded: return "SUBSET_CAP_EXCEEDED";
    case ErrorCode::BoundOverflow: return "BOUND_OVERFLOW";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Int int_from_string(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer literal");
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw Error(ErrorCode::ParseError, "bad integer literal '" + s + "'");
  return v;
}

std::string int_to_string(const Int& v) { return v.get_str(); }

Rational::Rational(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw Error(ErrorCode::IndeterminateForm, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw Error(ErrorCode::IndeterminateForm, "division by zero");
  return Rational(mpq_class(q_ / o.q_));
}

Int Rational::floor() const {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return r;
}

Int Rational::ceil() const {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return r;
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rat_min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational rat_max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

const Rational& ExtRational::finite() const {
  if (kind_ != Kind::Finite)
    throw Error(ErrorCode::IndeterminateForm, "infinite bound where a rational is required");
  return value_;
}

ExtRational ExtRational::operator+(const ExtRational& o) const {
  if (kind_ == Kind::Finite && o.kind_ == Kind::Finite) return ExtRational(value_ + o.value_);
  if (kind_ == Kind::Finite) return o;
  if (o.kind_ == Kind::Finite) return *this;
  if (kind_ != o.kind_)
    throw Error(ErrorCode::IndeterminateForm, "POS_INF + NEG_INF");
  return *this;
}

ExtRational ExtRational::operator*(const ExtRational& o) const {
  if (kind_ == Kind::Finite && o.kind_ == Kind::Finite) return ExtRational(value_ * o.value_);
  // sign rules; 0 * inf is as indeterminate as inf - inf
  int sa = kind_ == Kind::Finite ? value_.sign() : (kind_ == Kind::PosInf ? 1 : -1);
  int sb = o.kind_ == Kind::Finite ? o.value_.sign() : (o.kind_ == Kind::PosInf ? 1 : -1);
  if (sa == 0 || sb == 0) throw Error(ErrorCode::IndeterminateForm, "0 * infinity");
  return sa * sb > 0 ? pos_inf() : neg_inf();
}

ExtRational ExtRational::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return ExtRational(-value_);
  }
}

int ExtRational::compare(const ExtRational& o) const {
  auto rank = [](Kind k) { return k == Kind::NegInf ? -1 : (k == Kind::PosInf ? 1 : 0); };
  int ra = rank(kind_), rb = rank(o.kind_);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (kind_ != Kind::Finite) return 0;
  if (value_ < o.value_) return -1;
  if (value_ == o.value_) return 0;
  return 1;
}

std::string ExtRational::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return value_.str();
  }
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

Int common_denominator(const std::vector<Rational>& v) {
  Int l = 1;
  for (const auto& r : v) {
    Int d = r.denominator();
    Int g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

// Stern-Brocot descent: the minimal-denominator rational in [lo, hi].
Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error(ErrorCode::Internal, "empty interval in simplest_in_interval");
  Int c = lo.ceil();
  if (Rational(c) <= hi) {
    // An integer fits. Prefer 0, else the one closest to 0.
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    return lo.sign() > 0 ? Rational(c) : Rational(hi.floor());
  }
  Int f = lo.floor();
  // Both endpoints in (f, f+1); recurse on the reciprocal interval.
  Rational fl(f);
  Rational inner = simplest_in_interval(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
  return fl + Rational(1) / inner;
}

}  // namespace vsep
