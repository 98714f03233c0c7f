#include "solvlie/scalar.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "solvlie/errors.hpp"

namespace solvlie {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

// n = s^2 * core with core squarefree (n > 0).
void split_square(Integer n, Integer& s, Integer& core) {
  s = 1;
  core = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
    if (e % 2 == 1) core *= p;
  }
  core *= n;
}

}  // namespace

long squarefree_part(const Integer& n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "squarefree part of zero");
  Integer s, core;
  split_square(abs(n), s, core);
  if (!core.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "radicand too large");
  long c = core.get_si();
  return sgn(n) < 0 ? -c : c;
}

bool is_squarefree(long d) { return d != 0 && squarefree_part(Integer(d)) == d; }

// ---------------------------------------------------------------- Quad

Quad::Quad(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) == 0) {
    d_ = 0;
    return;
  }
  if (d == 1 || !is_squarefree(d))
    throw Error(ErrorKind::InvalidArgument, "radicand must be squarefree and not 0 or 1");
}

Quad Quad::sqrt_of(const Rational& r) {
  if (sgn(r) == 0) return Quad();
  Integer uv = r.get_num() * r.get_den();
  Integer s, core;
  split_square(abs(uv), s, core);
  Rational coeff(s, r.get_den());
  coeff.canonicalize();
  long d = core.get_si() * (sgn(uv) < 0 ? -1 : 1);
  if (d == 1) return Quad(coeff);
  return Quad(Rational(0), coeff, d);
}

long Quad::common_radicand(const Quad& x, const Quad& y) {
  if (x.d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
  throw Error(ErrorKind::IncompatibleRadicands,
              "sqrt(" + std::to_string(x.d_) + ") mixed with sqrt(" + std::to_string(y.d_) + ")");
}

Quad Quad::operator-() const {
  Quad r;
  r.a_ = -a_;
  r.b_ = -b_;
  r.d_ = d_;
  return r;
}

Quad Quad::operator+(const Quad& o) const {
  long d = common_radicand(*this, o);
  if (d == 0) return Quad(Rational(a_ + o.a_));
  return Quad(a_ + o.a_, b_ + o.b_, d);
}

Quad Quad::operator-(const Quad& o) const { return *this + (-o); }

Quad Quad::operator*(const Quad& o) const {
  long d = common_radicand(*this, o);
  if (d == 0) return Quad(Rational(a_ * o.a_));
  return Quad(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

Rational Quad::norm() const { return a_ * a_ - b_ * b_ * d_; }

Quad Quad::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (d_ == 0) return Quad(Rational(1 / a_));
  Rational n = norm();
  return Quad(a_ / n, -b_ / n, d_);
}

Quad Quad::operator/(const Quad& o) const {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (d_ == 0 && o.d_ == 0) return Quad(Rational(a_ / o.a_));
  return *this * o.inverse();
}

Quad Quad::conjugate() const {
  if (d_ == 0) return *this;
  return Quad(a_, -b_, d_);
}

int Quad::sign() const {
  if (d_ < 0) throw Error(ErrorKind::NotRealValued, to_string() + " is not real");
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 d
  Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

std::string Quad::to_string() const {
  if (d_ == 0) return a_.get_str();
  std::string root = "sqrt(" + std::to_string(d_) + ")";
  auto b_part = [&](const Rational& b) {
    if (b == 1) return root;
    return b.get_str() + "*" + root;
  };
  if (sgn(a_) == 0) return b_ == -1 ? "-" + root : b_part(b_);
  if (sgn(b_) < 0) return a_.get_str() + " - " + b_part(Rational(-b_));
  return a_.get_str() + " + " + b_part(b_);
}

// ---------------------------------------------------------------- Monomials

bool MonomialGreater::operator()(const Monomial& a, const Monomial& b) const {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) return true;
    if (i == a.size()) return false;
    if (a[i].first == b[j].first) {
      if (a[i].second != b[j].second) return a[i].second > b[j].second;
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      return true;  // a has an earlier variable that b lacks
    } else {
      return false;
    }
  }
  return false;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0;
  for (const auto& [v, e] : b) {
    while (i < a.size() && a[i].first < v) r.push_back(a[i++]);
    if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(v, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

std::string mono_string(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(const Quad& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(const std::string& name) { return monomial(Monomial{{name, 1u}}, Quad(1)); }

Poly Poly::monomial(const Monomial& m, const Quad& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Quad& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Quad Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Quad() : it->second;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vs.insert(v);
  return vs;
}

unsigned Poly::degree(const std::string& var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (v == var) d = std::max(d, e);
  return d;
}

std::vector<Poly> Poly::coefficients_in(const std::string& var) const {
  std::vector<Poly> out(degree(var) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& ve : m) {
      if (ve.first == var)
        e = ve.second;
      else
        rest.push_back(ve);
    }
    out[e].add_term(rest, c);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
  return r;
}

Poly Poly::scaled(const Quad& c) const {
  if (c.is_zero()) return Poly();
  Poly r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(Quad(1));
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::optional<Poly> Poly::try_divide(const Poly& o) const {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly q, r = *this;
  const auto& [lm, lc] = *o.terms_.begin();
  while (!r.is_zero()) {
    const auto& [rm, rc] = *r.terms_.begin();
    auto m = mono_div(rm, lm);
    if (!m) return std::nullopt;
    Poly t = monomial(*m, rc / lc);
    q = q + t;
    r = r - t * o;
  }
  return q;
}

Poly Poly::exact_divide(const Poly& o) const {
  auto q = try_divide(o);
  if (!q) throw Error(ErrorKind::Internal, "inexact polynomial division");
  return *q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_coefficient().inverse());
}

Poly Poly::conjugate() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conjugate());
  return r;
}

Quad Poly::evaluate(const std::map<std::string, Quad>& values) const {
  Quad sum;
  for (const auto& [m, c] : terms_) {
    Quad t = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw Error(ErrorKind::InvalidArgument, "no value for parameter " + v);
      for (unsigned i = 0; i < e; ++i) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

long Poly::radicand() const {
  long d = 0;
  for (const auto& [m, c] : terms_)
    if (c.radicand() != 0) d = c.radicand();
  return d;
}

namespace {

Poly prem(const Poly& a, const Poly& b, const std::string& var) {
  auto bc = b.coefficients_in(var);
  unsigned db = static_cast<unsigned>(bc.size() - 1);
  const Poly& lcb = bc.back();
  Poly r = a;
  unsigned da = a.degree(var);
  int e = static_cast<int>(da) - static_cast<int>(db) + 1;
  Poly x = Poly::variable(var);
  while (!r.is_zero() && r.degree(var) >= db) {
    auto rc = r.coefficients_in(var);
    unsigned dr = static_cast<unsigned>(rc.size() - 1);
    r = lcb * r - rc.back() * x.pow(dr - db) * b;
    --e;
  }
  for (int i = 0; i < e; ++i) r = lcb * r;
  return r;
}

Poly content_in(const Poly& p, const std::string& var) {
  Poly g;
  for (const auto& c : p.coefficients_in(var)) {
    g = Poly::gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly(Quad(1));
  }
  return g;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(Quad(1));
  auto va = a.variables(), vb = b.variables();
  std::set<std::string> all = va;
  all.insert(vb.begin(), vb.end());
  const std::string var = *all.begin();

  Poly ca = content_in(a, var), cb = content_in(b, var);
  Poly c = gcd(ca, cb);
  Poly pa = a.exact_divide(ca), pb = b.exact_divide(cb);
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
  Poly g;
  if (pb.degree(var) == 0) {
    g = Poly(Quad(1));
  } else {
    while (true) {
      Poly r = prem(pa, pb, var);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree(var) == 0) {
        g = Poly(Quad(1));
        break;
      }
      pa = pb;
      pb = r.exact_divide(content_in(r, var));
    }
  }
  return (c * g).monic();
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool negative = false;
    Quad cc = c;
    if (cc.is_rational() && sgn(cc.a()) < 0) {
      negative = true;
      cc = -cc;
    }
    if (m.empty()) {
      coeff = cc.is_rational() ? cc.to_string() : "(" + cc.to_string() + ")";
    } else if (cc.is_one()) {
      coeff = mono_string(m);
    } else {
      coeff = (cc.is_rational() ? cc.to_string() : "(" + cc.to_string() + ")") + "*" + mono_string(m);
    }
    if (first)
      s = negative ? "-" + coeff : coeff;
    else
      s += (negative ? " - " : " + ") + coeff;
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize(); }

void Scalar::normalize() {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(Quad(1));
    return;
  }
  if (den_.is_constant()) {
    Quad c = den_.constant();
    if (!c.is_one()) num_ = num_.scaled(c.inverse());
    den_ = Poly(Quad(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = num_.exact_divide(g);
    den_ = den_.exact_divide(g);
  }
  Quad lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    Quad inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (den_.is_constant()) den_ = Poly(Quad(1));
}

bool Scalar::is_rational() const { return is_constant() && constant().is_rational(); }

Quad Scalar::constant() const {
  if (!is_constant()) throw Error(ErrorKind::ParameterizedEntriesUnsupported, "value depends on parameters: " + to_string());
  return num_.constant();
}

Rational Scalar::rational_value() const {
  Quad q = constant();
  if (!q.is_rational()) throw Error(ErrorKind::InvalidArgument, "value is not rational: " + to_string());
  return q.a();
}

std::set<std::string> Scalar::params() const {
  auto s = num_.variables();
  auto d = den_.variables();
  s.insert(d.begin(), d.end());
  return s;
}

bool Scalar::depends_on(const std::string& name) const { return num_.degree(name) > 0 || den_.degree(name) > 0; }

long Scalar::radicand() const {
  long d = num_.radicand();
  return d != 0 ? d : den_.radicand();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -num_;
  return r;
}

namespace {
bool den_is_one(const Poly& d) { return d.is_constant() && d.constant().is_one(); }
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  if (den_is_one(den_) && den_is_one(o.den_)) return Scalar(num_ + o.num_);
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (den_is_one(den_) && den_is_one(o.den_)) return Scalar(num_ * o.num_);
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (o.is_constant() && den_is_one(den_)) return Scalar(num_.scaled(o.constant().inverse()));
  return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::pow(int e) const {
  Scalar base = e < 0 ? Scalar(1) / *this : *this;
  Scalar r(1);
  for (int i = 0; i < std::abs(e); ++i) r *= base;
  return r;
}

Scalar Scalar::conjugate() const { return Scalar(num_.conjugate(), den_.conjugate()); }

namespace {

Scalar eval_poly(const Poly& p, const std::function<Scalar(const std::string&)>& value_of) {
  Scalar sum;
  for (const auto& [m, c] : p.terms()) {
    Scalar t(c);
    for (const auto& [v, e] : m) t *= value_of(v).pow(static_cast<int>(e));
    sum += t;
  }
  return sum;
}

}  // namespace

Scalar Scalar::substitute(const std::map<std::string, Scalar>& values) const {
  bool touched = false;
  for (const auto& p : params())
    if (values.count(p)) touched = true;
  if (!touched) return *this;
  auto value_of = [&](const std::string& v) {
    auto it = values.find(v);
    return it == values.end() ? Scalar::param(v) : it->second;
  };
  Scalar n = eval_poly(num_, value_of);
  Scalar d = eval_poly(den_, value_of);
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator of " + to_string() + " vanishes");
  return n / d;
}

Scalar Scalar::substitute(const std::string& name, const Scalar& value) const {
  return substitute(std::map<std::string, Scalar>{{name, value}});
}

std::optional<std::vector<Scalar>> Scalar::coefficients_in(const std::string& name) const {
  if (den_.degree(name) > 0) return std::nullopt;
  std::vector<Scalar> out;
  for (const auto& c : num_.coefficients_in(name)) out.push_back(Scalar(c, den_));
  return out;
}

std::string Scalar::to_string() const {
  if (den_is_one(den_)) return num_.to_string();
  auto wrap = [](const Poly& p) {
    std::string s = p.to_string();
    if (p.terms().size() > 1 || (p.terms().size() == 1 && !p.leading_coefficient().is_rational()) ||
        (p.terms().size() == 1 && !p.leading_coefficient().is_one() && !p.leading_monomial().empty()))
      return "(" + s + ")";
    return s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---------------------------------------------------------------- conditions and signs

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Unknown: return "unknown";
  }
  return "unknown";
}

std::set<std::string> Condition::params() const {
  std::set<std::string> s;
  for (const auto& e : exprs) {
    auto p = e.params();
    s.insert(p.begin(), p.end());
  }
  return s;
}

std::string Condition::to_string() const {
  switch (rel) {
    case Rel::NonZero: return exprs[0].to_string() + " != 0";
    case Rel::Positive: return exprs[0].to_string() + " > 0";
    case Rel::Negative: return exprs[0].to_string() + " < 0";
    case Rel::Zero: return exprs[0].to_string() + " = 0";
    case Rel::NotAllZero: {
      std::string s = "not all zero(";
      for (std::size_t i = 0; i < exprs.size(); ++i) s += (i ? ", " : "") + exprs[i].to_string();
      return s + ")";
    }
  }
  return "";
}

std::string to_string(const Conditions& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i].to_string();
  return s;
}

Conditions canonical_conditions(Conditions cs) {
  std::sort(cs.begin(), cs.end(), [](const Condition& a, const Condition& b) { return a.to_string() < b.to_string(); });
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

namespace {

// Tri-state-plus sign facts about a term.
enum class Fact { Pos, Neg, NonNeg, NonPos, Unknown };

Fact flip(Fact f) {
  switch (f) {
    case Fact::Pos: return Fact::Neg;
    case Fact::Neg: return Fact::Pos;
    case Fact::NonNeg: return Fact::NonPos;
    case Fact::NonPos: return Fact::NonNeg;
    default: return Fact::Unknown;
  }
}

// What the assumptions say about a single parameter.
Sign param_sign(const std::string& v, const Conditions& as, bool& nonzero) {
  Scalar x = Scalar::param(v);
  nonzero = false;
  for (const auto& c : as) {
    if (c.exprs.size() != 1) continue;
    const Scalar& e = c.exprs[0];
    int orient = 0;
    if (e == x) orient = 1;
    else if (e == -x) orient = -1;
    if (orient == 0) continue;
    switch (c.rel) {
      case Condition::Rel::Positive: return orient > 0 ? Sign::Positive : Sign::Negative;
      case Condition::Rel::Negative: return orient > 0 ? Sign::Negative : Sign::Positive;
      case Condition::Rel::Zero: return Sign::Zero;
      case Condition::Rel::NonZero: nonzero = true; break;
      default: break;
    }
  }
  return Sign::Unknown;
}

Sign poly_sign(const Poly& p, const Conditions& as) {
  if (p.is_zero()) return Sign::Zero;
  bool any_strict = false, pos = true, neg = true;
  for (const auto& [m, c] : p.terms()) {
    int cs = c.sign();
    Fact f = cs > 0 ? Fact::Pos : Fact::Neg;
    for (const auto& [v, e] : m) {
      bool nz = false;
      Sign s = param_sign(v, as, nz);
      if (s == Sign::Zero) return Sign::Unknown;  // caller should have substituted
      Fact vf;
      if (e % 2 == 0)
        vf = (s != Sign::Unknown || nz) ? Fact::Pos : Fact::NonNeg;
      else if (s == Sign::Positive)
        vf = Fact::Pos;
      else if (s == Sign::Negative)
        vf = Fact::Neg;
      else
        vf = Fact::Unknown;
      // combine f * vf
      if (f == Fact::Unknown || vf == Fact::Unknown) {
        f = Fact::Unknown;
      } else {
        bool fneg = (f == Fact::Neg || f == Fact::NonPos);
        bool vneg = (vf == Fact::Neg || vf == Fact::NonPos);
        bool strict = (f == Fact::Pos || f == Fact::Neg) && (vf == Fact::Pos || vf == Fact::Neg);
        bool n = fneg != vneg;
        f = strict ? (n ? Fact::Neg : Fact::Pos) : (n ? Fact::NonPos : Fact::NonNeg);
      }
    }
    if (f == Fact::Unknown) return Sign::Unknown;
    if (f == Fact::Pos || f == Fact::Neg) any_strict = true;
    if (f == Fact::Neg || f == Fact::NonPos) pos = false;
    if (f == Fact::Pos || f == Fact::NonNeg) neg = false;
  }
  (void)flip;
  if (!any_strict) return Sign::Unknown;
  if (pos) return Sign::Positive;
  if (neg) return Sign::Negative;
  return Sign::Unknown;
}

Sign mul_sign(Sign a, Sign b) {
  if (a == Sign::Unknown || b == Sign::Unknown) return Sign::Unknown;
  if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
  return (a == b) ? Sign::Positive : Sign::Negative;
}

}  // namespace

Sign sign_of(const Scalar& x, const Conditions& assumptions) {
  if (x.radicand() < 0) throw Error(ErrorKind::NotRealValued, x.to_string() + " is not real-valued");
  if (x.is_zero()) return Sign::Zero;
  if (x.is_constant()) return x.constant().sign() > 0 ? Sign::Positive : Sign::Negative;
  // Direct assumptions on x itself.
  for (const auto& c : assumptions) {
    if (c.exprs.size() != 1) continue;
    int orient = c.exprs[0] == x ? 1 : (c.exprs[0] == -x ? -1 : 0);
    if (orient == 0) continue;
    if (c.rel == Condition::Rel::Positive) return orient > 0 ? Sign::Positive : Sign::Negative;
    if (c.rel == Condition::Rel::Negative) return orient > 0 ? Sign::Negative : Sign::Positive;
    if (c.rel == Condition::Rel::Zero) return Sign::Zero;
  }
  return mul_sign(poly_sign(x.numerator(), assumptions), poly_sign(x.denominator(), assumptions));
}

bool entails_nonzero(const Scalar& x, const Conditions& assumptions) {
  if (x.is_zero()) return false;
  if (x.is_constant()) return true;
  if (x.radicand() >= 0) {
    Sign s = sign_of(x, assumptions);
    if (s == Sign::Positive || s == Sign::Negative) return true;
  }
  // Strip factors known to be nonzero from the numerator.
  std::vector<Poly> known;
  for (const auto& c : assumptions) {
    if (c.exprs.size() != 1) continue;
    if (c.rel == Condition::Rel::NonZero || c.rel == Condition::Rel::Positive || c.rel == Condition::Rel::Negative)
      if (!c.exprs[0].numerator().is_constant()) known.push_back(c.exprs[0].numerator());
  }
  Poly rest = x.numerator();
  bool changed = true;
  while (changed && !rest.is_constant()) {
    changed = false;
    for (const auto& k : known) {
      if (auto q = rest.try_divide(k)) {
        rest = *q;
        changed = true;
        if (rest.is_constant()) break;
      }
    }
  }
  return rest.is_constant() && !rest.is_zero();
}

Scalar evaluate_at(const Scalar& x, const std::map<std::string, Rational>& bindings) {
  std::map<std::string, Quad> vals;
  for (const auto& p : x.params()) {
    auto it = bindings.find(p);
    if (it == bindings.end()) throw Error(ErrorKind::InvalidArgument, "no binding for parameter " + p);
    vals.emplace(p, Quad(it->second));
  }
  Quad d = x.denominator().evaluate(vals);
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator of " + x.to_string() + " vanishes");
  return Scalar(x.numerator().evaluate(vals) / d);
}

}  // namespace solvlie
