#pragma once

// Exact scalars: Q, one quadratic extension Q(sqrt d), and rational
// functions in named parameters over either.

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace solvlie {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);

// Squarefree part of a nonzero integer, sign kept: -12 -> -3.
long squarefree_part(const Integer& n);
bool is_squarefree(long d);

// a + b*sqrt(d). A value with b == 0 is stored with d == 0 so that equal
// values always have identical representations.
class Quad {
 public:
  Quad() = default;
  Quad(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  Quad(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Quad(Rational a, Rational b, long d);

  // Square root of a rational, as an element of Q or Q(sqrt d).
  static Quad sqrt_of(const Rational& r);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long radicand() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }
  bool is_rational() const { return d_ == 0; }
  bool is_real() const { return d_ >= 0; }

  Quad operator-() const;
  Quad operator+(const Quad& o) const;
  Quad operator-(const Quad& o) const;
  Quad operator*(const Quad& o) const;
  Quad operator/(const Quad& o) const;
  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }
  Quad& operator/=(const Quad& o) { return *this = *this / o; }

  bool operator==(const Quad& o) const { return d_ == o.d_ && a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Quad& o) const { return !(*this == o); }

  Quad conjugate() const;
  Quad inverse() const;
  // -1, 0, +1; throws NotRealValued when d < 0.
  int sign() const;
  // Norm a^2 - d b^2.
  Rational norm() const;

  std::string to_string() const;

 private:
  static long common_radicand(const Quad& x, const Quad& y);

  Rational a_;
  Rational b_;
  long d_ = 0;
};

// Sorted (by name) list of (variable, exponent > 0).
using Monomial = std::vector<std::pair<std::string, unsigned>>;

// Lex order with variables compared alphabetically; true when a > b.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Quad, MonomialGreater>;

  Poly() = default;
  Poly(const Quad& c);  // NOLINT(google-explicit-constructor)
  static Poly variable(const std::string& name);
  static Poly monomial(const Monomial& m, const Quad& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Quad constant_term() const;
  // Only meaningful when is_constant().
  Quad constant() const { return constant_term(); }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Quad& leading_coefficient() const { return terms_.begin()->second; }

  std::set<std::string> variables() const;
  unsigned degree(const std::string& var) const;
  // Coefficients of powers of var (dense, ascending).
  std::vector<Poly> coefficients_in(const std::string& var) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Quad& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Exact division; throws Internal when o does not divide *this.
  Poly exact_divide(const Poly& o) const;
  std::optional<Poly> try_divide(const Poly& o) const;
  Poly monic() const;
  Poly conjugate() const;
  Quad evaluate(const std::map<std::string, Quad>& values) const;
  // Radicand shared by all coefficients (0 if all rational).
  long radicand() const;

  static Poly gcd(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Quad& c);
  Terms terms_;
};

// Canonical rational function num/den: gcd(num, den) = 1 and den monic in
// lex order. Parameter-free values have den == 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : num_(Quad(n)) {}                // NOLINT(google-explicit-constructor)
  Scalar(const Rational& q) : num_(Quad(q)) {}     // NOLINT(google-explicit-constructor)
  Scalar(const Quad& q) : num_(q) {}               // NOLINT(google-explicit-constructor)
  Scalar(const Poly& p) : num_(p) {}               // NOLINT(google-explicit-constructor)
  Scalar(const Poly& num, const Poly& den);
  static Scalar param(const std::string& name) { return Scalar(Poly::variable(name)); }
  static Scalar rational(long p, long q) { return Scalar(Rational(p, q)); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant().is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_rational() const;
  // Value when is_constant(); throws otherwise.
  Quad constant() const;
  Rational rational_value() const;
  std::set<std::string> params() const;
  bool depends_on(const std::string& name) const;
  long radicand() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar pow(int e) const;

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar conjugate() const;
  Scalar substitute(const std::string& name, const Scalar& value) const;
  Scalar substitute(const std::map<std::string, Scalar>& values) const;
  // Coefficients of the numerator as a polynomial in name, each divided by
  // the denominator; nullopt when the denominator depends on name.
  std::optional<std::vector<Scalar>> coefficients_in(const std::string& name) const;

  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_{Quad(1)};
};

inline Scalar operator+(long a, const Scalar& b) { return Scalar(a) + b; }
inline Scalar operator-(long a, const Scalar& b) { return Scalar(a) - b; }
inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }
inline Scalar operator/(long a, const Scalar& b) { return Scalar(a) / b; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

enum class Sign { Positive, Negative, Zero, Unknown };
const char* sign_name(Sign s);

// Conditions on parameters carried by subspaces, strata and classes.
struct Condition {
  enum class Rel { NonZero, Positive, Negative, Zero, NotAllZero };
  Rel rel;
  std::vector<Scalar> exprs;  // exactly one except for NotAllZero

  static Condition nonzero(Scalar s) { return {Rel::NonZero, {std::move(s)}}; }
  static Condition positive(Scalar s) { return {Rel::Positive, {std::move(s)}}; }
  static Condition negative(Scalar s) { return {Rel::Negative, {std::move(s)}}; }
  static Condition zero(Scalar s) { return {Rel::Zero, {std::move(s)}}; }

  std::set<std::string> params() const;
  bool operator==(const Condition& o) const { return rel == o.rel && exprs == o.exprs; }
  std::string to_string() const;
};

using Conditions = std::vector<Condition>;
std::string to_string(const Conditions& cs);
// Sorted, duplicate-free copy.
Conditions canonical_conditions(Conditions cs);

Sign sign_of(const Scalar& x, const Conditions& assumptions = {});
// True when x != 0 is entailed by the assumptions (or x is a nonzero constant).
bool entails_nonzero(const Scalar& x, const Conditions& assumptions = {});
Scalar evaluate_at(const Scalar& x, const std::map<std::string, Rational>& bindings);

}  // namespace solvlie
