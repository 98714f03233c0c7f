#include <algorithm>

#include "solvlie/errors.hpp"
#include "solvlie/linalg.hpp"

namespace solvlie {

Scalar UniPoly::evaluate(const Scalar& x) const {
  Scalar r;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (coeffs.empty() || o.coeffs.empty()) return {};
  UniPoly r;
  r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, Scalar());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs.size(); ++j) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
  return r;
}

std::string UniPoly::to_string(const std::string& var) const {
  Poly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].is_constant()) throw Error(ErrorKind::ParameterizedEntriesUnsupported, "parameterized polynomial");
    p += Poly::monomial(i ? Monomial{{var, static_cast<unsigned>(i)}} : Monomial{}, coeffs[i].constant());
  }
  return p.to_string();
}

UniPoly char_poly(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidArgument, "characteristic polynomial of non-square matrix");
  if (!a.is_parameter_free())
    throw Error(ErrorKind::ParameterizedEntriesUnsupported, "characteristic polynomial of a parameterized matrix");
  const std::size_t n = a.rows();
  UniPoly p;
  p.coeffs.assign(n + 1, Scalar());
  p.coeffs[n] = Scalar(1);
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += p.coeffs[n - k + 1];
    Matrix am = a * mk;
    Scalar tr;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    p.coeffs[n - k] = -tr / Scalar(static_cast<long>(k));
  }
  return p;
}

namespace {

using RPoly = std::vector<Rational>;  // ascending

void trim(RPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// p = q * d + r
void divmod(const RPoly& p, const RPoly& d, RPoly& q, RPoly& r) {
  r = p;
  trim(r);
  q.assign(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Rational(0));
  while (r.size() >= d.size() && !r.empty()) {
    std::size_t shift = r.size() - d.size();
    Rational f = r.back() / d.back();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
    trim(r);
  }
}

bool divides(const RPoly& d, const RPoly& p, RPoly& q) {
  RPoly r;
  divmod(p, d, q, r);
  return r.empty();
}

RPoly monic(const RPoly& p) {
  RPoly r = p;
  Rational l = p.back();
  for (auto& c : r) c /= l;
  return r;
}

// Integer multiple of p with coprime coefficients.
std::vector<Integer> primitive_integer(const RPoly& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& c : p) {
    Integer v = c.get_num() * (l / c.get_den());
    z.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g != 0)
    for (auto& v : z) v /= g;
  return z;
}

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rational eval(const RPoly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

std::optional<Rational> rational_root(const RPoly& p) {
  if (sgn(p[0]) == 0) return Rational(0);
  auto z = primitive_integer(p);
  auto ps = positive_divisors(z.front());
  auto qs = positive_divisors(z.back());
  std::vector<Rational> cands;
  for (const auto& a : ps)
    for (const auto& b : qs) {
      Rational r(a, b);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  for (const auto& r : cands)
    if (sgn(eval(p, r)) == 0) return r;
  return std::nullopt;
}

// Quadratic factor of p (degree >= 4, no rational roots) by Kronecker's method.
std::optional<RPoly> quadratic_factor(const RPoly& p) {
  auto z = primitive_integer(p);
  RPoly pz;
  for (const auto& v : z) pz.push_back(Rational(v));
  Rational v0 = eval(pz, 0), v1 = eval(pz, 1), vm = eval(pz, -1);
  auto with_signs = [](const Integer& n) {
    std::vector<Integer> out;
    for (const auto& d : positive_divisors(n)) {
      out.push_back(d);
      out.push_back(-d);
    }
    return out;
  };
  auto d0 = positive_divisors(v0.get_num());  // normalize sign via c > 0 or a > 0 below
  auto d1 = with_signs(v1.get_num());
  auto dm = with_signs(vm.get_num());
  for (const auto& c0 : d0)
    for (int s : {1, -1}) {
      Integer c = c0 * s;
      for (const auto& a1 : d1)
        for (const auto& am : dm) {
          Integer sum = a1 + am - 2 * c, diff = a1 - am;
          if (sum % 2 != 0 || diff % 2 != 0) continue;
          Integer a = sum / 2, b = diff / 2;
          if (a == 0) continue;
          RPoly g{Rational(c), Rational(b), Rational(a)};
          RPoly q;
          if (divides(g, pz, q)) return monic(g);
        }
    }
  return std::nullopt;
}

RPoly to_rpoly(const UniPoly& p) {
  RPoly r;
  for (const auto& c : p.coeffs) {
    if (!c.is_rational()) throw Error(ErrorKind::InvalidArgument, "polynomial coefficients are not rational");
    r.push_back(c.rational_value());
  }
  trim(r);
  return r;
}

UniPoly from_rpoly(const RPoly& r) {
  UniPoly p;
  for (const auto& c : r) p.coeffs.emplace_back(c);
  return p;
}

}  // namespace

Rational PolyFactor::discriminant() const {
  if (factor.degree() != 2) return Rational(0);
  Rational b = factor.coeffs[1].rational_value(), c = factor.coeffs[0].rational_value();
  return b * b - 4 * c;
}

std::vector<Quad> PolyFactor::roots() const {
  if (factor.degree() == 1) return {(-factor.coeffs[0]).constant()};
  Quad b = factor.coeffs[1].constant();
  Quad r = Quad::sqrt_of(discriminant());
  Quad half(Rational(1, 2));
  return {(-b + r) * half, (-b - r) * half};
}

std::vector<PolyFactor> factor_char_poly(const UniPoly& up) {
  RPoly p = to_rpoly(up);
  if (p.empty()) throw Error(ErrorKind::InvalidArgument, "factoring the zero polynomial");
  p = monic(p);
  std::vector<PolyFactor> out;
  auto take = [&](const RPoly& f) {
    PolyFactor pf{from_rpoly(f), 0};
    RPoly q;
    while (p.size() > 1 && divides(f, p, q)) {
      p = q;
      ++pf.multiplicity;
    }
    out.push_back(pf);
  };
  while (p.size() > 1) {
    auto r = rational_root(p);
    if (!r) break;
    take(RPoly{-*r, Rational(1)});
  }
  while (p.size() > 3) {
    auto g = quadratic_factor(p);
    if (!g) break;
    take(*g);
  }
  if (p.size() == 3) take(p);
  if (p.size() > 3)
    throw Error(ErrorKind::IrreducibleDegreeTooHigh,
                "irreducible factor of degree " + std::to_string(p.size() - 1) + " in " + up.to_string());
  std::stable_sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    if (a.factor.degree() == 1) return a.factor.coeffs[0].rational_value() > b.factor.coeffs[0].rational_value();
    return false;
  });
  return out;
}

namespace {

bool quad_less(const Quad& x, const Quad& y) {
  if (x.radicand() != y.radicand()) return x.radicand() == 0 || (y.radicand() != 0 && x.radicand() < y.radicand());
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() > y.b();
}

// Quad-coefficient synthetic division by (t - r); returns remainder.
Quad deflate(std::vector<Quad>& p, const Quad& r) {
  std::vector<Quad> q(p.size() - 1);
  Quad acc;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * r + p[i];
    if (i > 0) q[i - 1] = acc;
  }
  if (acc.is_zero()) p = q;
  return acc;
}

}  // namespace

std::vector<std::pair<Quad, int>> eigenvalues(const Matrix& m) {
  UniPoly cp = char_poly(m);
  bool rational = std::all_of(cp.coeffs.begin(), cp.coeffs.end(), [](const Scalar& s) { return s.is_rational(); });
  std::vector<std::pair<Quad, int>> out;
  if (rational) {
    for (const auto& f : factor_char_poly(cp))
      for (const auto& r : f.roots()) out.emplace_back(r, f.multiplicity);
  } else {
    // Candidate roots from the rational norm polynomial p * conj(p).
    UniPoly conj;
    for (const auto& c : cp.coeffs) conj.coeffs.push_back(c.conjugate());
    std::vector<Quad> p;
    for (const auto& c : cp.coeffs) p.push_back(c.constant());
    for (const auto& f : factor_char_poly(cp * conj))
      for (const auto& r : f.roots()) {
        if (r.radicand() != 0 && cp.coeffs.back().radicand() == 0) {
          long d = 0;
          for (const auto& c : cp.coeffs)
            if (c.radicand() != 0) d = c.radicand();
          if (d != r.radicand()) continue;
        }
        int mult = 0;
        while (p.size() > 1 && deflate(p, r).is_zero()) ++mult;
        if (mult > 0) out.emplace_back(r, mult);
      }
    if (p.size() > 1) throw Error(ErrorKind::IrreducibleDegreeTooHigh, "eigenvalues outside a quadratic field");
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return quad_less(x.first, y.first); });
  return out;
}

std::vector<Eigenspace> simultaneous_eigenspaces(const std::vector<Matrix>& family, const Subspace& space) {
  const auto basis = space.basis_vectors();
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      for (const auto& v : basis)
        if (family[i] * (family[j] * v) != family[j] * (family[i] * v))
          throw Error(ErrorKind::NonCommutingFamily, "family does not commute on the given space");
  std::vector<Eigenspace> cur{{{}, space}};
  for (const auto& m : family) {
    std::vector<Eigenspace> next;
    for (const auto& es : cur) {
      const auto b = es.space.basis_vectors();
      const std::size_t k = b.size();
      Matrix r(k, k);
      for (std::size_t j = 0; j < k; ++j) {
        Vec img = m * b[j];
        if (!es.space.contains(img)) throw Error(ErrorKind::InvalidArgument, "family does not preserve the space");
        Vec c = es.space.coordinates(img);
        for (std::size_t i = 0; i < k; ++i) r(i, j) = c[i];
      }
      for (const auto& [lambda, mult] : eigenvalues(r)) {
        (void)mult;
        Matrix shifted = r - Matrix::identity(k).scaled(Scalar(lambda));
        std::vector<Vec> vecs;
        for (const auto& c : kernel(shifted)) {
          Vec v = zero_vec(space.ambient_dim());
          for (std::size_t i = 0; i < k; ++i) v = v + c[i] * b[i];
          vecs.push_back(v);
        }
        Eigenspace e{es.weight, Subspace::span(space.ambient_dim(), vecs)};
        e.weight.emplace_back(lambda);
        next.push_back(std::move(e));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace solvlie
