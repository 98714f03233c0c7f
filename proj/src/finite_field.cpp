#include "solvlie/finite_field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>

#include "solvlie/errors.hpp"

namespace solvlie {

namespace {

using i64 = long long;

i64 mod(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

i64 power(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

i64 inv(i64 a, i64 p) { return power(a, p - 2, p); }

std::optional<i64> sqrt_mod(i64 d, i64 p) {
  d = mod(d, p);
  for (i64 r = 0; r < p; ++r)
    if (r * r % p == d) return r;
  return std::nullopt;
}

struct Reducer {
  i64 p;
  std::map<long, i64> roots;
  std::string failure;

  std::optional<i64> rational(const Rational& q) {
    Integer pz(static_cast<long>(p));
    if (mpz_divisible_p(q.get_den_mpz_t(), pz.get_mpz_t())) {
      failure = std::to_string(p) + " divides a denominator";
      return std::nullopt;
    }
    Integer num = q.get_num() % pz, den = q.get_den() % pz;
    return mod(num.get_si(), p) * inv(mod(den.get_si(), p), p) % p;
  }

  std::optional<i64> quad(const Quad& x) {
    auto a = rational(x.a());
    if (!a) return std::nullopt;
    if (x.radicand() == 0) return a;
    auto b = rational(x.b());
    if (!b) return std::nullopt;
    auto it = roots.find(x.radicand());
    if (it == roots.end()) {
      auto r = sqrt_mod(x.radicand(), p);
      if (!r) {
        failure = std::to_string(x.radicand()) + " is not a square mod " + std::to_string(p);
        return std::nullopt;
      }
      it = roots.emplace(x.radicand(), *r).first;
    }
    return (*a + *b * it->second) % p;
  }
};

constexpr std::size_t kMax = 8;
using VecP = std::array<i64, kMax>;

struct AlgebraP {
  std::size_t n;
  i64 p;
  // ad[i] as matrix: (ad e_i v)_k = sum_j ad[i][k][j] v_j
  std::vector<std::array<VecP, kMax>> ad;

  VecP apply(std::size_t i, const VecP& v) const {
    VecP r{};
    for (std::size_t k = 0; k < n; ++k) {
      i64 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += ad[i][k][j] * v[j];
      r[k] = s % p;
    }
    return r;
  }
};

// Echelon basis mod p with closure under ad; returns false once dim exceeds limit.
struct Closure {
  const AlgebraP& g;
  std::vector<VecP> rows;  // echelon, each normalized at its pivot
  std::vector<std::size_t> piv;

  bool add(VecP v, std::size_t limit) {
    std::vector<VecP> queue{v};
    while (!queue.empty()) {
      VecP x = queue.back();
      queue.pop_back();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        i64 c = x[piv[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < g.n; ++j) x[j] = mod(x[j] - c * rows[r][j], g.p);
      }
      std::size_t pv = g.n;
      for (std::size_t j = 0; j < g.n; ++j)
        if (x[j] != 0) {
          pv = j;
          break;
        }
      if (pv == g.n) continue;
      i64 iv = inv(x[pv], g.p);
      for (std::size_t j = 0; j < g.n; ++j) x[j] = x[j] * iv % g.p;
      rows.push_back(x);
      piv.push_back(pv);
      if (rows.size() > limit) return false;
      for (std::size_t i = 0; i < g.n; ++i) queue.push_back(g.apply(i, x));
    }
    return true;
  }
};

void count_rec(const AlgebraP& g, const std::vector<std::size_t>& pivots, std::size_t row, const Closure& cl,
               std::size_t k, i64& count) {
  if (row == pivots.size()) {
    if (cl.rows.size() == k) ++count;
    return;
  }
  std::vector<std::size_t> frees;
  for (std::size_t j = pivots[row] + 1; j < g.n; ++j)
    if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) frees.push_back(j);
  std::vector<i64> vals(frees.size(), 0);
  while (true) {
    VecP v{};
    v[pivots[row]] = 1;
    for (std::size_t f = 0; f < frees.size(); ++f) v[frees[f]] = vals[f];
    Closure next = cl;
    if (next.add(v, k)) count_rec(g, pivots, row + 1, next, k, count);
    std::size_t f = 0;
    while (f < vals.size() && ++vals[f] == g.p) vals[f++] = 0;
    if (f == vals.size()) break;
  }
}

i64 count_ideals(const AlgebraP& g, std::size_t k) {
  if (k == 0 || k == g.n) return 1;
  i64 total = 0;
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    Closure empty{g, {}, {}};
    count_rec(g, piv, 0, empty, k, total);
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == g.n - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return total;
}

}  // namespace

long long gaussian_binomial(long long w, long long f, long long q) {
  if (f < 0 || f > w) return 0;
  __int128 num = 1, den = 1;
  for (long long i = 0; i < f; ++i) {
    __int128 a = 1, b = 1;
    for (long long j = 0; j < w - i; ++j) a *= q;
    for (long long j = 0; j < i + 1; ++j) b *= q;
    num *= (a - 1);
    den *= (b - 1);
  }
  return static_cast<long long>(num / den);
}

bool OracleReport::agrees() const {
  if (skipped) return true;
  for (std::size_t d = 0; d < counted.size(); ++d)
    if (predictable[d] && counted[d] != predicted[d]) return false;
  return true;
}

OracleReport finite_field_oracle(const LieAlgebra& g, const IdealLattice& lattice, long p) {
  OracleReport rep;
  rep.prime = p;
  const std::size_t n = g.dim();
  if (n > kMax) {
    rep.skipped = true;
    rep.reason = "dimension too large for exhaustive enumeration";
    return rep;
  }
  Reducer red{p, {}, {}};
  AlgebraP gp{n, p, std::vector<std::array<VecP, kMax>>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    gp.ad[i] = {};
    for (std::size_t j = 0; j < n; ++j) {
      Vec c = g.bracket_basis(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        auto v = red.quad(c[k].constant());
        if (!v) {
          rep.skipped = true;
          rep.reason = red.failure;
          return rep;
        }
        gp.ad[i][k][j] = *v;
      }
    }
  }
  // Distinct eigenvalues must stay distinct mod p.
  std::vector<Element> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(g.basis_element(i));
  Element mix = zero_vec(n);
  for (std::size_t i = 0; i < n; ++i) mix[i] = Scalar(static_cast<long>(i + 1));
  probes.push_back(mix);
  for (const auto& x : probes) {
    std::vector<i64> seen;
    for (const auto& [ev, mult] : eigenvalues(adjoint_matrix(g, x))) {
      auto v = red.quad(ev);
      if (!v) {
        rep.skipped = true;
        rep.reason = red.failure;
        return rep;
      }
      if (std::find(seen.begin(), seen.end(), *v) != seen.end()) {
        rep.skipped = true;
        rep.reason = "eigenvalues collide mod " + std::to_string(p);
        return rep;
      }
      seen.push_back(*v);
    }
  }
  rep.predicted.assign(n + 1, 0);
  rep.predictable.assign(n + 1, true);
  for (const auto& s : lattice.strata) {
    std::size_t d = s.dim();
    if (d > n) continue;
    if (!s.base.is_parameter_free() || !s.free_space.is_parameter_free() || !s.constraints.empty()) {
      rep.predictable[d] = false;
      continue;
    }
    rep.predicted[d] += s.free_dim == 0 ? 1 : gaussian_binomial(static_cast<long long>(s.free_space.dim()),
                                                                static_cast<long long>(s.free_dim), p);
  }
  for (std::size_t k = 0; k <= n; ++k) rep.counted.push_back(count_ideals(gp, k));
  return rep;
}

}  // namespace solvlie
