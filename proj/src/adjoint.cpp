#include "solvlie/adjoint.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "solvlie/errors.hpp"

namespace solvlie {

namespace {

Matrix shifted(const Matrix& m, const Scalar& lambda) { return m - Matrix::identity(m.rows()).scaled(lambda); }

Matrix mat_pow(const Matrix& m, std::size_t e) {
  Matrix r = Matrix::identity(m.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * m;
  return r;
}

bool is_rational_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_rational()) return false;
  return true;
}

Integer lcm_of_denominators(const std::vector<Rational>& qs) {
  Integer l = 1;
  for (const auto& q : qs) l = lcm(l, q.get_den());
  return l;
}

// sum_k (t^k / k!) n^k, for nilpotent n.
Matrix exp_nilpotent(const Matrix& n, const Scalar& t) {
  Matrix sum = Matrix::identity(n.rows());
  Matrix term = Matrix::identity(n.rows());
  for (std::size_t k = 1; k <= n.rows(); ++k) {
    term = (term * n).scaled(t / Scalar(static_cast<long>(k)));
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

Matrix diagonal(const std::vector<Scalar>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::string quad_pair(const Rational& a, const Rational& b, long d) {
  return Quad(a, b, d).to_string() + " and " + Quad(a, -b, d).to_string();
}

}  // namespace

const char* flow_kind_name(FlowGenerator::Kind kind) {
  switch (kind) {
    case FlowGenerator::Kind::Unipotent: return "unipotent";
    case FlowGenerator::Kind::Scaling: return "scaling";
    case FlowGenerator::Kind::Rotation: return "rotation";
    case FlowGenerator::Kind::Mixed: return "mixed";
  }
  return "?";
}

Conditions FlowGenerator::relations() const {
  Conditions cs;
  if (kind == Kind::Unipotent) return cs;
  cs.push_back(Condition::positive(Scalar::param(unit_symbol())));
  if (kind == Kind::Rotation) {
    long d = planes.front().radicand;
    Scalar c = Scalar::param(cos_symbol()), s = Scalar::param(sin_symbol());
    cs.push_back(Condition::zero(c * c - Scalar(d) * s * s - Scalar(1)));
  }
  return cs;
}

std::map<std::string, Scalar> FlowGenerator::at_time_zero() const {
  return {{time, Scalar(0)}, {unit_symbol(), Scalar(1)}, {cos_symbol(), Scalar(1)}, {sin_symbol(), Scalar(0)}};
}

FlowGenerator classify_generator(const LieAlgebra& g, const Element& x, const std::string& time) {
  FlowGenerator f;
  f.element = x;
  f.matrix = adjoint_matrix(g, x);
  f.time = time;
  const std::size_t n = g.dim();
  const Matrix& m = f.matrix;

  Matrix p = Matrix::identity(n);
  for (std::size_t k = 1; k <= std::max<std::size_t>(n, 1); ++k) {
    p = p * m;
    if (p.is_zero()) {
      f.kind = FlowGenerator::Kind::Unipotent;
      f.nilpotency_index = k;
      f.weights.assign(n, Rational(0));
      f.eigenbasis = Matrix::identity(n);
      f.semisimple = Matrix(n, n);
      f.nilpotent = m;
      return f;
    }
  }
  if (!m.is_parameter_free())
    throw Error(ErrorKind::ParameterizedEntriesUnsupported,
                "ad(" + g.element_to_string(x) + ") has parameters and is not nilpotent");

  auto evs = eigenvalues(m);
  bool all_rational = std::all_of(evs.begin(), evs.end(), [](const auto& e) { return e.first.is_rational(); });

  if (all_rational) {
    std::vector<Vec> cols;
    for (const auto& [lambda, mult] : evs) {
      auto gen = kernel(mat_pow(shifted(m, Scalar(lambda)), static_cast<std::size_t>(mult)));
      if (gen.size() != static_cast<std::size_t>(mult))
        throw Error(ErrorKind::Internal, "generalized eigenspace of wrong dimension");
      for (auto& v : gen) {
        cols.push_back(v);
        f.weights.push_back(lambda.a());
      }
    }
    f.eigenbasis = Matrix::from_columns(cols, n);
    std::vector<Scalar> w(f.weights.begin(), f.weights.end());
    f.semisimple = f.eigenbasis * diagonal(w) * f.eigenbasis.inverse();
    f.nilpotent = m - f.semisimple;
    f.kind = f.nilpotent.is_zero() ? FlowGenerator::Kind::Scaling : FlowGenerator::Kind::Mixed;
    f.unit_denominator = Rational(lcm_of_denominators(f.weights));
    return f;
  }

  f.kind = FlowGenerator::Kind::Mixed;
  f.flowable = false;
  if (!is_rational_matrix(m)) {
    f.obstruction = "non-rational eigenvalues of a matrix with irrational entries";
    return f;
  }
  std::vector<Vec> cols;
  std::vector<Rational> alphas;
  std::vector<RotationPlane> planes;
  for (const auto& [lambda, mult] : evs) {
    if (!lambda.is_rational() && lambda.radicand() > 0) {
      f.obstruction = "real irrational eigenvalue " + lambda.to_string();
      return f;
    }
    if (!lambda.is_rational() && sgn(lambda.b()) < 0) continue;
    auto eig = kernel(shifted(m, Scalar(lambda)));
    if (eig.size() != static_cast<std::size_t>(mult)) {
      f.obstruction = lambda.is_rational()
                          ? "nontrivial nilpotent part at eigenvalue " + lambda.to_string()
                          : "nontrivial nilpotent part at eigenvalues " +
                                quad_pair(lambda.a(), lambda.b(), lambda.radicand());
      return f;
    }
    for (const auto& v : eig) {
      if (lambda.is_rational()) {
        cols.push_back(v);
        f.weights.push_back(lambda.a());
        continue;
      }
      RotationPlane pl;
      pl.p = zero_vec(n);
      pl.q = zero_vec(n);
      for (std::size_t i = 0; i < n; ++i) {
        Quad e = v[i].constant();
        pl.p[i] = Scalar(e.a());
        pl.q[i] = Scalar(e.b());
      }
      pl.alpha = lambda.a();
      pl.beta = lambda.b();
      pl.radicand = lambda.radicand();
      alphas.push_back(pl.alpha);
      planes.push_back(pl);
    }
  }
  if (std::any_of(planes.begin(), planes.end(), [&](const auto& pl) { return pl.radicand != planes[0].radicand; })) {
    f.obstruction = "rotation planes over different quadratic fields";
    return f;
  }

  std::vector<Rational> betas;
  for (const auto& pl : planes) betas.push_back(pl.beta);
  Integer bl = lcm_of_denominators(betas);
  Integer bg = 0;
  for (const auto& b : betas) bg = gcd(bg, Integer(b * bl));
  f.base_speed_rational = Rational(bg, bl);
  f.base_speed_rational.canonicalize();
  for (auto& pl : planes) {
    Rational k = pl.beta / f.base_speed_rational;
    pl.multiple = k.get_num().get_si();
    cols.push_back(pl.p);
    cols.push_back(pl.q);
  }
  f.planes = std::move(planes);
  f.eigenbasis = Matrix::from_columns(cols, n);
  std::vector<Rational> all = f.weights;
  all.insert(all.end(), alphas.begin(), alphas.end());
  f.unit_denominator = Rational(lcm_of_denominators(all));
  f.kind = FlowGenerator::Kind::Rotation;
  f.flowable = true;
  f.full_circle = true;
  return f;
}

namespace {

// e^{w T} as a power of the unit symbol.
Scalar unit_power(const FlowGenerator& f, const Rational& w) {
  Rational e = w * f.unit_denominator;
  if (sgn(e) == 0) return Scalar(1);
  return Scalar::param(f.unit_symbol()).pow(static_cast<int>(e.get_num().get_si()));
}

}  // namespace

Matrix flow_matrix(const FlowGenerator& f) {
  const std::size_t n = f.matrix.rows();
  Scalar t = Scalar::param(f.time);
  switch (f.kind) {
    case FlowGenerator::Kind::Unipotent:
      return exp_nilpotent(f.matrix, t);
    case FlowGenerator::Kind::Mixed:
      if (!f.flowable) throw Error(ErrorKind::MixedGeneratorUnsupported, f.obstruction);
      [[fallthrough]];
    case FlowGenerator::Kind::Scaling: {
      std::vector<Scalar> d;
      for (const auto& w : f.weights) d.push_back(unit_power(f, w));
      Matrix e = f.eigenbasis * diagonal(d) * f.eigenbasis.inverse();
      if (!f.nilpotent.is_zero()) e = e * exp_nilpotent(f.nilpotent, t);
      return e;
    }
    case FlowGenerator::Kind::Rotation: {
      Matrix b(n, n);
      std::size_t i = 0;
      for (const auto& w : f.weights) {
        b(i, i) = unit_power(f, w);
        ++i;
      }
      Scalar c = Scalar::param(f.cos_symbol()), s = Scalar::param(f.sin_symbol());
      for (const auto& pl : f.planes) {
        Scalar d(pl.radicand);
        // (C + sqrt(d) S) = (c + sqrt(d) s)^multiple
        Scalar cc(1), ss(0);
        for (long k = 0; k < pl.multiple; ++k) {
          Scalar nc = cc * c + d * ss * s;
          ss = cc * s + ss * c;
          cc = nc;
        }
        Scalar scale = unit_power(f, pl.alpha);
        b(i, i) = scale * cc;
        b(i + 1, i) = scale * d * ss;
        b(i, i + 1) = scale * ss;
        b(i + 1, i + 1) = scale * cc;
        i += 2;
      }
      return f.eigenbasis * b * f.eigenbasis.inverse();
    }
  }
  throw Error(ErrorKind::Internal, "unknown flow kind");
}

Element flow_apply(const FlowGenerator& f, const Element& v) { return flow_matrix(f) * v; }

namespace {

Scalar determinant(const std::vector<Vec>& cols, const std::vector<std::size_t>& rows, std::size_t col,
                   std::vector<bool>& used) {
  if (col == cols.size()) return Scalar(1);
  Scalar sum;
  int sign = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    const Scalar& a = cols[col][rows[r]];
    if (!a.is_zero()) {
      used[r] = true;
      Scalar minor = determinant(cols, rows, col + 1, used);
      used[r] = false;
      sum += sign > 0 ? a * minor : -(a * minor);
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

Multivector Multivector::wedge(std::size_t ambient, const std::vector<Element>& factors) {
  Multivector mv;
  mv.ambient = ambient;
  mv.degree = factors.size();
  const std::size_t k = factors.size();
  if (k > ambient) return mv;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<bool> used(k, false);
    Scalar c = determinant(factors, idx, 0, used);
    if (!c.is_zero()) mv.coords[idx] = c;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == ambient - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return mv;
}

Scalar Multivector::coefficient(const std::vector<std::size_t>& indices) const {
  std::vector<std::size_t> sorted = indices;
  int sign = 1;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = 0; j + 1 < sorted.size() - i; ++j)
      if (sorted[j] > sorted[j + 1]) {
        std::swap(sorted[j], sorted[j + 1]);
        sign = -sign;
      } else if (sorted[j] == sorted[j + 1]) {
        return Scalar(0);
      }
  auto it = coords.find(sorted);
  if (it == coords.end()) return Scalar(0);
  return sign > 0 ? it->second : -it->second;
}

std::string Multivector::to_string(const std::vector<std::string>& labels) const {
  std::vector<std::string> names;
  Vec coeffs;
  for (const auto& [idx, c] : coords) {
    std::string name;
    for (std::size_t i : idx) name += (name.empty() ? "" : "^") + labels.at(i);
    names.push_back(name);
    coeffs.push_back(c);
  }
  return LieAlgebra("", names).element_to_string(coeffs);
}

Multivector exterior_flow_apply(const FlowGenerator& f, const std::vector<Element>& wedge) {
  Matrix e = flow_matrix(f);
  std::vector<Element> moved;
  for (const auto& v : wedge) moved.push_back(e * v);
  return Multivector::wedge(f.matrix.rows(), moved);
}

Element GroupWord::apply(const Element& v) const {
  Element r = v;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) r = flow_apply(*it, r);
  return r;
}

Multivector GroupWord::apply(const std::vector<Element>& wedge) const {
  std::vector<Element> moved;
  for (const auto& v : wedge) moved.push_back(apply(v));
  return Multivector::wedge(wedge.empty() ? 0 : wedge.front().size(), moved);
}

std::string GroupWord::to_string(const LieAlgebra& g) const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " ";
    s += "exp(" + f.time + " ad(" + g.element_to_string(f.element) + "))";
  }
  return s.empty() ? "1" : s;
}

GroupWord normalizer_chain_factorization(const LieAlgebra& g, const Element& x) {
  require_solvable(g);
  const std::size_t n = g.dim();
  if (is_zero(x)) throw Error(ErrorKind::InvalidArgument, "zero element has no chain");
  Subspace derived = derived_series(g)[1];
  Subspace full = Subspace::full(n);

  std::set<std::string> taken(g.labels().begin(), g.labels().end());
  for (const auto& p : params_of(x)) taken.insert(p);
  std::size_t counter = 0;
  auto next_time = [&]() {
    std::string name;
    do name = "t" + std::to_string(++counter);
    while (taken.count(name));
    return name;
  };

  std::vector<Element> chain{x};
  if (!derived.contains(x)) {
    Subspace s = derived + Subspace::span(n, {x});
    for (const auto& v : s.complement_vectors()) chain.push_back(v);
    for (const auto& v : derived.basis_vectors()) chain.push_back(v);
  } else {
    Subspace s = Subspace::span(n, {x});
    while (s.dim() < n) {
      const Subspace& allowed = s.contains(derived) ? full : derived;
      auto normalizes = [&](const Element& v) {
        return s.contains(bracket_space(g, Subspace::span(n, {v}), s));
      };
      std::optional<Element> pick;
      for (const auto& e : s.complement_vectors())
        if (allowed.contains(e) && normalizes(e)) {
          pick = e;
          break;
        }
      if (!pick) {
        Subspace nz = normalizer(g, s).intersect(allowed);
        auto extra = s.complement_in(nz);
        if (extra.empty())
          throw Error(ErrorKind::ChainStuck, "no normalizing extension of " + s.to_string());
        pick = extra.front();
      }
      chain.push_back(*pick);
      s = s + Subspace::span(n, {*pick});
    }
  }
  GroupWord w;
  for (const auto& v : chain) {
    std::string time = next_time();
    try {
      w.factors.push_back(classify_generator(g, v, time));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParameterizedEntriesUnsupported) throw;
      FlowGenerator f;
      f.element = v;
      f.matrix = adjoint_matrix(g, v);
      f.time = time;
      f.flowable = false;
      f.obstruction = e.what();
      w.factors.push_back(f);
    }
  }
  std::reverse(w.factors.begin(), w.factors.end());
  return w;
}

}  // namespace solvlie
