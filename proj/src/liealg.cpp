#include "solvlie/liealg.hpp"

#include <algorithm>

#include "solvlie/errors.hpp"

namespace solvlie {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, long field_radicand)
    : name_(std::move(name)), labels_(std::move(labels)), field_radicand_(field_radicand) {}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vec& v) {
  derived_cache_.reset();
  if (i >= dim() || j >= dim() || v.size() != dim()) throw Error(ErrorKind::AmbientMismatch, "bracket index out of range");
  if (i == j) throw Error(ErrorKind::InvalidArgument, "bracket of a basis element with itself");
  if (i < j)
    c_[{i, j}] = v;
  else
    c_[{j, i}] = Scalar(-1) * v;
  if (is_zero(c_[{std::min(i, j), std::max(i, j)}])) c_.erase({std::min(i, j), std::max(i, j)});
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  if (i == j) return zero_vec(dim());
  auto it = c_.find({std::min(i, j), std::max(i, j)});
  if (it == c_.end()) return zero_vec(dim());
  return i < j ? it->second : Scalar(-1) * it->second;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorKind::AmbientMismatch, "element dimension mismatch");
  Element r = zero_vec(dim());
  for (const auto& [ij, v] : c_) {
    auto [i, j] = ij;
    Scalar coeff = x[i] * y[j] - x[j] * y[i];
    if (coeff.is_zero()) continue;
    r = r + coeff * v;
  }
  return r;
}

std::string LieAlgebra::element_to_string(const Element& x) const {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Scalar& c = x[i];
    if (c.is_zero()) continue;
    bool neg = false;
    std::string cs;
    if (c.is_rational() && sgn(c.rational_value()) < 0) {
      neg = true;
      cs = (-c).to_string();
    } else {
      cs = c.to_string();
      if (!c.is_constant() && c.numerator().terms().size() == 1 && c.denominator().is_constant() &&
          c.numerator().leading_coefficient().is_rational() && sgn(c.numerator().leading_coefficient().a()) < 0) {
        neg = true;
        cs = (-c).to_string();
      }
    }
    std::string term;
    if (cs == "1") {
      term = labels_[i];
    } else {
      Scalar shown = neg ? -c : c;
      bool simple = shown.denominator().is_constant() && shown.numerator().terms().size() == 1 &&
                    shown.numerator().leading_coefficient().is_rational();
      term = (simple ? cs : "(" + cs + ")") + "*" + labels_[i];
    }
    if (s.empty())
      s = neg ? "-" + term : term;
    else
      s += (neg ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

bool LieAlgebra::is_parameter_free() const {
  for (const auto& [ij, v] : c_)
    if (!params_of(v).empty()) return false;
  return true;
}

std::optional<JacobiViolation> jacobi_check(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto e = [&](std::size_t a) { return g.basis_element(a); };
        Element r = g.bracket(g.bracket(e(i), e(j)), e(k)) + g.bracket(g.bracket(e(j), e(k)), e(i)) +
                    g.bracket(g.bracket(e(k), e(i)), e(j));
        if (!is_zero(r)) return JacobiViolation{i, j, k, r};
      }
  return std::nullopt;
}

Matrix adjoint_matrix(const LieAlgebra& g, const Element& x) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < g.dim(); ++j) cols.push_back(g.bracket(x, g.basis_element(j)));
  return Matrix::from_columns(cols, g.dim());
}

Subspace bracket_space(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vec> vs;
  for (const auto& x : a.basis_vectors())
    for (const auto& y : b.basis_vectors()) {
      Vec v = g.bracket(x, y);
      if (!is_zero(v)) vs.push_back(v);
    }
  Conditions cs = a.constraints();
  cs.insert(cs.end(), b.constraints().begin(), b.constraints().end());
  Subspace s = Subspace::span(g.dim(), vs, cs);
  s.add_constraints(cs);
  return s;
}

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  if (g.derived_cache_) return *g.derived_cache_;
  std::vector<Subspace> out{Subspace::full(g.dim())};
  while (true) {
    Subspace next = bracket_space(g, out.back(), out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(next);
  }
  g.derived_cache_ = std::make_shared<const std::vector<Subspace>>(out);
  return out;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  std::vector<Subspace> out{Subspace::full(g.dim())};
  Subspace all = out.front();
  while (true) {
    Subspace next = bracket_space(g, all, out.back());
    if (next.dim() == out.back().dim()) break;
    out.push_back(next);
  }
  return out;
}

namespace {

// Kernel of x -> ([x, v])_v for v in vs, optionally composed with functionals.
Subspace solve_brackets(const LieAlgebra& g, const std::vector<Vec>& vs, const std::vector<Vec>& functionals,
                        const Conditions& cs) {
  const std::size_t n = g.dim();
  std::vector<Vec> rows;
  for (const auto& v : vs) {
    Matrix ad = adjoint_matrix(g, v);  // [v, x] = ad(v) x = -[x, v]
    if (functionals.empty()) {
      for (std::size_t i = 0; i < n; ++i) rows.push_back(ad.row(i));
    } else {
      for (const auto& f : functionals) {
        Vec r = zero_vec(n);
        for (std::size_t i = 0; i < n; ++i)
          if (!f[i].is_zero()) r = r + f[i] * ad.row(i);
        rows.push_back(r);
      }
    }
  }
  if (rows.empty()) return Subspace::full(n);
  Subspace s = Subspace::span(n, kernel(Matrix::from_rows(rows, n), cs), cs);
  s.add_constraints(cs);
  return s;
}

}  // namespace

Subspace center(const LieAlgebra& g) { return centralizer(g, Subspace::full(g.dim())); }

bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }
bool is_abelian(const LieAlgebra& g) { return derived_series(g).size() == 1 || derived_series(g)[1].dim() == 0; }

void require_solvable(const LieAlgebra& g) {
  if (!is_solvable(g)) throw Error(ErrorKind::NotSolvable, "algebra " + g.name() + " is not solvable");
}

Subspace centralizer(const LieAlgebra& g, const Subspace& s) {
  return solve_brackets(g, s.basis_vectors(), {}, s.constraints());
}

Subspace normalizer(const LieAlgebra& g, const Subspace& s) {
  auto sub = is_subalgebra(g, s);
  if (!sub) throw Error(ErrorKind::NotASubalgebra, s.to_string() + " is not a subalgebra");
  if (s.dim() == 0 || s.dim() == g.dim()) return Subspace::full(g.dim());
  // x normalizes s iff every functional vanishing on s kills [b, x].
  auto ann = s.annihilator().basis_vectors();
  // annihilator() is in the transposed sense: rows x with <x, b> = 0.
  return solve_brackets(g, s.basis_vectors(), ann, s.constraints());
}

namespace {

PredicateResult residual_conditions(const std::vector<Vec>& residuals) {
  PredicateResult r;
  Conditions zeros;
  for (const auto& v : residuals)
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      if (x.is_constant()) {
        r.status = PredicateResult::Status::Never;
        r.when.clear();
        return r;
      }
      zeros.push_back(Condition::zero(Scalar(x.numerator())));
    }
  if (!zeros.empty()) {
    r.status = PredicateResult::Status::Conditional;
    r.when = canonical_conditions(zeros);
  }
  return r;
}

}  // namespace

PredicateResult is_subalgebra(const LieAlgebra& g, const Subspace& s) {
  auto b = s.basis_vectors();
  std::vector<Vec> res;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) res.push_back(s.reduce(g.bracket(b[i], b[j])));
  return residual_conditions(res);
}

PredicateResult is_ideal(const LieAlgebra& g, const Subspace& s) {
  std::vector<Vec> res;
  for (const auto& v : s.basis_vectors())
    for (std::size_t i = 0; i < g.dim(); ++i) res.push_back(s.reduce(g.bracket(g.basis_element(i), v)));
  return residual_conditions(res);
}

// ---------------------------------------------------------------- quotients

Element QuotientMap::project(const Element& x) const {
  Vec r = ideal.reduce(x);
  Element y(complement.size());
  for (std::size_t k = 0; k < complement.size(); ++k) y[k] = r[complement[k]];
  return y;
}

Element QuotientMap::lift(const Element& y) const {
  Element x = zero_vec(ideal.ambient_dim());
  for (std::size_t k = 0; k < complement.size(); ++k) x[complement[k]] = y[k];
  return x;
}

Subspace QuotientMap::project(const Subspace& s) const {
  std::vector<Vec> vs;
  for (const auto& v : s.basis_vectors()) vs.push_back(project(v));
  Subspace r = Subspace::span(target.dim(), vs, s.constraints());
  r.add_constraints(s.constraints());
  return r;
}

Subspace QuotientMap::pullback(const Subspace& s) const {
  std::vector<Vec> vs = ideal.basis_vectors();
  for (const auto& v : s.basis_vectors()) vs.push_back(lift(v));
  Conditions cs = s.constraints();
  cs.insert(cs.end(), ideal.constraints().begin(), ideal.constraints().end());
  Subspace r = Subspace::span(ideal.ambient_dim(), vs, cs);
  r.add_constraints(cs);
  return r;
}

QuotientMap quotient(const LieAlgebra& g, const Subspace& ideal) {
  auto id = is_ideal(g, ideal);
  if (!id) throw Error(ErrorKind::NotAnIdeal, ideal.to_string() + " is not an ideal of " + g.name());
  QuotientMap q;
  q.ideal = ideal;
  std::vector<bool> is_pivot(g.dim(), false);
  for (auto p : ideal.pivots()) is_pivot[p] = true;
  std::vector<std::string> labels;
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (!is_pivot[i]) {
      q.complement.push_back(i);
      labels.push_back(g.labels()[i]);
      cols.push_back(unit_vec(g.dim(), i));
    }
  q.section = cols.empty() ? Matrix(g.dim(), 0) : Matrix::from_columns(cols, g.dim());
  q.target = LieAlgebra(g.name() + "/I", labels, g.field_radicand());
  for (std::size_t a = 0; a < q.complement.size(); ++a)
    for (std::size_t b = a + 1; b < q.complement.size(); ++b)
      q.target.set_bracket(a, b, q.project(g.bracket_basis(q.complement[a], q.complement[b])));
  return q;
}

LieAlgebra complexify(const LieAlgebra& g) {
  if (g.field_radicand() != 0) throw Error(ErrorKind::AlreadyComplex, g.name() + " is not tagged rational");
  LieAlgebra c(g.name(), g.labels(), -1);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) c.set_bracket(i, j, g.bracket_basis(i, j));
  c.torus_hint = g.torus_hint;
  c.nilradical_hint = g.nilradical_hint;
  return c;
}

Subspace real_points(const LieAlgebra& gc, const Subspace& s) {
  (void)gc;
  // A conjugation-stable space has a conjugation-fixed echelon basis.
  Subspace w = s.intersect(s.conjugate());
  for (const auto& v : w.basis_vectors())
    for (const auto& x : v)
      if (x.radicand() < 0) throw Error(ErrorKind::Internal, "non-real echelon basis for a conjugation-stable space");
  return w;
}

// ---------------------------------------------------------------- subalgebras

Element SubalgebraView::to_ambient(const Element& y) const {
  Element x = zero_vec(space.ambient_dim());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!y[k].is_zero()) x = x + y[k] * basis[k];
  return x;
}

Element SubalgebraView::to_local(const Element& x) const {
  if (!space.contains(x)) throw Error(ErrorKind::InvalidArgument, "element is not in the subalgebra");
  return space.coordinates(x);
}

Subspace SubalgebraView::to_ambient(const Subspace& s) const {
  std::vector<Vec> vs;
  for (const auto& v : s.basis_vectors()) vs.push_back(to_ambient(v));
  Subspace r = Subspace::span(space.ambient_dim(), vs, s.constraints());
  r.add_constraints(s.constraints());
  return r;
}

SubalgebraView subalgebra_as_algebra(const LieAlgebra& g, const Subspace& s) {
  if (!is_subalgebra(g, s)) throw Error(ErrorKind::NotASubalgebra, s.to_string() + " is not a subalgebra");
  SubalgebraView v;
  v.space = s;
  v.basis = s.basis_vectors();
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < v.basis.size(); ++k) {
    std::optional<std::size_t> unit;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < g.dim(); ++i)
      if (!v.basis[k][i].is_zero()) {
        ++nonzero;
        if (v.basis[k][i].is_one()) unit = i;
      }
    labels.push_back(nonzero == 1 && unit ? g.labels()[*unit] : "s" + std::to_string(k + 1));
  }
  v.algebra = LieAlgebra(g.name() + "|S", labels, g.field_radicand());
  for (std::size_t a = 0; a < v.basis.size(); ++a)
    for (std::size_t b = a + 1; b < v.basis.size(); ++b)
      v.algebra.set_bracket(a, b, s.coordinates(g.bracket(v.basis[a], v.basis[b])));
  return v;
}

}  // namespace solvlie
