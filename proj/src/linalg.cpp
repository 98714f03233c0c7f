#include "solvlie/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "solvlie/errors.hpp"

namespace solvlie {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = Scalar(1);
  return v;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::AmbientMismatch, "vector sizes differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::AmbientMismatch, "vector sizes differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Scalar& c, const Vec& v) {
  Vec r(v.size());
  if (c.is_zero()) return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) r[i] = c * v[i];
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::set<std::string> params_of(const Vec& v) {
  std::set<std::string> s;
  for (const auto& x : v) {
    auto p = x.params();
    s.insert(p.begin(), p.end());
  }
  return s;
}

Vec substitute(const Vec& v, const std::map<std::string, Scalar>& values) {
  Vec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.substitute(values));
  return r;
}

Vec conjugate(const Vec& v) {
  Vec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.conjugate());
  return r;
}

std::string to_string(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::AmbientMismatch, "row length differs");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

Vec Matrix::row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::AmbientMismatch, "matrix shapes differ");
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::AmbientMismatch, "matrix shapes differ");
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::AmbientMismatch, "matrix shapes do not compose");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw Error(ErrorKind::AmbientMismatch, "matrix and vector sizes differ");
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = c * data_[k];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_parameter_free() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_constant(); });
}

Matrix Matrix::substitute(const std::map<std::string, Scalar>& values) const {
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].substitute(values);
  return r;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorKind::InvalidArgument, "inverse of non-square matrix");
  auto res = rref_and_solve(*this, identity(rows_));
  if (res.pivots.size() != rows_) throw Error(ErrorKind::DivisionByZero, "singular matrix");
  return *res.solution;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) s += (i ? ", " : "") + solvlie::to_string(row(i));
  return s + "]";
}

// ---------------------------------------------------------------- elimination

namespace {

struct Elimination {
  Matrix m;
  std::vector<std::size_t> pivots;
  Conditions splits;
};

Elimination eliminate(Matrix m, std::size_t pivot_cols, const Conditions& assumptions) {
  Elimination e;
  Conditions known = assumptions;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::optional<std::size_t> pick, entailed, any;
    for (std::size_t i = r; i < m.rows(); ++i) {
      const Scalar& x = m(i, c);
      if (x.is_zero()) continue;
      if (x.is_constant()) {
        pick = i;
        break;
      }
      if (!entailed && entails_nonzero(x, known)) entailed = i;
      if (!any) any = i;
    }
    if (!pick) pick = entailed;
    if (!pick && any) {
      pick = any;
      Condition split = Condition::nonzero(Scalar(m(*any, c).numerator()));
      e.splits.push_back(split);
      known.push_back(split);
    }
    if (!pick) continue;
    std::size_t p = *pick;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.m = std::move(m);
  return e;
}

}  // namespace

RrefResult rref_and_solve(const Matrix& m, const std::optional<Matrix>& rhs, const Conditions& assumptions) {
  RrefResult out;
  if (!rhs) {
    auto e = eliminate(m, m.cols(), assumptions);
    out.rref = std::move(e.m);
    out.pivots = std::move(e.pivots);
    out.case_splits = std::move(e.splits);
    return out;
  }
  if (rhs->rows() != m.rows()) throw Error(ErrorKind::AmbientMismatch, "rhs row count differs");
  Matrix aug(m.rows(), m.cols() + rhs->cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs->cols(); ++j) aug(i, m.cols() + j) = (*rhs)(i, j);
  }
  auto e = eliminate(aug, m.cols(), assumptions);
  for (std::size_t i = e.pivots.size(); i < m.rows(); ++i)
    for (std::size_t j = 0; j < rhs->cols(); ++j)
      if (!e.m(i, m.cols() + j).is_zero()) throw Error(ErrorKind::Inconsistent, "linear system has no solution");
  Matrix sol(m.cols(), rhs->cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t j = 0; j < rhs->cols(); ++j) sol(e.pivots[k], j) = e.m(k, m.cols() + j);
  out.rref = Matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.rref(i, j) = e.m(i, j);
  out.pivots = std::move(e.pivots);
  out.solution = std::move(sol);
  out.case_splits = std::move(e.splits);
  return out;
}

std::vector<Vec> kernel(const Matrix& m, const Conditions& assumptions) {
  auto res = rref_and_solve(m, std::nullopt, assumptions);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : res.pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < res.pivots.size(); ++k) v[res.pivots[k]] = -res.rref(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const Matrix& m, const Conditions& assumptions) {
  return rref_and_solve(m, std::nullopt, assumptions).pivots.size();
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& vectors, const Conditions& assumptions) {
  Subspace s(ambient);
  if (vectors.empty()) return s;
  auto res = rref_and_solve(Matrix::from_rows(vectors, ambient), std::nullopt, assumptions);
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < res.pivots.size(); ++k) rows.push_back(res.rref.row(k));
  s.basis_ = Matrix::from_rows(rows, ambient);
  s.pivots_ = res.pivots;
  s.constraints_ = canonical_conditions(res.case_splits);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ambient; ++i) rows.push_back(unit_vec(ambient, i));
  return span(ambient, rows);
}

void Subspace::add_constraints(const Conditions& cs) {
  Conditions all = constraints_;
  all.insert(all.end(), cs.begin(), cs.end());
  constraints_ = canonical_conditions(all);
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::AmbientMismatch, "vector not in ambient space");
  Vec r = v;
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    Scalar c = r[pivots_[k]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_(k, j).is_zero()) r[j] -= c * basis_(k, j);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "ambient dimensions differ");
  for (std::size_t i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_.row(i))) return false;
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec c(dim());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "ambient dimensions differ");
  auto rows = basis_vectors();
  auto more = o.basis_vectors();
  rows.insert(rows.end(), more.begin(), more.end());
  Conditions cs = constraints_;
  cs.insert(cs.end(), o.constraints_.begin(), o.constraints_.end());
  Subspace s = span(ambient_, rows, cs);
  s.add_constraints(cs);
  return s;
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(ambient_);
  return span(ambient_, kernel(basis_, constraints_), constraints_);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw Error(ErrorKind::AmbientMismatch, "ambient dimensions differ");
  Conditions cs = constraints_;
  cs.insert(cs.end(), o.constraints_.begin(), o.constraints_.end());
  auto rows = annihilator().basis_vectors();
  auto more = o.annihilator().basis_vectors();
  rows.insert(rows.end(), more.begin(), more.end());
  Subspace s = rows.empty() ? full(ambient_) : span(ambient_, kernel(Matrix::from_rows(rows, ambient_), cs), cs);
  s.add_constraints(cs);
  return s;
}

std::vector<Vec> Subspace::complement_vectors() const {
  std::vector<bool> is_pivot(ambient_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (!is_pivot[i]) out.push_back(unit_vec(ambient_, i));
  return out;
}

std::vector<Vec> Subspace::complement_in(const Subspace& outer) const {
  std::vector<Vec> out;
  Subspace cur = *this;
  for (const auto& v : outer.basis_vectors()) {
    if (cur.contains(v)) continue;
    out.push_back(v);
    auto rows = cur.basis_vectors();
    rows.push_back(v);
    cur = span(ambient_, rows, constraints_);
  }
  return out;
}

std::set<std::string> Subspace::params() const {
  std::set<std::string> s;
  for (std::size_t i = 0; i < dim(); ++i) {
    auto p = params_of(basis_.row(i));
    s.insert(p.begin(), p.end());
  }
  for (const auto& c : constraints_) {
    auto p = c.params();
    s.insert(p.begin(), p.end());
  }
  return s;
}

Subspace Subspace::substitute(const std::map<std::string, Scalar>& values) const {
  std::vector<Vec> rows;
  for (const auto& r : basis_vectors()) rows.push_back(solvlie::substitute(r, values));
  Conditions cs;
  for (const auto& c : constraints_) {
    Condition d = c;
    for (auto& e : d.exprs) e = e.substitute(values);
    bool trivial = d.rel == Condition::Rel::NotAllZero
                       ? std::any_of(d.exprs.begin(), d.exprs.end(), [](const Scalar& s) { return s.is_constant() && !s.is_zero(); })
                       : d.exprs[0].is_constant() && (d.rel == Condition::Rel::NonZero ? !d.exprs[0].is_zero() : false);
    if (!trivial) cs.push_back(d);
  }
  Subspace s = span(ambient_, rows, cs);
  s.add_constraints(cs);
  return s;
}

Subspace Subspace::conjugate() const {
  std::vector<Vec> rows;
  for (const auto& r : basis_vectors()) rows.push_back(solvlie::conjugate(r));
  Subspace s = span(ambient_, rows);
  s.add_constraints(constraints_);
  return s;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_ && constraints_ == o.constraints_;
}

std::string Subspace::key() const {
  std::string s = std::to_string(ambient_) + ":";
  for (std::size_t i = 0; i < dim(); ++i) s += solvlie::to_string(basis_.row(i)) + ";";
  s += "|" + solvlie::to_string(constraints_);
  return s;
}

std::string Subspace::to_string() const {
  std::string s = "span{";
  for (std::size_t i = 0; i < dim(); ++i) s += (i ? ", " : "") + solvlie::to_string(basis_.row(i));
  s += "}";
  if (!constraints_.empty()) s += " where " + solvlie::to_string(constraints_);
  return s;
}

}  // namespace solvlie
