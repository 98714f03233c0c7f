#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solvlie/scalar.hpp"

namespace solvlie {

using Vec = std::vector<Scalar>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
bool is_zero(const Vec& v);
std::set<std::string> params_of(const Vec& v);
Vec substitute(const Vec& v, const std::map<std::string, Scalar>& values);
Vec conjugate(const Vec& v);
std::string to_string(const Vec& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  std::vector<Vec> row_list() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_parameter_free() const;
  Matrix substitute(const std::map<std::string, Scalar>& values) const;
  // Throws DivisionByZero for singular input (parameter-free only).
  Matrix inverse() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::optional<Matrix> solution;
  // Pivot entries assumed nonzero on the returned (generic) branch.
  Conditions case_splits;
};

// Reduced row-echelon form of m; when rhs is given, also solves m * x = rhs
// (throws Inconsistent when there is no solution).
RrefResult rref_and_solve(const Matrix& m, const std::optional<Matrix>& rhs = std::nullopt,
                          const Conditions& assumptions = {});

// Basis (as rows) of {x : m x = 0}.
std::vector<Vec> kernel(const Matrix& m, const Conditions& assumptions = {});
std::size_t rank(const Matrix& m, const Conditions& assumptions = {});

// Row space in canonical reduced echelon form.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors, const Conditions& assumptions = {});
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> basis_vectors() const { return basis_.row_list(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Conditions& constraints() const { return constraints_; }
  void add_constraints(const Conditions& cs);

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  // Coordinates of v (assumed contained) in the echelon basis.
  Vec coordinates(const Vec& v) const;
  // Residual of v after clearing the pivot columns.
  Vec reduce(const Vec& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  // Unit vectors at the non-pivot columns.
  std::vector<Vec> complement_vectors() const;
  // Vectors completing this basis to a basis of `outer` (which contains it).
  std::vector<Vec> complement_in(const Subspace& outer) const;
  // {x : <x, b> = 0 for all basis rows b}.
  Subspace annihilator() const;

  std::set<std::string> params() const;
  bool is_parameter_free() const { return params().empty(); }
  Subspace substitute(const std::map<std::string, Scalar>& values) const;
  Subspace conjugate() const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  std::string key() const;
  std::string to_string() const;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  Conditions constraints_;
};

// Dense univariate polynomial, ascending coefficients.
struct UniPoly {
  std::vector<Scalar> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar evaluate(const Scalar& x) const;
  UniPoly operator*(const UniPoly& o) const;
  bool operator==(const UniPoly& o) const { return coeffs == o.coeffs; }
  std::string to_string(const std::string& var = "t") const;
};

UniPoly char_poly(const Matrix& m);

struct PolyFactor {
  UniPoly factor;  // monic, degree 1 or 2
  int multiplicity = 1;
  // Discriminant (degree 2 only).
  Rational discriminant() const;
  std::vector<Quad> roots() const;
};

std::vector<PolyFactor> factor_char_poly(const UniPoly& p);

// Distinct eigenvalues of a parameter-free matrix, with algebraic multiplicity.
std::vector<std::pair<Quad, int>> eigenvalues(const Matrix& m);

struct Eigenspace {
  std::vector<Scalar> weight;
  Subspace space;
};

// Joint eigenspaces of a commuting family acting on column vectors,
// restricted to `space`.
std::vector<Eigenspace> simultaneous_eigenspaces(const std::vector<Matrix>& family, const Subspace& space);

}  // namespace solvlie
