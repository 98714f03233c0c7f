#include "doctest.h"

#include <random>

#include "solvlie/errors.hpp"
#include "solvlie/linalg.hpp"

using namespace solvlie;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> rs;
  for (auto r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    rs.push_back(v);
  }
  return Matrix::from_rows(rs, rs.front().size());
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(d(rng));
  return m;
}

UniPoly upoly(std::initializer_list<long> asc) {
  UniPoly p;
  for (long c : asc) p.coeffs.emplace_back(c);
  return p;
}

}  // namespace

TEST_CASE("rref basics") {
  auto r = rref_and_solve(mat({{2, 4}, {1, 2}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.rref.row(0) == Vec{Scalar(1), Scalar(2)});

  auto s = rref_and_solve(Matrix::identity(4), Matrix::from_columns({unit_vec(4, 2)}, 4));
  CHECK(s.solution->column(0) == unit_vec(4, 2));

  CHECK_THROWS_AS(rref_and_solve(mat({{1, 1}, {1, 1}}), mat({{1}, {2}})), Error);
}

TEST_CASE("parameterized pivots record case splits") {
  Scalar k = Scalar::param("k");
  Matrix m(2, 2);
  m(0, 0) = k;
  m(0, 1) = Scalar(1);
  m(1, 1) = Scalar(1);
  auto r = rref_and_solve(m);
  CHECK(r.pivots.size() == 2);
  REQUIRE(r.case_splits.size() == 1);
  CHECK(r.case_splits[0] == Condition::nonzero(k));
  // Degenerate and generic instances agree with the recorded split.
  CHECK(rank(m.substitute({{"k", Scalar(0)}})) == 1);
  CHECK(rank(m.substitute({{"k", Scalar(1)}})) == 2);
  // No split when the assumption already covers it.
  CHECK(rref_and_solve(m, std::nullopt, {Condition::nonzero(k)}).case_splits.empty());
}

TEST_CASE("rref is idempotent") {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    Matrix m = random_matrix(rng, 3, 5, -3, 3);
    auto once = rref_and_solve(m).rref;
    CHECK(rref_and_solve(once).rref == once);
  }
}

TEST_CASE("subspace operations") {
  Subspace a = Subspace::span(3, {unit_vec(3, 0)});
  Subspace b = Subspace::span(3, {unit_vec(3, 1)});
  CHECK((a + b) == Subspace::span(3, {unit_vec(3, 0), unit_vec(3, 1)}));
  Subspace c = Subspace::span(3, {unit_vec(3, 0), unit_vec(3, 1)});
  Subspace d = Subspace::span(3, {unit_vec(3, 1), unit_vec(3, 2)});
  CHECK(c.intersect(d) == b);
  CHECK(c.complement_vectors() == std::vector<Vec>{unit_vec(3, 2)});
  CHECK_THROWS_AS(a + Subspace(4), Error);
}

TEST_CASE("dimension formula on random rational subspaces") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dimd(0, 4);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 5;
    auto gen = [&]() {
      std::size_t k = dimd(rng);
      std::vector<Vec> rows;
      Matrix m = random_matrix(rng, k, n, -2, 2);
      for (std::size_t i = 0; i < k; ++i) rows.push_back(m.row(i));
      return Subspace::span(n, rows);
    };
    Subspace a = gen(), b = gen();
    Subspace s = a + b, i = a.intersect(b);
    CHECK(a.dim() + b.dim() == s.dim() + i.dim());
    CHECK(s.contains(a));
    CHECK(a.contains(i));
    CHECK(b.contains(i));
  }
}

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(mat({{0, 1}, {-1, 0}})) == upoly({1, 0, 1}));
  CHECK(char_poly(mat({{1, 0}, {0, 2}})) == upoly({2, -3, 1}));
  CHECK(char_poly(mat({{0, 1}, {0, 0}})) == upoly({0, 0, 1}));
  Matrix k(1, 1);
  k(0, 0) = Scalar::param("k");
  CHECK_THROWS_AS(char_poly(k), Error);
}

TEST_CASE("characteristic polynomial is a similarity invariant") {
  std::mt19937 rng(11);
  int tried = 0;
  while (tried < 30) {
    Matrix p = random_matrix(rng, 4, 4, -2, 2);
    if (rank(p) < 4) continue;
    ++tried;
    Matrix m = random_matrix(rng, 4, 4, -3, 3);
    CHECK(char_poly(p * m * p.inverse()) == char_poly(m));
  }
}

TEST_CASE("factoring") {
  auto f = factor_char_poly(upoly({1, 0, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].discriminant() == -4);
  auto roots = f[0].roots();
  CHECK(roots[0] == Quad::sqrt_of(Rational(-1)));
  CHECK(roots[1] == -Quad::sqrt_of(Rational(-1)));

  auto g = factor_char_poly(upoly({0, -1, 0, 1}));
  CHECK(g.size() == 3);

  // t^3 - 2 satisfies Eisenstein at 2, so it is irreducible over Q.
  UniPoly cubic = upoly({-2, 0, 0, 1});
  bool eisenstein = true;
  for (int i = 0; i < 3; ++i) eisenstein = eisenstein && (cubic.coeffs[i].rational_value().get_num() % 2 == 0);
  eisenstein = eisenstein && cubic.coeffs[0].rational_value().get_num() % 4 != 0;
  CHECK(eisenstein);
  CHECK_THROWS_AS(factor_char_poly(cubic), Error);

  // (t^2+1)(t^2-2)(t-3)^2 reconstructs from its factors
  UniPoly p = upoly({1, 0, 1}) * upoly({-2, 0, 1}) * upoly({-3, 1}) * upoly({-3, 1});
  UniPoly prod = upoly({1});
  for (const auto& pf : factor_char_poly(p))
    for (int i = 0; i < pf.multiplicity; ++i) prod = prod * pf.factor;
  CHECK(prod == p);
}

TEST_CASE("simultaneous eigenspaces") {
  // ad X on <Y, Z> for [X,Y]=Y, [X,Z]=2Z
  Matrix adx = mat({{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  Subspace yz = Subspace::span(3, {unit_vec(3, 1), unit_vec(3, 2)});
  auto es = simultaneous_eigenspaces({adx}, yz);
  REQUIRE(es.size() == 2);
  CHECK(es[0].weight == std::vector<Scalar>{Scalar(1)});
  CHECK(es[0].space == Subspace::span(3, {unit_vec(3, 1)}));
  CHECK(es[1].weight == std::vector<Scalar>{Scalar(2)});

  // rotation on the plane
  Matrix rot = mat({{0, 1}, {-1, 0}});
  auto rs = simultaneous_eigenspaces({rot}, Subspace::full(2));
  REQUIRE(rs.size() == 2);
  for (const auto& e : rs) {
    CHECK(e.space.dim() == 1);
    Vec v = e.space.basis_vectors()[0];
    CHECK(rot * v == e.weight[0] * v);
  }

  auto zs = simultaneous_eigenspaces({Matrix(3, 3)}, Subspace::full(3));
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].space.dim() == 3);
  CHECK(zs[0].weight[0].is_zero());

  CHECK_THROWS_AS(simultaneous_eigenspaces({mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})}, Subspace::full(2)), Error);
}
