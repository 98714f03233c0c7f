#include "doctest.h"

#include "corpus.hpp"
#include "solvlie/errors.hpp"

using namespace solvlie;

TEST_CASE("scalar text") {
  CHECK(parse_scalar("1/2 + 1/3") == Scalar::rational(5, 6));
  CHECK(parse_scalar("k^2 - 1") == Scalar::param("k") * Scalar::param("k") - 1);
  CHECK(parse_scalar("sqrt(-1)^2") == Scalar(-1));
  CHECK(parse_scalar("2(k + 1)") == 2 * Scalar::param("k") + 2);
  CHECK(parse_scalar("(k + 1)/(k - 1)").denominator() == Poly::variable("k") - Poly(Quad(1)));
  CHECK_THROWS_AS(parse_scalar("1 +"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 $ 2"), ParseError);
}

TEST_CASE("scalar text round trip") {
  for (const char* s : {"k^2 - 2*k*l + 3", "1/(k + 1)", "(1 + sqrt(2))*k", "-k/l", "3/4", "(k - 1/2)/(l^2 + 1)"}) {
    Scalar x = parse_scalar(s);
    CHECK(parse_scalar(x.to_string()) == x);
  }
}

TEST_CASE("element expressions") {
  LieAlgebra h = corpus("heisenberg");
  CHECK(parse_element_expr(h, "X + 2Y") == Vec{Scalar(1), Scalar(2), Scalar(0)});
  LieAlgebra e = corpus("example43");
  Vec v = parse_element_expr(e, "e1 + c*e3 + d*e4");
  CHECK(params_of(v) == std::set<std::string>{"c", "d"});
  try {
    parse_element_expr(h, "X + Q");
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::UnknownLabel);
  }
  CHECK_THROWS_AS(parse_element_expr(e, "e1 + e5"), Error);
  CHECK_THROWS_AS(parse_element_expr(h, "X*Y"), ParseError);
  CHECK_THROWS_AS(parse_element_expr(h, "X + 1"), ParseError);
}

TEST_CASE("algebra files") {
  LieAlgebra h = corpus("heisenberg");
  CHECK(h.dim() == 3);
  CHECK(is_nilpotent(h));

  CHECK_THROWS_AS(parse_algebra_text("basis X Y\nbracket X Y -> Y\nbracket Y X -> X\n"), Error);
  try {
    parse_algebra_text("basis X Y\nbracket X Y -> Y\nbracket Y X -> X\n");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DuplicateBracket);
  }
  try {
    parse_algebra_text("basis X Y\nbracket X W -> Y\n");
    CHECK(false);
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
    CHECK(err.column() == 11);
  }
  CHECK_THROWS_AS(parse_algebra_text("name x\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra_text("basis X X\n"), ParseError);

  LieAlgebra e = corpus("example43");
  auto ev = eigenvalues(adjoint_matrix(e, e.basis_element(1)));
  std::vector<Quad> vals;
  for (const auto& [q, m] : ev) vals.push_back(q);
  CHECK(vals == std::vector<Quad>{Quad(-3), Quad(-1), Quad(0), Quad(2)});
}

TEST_CASE("tampered table violates Jacobi") {
  const char* text =
      "basis e1 e2 e3 e4\n"
      "bracket e1 e2 -> -2e1\n"
      "bracket e1 e3 -> -e3\n"
      "bracket e2 e3 -> -3e3\n"
      "bracket e2 e4 -> -e4\n";
  try {
    parse_algebra_text(text);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::JacobiViolation);
    CHECK(std::string(err.what()).find("(e1, e2, e3)") != std::string::npos);
  }
}

TEST_CASE("corpus round trip") {
  for (const auto& name : corpus_names()) {
    LieAlgebra g = corpus(name);
    std::string text = serialize_algebra(g);
    LieAlgebra back = parse_algebra_text(text);
    CHECK(serialize_algebra(back) == text);
    CHECK(back.labels() == g.labels());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) CHECK(back.bracket_basis(i, j) == g.bracket_basis(i, j));
  }
}
