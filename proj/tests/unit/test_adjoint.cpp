#include "doctest.h"

#include "corpus.hpp"
#include "solvlie/adjoint.hpp"
#include "solvlie/errors.hpp"

using namespace solvlie;

namespace {

Scalar P(const char* name) { return Scalar::param(name); }

// Rational parametrization of c^2 - d s^2 = 1.
std::map<std::string, Scalar> on_conic(const FlowGenerator& f) {
  Scalar m = P("m");
  Scalar d(f.planes.front().radicand);
  Scalar den = Scalar(1) - d * m * m;
  return {{f.cos_symbol(), (Scalar(1) + d * m * m) / den}, {f.sin_symbol(), Scalar(2) * m / den}};
}

void check_automorphism(const LieAlgebra& g, const Matrix& e) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      Element a = g.basis_element(i), b = g.basis_element(j);
      CHECK(e * g.bracket(a, b) == g.bracket(e * a, e * b));
    }
}

LieAlgebra jordan3() {
  LieAlgebra g("jordan3", {"X", "Y", "Z"});
  g.set_bracket(0, 1, unit_vec(3, 1));
  g.set_bracket(0, 2, unit_vec(3, 1) + unit_vec(3, 2));
  return g;
}

// ad X acts on <A, B, C, D> by a rotation block with a nilpotent coupling.
LieAlgebra coupled_rotation() {
  LieAlgebra g("coupled", {"X", "A", "B", "C", "D"});
  g.set_bracket(0, 1, unit_vec(5, 2));
  g.set_bracket(0, 2, Scalar(-1) * unit_vec(5, 1));
  g.set_bracket(0, 3, unit_vec(5, 4) + unit_vec(5, 1));
  g.set_bracket(0, 4, unit_vec(5, 2) - unit_vec(5, 3));
  return g;
}

}  // namespace

TEST_CASE("generator classification") {
  LieAlgebra h = corpus("heisenberg");
  auto fy = classify_generator(h, parse_element_expr(h, "Y"));
  CHECK(fy.kind == FlowGenerator::Kind::Unipotent);
  CHECK(fy.nilpotency_index == 2);
  CHECK(fy.matrix == adjoint_matrix(h, parse_element_expr(h, "Y")));
  CHECK(classify_generator(h, parse_element_expr(h, "Z")).nilpotency_index == 1);

  LieAlgebra l3 = corpus("lemma3d");
  auto fx = classify_generator(l3, parse_element_expr(l3, "X"));
  CHECK(fx.kind == FlowGenerator::Kind::Scaling);
  CHECK(fx.weights == std::vector<Rational>{0, 1, 2});

  LieAlgebra e41 = corpus("example41");
  auto fr = classify_generator(e41, parse_element_expr(e41, "X"));
  CHECK(fr.kind == FlowGenerator::Kind::Rotation);
  REQUIRE(fr.planes.size() == 1);
  CHECK(Subspace::span(3, {fr.planes[0].p, fr.planes[0].q}) == sub(e41, {"Y", "Z"}));
  CHECK(fr.full_circle);

  LieAlgebra r41 = corpus("remark41");
  auto fs = classify_generator(r41, parse_element_expr(r41, "X"));
  CHECK(fs.kind == FlowGenerator::Kind::Rotation);
  CHECK(fs.planes[0].alpha == 1);

  auto fj = classify_generator(jordan3(), unit_vec(3, 0));
  CHECK(fj.kind == FlowGenerator::Kind::Mixed);
  CHECK(fj.flowable);
  CHECK(fj.semisimple * fj.nilpotent == fj.nilpotent * fj.semisimple);

  auto fc = classify_generator(coupled_rotation(), unit_vec(5, 0));
  CHECK(fc.kind == FlowGenerator::Kind::Mixed);
  CHECK_FALSE(fc.flowable);
  CHECK(fc.obstruction.find("nilpotent part") != std::string::npos);
}

TEST_CASE("unipotent flows") {
  LieAlgebra l2 = corpus("lemma2d");
  auto fy = classify_generator(l2, parse_element_expr(l2, "Y"));
  // [Y, X] = -Y
  CHECK(flow_apply(fy, parse_element_expr(l2, "X + k*Y")) == parse_element_expr(l2, "X + k*Y - t*Y"));

  LieAlgebra h = corpus("heisenberg");
  auto f = classify_generator(h, parse_element_expr(h, "Y"));
  Element v = parse_element_expr(h, "X + k*Y + l*Z");
  CHECK(flow_apply(f, v) == v + P("t") * h.bracket(parse_element_expr(h, "Y"), v));

  for (const auto& name : corpus_names()) {
    LieAlgebra g = corpus(name);
    for (const auto& x : derived_series(g)[1].basis_vectors()) {
      auto fx = classify_generator(g, x);
      REQUIRE(fx.kind == FlowGenerator::Kind::Unipotent);
      Matrix e = flow_matrix(fx);
      check_automorphism(g, e);
      CHECK(e.substitute(fx.at_time_zero()) == Matrix::identity(g.dim()));
      Matrix es = e.substitute({{"t", P("s")}});
      CHECK(es * e == e.substitute({{"t", P("t") + P("s")}}));
    }
  }
}

TEST_CASE("scaling, rotation and mixed flows") {
  LieAlgebra l3 = corpus("lemma3d");
  auto fx = classify_generator(l3, parse_element_expr(l3, "X"));
  Scalar u = P("u_t");
  CHECK(flow_apply(fx, parse_element_expr(l3, "Y + k*Z")) == u * parse_element_expr(l3, "Y") + u * u * P("k") * parse_element_expr(l3, "Z"));
  check_automorphism(l3, flow_matrix(fx));
  CHECK(fx.relations().size() == 1);

  LieAlgebra e41 = corpus("example41");
  auto fr = classify_generator(e41, parse_element_expr(e41, "X"));
  CHECK(flow_apply(fr, parse_element_expr(e41, "Y")) == P("c_t") * parse_element_expr(e41, "Y") + P("s_t") * parse_element_expr(e41, "Z"));
  CHECK(flow_matrix(fr).substitute(fr.at_time_zero()) == Matrix::identity(3));
  check_automorphism(e41, flow_matrix(fr).substitute(on_conic(fr)));

  LieAlgebra r41 = corpus("remark41");
  auto fs = classify_generator(r41, parse_element_expr(r41, "X"));
  CHECK(flow_apply(fs, parse_element_expr(r41, "Y")) ==
        u * (P("c_t") * parse_element_expr(r41, "Y") + P("s_t") * parse_element_expr(r41, "Z")));
  check_automorphism(r41, flow_matrix(fs).substitute(on_conic(fs)));

  LieAlgebra j = jordan3();
  auto fj = classify_generator(j, unit_vec(3, 0));
  CHECK(flow_apply(fj, unit_vec(3, 2)) == u * (unit_vec(3, 2) + P("t") * unit_vec(3, 1)));
  check_automorphism(j, flow_matrix(fj));

  auto fc = classify_generator(coupled_rotation(), unit_vec(5, 0));
  CHECK_THROWS_AS(flow_apply(fc, unit_vec(5, 1)), Error);
}

TEST_CASE("exterior flows") {
  LieAlgebra g = corpus("example43");
  auto e = [&](const char* s) { return parse_element_expr(g, s); };
  auto f3 = classify_generator(g, e("e3"));
  Multivector m = exterior_flow_apply(f3, {e("e4"), e("e1"), e("e2")});
  CHECK(m.coords.size() == 2);
  CHECK(m.coefficient({3, 0, 1}) == Scalar(1));
  CHECK(m.coefficient({3, 0, 2}) == Scalar(3) * P("t"));
  CHECK(m.coefficient({0, 2, 3}) == Scalar(3) * P("t"));

  GroupWord w{{classify_generator(g, e("e1"), "s"), f3}};
  Multivector m2 = w.apply({e("e4"), e("e2")});
  CHECK(m2.coords.size() == 3);
  CHECK(m2.coefficient({3, 1}) == Scalar(1));
  CHECK(m2.coefficient({3, 2}) == Scalar(3) * P("t"));
  CHECK(m2.coefficient({3, 0}) == Scalar(-2) * P("s"));
  CHECK(m2.to_string(g.labels()) == "2*s*e1^e4 - e2^e4 - 3*t*e3^e4");

  LieAlgebra h = corpus("heisenberg");
  auto fz = classify_generator(h, parse_element_expr(h, "Z"));
  std::vector<Element> xy{parse_element_expr(h, "X + Z"), parse_element_expr(h, "Y")};
  CHECK(exterior_flow_apply(fz, xy) == Multivector::wedge(3, xy));

  Element v = e("e1 + 2*e2 - e4");
  Multivector one = exterior_flow_apply(f3, {v});
  Element moved = flow_apply(f3, v);
  for (std::size_t i = 0; i < 4; ++i) CHECK(one.coefficient({i}) == moved[i]);
}

TEST_CASE("normalizer chains") {
  LieAlgebra l3 = corpus("lemma3d");
  Element x = parse_element_expr(l3, "Y + k*Z");
  GroupWord w = normalizer_chain_factorization(l3, x);
  REQUIRE(w.factors.size() == 3);
  CHECK(w.factors[0].element == parse_element_expr(l3, "X"));
  // Z is the first echelon-complement vector of <Y + kZ>; its flow fixes x
  CHECK(w.factors[1].element == parse_element_expr(l3, "Z"));
  CHECK(flow_apply(w.factors[1], x) == x);
  CHECK(w.factors[2].element == x);
  CHECK(w.factors[2].time == "t1");

  LieAlgebra g = corpus("example43");
  Element y = parse_element_expr(g, "e1 + c*e3 + d*e4");
  GroupWord w43 = normalizer_chain_factorization(g, y);
  REQUIRE(w43.factors.size() == 4);
  CHECK(w43.factors[0].element == parse_element_expr(g, "e2"));
  CHECK(w43.factors[1].element == parse_element_expr(g, "e3"));
  CHECK(w43.factors[2].element == parse_element_expr(g, "e4"));
  // the factor generated by x fixes <x>
  CHECK(flow_apply(w43.factors[3], y) == y);

  Element xo = parse_element_expr(l3, "X");
  GroupWord wo = normalizer_chain_factorization(l3, xo);
  REQUIRE(wo.factors.size() == 3);
  CHECK(wo.factors[2].element == xo);
  CHECK(wo.factors[2].kind == FlowGenerator::Kind::Scaling);

  LieAlgebra ab("abelian", {"A", "B", "C"});
  CHECK(normalizer_chain_factorization(ab, unit_vec(3, 1)).factors.size() == 3);

  for (const auto& name : corpus_names()) {
    LieAlgebra c = corpus(name);
    for (std::size_t i = 0; i < c.dim(); ++i) {
      GroupWord cw = normalizer_chain_factorization(c, c.basis_element(i));
      CHECK(cw.factors.size() == c.dim());
      std::vector<Vec> els;
      for (const auto& f : cw.factors) els.push_back(f.element);
      CHECK(Subspace::span(c.dim(), els).dim() == c.dim());
    }
  }
}
