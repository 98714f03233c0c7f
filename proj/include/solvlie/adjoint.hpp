#pragma once

#include <map>
#include <string>
#include <vector>

#include "solvlie/liealg.hpp"

namespace solvlie {

// exp(t ad x) is kept exact with formal symbols derived from the time name T:
//   T      the time itself (polynomial entries, nilpotent parts)
//   u_T    e^{T/L}, positive, L the lcm of the real weight denominators
//   c_T    cos(T w0)
//   s_T    sin(T w0) / sqrt(-d), so that c_T^2 - d*s_T^2 = 1
// where w0 is the base angular speed of the rotation planes.
struct RotationPlane {
  Vec p, q;        // ad x p = alpha p + beta d q,  ad x q = beta p + alpha q
  Rational alpha;  // real part of the eigenvalue pair
  Rational beta;   // > 0; the pair is alpha +- beta sqrt(d)
  long radicand;   // d < 0
  long multiple;   // angular speed as a multiple of w0
};

struct FlowGenerator {
  enum class Kind { Unipotent, Scaling, Rotation, Mixed };

  Element element;
  Matrix matrix;  // ad(element)
  Kind kind = Kind::Mixed;
  std::string time = "t";

  std::size_t nilpotency_index = 0;  // Unipotent: matrix^index == 0

  // Scaling and flowable Mixed: generalized eigenbasis (columns) and weights.
  std::vector<Rational> weights;
  Matrix eigenbasis;

  // Rotation: planes with their angular data; real eigenvectors go to eigenbasis.
  std::vector<RotationPlane> planes;
  Rational base_speed_rational;  // w0 = base_speed_rational * sqrt(-d)
  bool full_circle = false;      // every angle is reached as the time varies

  // Mixed: flowable when the rational Jordan split exists.
  bool flowable = true;
  Matrix semisimple, nilpotent;
  std::string obstruction;

  Rational unit_denominator{1};  // L in u_T = e^{T/L}

  std::string unit_symbol() const { return "u_" + time; }
  std::string cos_symbol() const { return "c_" + time; }
  std::string sin_symbol() const { return "s_" + time; }
  // Exact relations satisfied by the formal symbols.
  Conditions relations() const;
  // Values of every formal symbol at time zero.
  std::map<std::string, Scalar> at_time_zero() const;
};

const char* flow_kind_name(FlowGenerator::Kind kind);

// Throws ParameterizedEntriesUnsupported when ad(x) has parameters and is not nilpotent.
FlowGenerator classify_generator(const LieAlgebra& g, const Element& x, const std::string& time = "t");

// The matrix of exp(time * ad x) with formal entries. Throws MixedGeneratorUnsupported.
Matrix flow_matrix(const FlowGenerator& f);
Element flow_apply(const FlowGenerator& f, const Element& v);

// Plucker coordinates of a decomposable multivector, keyed by ascending index tuples.
struct Multivector {
  std::size_t ambient = 0;
  std::size_t degree = 0;
  std::map<std::vector<std::size_t>, Scalar> coords;  // nonzero entries only

  static Multivector wedge(std::size_t ambient, const std::vector<Element>& factors);
  // Coefficient of e_{i1} ^ ... ^ e_{ik} for any index order (sign applied).
  Scalar coefficient(const std::vector<std::size_t>& indices) const;
  bool operator==(const Multivector& o) const { return ambient == o.ambient && degree == o.degree && coords == o.coords; }
  std::string to_string(const std::vector<std::string>& labels) const;
};

Multivector exterior_flow_apply(const FlowGenerator& f, const std::vector<Element>& wedge);

// exp(t_n ad X_n) ... exp(t_1 ad X_1); factors are stored left to right as written,
// so the last factor acts first.
struct GroupWord {
  std::vector<FlowGenerator> factors;

  Element apply(const Element& v) const;
  Multivector apply(const std::vector<Element>& wedge) const;
  std::string to_string(const LieAlgebra& g) const;
};

GroupWord normalizer_chain_factorization(const LieAlgebra& g, const Element& x);

}  // namespace solvlie
