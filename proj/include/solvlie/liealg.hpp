#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvlie/linalg.hpp"

namespace solvlie {

using Element = Vec;

class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::string name, std::vector<std::string> labels, long field_radicand = 0);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // 0 for the rational (real) tag, otherwise the radicand of the scalar field.
  long field_radicand() const { return field_radicand_; }
  bool is_complex() const { return field_radicand_ < 0; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  // [e_i, e_j] = v; the reversed pair is derived by sign.
  void set_bracket(std::size_t i, std::size_t j, const Vec& v);
  Vec bracket_basis(std::size_t i, std::size_t j) const;
  Element bracket(const Element& x, const Element& y) const;
  Element basis_element(std::size_t i) const { return unit_vec(dim(), i); }

  // Optional hints carried by the input file.
  std::vector<Element> torus_hint;
  std::vector<Element> nilradical_hint;

  std::string element_to_string(const Element& x) const;
  bool is_parameter_free() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  long field_radicand_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, Vec> c_;
  mutable std::shared_ptr<const std::vector<Subspace>> derived_cache_;

  friend std::vector<Subspace> derived_series(const LieAlgebra& g);
};

struct JacobiViolation {
  std::size_t i, j, k;
  Element residual;
};

std::optional<JacobiViolation> jacobi_check(const LieAlgebra& g);

Matrix adjoint_matrix(const LieAlgebra& g, const Element& x);
// span{[a, b] : a in A, b in B}
Subspace bracket_space(const LieAlgebra& g, const Subspace& a, const Subspace& b);

std::vector<Subspace> derived_series(const LieAlgebra& g);
std::vector<Subspace> lower_central_series(const LieAlgebra& g);
Subspace center(const LieAlgebra& g);
bool is_solvable(const LieAlgebra& g);
bool is_nilpotent(const LieAlgebra& g);
bool is_abelian(const LieAlgebra& g);
// Throws NotSolvable.
void require_solvable(const LieAlgebra& g);

Subspace centralizer(const LieAlgebra& g, const Subspace& s);
// Throws NotASubalgebra.
Subspace normalizer(const LieAlgebra& g, const Subspace& s);

struct PredicateResult {
  enum class Status { Always, Never, Conditional };
  Status status = Status::Always;
  // For Conditional: equations (Zero conditions) under which it holds.
  Conditions when;
  explicit operator bool() const { return status == Status::Always; }
};

PredicateResult is_subalgebra(const LieAlgebra& g, const Subspace& s);
PredicateResult is_ideal(const LieAlgebra& g, const Subspace& s);

// g / I with basis the echelon complement of I (ambient order).
struct QuotientMap {
  LieAlgebra target;
  Subspace ideal;
  std::vector<std::size_t> complement;  // ambient indices lifting target basis
  Matrix section;                       // columns: lifts of target basis

  Element project(const Element& x) const;
  Element lift(const Element& y) const;
  Subspace project(const Subspace& s) const;
  // Preimage of a target subspace (contains the ideal).
  Subspace pullback(const Subspace& s) const;
};

QuotientMap quotient(const LieAlgebra& g, const Subspace& ideal);

LieAlgebra complexify(const LieAlgebra& g);
Subspace real_points(const LieAlgebra& gc, const Subspace& s);

// A subalgebra viewed as a Lie algebra on its echelon basis.
struct SubalgebraView {
  LieAlgebra algebra;
  Subspace space;
  std::vector<Element> basis;  // ambient vectors, one per algebra basis element

  Element to_ambient(const Element& y) const;
  Element to_local(const Element& x) const;
  Subspace to_ambient(const Subspace& s) const;
};

SubalgebraView subalgebra_as_algebra(const LieAlgebra& g, const Subspace& s);

}  // namespace solvlie
