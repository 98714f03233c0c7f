#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solvlie/adjoint.hpp"
#include "solvlie/ideals.hpp"

namespace solvlie {

// Real algebras use the real ideal lattice, complex ones the complex lattice.
IdealLattice lattice_for(const LieAlgebra& g);

// A chart of 1-d subspaces whose generators all have the same shape.
struct CandidateForm {
  Element element;
  IdealStratum shape;
  Conditions constraints;  // exclude smaller shapes
};

std::vector<CandidateForm> candidate_forms_1d(const LieAlgebra& g, const IdealLattice& lattice);

struct ReductionStep {
  enum class Kind { Kill, Scale, Rotate, Align };
  Kind kind = Kind::Kill;
  std::vector<Element> generators;      // flows applied, innermost last
  std::vector<std::string> times;       // one time name per generator
  std::map<std::string, Scalar> times_solved;
  // Scale: u^exponent is set to unit_value (> 0).
  long exponent = 0;
  Scalar unit_value;
  Element before, after;  // normalized line generators
  Conditions branch;      // case split introduced by this step
  std::string describe(const LieAlgebra& g) const;
};

struct ReductionTrace {
  Element input;
  std::vector<ReductionStep> steps;
  Conditions case_splits;
  bool manual = false;  // a move was blocked (mixed generator or iteration limit)
  std::string note;
};

const char* step_kind_name(ReductionStep::Kind kind);

// Re-executes every step from the input and compares with the recorded output.
bool replay(const LieAlgebra& g, const ReductionTrace& trace);

struct InvariantSignature {
  std::vector<std::size_t> derived;        // dim(s cap g^(i))
  std::vector<std::size_t> lower_central;  // dim(s cap g^i)
  std::size_t center = 0;
  std::vector<std::size_t> lattice;        // dim(s cap I) over concrete proper lattice ideals
  std::size_t shape_dim = 0;               // smallest lattice ideal containing s
  std::size_t derived_dim = 0;             // dim [s, s]
  std::size_t normalizer_dim = 0;
  std::size_t centralizer_dim = 0;
  std::vector<std::size_t> ad_ranks;       // 1-d only: rank of ad(x)^k, k = 1..n

  bool operator==(const InvariantSignature& o) const;
  bool operator!=(const InvariantSignature& o) const { return !(*this == o); }
  std::string to_string() const;
};

InvariantSignature invariant_signature(const LieAlgebra& g, const Subspace& s, const IdealLattice& lattice);
InvariantSignature invariant_signature(const LieAlgebra& g, const Subspace& s);

struct SubalgebraClass {
  std::size_t dim = 0;
  Subspace representative;
  Conditions constraints;
  std::vector<std::string> labels;  // parameters kept as class labels
  InvariantSignature signature;
  std::vector<std::string> provenance;
  ReductionTrace trace;
  std::vector<std::string> flags;  // manual, possibly-conjugate, moduli-unverified, family
  std::string family;              // free line family this chart belongs to, if any

  bool has_flag(const std::string& f) const;
  std::string key() const;  // representative with labels renamed canonically
};

std::vector<std::pair<SubalgebraClass, ReductionTrace>> reduce_element(const LieAlgebra& g, const CandidateForm& form);
std::vector<SubalgebraClass> classify_1d(const LieAlgebra& g);
std::vector<SubalgebraClass> extend_class(const LieAlgebra& g, const SubalgebraClass& s);

// Parameter values with pattern proportional to v and every condition satisfied.
std::optional<std::map<std::string, Scalar>> match_line(const Vec& pattern, const Conditions& cs, const Vec& v);

// Reduces the concrete line <v> through its chart and returns the index of the
// 1-d class whose representative it lands on.
std::optional<std::size_t> locate_line(const LieAlgebra& g, const std::vector<CandidateForm>& forms,
                                       const std::vector<SubalgebraClass>& classes, const Element& v);

enum class Distinction { DistinctBySignature, DistinctByOrbit, PossiblyConjugate };
const char* distinction_name(Distinction d);

struct DistinctionResult {
  Distinction kind = Distinction::PossiblyConjugate;
  std::string reason;
};

DistinctionResult distinguish(const LieAlgebra& g, const SubalgebraClass& a, const SubalgebraClass& b);
// The orbit half of distinguish: is b outside the orbit of a under the chain word?
DistinctionResult distinguish_by_orbit(const LieAlgebra& g, const Subspace& a, const Subspace& b,
                                       const Conditions& assumptions = {});
// Looks for explicit flow times carrying a onto b; returns the solved assignment.
std::optional<std::map<std::string, Scalar>> find_conjugator(const LieAlgebra& g, const Subspace& a,
                                                             const Subspace& b);

struct PairCertificate {
  std::size_t dim, a, b;
  DistinctionResult result;
};

struct Classification {
  std::vector<std::vector<SubalgebraClass>> by_dim;  // index = dimension
  std::vector<PairCertificate> certificates;
  std::vector<std::string> merged;  // conjugate duplicates removed, with reason
};

Classification classify_all(const LieAlgebra& g, std::optional<std::size_t> max_dim = std::nullopt);

// x = t + n with t in t_part; returns a conjugate t + n' with [t, n'] = 0.
std::pair<Element, ReductionTrace> align_with_torus(const LieAlgebra& g, const Subspace& t_part,
                                                    const Subspace& n_ideal, const Element& x);

}  // namespace solvlie
