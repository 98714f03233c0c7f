#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "solvlie/liealg.hpp"

namespace solvlie {

// Fresh parameter names that avoid basis labels and names already in use.
class ParamPool {
 public:
  ParamPool() = default;
  explicit ParamPool(const std::vector<std::string>& reserved) : used_(reserved.begin(), reserved.end()) {}
  std::string fresh();
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }

 private:
  std::set<std::string> used_;
  std::size_t next_ = 0;
};

// base + U for every U in Gr(free_dim, free_space); concrete when free_dim == 0.
struct IdealStratum {
  Subspace base;
  Subspace free_space;  // complement to base, reduced modulo base
  std::size_t free_dim = 0;
  Conditions constraints;
  std::vector<std::string> provenance;
  std::string parent;   // key of the stratum this one was extended from
  bool nested = false;  // base depends on parameters from an earlier free choice

  std::size_t dim() const { return base.dim() + free_dim; }
  bool is_concrete() const { return free_dim == 0; }
  Subspace envelope() const;
  std::string key() const;
};

IdealStratum concrete_stratum(const Subspace& s);
// Applies the canonical form: reduced free space, full-free strata made concrete.
IdealStratum canonical_stratum(IdealStratum s);

struct LatticeEdge {
  std::size_t from, to;  // indices into strata, from.dim < to.dim
  bool every;            // every instantiation of `from` lies in every one of `to`
};

struct IdealLattice {
  std::vector<IdealStratum> strata;  // sorted by dimension, includes 0 and g
  std::vector<LatticeEdge> edges;
  std::vector<int> real_jumps;       // real enumeration only: dimension jumps along chains

  std::vector<const IdealStratum*> of_dim(std::size_t d) const;
  std::vector<const IdealStratum*> proper() const;
};

std::vector<IdealStratum> one_dim_ideals(const LieAlgebra& g);
std::vector<IdealStratum> extend_ideals(const LieAlgebra& g, const std::vector<IdealStratum>& known, ParamPool& pool);
IdealLattice enumerate_ideals(const LieAlgebra& g, std::optional<std::size_t> max_dim = std::nullopt);
IdealLattice enumerate_ideals_real(const LieAlgebra& g, std::optional<std::size_t> max_dim = std::nullopt);

// Schubert cells of Gr(k, span(vectors)) as parameterized bases.
std::vector<std::vector<Vec>> schubert_cells(const std::vector<Vec>& vectors, std::size_t k, ParamPool& pool);

// Affine charts covering a stratum (one per Schubert cell of its free part).
std::vector<Subspace> expand_charts(const IdealStratum& s, ParamPool& pool);

// Instantiates a stratum's free part with given coordinates (used by tests and sampling).
Subspace instantiate(const IdealStratum& s, const std::vector<Vec>& free_rows);

// Smallest lattice ideal containing x. Throws AmbiguousUnderConstraints when
// membership depends on parameters not settled by `assumptions`.
Subspace shape_of(const LieAlgebra& g, const Element& x, const IdealLattice& lattice,
                  const Conditions& assumptions = {});

}  // namespace solvlie
