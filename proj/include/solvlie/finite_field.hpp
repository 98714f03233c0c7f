#pragma once

#include <string>
#include <vector>

#include "solvlie/ideals.hpp"

namespace solvlie {

struct OracleReport {
  long prime = 0;
  bool skipped = false;
  std::string reason;
  std::vector<long long> counted;    // ideals of each dimension over F_p, exhaustive
  std::vector<long long> predicted;  // from the strata (Gaussian binomials)
  std::vector<bool> predictable;     // false where a stratum has no count formula

  bool agrees() const;
};

// Number of f-dimensional subspaces of F_q^w.
long long gaussian_binomial(long long w, long long f, long long q);

// Transplants g to F_p and counts ideals of every dimension by exhaustive
// enumeration of reduced echelon bases; compares with the lattice strata.
OracleReport finite_field_oracle(const LieAlgebra& g, const IdealLattice& lattice, long p);

}  // namespace solvlie
