#pragma once

#include <string>

#include "solvlie/liealg.hpp"

namespace solvlie {

// Scalar text: integers, a/b, parameters, sqrt(n), + - * / ^ and parentheses.
Scalar parse_scalar(const std::string& text);

// Linear combination of basis labels, e.g. "e1 + c*e3 + d*e4" or "X + 2Y".
Element parse_element_expr(const LieAlgebra& g, const std::string& text);

// Algebra file grammar (one directive per line, '#' starts a comment):
//   name <identifier>
//   field rational | quad:<d>
//   basis <label> <label> ...
//   bracket <a> <b> -> <element expression>   (a, b: labels or 0-based indices)
//   torus <label> ...       (optional hints)
//   nilradical <label> ...
LieAlgebra parse_algebra_text(const std::string& text);
LieAlgebra parse_algebra_file(const std::string& path);

std::string serialize_algebra(const LieAlgebra& g);

// Subspace as "<v1, v2, ...>" in algebra labels.
std::string subspace_to_string(const LieAlgebra& g, const Subspace& s);

}  // namespace solvlie
