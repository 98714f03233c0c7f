#pragma once

#include <string>

#include "json.hpp"
#include "solvlie/conjugacy.hpp"
#include "solvlie/finite_field.hpp"

namespace solvlie::report {

using nlohmann::json;

inline constexpr const char* kFormat = "solvlie-report";
inline constexpr int kVersion = 1;

json conditions_to_json(const Conditions& cs);
Conditions conditions_from_json(const json& j);

json subspace_to_json(const LieAlgebra& g, const Subspace& s);
Subspace subspace_from_json(const LieAlgebra& g, const json& j);

json check_to_json(const LieAlgebra& g);
std::string check_to_text(const LieAlgebra& g);

json lattice_to_json(const LieAlgebra& g, const IdealLattice& lat, bool real);
IdealLattice lattice_from_json(const LieAlgebra& g, const json& j);
std::string lattice_to_text(const LieAlgebra& g, const IdealLattice& lat, bool real);
std::string lattice_to_dot(const LieAlgebra& g, const IdealLattice& lat);

json classification_to_json(const LieAlgebra& g, const Classification& c, bool traces);
Classification classification_from_json(const LieAlgebra& g, const json& j);
std::string classification_to_text(const LieAlgebra& g, const Classification& c, bool traces);
std::string classification_to_dot(const LieAlgebra& g, const Classification& c);

json oracle_to_json(const LieAlgebra& g, const OracleReport& r);
std::string oracle_to_text(const LieAlgebra& g, const OracleReport& r);

// Wraps a payload with the format tag, version, command and the algebra text.
json envelope(const std::string& command, const LieAlgebra& g, json payload);
// Checks the tag and version; returns the algebra parsed from the envelope.
LieAlgebra algebra_from_envelope(const json& j);

json error_object(const std::string& kind, const std::string& message, int exit_code);

}  // namespace solvlie::report
