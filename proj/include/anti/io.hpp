#pragma once

#include <string>

#include <json.hpp>

#include "anti/algebra.hpp"
#include "anti/axioms.hpp"

namespace anti {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Algebra file format (canonical, byte-stable):
// { "basis": [{"label": str, "parity": 0|1}, ...],
//   "bracket": bool (optional, default false),
//   "field": {"kind": "Q"} | {"kind": "Qsqrt", "d": int},
//   "name": str,
//   "products": [{"i": int, "j": int, "terms": [{"c": "n/d", "k": int}, ...]}, ...],
//   "window": null | {"N": int, "kind": str} }
// Only pairs i <= j are stored; missing pair means zero (total algebras) or
// undefined-outside-window (windowed algebras).
nlohmann::json algebra_to_json(const GradedAlgebra& alg);
GradedAlgebra algebra_from_json(const nlohmann::json& j);

std::string algebra_to_string(const GradedAlgebra& alg); // canonical dump
GradedAlgebra algebra_from_string(const std::string& text);

nlohmann::json identity_report_to_json(const IdentityReport& r);
nlohmann::json axiom_report_to_json(const AxiomReport& r);
nlohmann::json super_report_to_json(const SuperReport& r);
nlohmann::json structure_report_to_json(const GradedAlgebra& alg, const StructureReport& r);

std::string canonical_dump(const nlohmann::json& j); // sorted keys, stable spacing

} // namespace anti
