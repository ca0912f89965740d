#pragma once

// JSON forms of elements, algebras, morphisms and reports. Coefficients are
// written as "p/q" (or "p") strings so round trips are exact.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "fda/dgca.hpp"
#include "fda/report.hpp"

namespace fda {

using json = nlohmann::ordered_json;

/// [{"monomial": [["e0", 1], ["psi3", 2]], "coeff": "1/2"}, ...]
json to_json(const Element& x);
/// Throws Error(Errc::parse) on malformed input, Errc::unknown_generator.
Element element_from_json(const SignaturePtr& sig, const json& j);

json to_json(const AlgebraSignature& sig);
SignaturePtr signature_from_json(const json& j);

/// {"schema": "fda.dgca/1", "label": ..., "generators": [...], "differential": {name: element}}
json to_json(const SemifreeDGCA& a);
DGCAPtr dgca_from_json(const json& j);

/// {"schema": "fda.morphism/1", "source": dgca, "target": dgca, "images": {name: element}}
json to_json(const DGCAMorphism& f);
DGCAMorphism morphism_from_json(const json& j, Validation validation = Validation::eager);

/// Witnesses are stored with their generator list so they can be read back.
json to_json(const Report& r);
Report report_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

} // namespace fda
