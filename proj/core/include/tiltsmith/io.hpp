#pragma once

#include "tiltsmith/smc.hpp"
#include "tiltsmith/tilting.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace tiltsmith {

using json = nlohmann::json;

// Field elements: an integer in the prime field, or a list of polynomial
// coefficients over GF(p), little-endian by degree.
json fq_to_json(const FqField& f, Fq a);
Fq fq_from_json(const FqField& f, const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& f, const json& j, int rows = -1, int cols = -1);

json field_to_json(const FqField& f);
FieldPtr field_from_json(const json& j);

/// {field, dim, labels, unit, structure: [[i,j,k,coeff]], sym_form}; an
/// optional "simples" list [{label, dim, action}] fixes the simple labels.
json algebra_to_json(const Algebra& a, const SimpleRegistry* reg = nullptr);
AlgebraPtr algebra_from_json(const json& j);

/// {algebra_ref, dim, action: [one matrix per basis element]}.
json module_to_json(const ModuleRep& m, const std::string& algebra_ref = "");
ModuleRep module_from_json(const json& j, const AlgebraPtr& alg);

/// The registry for an algebra file: its "simples" if present, otherwise
/// the simples found by find_simples.
RegistryPtr registry_from_json(const json& j, const AlgebraPtr& alg);

/// {terms: {deg: module | {projectives: [labels]}}, diffs: {deg: matrix},
/// certified_below}. A module file is read as a stalk in degree
/// j.value("degree", 0).
json complex_to_json(const Complex& c);
Complex object_from_json(const json& j, const RegistryPtr& reg);

json certificate_to_json(const GenerationCertificate& c);
GenerationCertificate certificate_from_json(const json& j, const FieldPtr& f);

json ab_report_to_json(const ABReport& r);
json generation_report_to_json(const GenerationReport& r);
json tilting_report_to_json(const TiltingReport& r);
json projcomplex_to_json(const ProjComplex& c);

/// Reads and parses a file; Config errors name the path.
json read_json_file(const std::filesystem::path& p);

}  // namespace tiltsmith
