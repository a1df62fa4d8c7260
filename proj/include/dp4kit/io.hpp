#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dp4kit/census.hpp"
#include "dp4kit/fibration.hpp"
#include "dp4kit/lattice.hpp"
#include "dp4kit/pencil.hpp"
#include "dp4kit/quintic.hpp"

namespace dp4kit {

// Insertion-ordered so that output is byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dp4kit/1";

// {"p": 101, "k": 1}; rationals are {"p": 0, "k": 1}.  Extension fields also
// carry their modulus (low-to-high), checked on input when present.
Json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

// Finite fields: the packed index (an integer in [0, q)).  Q: "a/b" string
// or integer.  Plain integers are reduced for prime fields.
Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const FieldSpec& f, const Json& j);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const FieldSpec& f, const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldSpec& f, const Json& j);

Json pencil_to_json(const QuadricPencil& p);
QuadricPencil pencil_from_json(const Json& j);

// A bare array of six coefficients (field from the caller) or
// {"field": ..., "coeffs": [...]}.
BinaryForm quintic_from_json(const Json& j, const FieldSpec& default_field);
Json binary_form_to_json(const BinaryForm& f);
Json unipoly_to_json(const UniPoly& p);

// {"vars": [...], "terms": [[[e_0, ..., e_m], c], ...]}
Json multipoly_to_json(const MultiPoly& p);
MultiPoly multipoly_from_json(const FieldSpec& f, const Json& j);

Json model_to_json(const FibrationModel& m);
FibrationModel model_from_json(const Json& j);

Json gram_to_json(const GramTable& t);
GramTable gram_from_json(const Json& j);

// Four symmetric 5x5 matrices: {"field": ..., "quadrics": [...]}.
std::vector<Matrix> quadrics_from_json(const Json& j);

Json section_to_json(const SectionCandidate& s);
Json line_to_json(const Line& l);
Json singular_point_to_json(const SingularPoint& s);
Json verdict_to_json(const StabilityVerdict& v);
Json moduli_point_to_json(const WeightedModuliPoint& w);

// Reports shared by the CLI and the Python module.
Json numerology_to_json(const NumerologyReport& r);
Json cases_to_json(int n);
Json discriminant_to_json(const FibrationModel& m, const DiscriminantProfile& d);
// elapsed_ms only when timing is set, so that output is reproducible.
Json census_to_json(const FibrationModel& m, const CensusReport& r, const CensusOptions& o, bool timing);
Json base_points_to_json(const BasePointResult& r);
Json figure1_to_json(const FibrationModel& m, const Figure1Result& r);
Json expected_dims_to_json();

Json read_json_file(const std::string& path);

}  // namespace dp4kit
