#pragma once

#include <filesystem>

#include "json.hpp"

#include "galstat/family.hpp"

namespace galstat {

using Json = nlohmann::ordered_json;

/// {"p", "nu"} plus "modulus" (low-to-high) for proper extensions.
Json field_to_json(const FiniteField& F);
/// Errors: ParseError, NonPrimeCharacteristic, UnsupportedSize.
FieldPtr field_from_json(const Json& j);

/// Prime-subfield elements serialize as integers, others as coordinate arrays.
Json elem_to_json(const FiniteField& F, FieldElem a);
/// Accepts an integer (reduced into the prime subfield) or a coordinate array.
/// Errors: ParseError.
FieldElem elem_from_json(const FiniteField& F, const Json& j);

Json poly_to_json(const Poly& f);
Poly poly_from_json(const FieldPtr& field, const Json& j);

/// {"field", "F": {"n", "coeffs_x"}, "phi": {"d", "support"}, "fixture"}.
Json family_to_json(const FamilySpec& spec);
/// When "fixture" is a string the fixture is instantiated over "field" and the
/// remaining keys are ignored.
/// Errors: ParseError, UnknownFixture, InvalidFamily.
FamilySpec family_from_json(const Json& j);
/// Errors: IoFailure, plus those of family_from_json.
FamilySpec load_family_file(const std::filesystem::path& path);

}  // namespace galstat
