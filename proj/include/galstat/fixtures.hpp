#pragma once

#include <string>
#include <vector>

#include "galstat/family.hpp"

namespace galstat {

/// Registered fixture keys, sorted.
std::vector<std::string> fixture_names();

/// One-line description of a fixture. Errors: UnknownFixture.
std::string fixture_description(const std::string& key);

/// Instantiates a fixture over the given field. Errors: UnknownFixture.
FamilySpec make_fixture(const std::string& key, const FieldPtr& field);

}  // namespace galstat
