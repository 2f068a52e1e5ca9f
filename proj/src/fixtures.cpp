#include "galstat/fixtures.hpp"

#include <map>

#include "galstat/error.hpp"

namespace galstat {

namespace {

struct Fixture {
    std::string description;
    // coeffs_x as integer t-polynomials, low-to-high in both variables.
    std::vector<std::vector<std::int64_t>> F;
    GenericTemplate phi;
};

const std::map<std::string, Fixture>& registry() {
    static const std::map<std::string, Fixture> fixtures{
        {"chowla-n3", {"t^3 + t + a", {{0, 1}, {1}}, {3, {0}}}},
        {"compose-demo", {"F = x^2 - t composed with t^2 + a1 t + a0", {{0, -1}, {0}, {1}}, {2, {0, 1}}}},
        {"serre-psl32", {"t^7 + a t^3 + 1", {{1}, {1}}, {7, {3}}}},
        {"linear", {"t + a0", {{0}, {1}}, {1, {0}}}},
        {"quadratic", {"t^2 + a1 t + a0", {{0}, {1}}, {2, {0, 1}}}},
        {"cubic", {"t^3 + a1 t + a0", {{0}, {1}}, {3, {0, 1}}}},
        {"quartic", {"t^4 + a2 t^2 + a1 t + a0", {{0}, {1}}, {4, {0, 1, 2}}}},
    };
    return fixtures;
}

const Fixture& lookup(const std::string& key) {
    const auto& reg = registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + key + "'");
    return it->second;
}

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

std::string fixture_description(const std::string& key) { return lookup(key).description; }

FamilySpec make_fixture(const std::string& key, const FieldPtr& field) {
    const Fixture& fx = lookup(key);
    BivariatePoly F{field, {}};
    for (const auto& c : fx.F) F.coeffs_x.push_back(Poly::from_ints(field, c));
    return make_family(std::move(F), fx.phi, key);
}

}  // namespace galstat
