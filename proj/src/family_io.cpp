#include "galstat/family_io.hpp"

#include <fstream>

#include "galstat/error.hpp"
#include "galstat/fixtures.hpp"

namespace galstat {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::int64_t as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

}  // namespace

Json field_to_json(const FiniteField& F) {
    Json j;
    j["p"] = F.p();
    j["nu"] = F.nu();
    if (F.nu() > 1) j["modulus"] = F.modulus();
    return j;
}

FieldPtr field_from_json(const Json& j) {
    const std::int64_t p = as_int(member(j, "p"), "field.p");
    const std::int64_t nu = j.contains("nu") ? as_int(j.at("nu"), "field.nu") : 1;
    if (p < 2 || nu < 1 || nu > 64) parse_fail("field parameters out of range");
    FieldPtr F = make_field(static_cast<std::uint64_t>(p), static_cast<int>(nu));
    if (j.contains("modulus")) {
        std::vector<std::uint64_t> m;
        for (const auto& c : j.at("modulus")) m.push_back(static_cast<std::uint64_t>(as_int(c, "modulus coefficient")));
        if (F->nu() > 1 && m != F->modulus()) parse_fail("field modulus differs from the canonical one");
    }
    return F;
}

Json elem_to_json(const FiniteField& F, FieldElem a) {
    if (a.code < F.p()) return a.code;
    return F.coords(a);
}

FieldElem elem_from_json(const FiniteField& F, const Json& j) {
    if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
    if (!j.is_array()) parse_fail("field element must be an integer or a coordinate array");
    std::vector<std::uint64_t> c;
    for (const auto& x : j) {
        const std::int64_t v = as_int(x, "coordinate");
        if (v < 0) parse_fail("negative coordinate");
        c.push_back(static_cast<std::uint64_t>(v));
    }
    try {
        return F.from_coords(c);
    } catch (const Error& e) {
        parse_fail(e.what());
    }
}

Json poly_to_json(const Poly& f) {
    Json j = Json::array();
    for (const FieldElem a : f.coeffs()) j.push_back(elem_to_json(f.field(), a));
    return j;
}

Poly poly_from_json(const FieldPtr& field, const Json& j) {
    if (!j.is_array()) parse_fail("polynomial must be an array of coefficients");
    std::vector<FieldElem> c;
    for (const auto& x : j) c.push_back(elem_from_json(*field, x));
    return Poly(field, std::move(c));
}

Json family_to_json(const FamilySpec& spec) {
    Json j;
    j["field"] = field_to_json(*spec.field());
    Json F;
    F["n"] = spec.F.n();
    Json cx = Json::array();
    for (const Poly& c : spec.F.coeffs_x) cx.push_back(poly_to_json(c));
    F["coeffs_x"] = std::move(cx);
    j["F"] = std::move(F);
    j["phi"] = Json{{"d", spec.phi.d}, {"support", spec.phi.support}};
    if (spec.name == "custom")
        j["fixture"] = nullptr;
    else
        j["fixture"] = spec.name;
    return j;
}

FamilySpec family_from_json(const Json& j) {
    if (!j.is_object()) parse_fail("family spec must be a JSON object");
    const FieldPtr field = field_from_json(member(j, "field"));
    if (j.contains("fixture") && !j.at("fixture").is_null()) {
        if (!j.at("fixture").is_string()) parse_fail("fixture must be a string or null");
        return make_fixture(j.at("fixture").get<std::string>(), field);
    }
    const Json& Fj = member(j, "F");
    BivariatePoly F{field, {}};
    for (const auto& c : member(Fj, "coeffs_x")) F.coeffs_x.push_back(poly_from_json(field, c));
    if (Fj.contains("n") && as_int(Fj.at("n"), "F.n") != F.n()) parse_fail("F.n disagrees with coeffs_x");
    const Json& pj = member(j, "phi");
    GenericTemplate phi;
    phi.d = static_cast<int>(as_int(member(pj, "d"), "phi.d"));
    for (const auto& s : member(pj, "support")) phi.support.push_back(static_cast<int>(as_int(s, "support index")));
    return make_family(std::move(F), std::move(phi));
}

FamilySpec load_family_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    Json j;
    try {
        j = Json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(path.string() + ": " + e.what());
    }
    return family_from_json(j);
}

}  // namespace galstat
