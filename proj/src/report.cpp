#include <cstdio>
#include <limits>

#include "galstat/error.hpp"
#include "galstat/experiments.hpp"

namespace galstat {

namespace {

std::string fixed(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Json big_to_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

std::string mode_str(SweepMode m) {
    switch (m) {
        case SweepMode::Auto: return "auto";
        case SweepMode::Exhaustive: return "exhaustive";
        case SweepMode::Sampled: return "sampled";
    }
    return "?";
}

Json tuple_json(const FiniteField& F, const std::vector<FieldElem>& v) {
    Json j = Json::array();
    for (const FieldElem a : v) j.push_back(elem_to_json(F, a));
    return j;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json plan_json(const ExperimentReport& r) {
    const ExperimentPlan& p = r.plan;
    Json j;
    j["kind"] = to_string(p.kind);
    j["mode"] = mode_str(r.mode);
    j["samples"] = r.mode == SweepMode::Sampled ? Json(r.samples) : Json(nullptr);
    j["iterate_k"] = p.iterate_k;
    j["references"] = p.references;
    j["bound_constant"] = optional_number(p.bound_constant);
    j["tv_max"] = optional_number(p.tv_max);
    if (p.kind == PlanKind::IterateHistogram) j["fraction_tolerance"] = p.fraction_tolerance;
    if (p.kind == PlanKind::Independence) {
        const FiniteField& F = *p.family.field();
        j["index"] = p.coeff_index;
        j["c"] = elem_to_json(F, p.c);
        j["c_prime"] = elem_to_json(F, p.c_prime);
    }
    return j;
}

Json table_json(const DistTable& t) {
    Json entries = Json::array();
    for (const auto& [type, prob] : t.entries)
        entries.push_back(Json{{"type", type.str()},
                               {"num", big_to_json(numerator(prob))},
                               {"den", big_to_json(denominator(prob))},
                               {"prob", to_double(prob)}});
    return Json{{"degree", t.degree}, {"provenance", t.provenance_str()}, {"entries", std::move(entries)}};
}

Json tv_entry(const std::string& name, std::optional<double> value, const std::optional<double>& max) {
    Json j{{"reference", name}, {"value", optional_number(value)}, {"max", optional_number(max)}};
    j["pass"] = max && value ? Json(*value <= *max) : Json(nullptr);
    return j;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "table") return OutputFormat::Table;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "' (expected json, csv or table)");
}

Json report_to_json(const ExperimentReport& r) {
    const FiniteField& F = *r.plan.family.field();
    Json j;
    j["plan"] = plan_json(r);
    j["field"] = field_to_json(F);
    j["family"] = family_to_json(r.plan.family);
    j["iterate_k"] = r.plan.iterate_k;
    j["total"] = r.histogram.total;
    j["ramified"] = r.histogram.ramified;
    j["n_irreducible"] = r.n_irreducible;
    j["expected_density"] = to_double(r.expected_density);
    if (r.bound)
        j["bound"] = Json{{"constant", r.bound->constant},
                          {"pass", r.bound->pass},
                          {"deviation", r.bound->deviation},
                          {"allowed", r.bound->allowed}};
    else
        j["bound"] = nullptr;

    Json hist = Json::array();
    const double sf = static_cast<double>(r.histogram.squarefree());
    for (const auto& [t, c] : r.histogram.counts) {
        Json e{{"type", t.str()}, {"count", c}, {"fraction", sf > 0 ? static_cast<double>(c) / sf : 0.0}};
        const auto w = r.histogram.witness.find(t);
        e["witness"] = w == r.histogram.witness.end() ? Json(nullptr) : tuple_json(F, w->second);
        hist.push_back(std::move(e));
    }
    j["histogram"] = std::move(hist);

    Json refs = Json::array(), tv = Json::array();
    for (const auto& ref : r.references) {
        Json t = table_json(ref.table);
        refs.push_back(Json{{"name", ref.name}, {"degree", t["degree"]}, {"provenance", t["provenance"]}, {"entries", t["entries"]}});
        tv.push_back(tv_entry(ref.name, ref.tv, r.plan.tv_max));
    }
    if (r.plan.kind == PlanKind::Independence) tv.push_back(tv_entry("product-of-marginals", r.independence_tv, r.plan.tv_max));
    j["references"] = std::move(refs);
    j["tv"] = std::move(tv);

    if (r.certification) {
        const CertReport& c = *r.certification;
        Json w = Json::object();
        for (const auto& [type, tuple] : c.witnesses) w[type] = tuple_json(F, tuple);
        j["certification"] = Json{{"verdict", to_string(c.verdict)},
                                  {"observed_r_cycle", c.observed_r_cycle},
                                  {"observed_r_minus_1_cycle", c.observed_r_minus_1_cycle},
                                  {"observed_transposition_type", c.observed_transposition_type},
                                  {"witnesses", std::move(w)}};
    } else {
        j["certification"] = nullptr;
    }
    j["details"] = r.details;
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
    j["checks"] = std::move(checks);
    j["all_pass"] = r.all_checks_pass();
    j["notices"] = r.notices;
    j["seed"] = r.plan.seed;
    j["elapsed_ms"] = optional_number(r.elapsed_ms);
    return j;
}

std::string histogram_csv(const Histogram& h) {
    std::string out = "# total=" + std::to_string(h.total) + " ramified=" + std::to_string(h.ramified) + "\n";
    out += "type,count,fraction\n";
    const double sf = static_cast<double>(h.squarefree());
    for (const auto& [t, c] : h.counts)
        out += t.str() + "," + std::to_string(c) + "," + fixed(sf > 0 ? static_cast<double>(c) / sf : 0.0) + "\n";
    return out;
}

std::string emit_report(const ExperimentReport& r, OutputFormat format) {
    if (format == OutputFormat::Json) return report_to_json(r).dump(2) + "\n";
    if (format == OutputFormat::Csv) return histogram_csv(r.histogram);

    const FiniteField& F = *r.plan.family.field();
    std::string out;
    out += to_string(r.plan.kind) + ": " + r.plan.family.name + " over F_" + std::to_string(F.q()) + ", r = " +
           std::to_string(r.plan.family.r()) + ", k = " + std::to_string(r.plan.iterate_k) + "\n";
    out += "tuples " + std::to_string(r.histogram.total) + " (" + mode_str(r.mode) + "), ramified " +
           std::to_string(r.histogram.ramified) + ", irreducible " + std::to_string(r.n_irreducible) + " (expected density " +
           fixed(to_double(r.expected_density), 6) + ")\n";
    if (r.bound)
        out += "bound: |N - T*density| = " + fixed(r.bound->deviation, 2) + " <= " + fixed(r.bound->allowed, 2) + " (C = " +
               fixed(r.bound->constant, 2) + "): " + (r.bound->pass ? "pass" : "FAIL") + "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %12s %12s", "type", "count", "fraction");
    out += line;
    for (const auto& ref : r.references) out += " " + std::string(12 - std::min<std::size_t>(12, ref.name.size()), ' ') + ref.name;
    out += "\n";
    const double sf = static_cast<double>(r.histogram.squarefree());
    std::map<CycleType, int, std::greater<>> rows;
    for (const auto& [t, c] : r.histogram.counts) rows[t] = 1;
    for (const auto& ref : r.references)
        for (const auto& [t, p] : ref.table.entries) rows[t] = 1;
    for (const auto& [t, unused] : rows) {
        const std::uint64_t c = r.histogram.count(t);
        std::snprintf(line, sizeof line, "%-20s %12llu %12.6f", t.str().c_str(), static_cast<unsigned long long>(c),
                      sf > 0 ? static_cast<double>(c) / sf : 0.0);
        out += line;
        for (const auto& ref : r.references) {
            std::snprintf(line, sizeof line, " %12.6f", to_double(ref.table.prob(t)));
            out += line;
        }
        out += "\n";
    }
    for (const auto& ref : r.references)
        out += "tv[" + ref.name + "] = " + (ref.tv ? fixed(*ref.tv, 6) : std::string("n/a")) + "\n";
    if (r.independence_tv) out += "tv[joint vs product] = " + fixed(*r.independence_tv, 6) + "\n";
    if (r.certification) out += "certification: " + to_string(r.certification->verdict) + "\n";
    for (const auto& [k, v] : r.details.items()) out += k + ": " + v.dump() + "\n";
    for (const auto& c : r.checks)
        out += "check " + c.name + ": " + fixed(c.value, 6) + " <= " + fixed(c.limit, 6) + ": " + (c.pass ? "pass" : "FAIL") + "\n";
    for (const auto& n : r.notices) out += "note: " + n + "\n";
    return out;
}

}  // namespace galstat
