// galstat: command-line front end for the factorization-statistics library.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "galstat/error.hpp"
#include "galstat/experiments.hpp"
#include "galstat/family_io.hpp"
#include "galstat/fixtures.hpp"
#include "galstat/parallel.hpp"

using namespace galstat;

namespace {

struct Common {
    std::string fixture;
    std::string family_file;
    std::uint64_t q = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    std::string out = "-";
    std::string format = "json";
    bool exhaustive = false;
    std::vector<std::string> refs;
    std::optional<double> bound_constant;
    std::optional<double> tv_max;
    bool timing = false;
};

struct Extra {
    int k = 2;
    int index = 0;
    std::string c, cprime;
    std::string poly;
    int d = 2;
    double frac_tol = 0.04;
};

void add_output_flags(CLI::App* sub, Common& o) {
    sub->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
    sub->add_flag("--timing", o.timing, "Record wall time in the report (breaks byte-identical output)");
}

void add_family_flags(CLI::App* sub, Common& o) {
    auto* fx = sub->add_option("--fixture", o.fixture, "Named family: " + [] {
        std::string s;
        for (const auto& n : fixture_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }());
    auto* ff = sub->add_option("--family-file", o.family_file, "Family spec JSON file")->check(CLI::ExistingFile);
    fx->excludes(ff);
    sub->add_option("--q", o.q, "Field order (prime power)");
    sub->add_option("--samples", o.samples, "Sample this many tuples instead of sweeping all of them");
    sub->add_option("--seed", o.seed, "Seed for sampled sweeps and references")->capture_default_str();
    sub->add_option("--jobs", o.jobs, "Worker threads (default: GALSTAT_JOBS or all cores)");
    sub->add_flag("--exhaustive", o.exhaustive, "Require an exhaustive sweep");
    sub->add_option("--ref", o.refs, "Reference table(s): sn, wreath, psl32");
    sub->add_option("--bound-constant", o.bound_constant, "Constant C in |N - T*density| <= C*T/sqrt(q)");
    sub->add_option("--tv-max", o.tv_max, "Fail (exit 2) when a TV distance exceeds this");
    add_output_flags(sub, o);
}

Json big_json(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
    return v.str();
}

FieldElem parse_elem(const FiniteField& F, const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        throw Error(ErrorCode::ParseError, "cannot parse field element '" + text + "'");
    }
    return elem_from_json(F, j);
}

Poly parse_poly(const FieldPtr& F, const std::string& text) {
    Json j;
    try {
        j = Json::parse("[" + text + "]");
    } catch (const nlohmann::json::parse_error&) {
        throw Error(ErrorCode::ParseError, "cannot parse polynomial '" + text + "'");
    }
    return poly_from_json(F, j);
}

FamilySpec resolve_family(const Common& o) {
    if (!o.family_file.empty()) {
        FamilySpec spec = load_family_file(o.family_file);
        if (o.q && o.q != spec.field()->q())
            throw Error(ErrorCode::InvalidArgument, "--q disagrees with the field in " + o.family_file);
        return spec;
    }
    if (o.fixture.empty()) throw Error(ErrorCode::InvalidArgument, "one of --fixture or --family-file is required");
    if (!o.q) throw Error(ErrorCode::InvalidArgument, "--q is required with --fixture");
    return make_fixture(o.fixture, make_field_of_order(o.q));
}

ExperimentPlan make_plan(PlanKind kind, const Common& o) {
    ExperimentPlan p;
    p.kind = kind;
    p.family = resolve_family(o);
    if (o.exhaustive && o.samples) throw Error(ErrorCode::InvalidArgument, "--exhaustive and --samples are exclusive");
    p.mode = o.exhaustive ? SweepMode::Exhaustive : o.samples ? SweepMode::Sampled : SweepMode::Auto;
    p.samples = o.samples;
    p.seed = o.seed;
    p.references = o.refs;
    p.bound_constant = o.bound_constant;
    p.tv_max = o.tv_max;
    p.jobs = o.jobs ? o.jobs : default_jobs();
    p.timing = o.timing;
    return p;
}

void write_output(const Common& o, const std::string& text) {
    if (o.out == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) throw Error(ErrorCode::IoFailure, "cannot write " + o.out);
}

int run_factor(const Common& o, const Extra& x) {
    if (!o.q) throw Error(ErrorCode::InvalidArgument, "--q is required");
    const auto F = make_field_of_order(o.q);
    const Poly f = parse_poly(F, x.poly);
    const auto fac = factor(f);
    const auto format = parse_format(o.format);
    std::string text;
    if (format == OutputFormat::Json) {
        Json j;
        j["field"] = field_to_json(*F);
        j["poly"] = poly_to_json(f);
        j["unit"] = elem_to_json(*F, fac.unit);
        Json factors = Json::array();
        for (const auto& [g, m] : fac.factors)
            factors.push_back(Json{{"coeffs", poly_to_json(g)}, {"degree", g.degree()}, {"multiplicity", m}, {"str", g.str()}});
        j["factors"] = std::move(factors);
        if (f.degree() >= 1) {
            const auto t = factor_type(f);
            if (const auto* ft = std::get_if<FactorType>(&t)) {
                j["factor_type"] = ft->str();
            } else {
                Json pat = Json::array();
                for (const auto& [d, m] : std::get<RamifiedFlag>(t).pattern) pat.push_back({d, m});
                j["factor_type"] = Json{{"ramified", std::move(pat)}};
            }
        } else {
            j["factor_type"] = nullptr;
        }
        text = j.dump(2) + "\n";
    } else if (format == OutputFormat::Csv) {
        text = "degree,multiplicity,coeffs\n";
        for (const auto& [g, m] : fac.factors) text += std::to_string(g.degree()) + "," + std::to_string(m) + ",\"" + poly_to_json(g).dump() + "\"\n";
    } else {
        text = f.str() + " = " + F->format(fac.unit);
        for (const auto& [g, m] : fac.factors) text += " * (" + g.str() + ")" + (m > 1 ? "^" + std::to_string(m) : "");
        text += "\n";
    }
    write_output(o, text);
    return 0;
}

int run_wreath(const Common& o, const Extra& x) {
    const auto start = std::chrono::steady_clock::now();
    const WreathSpec spec{x.d, x.k};
    if (o.exhaustive && o.samples) throw Error(ErrorCode::InvalidArgument, "--exhaustive and --samples are exclusive");
    const bool sampled = o.samples > 0;
    const unsigned jobs = o.jobs ? o.jobs : default_jobs();
    const DistTable table = sampled ? wreath_distribution_sampled(spec, o.samples, o.seed, jobs) : wreath_distribution_exhaustive(spec);
    const auto format = parse_format(o.format);
    std::string text;
    if (format == OutputFormat::Csv) {
        text = to_csv(table);
    } else if (format == OutputFormat::Json) {
        const Rational full = full_cycle_probability(spec);
        Json entries = Json::array();
        for (const auto& [t, p] : table.entries)
            entries.push_back(Json{{"type", t.str()}, {"num", big_json(numerator(p))}, {"den", big_json(denominator(p))}, {"prob", to_double(p)}});
        Json j;
        j["plan"] = Json{{"kind", "wreath-dist"}, {"d", x.d}, {"k", x.k}, {"mode", sampled ? "sampled" : "exhaustive"},
                         {"samples", sampled ? Json(o.samples) : Json(nullptr)}};
        j["degree"] = table.degree;
        j["order"] = spec.order().str();
        j["provenance"] = table.provenance_str();
        j["entries"] = std::move(entries);
        j["full_cycle_probability"] = Json{{"num", big_json(numerator(full))}, {"den", big_json(denominator(full))}, {"prob", to_double(full)}};
        j["seed"] = o.seed;
        j["elapsed_ms"] = o.timing ? Json(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count())
                                   : Json(nullptr);
        text = j.dump(2) + "\n";
    } else {
        text = "[S_" + std::to_string(x.d) + "]^" + std::to_string(x.k) + " on " + std::to_string(table.degree) + " leaves, " +
               table.provenance_str() + "\n";
        for (const auto& [t, p] : table.entries) {
            char line[128];
            std::snprintf(line, sizeof line, "%-24s %-24s %.10f\n", t.str().c_str(), p.str().c_str(), to_double(p));
            text += line;
        }
    }
    write_output(o, text);
    return 0;
}

int run_experiment(PlanKind kind, const Common& o, const Extra& x) {
    ExperimentPlan plan = make_plan(kind, o);
    if (kind == PlanKind::IterateHistogram) {
        plan.iterate_k = x.k;
        plan.fraction_tolerance = x.frac_tol;
    }
    if (kind == PlanKind::Independence) {
        if (x.c.empty() || x.cprime.empty()) throw Error(ErrorCode::InvalidArgument, "--c and --cprime are required");
        plan.coeff_index = x.index;
        plan.c = parse_elem(*plan.family.field(), x.c);
        plan.c_prime = parse_elem(*plan.family.field(), x.cprime);
    }
    const ExperimentReport rep = run_plan(plan);
    write_output(o, emit_report(rep, parse_format(o.format)));
    return rep.all_checks_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Factorization statistics of polynomial families over finite fields"};
    app.require_subcommand(1);
    Common o;
    Extra x;

    auto* fac = app.add_subcommand("factor", "Factor a polynomial");
    fac->add_option("--q", o.q, "Field order (prime power)")->required();
    fac->add_option("--poly", x.poly, "Coefficients low-to-high, e.g. \"1,0,1\" or \"[1,2],0,1\"")->required();
    fac->add_option("--jobs", o.jobs, "Accepted for uniformity; factoring runs on one thread");
    add_output_flags(fac, o);

    auto* count = app.add_subcommand("count-irr", "Count irreducible specializations and check the density bound");
    add_family_flags(count, o);
    auto* hist = app.add_subcommand("hist", "Factor-type histogram against reference tables");
    add_family_flags(hist, o);
    auto* iter = app.add_subcommand("iterate-hist", "Histogram of k-fold iterates against the wreath power");
    add_family_flags(iter, o);
    iter->add_option("--k", x.k, "Iterate depth")->capture_default_str();
    iter->add_option("--frac-tol", x.frac_tol, "Tolerance on the irreducible fraction")->capture_default_str();
    auto* indep = app.add_subcommand("independence", "Joint factor types at two values of one coefficient");
    add_family_flags(indep, o);
    indep->add_option("--index", x.index, "Exponent of the split coefficient")->required();
    indep->add_option("--c", x.c, "First value")->required();
    indep->add_option("--cprime", x.cprime, "Second value")->required();
    auto* cert = app.add_subcommand("certify", "Histogram plus symmetric-group certification");
    add_family_flags(cert, o);
    auto* wreath = app.add_subcommand("wreath-dist", "Cycle-type table of the wreath power [S_d]^k");
    wreath->add_option("--d", x.d, "Base degree")->capture_default_str();
    wreath->add_option("--k", x.k, "Tower height")->capture_default_str();
    wreath->add_flag("--exhaustive", o.exhaustive, "Enumerate every element (default)");
    wreath->add_option("--samples", o.samples, "Sample this many elements instead");
    wreath->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    wreath->add_option("--jobs", o.jobs, "Worker threads");
    add_output_flags(wreath, o);
    auto* morse = app.add_subcommand("morse-sweep", "Fraction of Morse specializations");
    add_family_flags(morse, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        if (app.get_subcommands().empty()) {
            std::cout << app.help("", CLI::AppFormatMode::All);
            return 0;
        }
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "galstat: " << e.what() << "\n";
        return 1;
    }

    try {
        if (fac->parsed()) return run_factor(o, x);
        if (wreath->parsed()) return run_wreath(o, x);
        if (count->parsed()) return run_experiment(PlanKind::CountIrreducible, o, x);
        if (hist->parsed()) return run_experiment(PlanKind::TypeHistogram, o, x);
        if (iter->parsed()) return run_experiment(PlanKind::IterateHistogram, o, x);
        if (indep->parsed()) return run_experiment(PlanKind::Independence, o, x);
        if (cert->parsed()) return run_experiment(PlanKind::Certify, o, x);
        if (morse->parsed()) return run_experiment(PlanKind::MorseSweep, o, x);
    } catch (const std::exception& e) {
        std::cerr << "galstat: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
