#include "galstat/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "galstat/error.hpp"
#include "galstat/parallel.hpp"

namespace galstat {

std::string to_string(PlanKind k) {
    switch (k) {
        case PlanKind::CountIrreducible: return "count-irr";
        case PlanKind::TypeHistogram: return "hist";
        case PlanKind::IterateHistogram: return "iterate-hist";
        case PlanKind::Independence: return "independence";
        case PlanKind::Certify: return "certify";
        case PlanKind::MorseSweep: return "morse-sweep";
    }
    return "?";
}

std::string to_string(CertVerdict v) {
    switch (v) {
        case CertVerdict::CertifiedSymmetric: return "CERTIFIED_SYMMETRIC";
        case CertVerdict::TransitiveOnly: return "TRANSITIVE_ONLY";
        case CertVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::uint64_t Histogram::count(const CycleType& t) const {
    const auto it = counts.find(t);
    return it == counts.end() ? 0 : it->second;
}

void Histogram::merge(const Histogram& o) {
    if (degree == 0) degree = o.degree;
    for (const auto& [t, c] : o.counts) counts[t] += c;
    for (const auto& [t, i] : o.witness_index) {
        const auto [it, inserted] = witness_index.emplace(t, i);
        if (!inserted && i < it->second) it->second = i;
    }
    ramified += o.ramified;
    total += o.total;
}

DistTable Histogram::table() const {
    return table_from_counts(degree, std::map<CycleType, std::uint64_t>(counts.begin(), counts.end()), Provenance::Sampled,
                             squarefree());
}

CertReport certify_symmetric(const Histogram& h) {
    if (h.degree < 2) throw Error(ErrorCode::DegreeTooSmall, "certification needs degree >= 2");
    const int r = h.degree;
    const CycleType full = CycleType::full_cycle(r);
    const CycleType almost = r > 2 ? CycleType({r - 1, 1}) : CycleType::identity(2);
    const CycleType transposition = CycleType::transposition(r);
    CertReport rep;
    rep.observed_r_cycle = h.count(full) > 0;
    rep.observed_r_minus_1_cycle = h.count(almost) > 0;
    rep.observed_transposition_type = h.count(transposition) > 0;
    for (const CycleType* t : {&full, &almost, &transposition}) {
        const auto it = h.witness.find(*t);
        if (h.count(*t) > 0 && it != h.witness.end()) rep.witnesses[t->str()] = it->second;
    }
    if (rep.observed_r_cycle && rep.observed_r_minus_1_cycle && rep.observed_transposition_type)
        rep.verdict = CertVerdict::CertifiedSymmetric;
    else if (rep.observed_r_cycle)
        rep.verdict = CertVerdict::TransitiveOnly;
    else
        rep.verdict = CertVerdict::Inconclusive;
    return rep;
}

bool ExperimentReport::all_checks_pass() const {
    if (bound && !bound->pass) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    if (plan.tv_max)
        for (const auto& r : references)
            if (r.tv && *r.tv > *plan.tv_max) return false;
    if (plan.tv_max && independence_tv && *independence_tv > *plan.tv_max) return false;
    if (plan.kind == PlanKind::Certify && (!certification || certification->verdict != CertVerdict::CertifiedSymmetric))
        return false;
    return true;
}

BoundCheck bound_check(std::uint64_t n, std::uint64_t total, const Rational& density, double constant, std::uint64_t q) {
    BoundCheck b;
    b.constant = constant;
    b.deviation = std::abs(static_cast<double>(n) - static_cast<double>(total) * to_double(density));
    b.allowed = constant * static_cast<double>(total) / std::sqrt(static_cast<double>(q));
    b.pass = b.deviation <= b.allowed;
    return b;
}

namespace {

using Clock = std::chrono::steady_clock;

// The tuples visited by a sweep: all of F_q^dims with the first coordinate
// varying fastest, or `total` seeded uniform draws.
struct SweepSpace {
    FieldPtr field;
    int dims = 0;
    SweepMode mode = SweepMode::Exhaustive;
    std::uint64_t total = 0;
    std::uint64_t seed = 0;

    void tuple(std::uint64_t index, std::vector<FieldElem>& out) const {
        out.resize(static_cast<std::size_t>(dims));
        const std::uint64_t q = field->q();
        if (mode == SweepMode::Exhaustive) {
            for (auto& v : out) {
                v = FieldElem{index % q};
                index /= q;
            }
        } else {
            SplitMix64 rng(hash64(seed, index));
            for (auto& v : out) v = FieldElem{uniform_below(rng, q)};
        }
    }
};

SweepSpace resolve_sweep(const ExperimentPlan& plan, int dims, std::vector<std::string>& notices) {
    SweepSpace s{plan.family.field(), dims, SweepMode::Exhaustive, 1, plan.seed};
    const std::uint64_t q = s.field->q();
    bool over_cap = false;
    for (int i = 0; i < dims; ++i) {
        if (s.total > plan.sweep_cap / q) {
            over_cap = true;
            break;
        }
        s.total *= q;
    }
    over_cap = over_cap || s.total > plan.sweep_cap;
    switch (plan.mode) {
        case SweepMode::Exhaustive:
            if (over_cap)
                throw Error(ErrorCode::SweepCapExceeded, "exhaustive sweep of q^" + std::to_string(dims) + " tuples exceeds the cap of " +
                                                             std::to_string(plan.sweep_cap));
            break;
        case SweepMode::Sampled:
            if (plan.samples == 0) throw Error(ErrorCode::InvalidArgument, "sampled mode needs at least one sample");
            s.mode = SweepMode::Sampled;
            s.total = plan.samples;
            break;
        case SweepMode::Auto:
            if (over_cap) {
                s.mode = SweepMode::Sampled;
                s.total = plan.samples ? plan.samples : kAutoSamples;
                notices.push_back("q^" + std::to_string(dims) + " tuples exceed the sweep cap of " + std::to_string(plan.sweep_cap) +
                                  "; sampling " + std::to_string(s.total) + " tuples instead");
            }
            break;
    }
    return s;
}

template <class Acc, class Body>
std::vector<Acc> run_sweep(const SweepSpace& space, unsigned jobs, Body&& body) {
    jobs = std::max(1u, jobs);
    std::vector<Acc> partial(jobs);
    parallel_chunks(space.total, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        std::vector<FieldElem> values;
        for (std::uint64_t i = begin; i < end; ++i) {
            space.tuple(i, values);
            body(i, values, partial[w]);
        }
    });
    return partial;
}

int checked_degree(const FamilySpec& spec, int k) {
    long long deg = 1;
    for (int i = 0; i < k; ++i) {
        deg *= spec.r();
        if (deg > kDefaultDegreeCap)
            throw Error(ErrorCode::DegreeCapExceeded, "iterate degree exceeds the cap of " + std::to_string(kDefaultDegreeCap));
    }
    return static_cast<int>(deg);
}

Poly specialized(const FamilySpec& spec, const SpecTuple& A, int k) {
    return k == 1 ? specialize(spec, A) : iterate_specialize(spec, A, k);
}

void record(Histogram& h, const std::optional<FactorType>& t, std::uint64_t index) {
    ++h.total;
    if (!t) {
        ++h.ramified;
        return;
    }
    ++h.counts[*t];
    h.witness_index.emplace(*t, index);  // indices arrive in increasing order per worker
}

struct SweepResult {
    SweepSpace space;
    Histogram histogram;
    std::uint64_t morse = 0, derivative_not_squarefree = 0, critical_collisions = 0;
};

SweepResult sweep_types(const ExperimentPlan& plan, int k, bool morse, std::vector<std::string>& notices) {
    const FamilySpec& spec = plan.family;
    const int degree = checked_degree(spec, k);
    SweepResult res{resolve_sweep(plan, spec.params(), notices), {}, 0, 0, 0};
    struct Acc {
        Histogram h;
        std::uint64_t morse = 0, dsq = 0, coll = 0;
    };
    const auto parts = run_sweep<Acc>(res.space, plan.jobs, [&](std::uint64_t i, const std::vector<FieldElem>& v, Acc& acc) {
        const Poly f = specialized(spec, SpecTuple{spec.field(), v}, k);
        record(acc.h, squarefree_factor_type(f), i);
        if (morse) {
            const MorseReport m = is_morse(f);
            acc.morse += m.is_morse;
            acc.dsq += !m.derivative_squarefree;
            acc.coll += m.derivative_squarefree && !m.critical_values_distinct;
        }
    });
    res.histogram.degree = degree;
    for (const auto& p : parts) {
        res.histogram.merge(p.h);
        res.morse += p.morse;
        res.derivative_not_squarefree += p.dsq;
        res.critical_collisions += p.coll;
    }
    std::vector<FieldElem> values;
    for (const auto& [t, i] : res.histogram.witness_index) {
        res.space.tuple(i, values);
        res.histogram.witness[t] = values;
    }
    return res;
}

ExperimentReport base_report(const ExperimentPlan& plan, const SweepResult& sweep, int k,
                             std::vector<std::string> notices) {
    ExperimentReport rep;
    rep.plan = plan;
    rep.plan.iterate_k = k;
    rep.mode = sweep.space.mode;
    rep.samples = sweep.space.mode == SweepMode::Sampled ? sweep.space.total : 0;
    rep.histogram = sweep.histogram;
    rep.n_irreducible = sweep.histogram.count(CycleType::full_cycle(sweep.histogram.degree));
    rep.expected_density = Rational(BigInt(1), BigInt(sweep.histogram.degree));
    for (const auto& w : hypothesis_warnings(plan.family)) rep.notices.push_back("hypothesis: " + w);
    for (auto& n : notices) rep.notices.push_back(std::move(n));
    return rep;
}

void add_references(ExperimentReport& rep, std::vector<std::string> names, const std::string& fallback, int k) {
    if (names.empty()) names.push_back(fallback);
    for (const auto& name : names) {
        ReferenceResult r{name, reference_table(name, rep.plan.family.r(), k, rep.plan.seed, rep.plan.wreath_reference_samples,
                                                rep.plan.jobs),
                          std::nullopt};
        if (rep.histogram.squarefree() > 0) r.tv = tv_distance(rep.histogram.table(), r.table);
        rep.references.push_back(std::move(r));
    }
}

double default_constant(const ExperimentPlan& plan, int degree) {
    return plan.bound_constant ? *plan.bound_constant : static_cast<double>(degree);
}

void finish(ExperimentReport& rep, Clock::time_point start) {
    if (rep.plan.timing)
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

DistTable reference_table(const std::string& name, int r, int k, std::uint64_t seed, std::uint64_t wreath_samples,
                          unsigned jobs) {
    if (name == "sn") {
        int degree = 1;
        for (int i = 0; i < k; ++i) degree *= r;
        return sn_class_distribution(degree);
    }
    if (name == "wreath") {
        if (k == 1 || r == 1) return sn_class_distribution(r);
        const WreathSpec spec{r, k};
        if (spec.order() <= kWreathExactOrder) return wreath_distribution_exhaustive(spec);
        return wreath_distribution_sampled(spec, wreath_samples, seed, jobs);
    }
    if (name == "psl32") {
        if (r != 7 || k != 1) throw Error(ErrorCode::DegreeMismatch, "the PSL(3,2) reference has degree 7");
        return psl32_distribution();
    }
    throw Error(ErrorCode::UnknownFixture, "unknown reference table '" + name + "'");
}

ExperimentReport count_irreducible(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    std::vector<std::string> notices;
    const int k = plan.iterate_k;
    const SweepResult sweep = sweep_types(plan, k, false, notices);
    ExperimentReport rep = base_report(plan, sweep, k, std::move(notices));
    rep.bound = bound_check(rep.n_irreducible, rep.histogram.total, rep.expected_density,
                            default_constant(plan, rep.histogram.degree), plan.family.field()->q());
    finish(rep, start);
    return rep;
}

ExperimentReport type_histogram(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    std::vector<std::string> notices;
    const int k = plan.iterate_k;
    const SweepResult sweep = sweep_types(plan, k, false, notices);
    ExperimentReport rep = base_report(plan, sweep, k, std::move(notices));
    add_references(rep, plan.references, k == 1 ? "sn" : "wreath", k);
    finish(rep, start);
    return rep;
}

ExperimentReport iterate_histogram(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    std::vector<std::string> notices;
    const int k = plan.iterate_k;
    const SweepResult sweep = sweep_types(plan, k, false, notices);
    ExperimentReport rep = base_report(plan, sweep, k, std::move(notices));
    add_references(rep, plan.references, "wreath", k);
    rep.bound = bound_check(rep.n_irreducible, rep.histogram.total, rep.expected_density,
                            default_constant(plan, rep.histogram.degree), plan.family.field()->q());
    if (rep.histogram.total > 0) {
        const double fraction = static_cast<double>(rep.n_irreducible) / static_cast<double>(rep.histogram.total);
        const double gap = std::abs(fraction - to_double(rep.expected_density));
        rep.checks.push_back({"irreducible_fraction", gap, plan.fraction_tolerance, gap <= plan.fraction_tolerance});
    }
    finish(rep, start);
    return rep;
}

ExperimentReport certify(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    ExperimentReport rep = type_histogram(plan);
    rep.certification = certify_symmetric(rep.histogram);
    finish(rep, start);
    return rep;
}

ExperimentReport morse_sweep(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    if (plan.family.r() < 2) throw Error(ErrorCode::InvalidArgument, "Morse sweeps need degree >= 2");
    std::vector<std::string> notices;
    const SweepResult sweep = sweep_types(plan, 1, true, notices);
    ExperimentReport rep = base_report(plan, sweep, 1, std::move(notices));
    const bool too_small = plan.family.field()->p() <= static_cast<std::uint64_t>(plan.family.r());
    if (too_small) rep.notices.push_back("CharacteristicTooSmall: p <= r, Morse verdicts carry no transposition information");
    rep.details["morse"] = sweep.morse;
    rep.details["morse_fraction"] =
        sweep.histogram.total ? static_cast<double>(sweep.morse) / static_cast<double>(sweep.histogram.total) : 0.0;
    rep.details["derivative_not_squarefree"] = sweep.derivative_not_squarefree;
    rep.details["critical_value_collisions"] = sweep.critical_collisions;
    rep.details["characteristic_too_small"] = too_small;
    finish(rep, start);
    return rep;
}

ExperimentReport joint_independence(const ExperimentPlan& plan) {
    const auto start = Clock::now();
    const FamilySpec& spec = plan.family;
    const auto& support = spec.phi.support;
    const auto pos_it = std::find(support.begin(), support.end(), plan.coeff_index);
    if (pos_it == support.end())
        throw Error(ErrorCode::IndexNotInSupport, "coefficient index " + std::to_string(plan.coeff_index) + " is not in the support");
    const auto pos = static_cast<std::size_t>(pos_it - support.begin());
    const FiniteField& K = *spec.field();
    if (!K.contains(plan.c) || !K.contains(plan.c_prime))
        throw Error(ErrorCode::FieldMismatch, "split values lie outside the field");

    std::vector<std::string> notices;
    SweepSpace space = resolve_sweep(plan, spec.params() - 1, notices);
    using Pair = std::pair<CycleType, CycleType>;
    struct Acc {
        Histogram h;
        std::map<Pair, std::uint64_t> joint;
    };
    const auto parts = run_sweep<Acc>(space, plan.jobs, [&](std::uint64_t i, const std::vector<FieldElem>& rest, Acc& acc) {
        std::vector<FieldElem> v(rest);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(pos), plan.c);
        const auto t1 = squarefree_factor_type(specialize(spec, SpecTuple{spec.field(), v}));
        v[pos] = plan.c_prime;
        const auto t2 = squarefree_factor_type(specialize(spec, SpecTuple{spec.field(), v}));
        ++acc.h.total;
        if (!t1 || !t2) {
            ++acc.h.ramified;
            return;
        }
        ++acc.h.counts[*t1];
        acc.h.witness_index.emplace(*t1, i);
        ++acc.joint[{*t1, *t2}];
    });
    SweepResult sweep{space, {}, 0, 0, 0};
    sweep.histogram.degree = spec.r();
    std::map<Pair, std::uint64_t> joint;
    for (const auto& p : parts) {
        sweep.histogram.merge(p.h);
        for (const auto& [k, c] : p.joint) joint[k] += c;
    }
    std::vector<FieldElem> values;
    for (const auto& [t, i] : sweep.histogram.witness_index) {
        space.tuple(i, values);
        values.insert(values.begin() + static_cast<std::ptrdiff_t>(pos), plan.c);
        sweep.histogram.witness[t] = values;
    }
    ExperimentReport rep = base_report(plan, sweep, 1, std::move(notices));

    std::map<CycleType, std::uint64_t, std::greater<>> m1, m2;
    std::uint64_t pairs = 0;
    for (const auto& [k, c] : joint) {
        m1[k.first] += c;
        m2[k.second] += c;
        pairs += c;
    }
    Json joint_json = Json::array(), m2_json = Json::array();
    if (pairs > 0) {
        // TV between the joint law and the product of its marginals, exactly.
        Rational tv = 0;
        const Rational n(pairs);
        for (const auto& [a, ca] : m1)
            for (const auto& [b, cb] : m2) {
                const auto it = joint.find({a, b});
                const Rational pj = it == joint.end() ? Rational(0) : Rational(it->second) / n;
                tv += abs(pj - Rational(ca) * Rational(cb) / (n * n));
            }
        rep.independence_tv = to_double(tv / 2);
    }
    for (auto it = joint.rbegin(); it != joint.rend(); ++it)
        joint_json.push_back(Json{{"types", {it->first.first.str(), it->first.second.str()}}, {"count", it->second}});
    for (const auto& [t, c] : m2) m2_json.push_back(Json{{"type", t.str()}, {"count", c}});
    rep.details["index"] = plan.coeff_index;
    rep.details["c"] = elem_to_json(K, plan.c);
    rep.details["c_prime"] = elem_to_json(K, plan.c_prime);
    rep.details["pairs"] = pairs;
    rep.details["joint"] = std::move(joint_json);
    rep.details["marginal_c_prime"] = std::move(m2_json);
    finish(rep, start);
    return rep;
}

ExperimentReport run_plan(const ExperimentPlan& plan) {
    switch (plan.kind) {
        case PlanKind::CountIrreducible: return count_irreducible(plan);
        case PlanKind::TypeHistogram: return type_histogram(plan);
        case PlanKind::IterateHistogram: return iterate_histogram(plan);
        case PlanKind::Independence: return joint_independence(plan);
        case PlanKind::Certify: return certify(plan);
        case PlanKind::MorseSweep: return morse_sweep(plan);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown plan kind");
}

}  // namespace galstat
