// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. argv[1] is the path of the CLI executable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "galstat/experiments.hpp"
#include "galstat/fixtures.hpp"
#include "galstat/parallel.hpp"
#include "galstat/random.hpp"
#include "oracles.hpp"
#include "run_cli.hpp"

using namespace galstat;

namespace {

// Tolerances.
constexpr double kBoundConstant = 4.0;
constexpr double kRuntime101 = 1.0;
constexpr double kRuntime1009 = 60.0;
constexpr double kTvS4At101 = 0.10;
constexpr double kTvS4At1009 = 0.05;
constexpr double kFractionTol = 0.04;
constexpr double kTvWreath42 = 0.10;
constexpr double kRuntimeIterates = 300.0;
constexpr double kTvPsl = 0.05;
constexpr double kTvS7Min = 0.25;
constexpr double kRuntimePsl = 30.0;
constexpr double kTvIndependence = 0.10;
constexpr double kTvDegenerateMin = 0.3;
constexpr int kCapelliPairs = 500;
constexpr int kRoundTrips = 100000;
constexpr int kResultantPairs = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

ExperimentPlan plan_for(const std::string& fixture, std::uint64_t q, PlanKind kind) {
    ExperimentPlan p;
    p.kind = kind;
    p.family = make_fixture(fixture, make_field_of_order(q));
    p.jobs = default_jobs();
    return p;
}

std::optional<double> tv_of(const ExperimentReport& r, const std::string& name) {
    for (const auto& ref : r.references)
        if (ref.name == name) return ref.tv;
    return std::nullopt;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Poly random_poly(const FieldPtr& F, int degree, SplitMix64& rng) {
    std::vector<FieldElem> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = FieldElem{uniform_below(rng, F->q())};
    while (c.back().code == 0) c.back() = FieldElem{uniform_below(rng, F->q())};
    return Poly(F, std::move(c));
}

std::vector<int> orbit_lengths(const std::vector<int>& p) {
    std::vector<int> out;
    std::vector<bool> seen(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) {
        int len = 0;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(p[i])) {
            seen[i] = true;
            ++len;
        }
        if (len) out.push_back(len);
    }
    return out;
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Leaves laid out as b + blocks * j; each element is (pi, tau_0 .. tau_{blocks-1}).
std::vector<std::vector<int>> wreath_elements(int d, int k) {
    const auto sd = all_perms(d);
    if (k == 1) return sd;
    const auto base = wreath_elements(d, k - 1);
    const std::size_t blocks = base[0].size();
    std::size_t tuples = 1;
    for (std::size_t b = 0; b < blocks; ++b) tuples *= sd.size();
    std::vector<std::vector<int>> out;
    for (const auto& pi : base)
        for (std::size_t t = 0; t < tuples; ++t) {
            std::vector<int> leaf(blocks * static_cast<std::size_t>(d));
            std::size_t rest = t;
            for (std::size_t b = 0; b < blocks; ++b) {
                const auto& tau = sd[rest % sd.size()];
                rest /= sd.size();
                for (int j = 0; j < d; ++j)
                    leaf[b + blocks * static_cast<std::size_t>(j)] = pi[b] + static_cast<int>(blocks) * tau[static_cast<std::size_t>(j)];
            }
            out.push_back(std::move(leaf));
        }
    return out;
}

// Fraction of elements that act as a single cycle, by enumeration.
Rational enumerated_full_cycle(int d, int k) {
    const auto elems = wreath_elements(d, k);
    long hits = 0;
    for (const auto& e : elems) hits += orbit_lengths(e).size() == 1;
    return Rational(BigInt(hits), BigInt(static_cast<long>(elems.size())));
}

void report(int n, const std::string& title, const Outcome& o) {
    std::printf("%s criterion %d: %s:%s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
}

Outcome criterion1() {
    Outcome o;
    for (const std::uint64_t q : {101u, 1009u}) {
        auto plan = plan_for("compose-demo", q, PlanKind::CountIrreducible);
        plan.mode = SweepMode::Exhaustive;
        plan.bound_constant = kBoundConstant;
        const auto t0 = Clock::now();
        const auto r = count_irreducible(plan);
        const double secs = seconds_since(t0);
        const double T = static_cast<double>(r.histogram.total);
        const double dev = std::abs(static_cast<double>(r.n_irreducible) - T / 4);
        const double allowed = kBoundConstant * T / std::sqrt(static_cast<double>(q));
        o.detail << " q=" << q << " T=" << r.histogram.total << " N=" << r.n_irreducible << " |N-T/4|=" << fmt(dev, 2)
                 << " <= " << fmt(allowed, 2) << " t=" << fmt(secs, 3) << "s;";
        o.require(r.histogram.total == q * q, "T = q^2");
        o.require(dev <= allowed, "bound at q=" + std::to_string(q));
        o.require(r.bound && r.bound->pass, "library bound verdict");
        o.require(secs <= (q == 101 ? kRuntime101 : kRuntime1009), "runtime at q=" + std::to_string(q));
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (const std::uint64_t q : {101u, 1009u}) {
        auto plan = plan_for("compose-demo", q, PlanKind::Certify);
        plan.mode = SweepMode::Exhaustive;
        plan.references = {"sn"};
        const auto r = certify(plan);
        const double limit = q == 101 ? kTvS4At101 : kTvS4At1009;
        const auto tv = tv_of(r, "sn");
        const bool certified = r.certification && r.certification->verdict == CertVerdict::CertifiedSymmetric;
        o.detail << " q=" << q << " TV(S4)=" << (tv ? fmt(*tv) : "n/a") << " <= " << limit << " verdict="
                 << (r.certification ? to_string(r.certification->verdict) : "none") << ";";
        o.require(tv && *tv <= limit, "TV at q=" + std::to_string(q));
        o.require(certified, "certification at q=" + std::to_string(q));
        for (const char* t : {"4", "3-1", "2-1-1"})
            o.require(r.certification && r.certification->witnesses.count(t), std::string("witness ") + t);
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto t0 = Clock::now();

    // (a) reference 1/4 from the eight elements of [S_2]^2
    const Rational quarter = enumerated_full_cycle(2, 2);
    o.require(wreath_elements(2, 2).size() == 8, "[S_2]^2 has 8 elements");
    o.require(quarter == Rational(BigInt(1), BigInt(4)), "enumerated full-cycle fraction 1/4");
    o.require(full_cycle_probability({2, 2}) == quarter, "full_cycle_probability(2,2)");
    o.require(wreath_distribution_exhaustive({2, 2}).prob(CycleType::full_cycle(4)) == quarter, "exhaustive table (2,2)");
    {
        auto plan = plan_for("quadratic", 101, PlanKind::IterateHistogram);
        plan.iterate_k = 2;
        plan.mode = SweepMode::Exhaustive;
        const auto r = iterate_histogram(plan);
        const double frac = static_cast<double>(r.n_irreducible) / static_cast<double>(r.histogram.total);
        o.detail << " (a) T=" << r.histogram.total << " fraction=" << fmt(frac) << " vs 1/4;";
        o.require(r.histogram.total == 10201, "(a) tuple count");
        o.require(std::abs(frac - to_double(quarter)) <= kFractionTol, "(a) fraction");
    }
    // (b)
    {
        auto plan = plan_for("compose-demo", 101, PlanKind::IterateHistogram);
        plan.iterate_k = 2;
        plan.mode = SweepMode::Exhaustive;
        plan.references = {"wreath"};
        plan.wreath_reference_samples = 1'000'000;
        const auto r = iterate_histogram(plan);
        const double frac = static_cast<double>(r.n_irreducible) / static_cast<double>(r.histogram.total);
        const double target = to_double(full_cycle_probability({4, 2}));
        const auto tv = tv_of(r, "wreath");
        const bool sampled_ref = !r.references.empty() && r.references[0].table.provenance == Provenance::Sampled &&
                                 r.references[0].table.samples == 1'000'000;
        o.detail << " (b) degree=" << r.histogram.degree << " fraction=" << fmt(frac) << " vs 1/16, TV(wreath(4,2))="
                 << (tv ? fmt(*tv) : "n/a") << ";";
        o.require(r.histogram.degree == 16, "(b) degree 16");
        o.require(std::abs(target - 1.0 / 16) < 1e-15, "(b) full-cycle 1/16");
        o.require(std::abs(frac - target) <= kFractionTol, "(b) fraction");
        o.require(sampled_ref, "(b) reference sampled with 10^6 draws");
        o.require(tv && *tv <= kTvWreath42, "(b) TV");
    }
    const double secs = seconds_since(t0);
    o.detail << " t=" << fmt(secs, 2) << "s";
    o.require(secs <= kRuntimeIterates, "runtime");
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto t0 = Clock::now();
    auto plan = plan_for("serre-psl32", 2048, PlanKind::Certify);
    plan.mode = SweepMode::Exhaustive;
    plan.references = {"psl32", "sn"};
    const auto r = certify(plan);
    const double secs = seconds_since(t0);
    const auto psl = tv_of(r, "psl32"), s7 = tv_of(r, "sn");
    o.detail << " T=" << r.histogram.total << " ramified=" << r.histogram.ramified << " TV(PSL(3,2))=" << (psl ? fmt(*psl) : "n/a")
             << " TV(S7)=" << (s7 ? fmt(*s7) : "n/a") << " verdict=" << (r.certification ? to_string(r.certification->verdict) : "none")
             << " t=" << fmt(secs, 2) << "s";
    o.require(r.histogram.total == 2048 && r.histogram.degree == 7, "2048 septic specializations");
    o.require(psl && *psl <= kTvPsl, "TV vs PSL(3,2)");
    o.require(s7 && *s7 >= kTvS7Min, "TV vs S7");
    o.require(r.certification && r.certification->verdict != CertVerdict::CertifiedSymmetric, "not certified");
    o.require(secs <= kRuntimePsl, "runtime");
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto plan = plan_for("cubic", 1009, PlanKind::Independence);
    const FiniteField& F = *plan.family.field();
    plan.mode = SweepMode::Exhaustive;
    plan.coeff_index = 1;
    plan.c = F.from_int(1);
    plan.c_prime = F.from_int(2);
    const auto r = joint_independence(plan);
    plan.c_prime = plan.c;
    const auto control = joint_independence(plan);
    o.detail << " pairs=" << r.details.value("pairs", 0) << " TV(joint, product)=" << (r.independence_tv ? fmt(*r.independence_tv) : "n/a")
             << " control=" << (control.independence_tv ? fmt(*control.independence_tv) : "n/a");
    o.require(r.independence_tv && *r.independence_tv <= kTvIndependence, "independence TV");
    o.require(control.independence_tv && *control.independence_tv >= kTvDegenerateMin, "degenerate control");
    return o;
}

Outcome criterion6() {
    Outcome o;
    const std::vector<std::pair<std::uint64_t, int>> fields{{3, 1}, {5, 1}, {7, 1}, {3, 2}};
    int agree = 0, total = 0, positives = 0;
    for (auto [p, nu] : fields) {
        const auto F = make_field(p, nu);
        SplitMix64 rng(0xC0FFEE + 31 * p + static_cast<std::uint64_t>(nu));
        for (int i = 0; i < kCapelliPairs / 4; ++i) {
            const int df = 1 + static_cast<int>(uniform_below(rng, 4));
            const int dg = 1 + static_cast<int>(uniform_below(rng, 4));
            Poly f = random_poly(F, df, rng);
            while (i % 2 == 0 && !is_irreducible(f)) f = random_poly(F, df, rng);
            const Poly g = random_poly(F, dg, rng);
            const auto fac = factor(compose(f, g));
            const bool expected = fac.factors.size() == 1 && fac.factors[0].second == 1;
            positives += expected;
            agree += capelli_irreducible(f, g) == expected;
            ++total;
        }
    }
    o.detail << " agree " << agree << "/" << total << " (" << positives << " irreducible compositions)";
    o.require(total == kCapelliPairs && agree == kCapelliPairs, "agreement");
    return o;
}

Outcome criterion7() {
    Outcome o;
    // factorization round trip
    {
        const std::vector<std::pair<std::uint64_t, int>> fields{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {101, 1}, {3, 2}, {2, 4}, {5, 2}, {2, 8}, {1009, 1}};
        int failures = 0, done = 0;
        for (std::size_t fi = 0; fi < fields.size(); ++fi) {
            const auto F = make_field(fields[fi].first, fields[fi].second);
            SplitMix64 rng(777 + fi);
            for (int i = 0; i < kRoundTrips / static_cast<int>(fields.size()); ++i, ++done) {
                const Poly f = random_poly(F, 1 + static_cast<int>(uniform_below(rng, 10)), rng);
                const auto fac = factor(f, rng());
                bool ok = fac.expand(F) == f;
                for (const auto& [g, m] : fac.factors) ok = ok && g.is_monic() && m >= 1 && is_irreducible(g);
                failures += !ok;
            }
        }
        o.detail << " round-trip " << done << " failures=" << failures << ";";
        o.require(done == kRoundTrips && failures == 0, "round trip");
    }
    // resultant against the Sylvester determinant
    {
        const std::vector<std::pair<std::uint64_t, int>> fields{{2, 1}, {3, 1}, {7, 1}, {101, 1}, {3, 2}};
        int mismatches = 0, done = 0;
        for (std::size_t fi = 0; fi < fields.size(); ++fi) {
            const auto F = make_field(fields[fi].first, fields[fi].second);
            SplitMix64 rng(4242 + fi);
            for (int i = 0; i < kResultantPairs / static_cast<int>(fields.size()); ++i, ++done) {
                const Poly f = random_poly(F, 1 + static_cast<int>(uniform_below(rng, 7)), rng);
                const Poly g = random_poly(F, 1 + static_cast<int>(uniform_below(rng, 7)), rng);
                mismatches += !(resultant(f, g) == oracle::sylvester_resultant(f, g));
            }
        }
        o.detail << " resultant " << done << " mismatches=" << mismatches << ";";
        o.require(done == kResultantPairs && mismatches == 0, "resultant");
    }
    // S_n against brute force
    {
        bool ok = true;
        for (int n = 1; n <= 7; ++n) {
            std::map<CycleType, std::uint64_t> counts;
            for (const auto& p : all_perms(n)) ++counts[CycleType(orbit_lengths(p))];
            ok = ok && table_from_counts(n, counts, Provenance::ExhaustiveEnumeration).entries == sn_class_distribution(n).entries;
        }
        o.detail << " S_n(n<=7) " << (ok ? "match" : "mismatch") << ";";
        o.require(ok, "S_n tables");
    }
    // wreath tables against the full-cycle formula
    {
        bool ok = true;
        for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            const WreathSpec spec{d, k};
            const Rational enumerated = enumerated_full_cycle(d, k);
            const Rational tabled = wreath_distribution_exhaustive(spec).prob(CycleType::full_cycle(static_cast<int>(spec.leaf_count())));
            ok = ok && enumerated == full_cycle_probability(spec) && tabled == enumerated;
        }
        o.detail << " full-cycle (2,2),(2,3),(3,2) " << (ok ? "match" : "mismatch") << ";";
        o.require(ok, "full-cycle probabilities");
    }
    // Gauss counts of monic irreducibles
    {
        bool ok = true;
        for (auto [q, nmax] : std::vector<std::pair<std::uint64_t, int>>{{2, 8}, {3, 5}, {5, 4}}) {
            const auto F = make_field_of_order(q);
            for (int n = 1; n <= nmax; ++n) {
                std::int64_t count = 0;
                std::vector<std::uint64_t> digits(static_cast<std::size_t>(n), 0);
                for (;;) {
                    std::vector<FieldElem> c;
                    for (auto x : digits) c.push_back(FieldElem{x});
                    c.push_back(F->one());
                    count += is_irreducible(Poly(F, std::move(c)));
                    std::size_t i = 0;
                    while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
                    if (i == digits.size()) break;
                }
                ok = ok && count == oracle::necklace_count(static_cast<std::int64_t>(q), n);
            }
        }
        o.detail << " Gauss counts " << (ok ? "match" : "mismatch");
        o.require(ok, "Gauss counts");
    }
    return o;
}

Outcome criterion8(const std::string& exe) {
    Outcome o;
    const std::vector<std::string> runs{
        "count-irr --fixture chowla-n3 --q 101",
        "wreath-dist --d 2 --k 2 --exhaustive",
        "factor --q 3 --poly 1,0,0,0,1",
        "count-irr --fixture compose-demo --q 101 --bound-constant 4",
        "certify --fixture compose-demo --q 101",
        "iterate-hist --fixture quadratic --q 101 --k 2",
        "iterate-hist --fixture compose-demo --q 101 --k 2 --seed 5",
        "certify --fixture serre-psl32 --q 2048 --ref psl32 --ref sn",
        "independence --fixture cubic --q 1009 --index 1 --c 1 --cprime 2",
        "hist --fixture quartic --q 101 --samples 20000 --seed 3",
        "wreath-dist --d 4 --k 2 --samples 100000 --seed 11",
        "morse-sweep --fixture cubic --q 101",
    };
    int identical = 0;
    for (const auto& args : runs) {
        const auto a = run_cli(exe, args + " --jobs 1");
        const auto b = run_cli(exe, args + " --jobs 4");
        const bool same = a.out == b.out && a.exit_code == b.exit_code && !a.out.empty() && (a.exit_code == 0 || a.exit_code == 2);
        identical += same;
        o.require(same, args);
    }
    o.detail << " " << identical << "/" << runs.size() << " invocations byte-identical across --jobs 1 and 4";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-galstat>\n");
        return 1;
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"irreducible density bound", criterion1},
        {"S_4 statistics and certification", criterion2},
        {"iterate statistics against the wreath power", criterion3},
        {"PSL(3,2) negative control", criterion4},
        {"independence of two specializations", criterion5},
        {"Capelli criterion against factorization", criterion6},
        {"exact oracle suites", criterion7},
        {"CLI determinism across --jobs", [&] { return criterion8(argv[1]); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        report(static_cast<int>(i + 1), criteria[i].first, o);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
