#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galstat/family.hpp"
#include "galstat/family_io.hpp"
#include "galstat/group_stats.hpp"

namespace galstat {

enum class SweepMode { Auto, Exhaustive, Sampled };

enum class PlanKind { CountIrreducible, TypeHistogram, IterateHistogram, Independence, Certify, MorseSweep };
std::string to_string(PlanKind k);

inline constexpr std::uint64_t kSweepCap = 10'000'000;
inline constexpr std::uint64_t kAutoSamples = 100'000;
inline constexpr std::uint64_t kWreathReferenceSamples = 1'000'000;
/// Wreath references are enumerated exactly up to this group order.
inline constexpr std::uint64_t kWreathExactOrder = 100'000;

struct ExperimentPlan {
    PlanKind kind = PlanKind::TypeHistogram;
    FamilySpec family;
    int iterate_k = 1;
    SweepMode mode = SweepMode::Auto;
    /// Draws for sampled mode; Auto falls back to kAutoSamples when unset.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    /// "sn", "wreath", "psl32". Empty selects "sn" (or "wreath" for iterates).
    std::vector<std::string> references;
    /// Constant of the |N - T*density| <= C*T/sqrt(q) check; defaults to the
    /// swept degree.
    std::optional<double> bound_constant;
    /// When set, every TV value is checked against it.
    std::optional<double> tv_max;
    /// Tolerance on |irreducible fraction - 1/deg| for iterate histograms.
    double fraction_tolerance = 0.04;
    /// Independence: exponent of the split coefficient and its two values.
    int coeff_index = 0;
    FieldElem c{};
    FieldElem c_prime{};

    std::uint64_t sweep_cap = kSweepCap;
    std::uint64_t wreath_reference_samples = kWreathReferenceSamples;
    /// Execution only; never part of the report.
    unsigned jobs = 1;
    bool timing = false;
};

/// Factor-type tallies over squarefree specializations.
struct Histogram {
    int degree = 0;
    std::map<CycleType, std::uint64_t, std::greater<>> counts;
    /// Smallest sweep index producing each type.
    std::map<CycleType, std::uint64_t, std::greater<>> witness_index;
    /// The tuple at witness_index, filled after the sweep.
    std::map<CycleType, std::vector<FieldElem>, std::greater<>> witness;
    std::uint64_t ramified = 0;
    std::uint64_t total = 0;

    std::uint64_t squarefree() const noexcept { return total - ramified; }
    std::uint64_t count(const CycleType& t) const;
    /// Adds another partial histogram; associative and commutative.
    void merge(const Histogram& o);
    /// Empirical table over squarefree samples. Errors: InvalidArgument if empty.
    DistTable table() const;
};

enum class CertVerdict { CertifiedSymmetric, TransitiveOnly, Inconclusive };
std::string to_string(CertVerdict v);

struct CertReport {
    bool observed_r_cycle = false;
    bool observed_r_minus_1_cycle = false;
    bool observed_transposition_type = false;
    CertVerdict verdict = CertVerdict::Inconclusive;
    /// Witness tuples keyed by type string, when the histogram recorded them.
    std::map<std::string, std::vector<FieldElem>> witnesses;
};

/// [r] gives transitivity, [r-1,1] then 2-transitivity, and a transposition on
/// top of primitivity forces S_r. Errors: DegreeTooSmall (r < 2).
CertReport certify_symmetric(const Histogram& h);

struct ReferenceResult {
    std::string name;
    DistTable table;
    std::optional<double> tv;
};

struct BoundCheck {
    double constant = 0;
    double deviation = 0;
    double allowed = 0;
    bool pass = false;
};

struct NamedCheck {
    std::string name;
    double value = 0;
    double limit = 0;
    bool pass = false;
};

struct ExperimentReport {
    ExperimentPlan plan;
    /// Resolved sweep mode and sample count.
    SweepMode mode = SweepMode::Exhaustive;
    std::uint64_t samples = 0;
    Histogram histogram;
    std::uint64_t n_irreducible = 0;
    Rational expected_density = 0;
    std::optional<BoundCheck> bound;
    std::vector<ReferenceResult> references;
    /// Independence plans: TV(joint, product of marginals).
    std::optional<double> independence_tv;
    std::optional<CertReport> certification;
    std::vector<NamedCheck> checks;
    std::vector<std::string> notices;
    /// Kind-specific results (joint table, Morse counts).
    Json details = Json::object();
    std::optional<double> elapsed_ms;

    /// Bound, TV (when tv_max is set) and named checks all pass; for Certify,
    /// the verdict is also required to be CERTIFIED_SYMMETRIC.
    bool all_checks_pass() const;
};

/// |N - T*density| <= C*T/sqrt(q).
BoundCheck bound_check(std::uint64_t n, std::uint64_t total, const Rational& density, double constant, std::uint64_t q);

/// Errors: SweepCapExceeded, DegreeCapExceeded, and those of specialize.
ExperimentReport count_irreducible(const ExperimentPlan& plan);
ExperimentReport type_histogram(const ExperimentPlan& plan);
ExperimentReport iterate_histogram(const ExperimentPlan& plan);
/// Errors: IndexNotInSupport, plus sweep errors.
ExperimentReport joint_independence(const ExperimentPlan& plan);
/// Errors: DegreeTooSmall, plus sweep errors.
ExperimentReport certify(const ExperimentPlan& plan);
/// Errors: InvalidArgument (r < 2), plus sweep errors.
ExperimentReport morse_sweep(const ExperimentPlan& plan);
ExperimentReport run_plan(const ExperimentPlan& plan);

/// Reference table by name for degree r and depth k.
/// Errors: UnknownFixture (unknown name), DegreeMismatch (psl32 needs degree 7).
DistTable reference_table(const std::string& name, int r, int k, std::uint64_t seed, std::uint64_t wreath_samples,
                          unsigned jobs);

enum class OutputFormat { Json, Csv, Table };
OutputFormat parse_format(const std::string& s);

Json report_to_json(const ExperimentReport& report);
/// `type,count,fraction` rows, fraction over the squarefree count.
std::string histogram_csv(const Histogram& h);
/// JSON with LF line endings and canonical key order, CSV, or a text table.
std::string emit_report(const ExperimentReport& report, OutputFormat format);

}  // namespace galstat
