#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "galstat/cycle_type.hpp"
#include "galstat/random.hpp"

namespace galstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Provenance { ExactFormula, ExhaustiveEnumeration, Sampled };

/// Cycle-type distribution on `degree` points. Entries iterate from the
/// largest type ([degree]) down to the identity.
struct DistTable {
    int degree = 0;
    std::map<CycleType, Rational, std::greater<>> entries;
    Provenance provenance = Provenance::ExactFormula;
    /// Sampled tables only.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    /// "exact-formula", "exhaustive-enumeration" or "sampled(n=..., seed=...)".
    std::string provenance_str() const;
    Rational total() const;
    /// 0 for types outside the support.
    Rational prob(const CycleType& t) const;
};

/// Exact class proportions of S_N: 1 / prod(i^{m_i} m_i!).
/// Errors: UnsupportedSize (N outside 1..64).
DistTable sn_class_distribution(int N);

/// Normalizes counts into a table. Errors: InvalidArgument (no counts, or a
/// type of the wrong degree).
DistTable table_from_counts(int degree, const std::map<CycleType, std::uint64_t>& counts, Provenance provenance,
                            std::uint64_t samples = 0, std::uint64_t seed = 0);

/// The iterated wreath product [S_d]^k on d^k leaves.
struct WreathSpec {
    int d = 2;
    int k = 1;

    std::uint64_t leaf_count() const;
    /// |[S_d]^k| = (d!)^{1 + d + ... + d^{k-1}}.
    BigInt order() const;
};

/// Permutation of {0, ..., n-1} as an image vector.
using Permutation = std::vector<int>;
CycleType cycle_type(const Permutation& perm);

/// A uniform random element of [S_d]^k as a permutation of the leaves. Leaf
/// (b, j) sits at index b*d + j, with b a block of the height-(k-1) tower and
/// j its fiber coordinate; it maps to (pi(b), tau_b(j)).
/// Errors: InvalidArgument (d < 2 or k < 1), UnsupportedSize (d^k > 2^20).
Permutation wreath_sample_element(const WreathSpec& spec, SplitMix64& rng);
CycleType wreath_sample(const WreathSpec& spec, SplitMix64& rng);

inline constexpr std::uint64_t kWreathExhaustiveCap = 10'000'000;

/// Every element, by mixed-radix (base element, fiber tuple) indexing.
/// Errors: InvalidArgument, UnsupportedSize (order above the cap).
DistTable wreath_distribution_exhaustive(const WreathSpec& spec, std::uint64_t cap = kWreathExhaustiveCap);
/// Draw i uses the stream hash64(seed, i), so the table does not depend on
/// `jobs`. Errors: InvalidArgument (samples = 0), UnsupportedSize.
DistTable wreath_distribution_sampled(const WreathSpec& spec, std::uint64_t samples, std::uint64_t seed,
                                      unsigned jobs = 1);

/// 1 / d^k. Errors: InvalidArgument.
Rational full_cycle_probability(const WreathSpec& spec);

inline constexpr std::uint64_t kClosureCap = 1'000'000;

/// Breadth-first closure of the group generated by `generators` and its exact
/// cycle-type distribution. Errors: InvalidArgument (malformed or mixed-degree
/// generators), ClosureTooLarge.
DistTable group_closure_distribution(const std::vector<Permutation>& generators, std::uint64_t cap = kClosureCap);

/// GL_3(F_2) acting on the 7 nonzero vectors of F_2^3 (point v-1 is the
/// vector with bit pattern v).
std::vector<Permutation> gl3_f2_generators();
DistTable psl32_distribution();

/// Half the l1 distance over the union of supports, exact until the final
/// conversion. Errors: DegreeMismatch.
Rational tv_distance_exact(const DistTable& a, const DistTable& b);
double tv_distance(const DistTable& a, const DistTable& b);

/// `type,num,den,prob_float` rows under a provenance comment line.
std::string to_csv(const DistTable& t);

/// Rational to double without overflow for large numerators/denominators.
double to_double(const Rational& r);

}  // namespace galstat
