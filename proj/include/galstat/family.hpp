#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galstat/field.hpp"
#include "galstat/poly.hpp"

namespace galstat {

/// F(t, x) as a polynomial in x whose coefficients are polynomials in t.
struct BivariatePoly {
    FieldPtr field;
    /// Entry j is the t-polynomial multiplying x^j.
    std::vector<Poly> coeffs_x;

    int n() const noexcept { return static_cast<int>(coeffs_x.size()) - 1; }
    bool is_monic_in_x() const;
    /// F(t0, x).
    Poly at_t(FieldElem t0) const;
};

/// Phi(a, t) = t^d + sum_{i in support} a_i t^i.
struct GenericTemplate {
    int d = 0;
    /// Strictly increasing exponents, all below d.
    std::vector<int> support;

    int params() const noexcept { return static_cast<int>(support.size()); }
};

struct FamilySpec {
    BivariatePoly F;
    GenericTemplate phi;
    /// Fixture key or "custom".
    std::string name = "custom";

    const FieldPtr& field() const noexcept { return F.field; }
    int r() const noexcept { return F.n() * phi.d; }
    int params() const noexcept { return phi.params(); }
};

/// Checks the structural invariants (n >= 1, sorted support below d, every
/// x^j coefficient of degree below d(n - j), coefficients in one field) and
/// returns the spec. Monicity in x is left to validate_family.
/// Errors: InvalidFamily, FieldMismatch.
FamilySpec make_family(BivariatePoly F, GenericTemplate phi, std::string name = "custom");

/// Non-fatal departures from the standing hypotheses (p <= r, r <= 3, 0 not
/// in the support, d < 2).
std::vector<std::string> hypothesis_warnings(const FamilySpec& spec);

struct SpecTuple {
    FieldPtr field;
    /// One value per support exponent, ascending.
    std::vector<FieldElem> values;
};

/// Phi_A(t). Errors: ArityMismatch, FieldMismatch.
Poly specialize_template(const FamilySpec& spec, const SpecTuple& A);
/// F(t, Phi_A(t)), monic of degree r.
/// Errors: ArityMismatch, FieldMismatch, NotMonicInX.
Poly specialize(const FamilySpec& spec, const SpecTuple& A);

inline constexpr int kDefaultDegreeCap = 4096;

/// G_A o ... o G_A (k times) with G_A = specialize(spec, A).
/// Errors: InvalidArgument (k < 1), DegreeCapExceeded, and those of specialize.
Poly iterate_specialize(const FamilySpec& spec, const SpecTuple& A, int k, int degree_cap = kDefaultDegreeCap);

/// Irreducibility of f(g(x)) through Capelli's criterion: f irreducible and
/// g - beta irreducible over F_q(beta) for a root beta of f. The extension is
/// built as F_{q^{deg f}} with F_q embedded through a root of its modulus.
/// Errors: FieldMismatch, ZeroPolynomial, ConstantPolynomial, UnsupportedSize.
bool capelli_irreducible(const Poly& f, const Poly& g);

/// gcd(f, f') constant and f' != 0. Errors: ConstantPolynomial.
bool separability_check(const Poly& f);

enum class Verdict { Valid, Inconclusive, NotSeparable };
std::string to_string(Verdict v);

struct ValidationReport {
    Verdict verdict = Verdict::Inconclusive;
    bool separable = false;
    /// First t0 (enumeration order) with F(t0, x) irreducible of degree n.
    std::optional<FieldElem> witness_t0;
    /// A t-value where disc_x F(t, x) is nonzero.
    std::optional<FieldElem> separability_witness;
    std::vector<std::string> warnings;
};

/// Errors: NotMonicInX.
ValidationReport validate_family(const FamilySpec& spec);

/// Embedding of a field into an extension of degree `degree` over it.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr base, int degree);

    const FieldPtr& base() const noexcept { return base_; }
    const FieldPtr& target() const noexcept { return target_; }
    FieldElem operator()(FieldElem a) const;
    Poly operator()(const Poly& f) const;

private:
    FieldPtr base_;
    FieldPtr target_;
    /// Powers theta^i of the chosen image of the base generator.
    std::vector<FieldElem> basis_;
};

/// Roots of f in its field, ascending by code.
std::vector<FieldElem> roots(const Poly& f);

}  // namespace galstat
