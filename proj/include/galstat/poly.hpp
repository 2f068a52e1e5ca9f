#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "galstat/cycle_type.hpp"
#include "galstat/field.hpp"

namespace galstat {

/// Dense univariate polynomial over a finite field, coefficients low-to-high.
/// The zero polynomial has an empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
class Poly {
public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FieldElem> coeffs);

    /// Coefficients given as integers, mapped into the prime subfield.
    static Poly from_ints(FieldPtr field, std::span<const std::int64_t> coeffs);
    static Poly from_ints(FieldPtr field, std::initializer_list<std::int64_t> coeffs) {
        return from_ints(std::move(field), std::span<const std::int64_t>(coeffs.begin(), coeffs.size()));
    }
    static Poly constant(FieldPtr field, FieldElem c);
    static Poly monomial(FieldPtr field, FieldElem c, std::size_t degree);
    static Poly x(FieldPtr field);

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const FiniteField& field() const noexcept { return *field_; }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == field_->one(); }
    FieldElem lead() const noexcept { return coeffs_.empty() ? field_->zero() : coeffs_.back(); }
    /// Zero beyond the degree.
    FieldElem operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }
    std::span<const FieldElem> coeffs() const noexcept { return coeffs_; }

    FieldElem eval(FieldElem at) const noexcept;
    /// Throws ZeroPolynomial.
    Poly monic() const;
    Poly scaled(FieldElem c) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;

    /// Readable form such as "x^3 + 2*x + 1"; extension coefficients print as
    /// coordinate vectors.
    std::string str(char var = 'x') const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
    }

private:
    FieldPtr field_;
    std::vector<FieldElem> coeffs_;
};

/// (quotient, remainder) with deg remainder < deg divisor.
/// Errors: FieldMismatch, DivisionByZero.
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
/// Monic gcd. Errors: FieldMismatch, ZeroPolynomial (both inputs zero).
Poly gcd(const Poly& f, const Poly& g);
Poly derivative(const Poly& f);
/// f(g(x)).
Poly compose(const Poly& f, const Poly& g);
/// base^e mod m. Errors: DivisionByZero for m = 0.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// Res(f, g) by the Euclidean remainder sequence; equals the determinant of
/// the Sylvester matrix of f and g at their actual degrees.
/// Errors: ZeroPolynomial, FieldMismatch.
FieldElem resultant(const Poly& f, const Poly& g);

/// disc(f) = (-1)^{r(r-1)/2} Res(f, f') / lc(f), with f' taken at formal
/// degree r - 1. The sign convention only matters up to squares downstream.
struct Discriminant {
    FieldElem value;
    /// f' = 0 identically (inseparable); value is then 0.
    bool derivative_vanishes = false;
};
/// Errors: ZeroPolynomial, ConstantPolynomial.
Discriminant discriminant(const Poly& f);

struct Factorization {
    FieldElem unit;
    /// Monic irreducible factors with multiplicities, ordered by degree and then
    /// by coefficient codes low-to-high.
    std::vector<std::pair<Poly, int>> factors;

    /// unit * prod factor^multiplicity.
    Poly expand(const FieldPtr& field) const;
};

/// Complete factorization: squarefree decomposition (with p-th root descent),
/// distinct-degree splitting, then equal-degree splitting. The result is
/// canonical; `seed` only steers the randomized splitting.
/// Errors: ZeroPolynomial.
Factorization factor(const Poly& f, std::uint64_t seed = 0);

/// Rabin's test. Errors: ZeroPolynomial, ConstantPolynomial.
bool is_irreducible(const Poly& f);

/// gcd(f, f') = 1 and f' != 0.
bool is_squarefree(const Poly& f);

/// Multiplicity pattern of a non-squarefree polynomial: (factor degree,
/// multiplicity) pairs sorted descending.
struct RamifiedFlag {
    std::vector<std::pair<int, int>> pattern;

    friend bool operator==(const RamifiedFlag&, const RamifiedFlag&) = default;
};

using FactorTypeResult = std::variant<FactorType, RamifiedFlag>;

/// Errors: ZeroPolynomial, ConstantPolynomial.
FactorTypeResult factor_type(const Poly& f);

/// Hot path for sweeps: the factor type when f is squarefree, nullopt otherwise.
/// Uses distinct-degree splitting only. Requires deg f >= 1.
std::optional<FactorType> squarefree_factor_type(const Poly& f);

struct MorseReport {
    bool derivative_squarefree = false;
    bool critical_values_distinct = false;
    bool is_morse = false;
    /// Set when p <= deg f; the booleans are then still computed but carry no
    /// meaning for the transposition argument.
    bool characteristic_too_small = false;
    std::optional<std::string> degenerate_detail;
};

/// Checks that f' is squarefree and that the critical values of f are
/// distinct, the latter via squarefreeness of D(s) = Res_t(f(t) - s, f'(t)),
/// interpolated from deg f' + 1 evaluations.
/// Errors: ZeroPolynomial, InvalidArgument (deg f < 2), UnsupportedSize (q too
/// small to interpolate).
MorseReport is_morse(const Poly& f);

}  // namespace galstat
