#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "galstat/error.hpp"

namespace galstat {

/// An element of F_{p^nu}, stored as the base-p little-endian packing of its
/// polynomial-basis coordinates: code = c_0 + c_1 p + ... + c_{nu-1} p^{nu-1}.
/// The packing is a bijection onto [0, q), so the canonical form is unique and
/// the code doubles as the element's position in enumeration order.
struct FieldElem {
    std::uint64_t code = 0;

    friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// Finite field F_q, q = p^nu, with an explicit monic irreducible modulus over
/// F_p when nu > 1. Immutable after construction.
class FiniteField {
public:
    static constexpr std::uint64_t kDefaultCardinalityCap = std::uint64_t{1} << 40;
    static constexpr int kMaxExtensionDegree = 40;

    /// Use make_field(); this constructor trusts its arguments.
    FiniteField(std::uint64_t p, int nu, std::vector<std::uint64_t> modulus);

    std::uint64_t p() const noexcept { return p_; }
    int nu() const noexcept { return nu_; }
    std::uint64_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return nu_ == 1; }
    /// Coefficients low-to-high, length nu+1 and monic; empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

    FieldElem zero() const noexcept { return {0}; }
    FieldElem one() const noexcept { return {1}; }
    /// The residue class u of the polynomial-basis variable; one() for prime fields.
    FieldElem generator() const noexcept { return nu_ == 1 ? one() : FieldElem{p_}; }
    bool contains(FieldElem a) const noexcept { return a.code < q_; }

    /// Image of an integer in the prime subfield.
    FieldElem from_int(std::int64_t v) const noexcept;
    /// Throws InvalidArgument on wrong length or out-of-range coordinates.
    FieldElem from_coords(std::span<const std::uint64_t> coords) const;
    std::vector<std::uint64_t> coords(FieldElem a) const;

    FieldElem add(FieldElem a, FieldElem b) const noexcept {
        if (nu_ == 1) {
            const std::uint64_t s = a.code + b.code;
            return {s >= p_ ? s - p_ : s};
        }
        if (p_ == 2) return {a.code ^ b.code};
        return add_ext(a, b);
    }
    FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }
    FieldElem neg(FieldElem a) const noexcept {
        if (nu_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
        if (p_ == 2) return a;
        return neg_ext(a);
    }
    FieldElem mul(FieldElem a, FieldElem b) const noexcept {
        if (nu_ == 1) return {(a.code * b.code) % p_};
        if (p_ == 2) return mul_char2(a, b);
        return mul_ext(a, b);
    }
    FieldElem pow(FieldElem a, std::uint64_t e) const noexcept;
    /// Throws DivisionByZero for a = 0.
    FieldElem inv(FieldElem a) const;
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
    /// a^(p^power).
    FieldElem frobenius(FieldElem a, std::uint64_t power) const noexcept;
    /// a^(1/p), the inverse of one Frobenius step.
    FieldElem pth_root(FieldElem a) const noexcept { return frobenius(a, static_cast<std::uint64_t>(nu_ - 1)); }

    /// Element at position `index` of the enumeration order.
    FieldElem element(std::uint64_t index) const noexcept { return {index}; }
    /// All q elements in base-p little-endian coordinate order.
    auto elements() const {
        return std::views::iota(std::uint64_t{0}, q_) |
               std::views::transform([](std::uint64_t i) { return FieldElem{i}; });
    }

    /// Human-readable form, e.g. "3" or "[1,2]" (coordinates low-to-high).
    std::string format(FieldElem a) const;

    /// Largest number of (p-1)^2 products that can be summed in 64 bits.
    std::uint64_t lazy_sum_limit() const noexcept { return lazy_limit_; }

    friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
        return a.p_ == b.p_ && a.nu_ == b.nu_ && a.modulus_ == b.modulus_;
    }

private:
    FieldElem add_ext(FieldElem a, FieldElem b) const noexcept;
    FieldElem neg_ext(FieldElem a) const noexcept;
    FieldElem mul_ext(FieldElem a, FieldElem b) const noexcept;
    FieldElem mul_char2(FieldElem a, FieldElem b) const noexcept;

    std::uint64_t p_;
    int nu_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint64_t> p_powers_;
    std::uint64_t char2_reduction_ = 0;
    std::uint64_t lazy_limit_ = 1;
};

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;
void require_same_field(const FieldPtr& a, const FieldPtr& b);

/// Deterministic primality for n < 2^63 by trial division up to sqrt(n);
/// characteristics in scope are below 2^31.
bool is_prime(std::uint64_t n) noexcept;

/// F_{p^nu} with the lexicographically smallest monic irreducible modulus.
/// Errors: NonPrimeCharacteristic, UnsupportedSize (p >= 2^31 or p^nu > cap).
FieldPtr make_field(std::uint64_t p, int nu,
                    std::uint64_t cardinality_cap = FiniteField::kDefaultCardinalityCap);

/// Field with exactly q elements; q must be a prime power.
FieldPtr make_field_of_order(std::uint64_t q,
                             std::uint64_t cardinality_cap = FiniteField::kDefaultCardinalityCap);

/// Smallest monic irreducible polynomial of degree nu >= 2 over F_p, scanning
/// (c_0, ..., c_{nu-1}) in base-p counting order with c_0 varying fastest.
/// Returned low-to-high, including the leading 1.
std::vector<std::uint64_t> find_irreducible_modulus(std::uint64_t p, int nu);

/// A field element bound to its field, for checked arithmetic at API edges.
/// Kernels use FiniteField + FieldElem directly.
class Element {
public:
    Element(FieldPtr field, FieldElem value);

    const FieldPtr& field() const noexcept { return field_; }
    FieldElem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.code == 0; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator/(const Element& o) const;
    Element operator-() const;
    Element inv() const;
    Element pow(std::uint64_t e) const;
    Element frobenius(std::uint64_t power) const;

    friend bool operator==(const Element& a, const Element& b) {
        return same_field(a.field_, b.field_) && a.value_ == b.value_;
    }

private:
    FieldPtr field_;
    FieldElem value_;
};

}  // namespace galstat
