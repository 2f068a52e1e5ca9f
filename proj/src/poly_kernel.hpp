#pragma once

// Coefficient-vector kernels shared by the polynomial translation units.
// Vectors are low-to-high and trimmed (no trailing zeros) unless noted.

#include <cstdint>
#include <vector>

#include "galstat/field.hpp"

namespace galstat::detail {

using Coeffs = std::vector<FieldElem>;

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back().code == 0) a.pop_back();
}

inline int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

Coeffs add(const FiniteField& F, const Coeffs& a, const Coeffs& b);
Coeffs sub(const FiniteField& F, const Coeffs& a, const Coeffs& b);
Coeffs mul(const FiniteField& F, const Coeffs& a, const Coeffs& b);
Coeffs scale(const FiniteField& F, const Coeffs& a, FieldElem c);
Coeffs make_monic(const FiniteField& F, const Coeffs& a);

/// a := a mod m for monic m of degree >= 1.
void rem_monic(const FiniteField& F, Coeffs& a, const Coeffs& m);
/// Quotient and remainder by an arbitrary nonzero divisor.
void divrem(const FiniteField& F, const Coeffs& a, const Coeffs& b, Coeffs& quot, Coeffs& rem);
/// Exact quotient a / b for b | a (b nonzero).
Coeffs exact_div(const FiniteField& F, const Coeffs& a, const Coeffs& b);

Coeffs mulmod(const FiniteField& F, const Coeffs& a, const Coeffs& b, const Coeffs& m);
/// Monic gcd; empty only when both inputs are zero.
Coeffs gcd(const FiniteField& F, Coeffs a, Coeffs b);
Coeffs derivative(const FiniteField& F, const Coeffs& a);
/// x^e mod m, m monic.
Coeffs powmod_x(const FiniteField& F, std::uint64_t e, const Coeffs& m);
Coeffs powmod(const FiniteField& F, Coeffs base, std::uint64_t e, const Coeffs& m);

/// The q-power map h -> h^q on F_q[x]/(m), m monic. It is F_q-linear, so it is
/// stored as the rows x^{qj} mod m, j < deg m. Very large moduli fall back to
/// repeated squaring to bound memory.
class FrobeniusMap {
public:
    FrobeniusMap(const FiniteField& F, const Coeffs& m);
    /// h^q mod m for deg h < deg m.
    Coeffs apply(const Coeffs& h) const;
    const Coeffs& modulus() const noexcept { return m_; }

private:
    static constexpr int kMatrixLimit = 1024;
    const FiniteField* F_;
    Coeffs m_;
    std::vector<Coeffs> rows_;
};

/// Distinct-degree factorization of a squarefree monic f: pairs (d, product of
/// all irreducible factors of degree d), d ascending, only nonconstant products.
std::vector<std::pair<int, Coeffs>> distinct_degree(const FiniteField& F, const Coeffs& f);

}  // namespace galstat::detail
