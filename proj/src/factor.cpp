#include <algorithm>
#include <functional>

#include "galstat/poly.hpp"
#include "galstat/random.hpp"
#include "poly_kernel.hpp"

namespace galstat {

using detail::Coeffs;
using detail::deg;

namespace {

Coeffs pth_root(const FiniteField& F, const Coeffs& f) {
    const std::size_t p = F.p();
    Coeffs out((f.size() - 1) / p + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.pth_root(f[i * p]);
    detail::trim(out);
    return out;
}

// Squarefree decomposition of a monic polynomial into pairwise coprime
// squarefree parts with multiplicities.
void squarefree_parts(const FiniteField& F, const Coeffs& f, int scale, std::vector<std::pair<Coeffs, int>>& out) {
    if (deg(f) <= 0) return;
    const Coeffs g = detail::derivative(F, f);
    if (g.empty()) {
        squarefree_parts(F, pth_root(F, f), scale * static_cast<int>(F.p()), out);
        return;
    }
    Coeffs c = detail::gcd(F, f, g);
    Coeffs w = detail::exact_div(F, f, c);
    int i = 1;
    while (deg(w) > 0) {
        Coeffs y = detail::gcd(F, w, c);
        Coeffs fac = detail::exact_div(F, w, y);
        if (deg(fac) > 0) out.emplace_back(detail::make_monic(F, fac), i * scale);
        ++i;
        c = detail::exact_div(F, c, y);
        w = std::move(y);
    }
    if (deg(c) > 0) squarefree_parts(F, pth_root(F, detail::make_monic(F, c)), scale * static_cast<int>(F.p()), out);
}

Coeffs random_poly(const FiniteField& F, std::size_t n, SplitMix64& rng) {
    Coeffs h(n);
    for (auto& c : h) c = FieldElem{uniform_below(rng, F.q())};
    detail::trim(h);
    return h;
}

// Splits g, a monic product of distinct irreducibles of degree d, into its
// factors. `frob` is the q-power map modulo some multiple of g.
void equal_degree(const FiniteField& F, const detail::FrobeniusMap& frob, const Coeffs& g, int d, SplitMix64& rng,
                  std::vector<Coeffs>& out) {
    const int n = deg(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    const Coeffs one{F.one()};
    for (;;) {
        Coeffs h = random_poly(F, static_cast<std::size_t>(n), rng);
        if (deg(h) < 1) continue;
        Coeffs w = detail::gcd(F, g, h);
        if (deg(w) == 0) {
            Coeffs probe;
            if (F.p() != 2) {
                // h^{(q^d - 1)/2} = (h h^q ... h^{q^{d-1}})^{(q-1)/2}.
                Coeffs u = h;
                Coeffs acc = h;
                for (int i = 1; i < d; ++i) {
                    u = frob.apply(u);
                    detail::rem_monic(F, u, g);
                    acc = detail::mulmod(F, acc, u, g);
                }
                probe = detail::sub(F, detail::powmod(F, acc, (F.q() - 1) / 2, g), one);
            } else {
                // Trace from F_{2^{nu d}} to F_2: h + h^2 + ... + h^{2^{nu d - 1}}.
                Coeffs t = h;
                probe = h;
                const int steps = F.nu() * d - 1;
                for (int i = 0; i < steps; ++i) {
                    t = detail::mulmod(F, t, t, g);
                    probe = detail::add(F, probe, t);
                }
            }
            w = detail::gcd(F, g, probe);
        }
        if (deg(w) > 0 && deg(w) < n) {
            equal_degree(F, frob, w, d, rng, out);
            equal_degree(F, frob, detail::exact_div(F, g, w), d, rng, out);
            return;
        }
    }
}

bool canonical_less(const std::pair<Poly, int>& a, const std::pair<Poly, int>& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    const auto ca = a.first.coeffs(), cb = b.first.coeffs();
    if (!std::equal(ca.begin(), ca.end(), cb.begin(), cb.end()))
        return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    return a.second < b.second;
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

Poly Factorization::expand(const FieldPtr& field) const {
    Poly out = Poly::constant(field, unit);
    for (const auto& [fac, mult] : factors)
        for (int i = 0; i < mult; ++i) out = out * fac;
    return out;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "factor of the zero polynomial");
    const FiniteField& F = f.field();
    Factorization result{f.lead(), {}};
    if (f.degree() == 0) return result;

    const Coeffs monic = detail::make_monic(F, Coeffs(f.coeffs().begin(), f.coeffs().end()));
    std::vector<std::pair<Coeffs, int>> parts;
    squarefree_parts(F, monic, 1, parts);

    SplitMix64 rng(hash64(seed, static_cast<std::uint64_t>(f.degree())));
    for (const auto& [part, mult] : parts) {
        for (const auto& [d, group] : detail::distinct_degree(F, part)) {
            std::vector<Coeffs> irreducibles;
            if (deg(group) == d) {
                irreducibles.push_back(group);
            } else {
                const detail::FrobeniusMap frob(F, group);
                equal_degree(F, frob, group, d, rng, irreducibles);
            }
            for (auto& g : irreducibles) result.factors.emplace_back(Poly(f.field_ptr(), std::move(g)), mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(), canonical_less);
    return result;
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "irreducibility of the zero polynomial");
    if (f.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "irreducibility needs degree >= 1");
    const FiniteField& F = f.field();
    const int n = f.degree();
    if (n == 1) return true;
    if (f[0].code == 0) return false;
    const Coeffs m = detail::make_monic(F, Coeffs(f.coeffs().begin(), f.coeffs().end()));
    const std::vector<int> primes = prime_divisors(n);
    std::vector<int> checkpoints;
    for (const int l : primes) checkpoints.push_back(n / l);

    const detail::FrobeniusMap frob(F, m);
    const Coeffs x{FieldElem{}, F.one()};
    Coeffs h = x;
    for (int j = 1; j <= n; ++j) {
        h = frob.apply(h);
        if (std::find(checkpoints.begin(), checkpoints.end(), j) != checkpoints.end()) {
            if (deg(detail::gcd(F, m, detail::sub(F, h, x))) != 0) return false;
        }
    }
    return h == x;
}

std::optional<FactorType> squarefree_factor_type(const Poly& f) {
    const FiniteField& F = f.field();
    if (f.degree() == 1) return FactorType({1});
    const Coeffs m = detail::make_monic(F, Coeffs(f.coeffs().begin(), f.coeffs().end()));
    const Coeffs d = detail::derivative(F, m);
    if (d.empty() || deg(detail::gcd(F, m, d)) != 0) return std::nullopt;
    std::vector<int> parts;
    for (const auto& [degree, group] : detail::distinct_degree(F, m))
        for (int k = 0; k < deg(group) / degree; ++k) parts.push_back(degree);
    return FactorType(std::move(parts));
}

FactorTypeResult factor_type(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "factor type of the zero polynomial");
    if (f.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "factor type needs degree >= 1");
    if (auto t = squarefree_factor_type(f)) return *t;
    RamifiedFlag flag;
    for (const auto& [fac, mult] : factor(f).factors) flag.pattern.emplace_back(fac.degree(), mult);
    std::sort(flag.pattern.begin(), flag.pattern.end(), std::greater<>());
    return flag;
}

}  // namespace galstat
