#include "poly_kernel.hpp"

#include <algorithm>

namespace galstat::detail {

Coeffs add(const FiniteField& F, const Coeffs& a, const Coeffs& b) {
    Coeffs out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const FieldElem x = i < a.size() ? a[i] : FieldElem{};
        const FieldElem y = i < b.size() ? b[i] : FieldElem{};
        out[i] = F.add(x, y);
    }
    trim(out);
    return out;
}

Coeffs sub(const FiniteField& F, const Coeffs& a, const Coeffs& b) {
    Coeffs out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const FieldElem x = i < a.size() ? a[i] : FieldElem{};
        const FieldElem y = i < b.size() ? b[i] : FieldElem{};
        out[i] = F.sub(x, y);
    }
    trim(out);
    return out;
}

Coeffs mul(const FiniteField& F, const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size() + b.size() - 1;
    Coeffs out(n);
    if (F.is_prime_field() && std::min(a.size(), b.size()) <= F.lazy_sum_limit()) {
        // Each output coefficient sums at most min(|a|, |b|) products.
        const std::uint64_t p = F.p();
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::uint64_t ai = a[i].code;
            if (ai == 0) continue;
            std::uint64_t* row = acc.data() + i;
            for (std::size_t j = 0; j < b.size(); ++j) row[j] += ai * b[j].code;
        }
        for (std::size_t k = 0; k < n; ++k) out[k] = FieldElem{acc[k] % p};
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].code == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
    trim(out);
    return out;
}

Coeffs scale(const FiniteField& F, const Coeffs& a, FieldElem c) {
    if (c.code == 0) return {};
    Coeffs out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
    return out;
}

Coeffs make_monic(const FiniteField& F, const Coeffs& a) {
    if (a.empty() || a.back() == F.one()) return a;
    return scale(F, a, F.inv(a.back()));
}

void rem_monic(const FiniteField& F, Coeffs& a, const Coeffs& m) {
    const std::size_t n = m.size() - 1;
    if (a.size() <= n) {
        trim(a);
        return;
    }
    if (F.is_prime_field() && n + 1 <= F.lazy_sum_limit()) {
        // Every slot receives at most n + 1 deferred products.
        const std::uint64_t p = F.p();
        std::vector<std::uint64_t> acc(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) acc[i] = a[i].code;
        std::vector<std::uint64_t> negm(n);
        for (std::size_t j = 0; j < n; ++j) negm[j] = m[j].code == 0 ? 0 : p - m[j].code;
        for (std::size_t i = a.size() - 1; i >= n; --i) {
            const std::uint64_t c = acc[i] % p;
            if (c != 0) {
                std::uint64_t* base = acc.data() + (i - n);
                for (std::size_t j = 0; j < n; ++j) base[j] += c * negm[j];
            }
            if (i == n) break;
        }
        a.resize(n);
        for (std::size_t k = 0; k < n; ++k) a[k] = FieldElem{acc[k] % p};
    } else {
        for (std::size_t i = a.size() - 1; i >= n; --i) {
            const FieldElem c = a[i];
            if (c.code != 0) {
                for (std::size_t j = 0; j < n; ++j)
                    if (m[j].code != 0) a[i - n + j] = F.sub(a[i - n + j], F.mul(c, m[j]));
            }
            if (i == n) break;
        }
        a.resize(n);
    }
    trim(a);
}

void divrem(const FiniteField& F, const Coeffs& a, const Coeffs& b, Coeffs& quot, Coeffs& rem) {
    rem = a;
    quot.clear();
    if (a.size() < b.size()) return;
    const std::size_t n = b.size() - 1;
    const FieldElem inv_lead = F.inv(b.back());
    quot.assign(a.size() - n, FieldElem{});
    for (std::size_t i = rem.size() - 1; i >= n; --i) {
        const FieldElem c = F.mul(rem[i], inv_lead);
        quot[i - n] = c;
        if (c.code != 0) {
            for (std::size_t j = 0; j <= n; ++j)
                if (b[j].code != 0) rem[i - n + j] = F.sub(rem[i - n + j], F.mul(c, b[j]));
        }
        if (i == n) break;
    }
    rem.resize(n);
    trim(rem);
    trim(quot);
}

Coeffs exact_div(const FiniteField& F, const Coeffs& a, const Coeffs& b) {
    Coeffs q, r;
    divrem(F, a, b, q, r);
    return q;
}

Coeffs mulmod(const FiniteField& F, const Coeffs& a, const Coeffs& b, const Coeffs& m) {
    Coeffs out = mul(F, a, b);
    rem_monic(F, out, m);
    return out;
}

Coeffs gcd(const FiniteField& F, Coeffs a, Coeffs b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        b = make_monic(F, b);
        if (b.size() == 1) return b;
        rem_monic(F, a, b);
        std::swap(a, b);
    }
    return make_monic(F, a);
}

Coeffs derivative(const FiniteField& F, const Coeffs& a) {
    if (a.size() <= 1) return {};
    Coeffs out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        out[i - 1] = F.mul(a[i], F.from_int(static_cast<std::int64_t>(i % F.p())));
    trim(out);
    return out;
}

Coeffs powmod_x(const FiniteField& F, std::uint64_t e, const Coeffs& m) {
    Coeffs result{F.one()};
    rem_monic(F, result, m);
    if (e == 0) return result;
    int top = 63;
    while (((e >> top) & 1) == 0) --top;
    for (int bit = top; bit >= 0; --bit) {
        result = mulmod(F, result, result, m);
        if ((e >> bit) & 1) {
            result.insert(result.begin(), FieldElem{});
            rem_monic(F, result, m);
        }
    }
    return result;
}

Coeffs powmod(const FiniteField& F, Coeffs base, std::uint64_t e, const Coeffs& m) {
    rem_monic(F, base, m);
    Coeffs result{F.one()};
    rem_monic(F, result, m);
    while (e != 0) {
        if (e & 1) result = mulmod(F, result, base, m);
        e >>= 1;
        if (e != 0) base = mulmod(F, base, base, m);
    }
    return result;
}

FrobeniusMap::FrobeniusMap(const FiniteField& F, const Coeffs& m) : F_(&F), m_(m) {
    const int n = deg(m_);
    if (n > kMatrixLimit || n < 1) return;
    rows_.reserve(static_cast<std::size_t>(n));
    Coeffs row{F.one()};
    rem_monic(F, row, m_);
    rows_.push_back(row);
    if (n == 1) return;
    const Coeffs xq = powmod_x(F, F.q(), m_);
    for (int j = 1; j < n; ++j) {
        row = mulmod(F, row, xq, m_);
        rows_.push_back(row);
    }
}

Coeffs FrobeniusMap::apply(const Coeffs& h) const {
    const FiniteField& F = *F_;
    if (rows_.empty()) return powmod(F, h, F.q(), m_);
    const std::size_t n = m_.size() - 1;
    Coeffs out(n);
    if (F.is_prime_field() && n <= F.lazy_sum_limit()) {
        const std::uint64_t p = F.p();
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t j = 0; j < h.size(); ++j) {
            const std::uint64_t c = h[j].code;
            if (c == 0) continue;
            const Coeffs& row = rows_[j];
            for (std::size_t k = 0; k < row.size(); ++k) acc[k] += c * row[k].code;
        }
        for (std::size_t k = 0; k < n; ++k) out[k] = FieldElem{acc[k] % p};
    } else {
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (h[j].code == 0) continue;
            const Coeffs& row = rows_[j];
            for (std::size_t k = 0; k < row.size(); ++k) out[k] = F.add(out[k], F.mul(h[j], row[k]));
        }
    }
    trim(out);
    return out;
}

std::vector<std::pair<int, Coeffs>> distinct_degree(const FiniteField& F, const Coeffs& f) {
    std::vector<std::pair<int, Coeffs>> out;
    if (deg(f) <= 0) return out;
    if (deg(f) == 1) {
        out.emplace_back(1, f);
        return out;
    }
    const FrobeniusMap frob(F, f);
    const Coeffs x{FieldElem{}, F.one()};
    Coeffs rest = f;
    Coeffs h = x;
    rem_monic(F, h, f);
    int i = 0;
    while (deg(rest) >= 2 * (i + 1)) {
        ++i;
        h = frob.apply(h);
        Coeffs g = gcd(F, rest, sub(F, h, x));
        if (deg(g) > 0) {
            rest = exact_div(F, rest, g);
            out.emplace_back(i, std::move(g));
        }
    }
    if (deg(rest) > 0) out.emplace_back(deg(rest), std::move(rest));
    return out;
}

}  // namespace galstat::detail
