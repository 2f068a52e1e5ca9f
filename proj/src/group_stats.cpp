#include "galstat/group_stats.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <deque>
#include <numeric>
#include <unordered_set>

#include <boost/container_hash/hash.hpp>

#include "galstat/error.hpp"
#include "galstat/parallel.hpp"

namespace galstat {

namespace {

void partitions(int remaining, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
    if (remaining == 0) {
        fn(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(remaining - part, part, cur, fn);
        cur.pop_back();
    }
}

BigInt factorial(int n) {
    BigInt out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

void check_wreath(const WreathSpec& spec) {
    if (spec.d < 2 || spec.k < 1) throw Error(ErrorCode::InvalidArgument, "wreath power needs d >= 2 and k >= 1");
}

Permutation uniform_permutation(int n, SplitMix64& rng) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(p[static_cast<std::size_t>(i)], p[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    return p;
}

Permutation lift(const Permutation& base, const std::vector<const Permutation*>& fibers, int d) {
    Permutation out(base.size() * static_cast<std::size_t>(d));
    for (std::size_t b = 0; b < base.size(); ++b)
        for (int j = 0; j < d; ++j)
            out[b * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = base[b] * d + (*fibers[b])[static_cast<std::size_t>(j)];
    return out;
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<Permutation> out;
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Every element of [S_d]^k as an explicit leaf permutation.
std::vector<Permutation> wreath_elements(int d, int k, const std::vector<Permutation>& sd) {
    if (k == 1) return sd;
    const std::vector<Permutation> base = wreath_elements(d, k - 1, sd);
    const std::size_t blocks = base.front().size();
    std::vector<Permutation> out;
    std::vector<std::size_t> digits(blocks, 0);
    std::vector<const Permutation*> fibers(blocks);
    for (const Permutation& pi : base) {
        std::fill(digits.begin(), digits.end(), 0);
        for (;;) {
            for (std::size_t b = 0; b < blocks; ++b) fibers[b] = &sd[digits[b]];
            out.push_back(lift(pi, fibers, d));
            std::size_t i = 0;
            while (i < blocks && ++digits[i] == sd.size()) digits[i++] = 0;
            if (i == blocks) break;
        }
    }
    return out;
}

std::vector<std::vector<int>> cycles_of(const Permutation& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        for (auto i = static_cast<int>(s); !seen[static_cast<std::size_t>(i)]; i = p[static_cast<std::size_t>(i)]) {
            seen[static_cast<std::size_t>(i)] = 1;
            cyc.push_back(i);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

struct PermHash {
    std::size_t operator()(const Permutation& p) const noexcept { return boost::hash_range(p.begin(), p.end()); }
};

std::string format_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

}  // namespace

std::string DistTable::provenance_str() const {
    switch (provenance) {
        case Provenance::ExactFormula: return "exact-formula";
        case Provenance::ExhaustiveEnumeration: return "exhaustive-enumeration";
        case Provenance::Sampled: return "sampled(n=" + std::to_string(samples) + ", seed=" + std::to_string(seed) + ")";
    }
    return "?";
}

Rational DistTable::total() const {
    Rational s = 0;
    for (const auto& [t, p] : entries) s += p;
    return s;
}

Rational DistTable::prob(const CycleType& t) const {
    const auto it = entries.find(t);
    return it == entries.end() ? Rational(0) : it->second;
}

DistTable sn_class_distribution(int N) {
    if (N < 1 || N > 64) throw Error(ErrorCode::UnsupportedSize, "symmetric-group tables cover degrees 1..64");
    DistTable t;
    t.degree = N;
    t.provenance = Provenance::ExactFormula;
    std::vector<int> cur;
    partitions(N, N, cur, [&](const std::vector<int>& parts) {
        BigInt centralizer = 1;
        std::vector<int> mult(static_cast<std::size_t>(N) + 1, 0);
        for (int p : parts) ++mult[static_cast<std::size_t>(p)];
        for (int i = 1; i <= N; ++i) {
            const int m = mult[static_cast<std::size_t>(i)];
            if (m == 0) continue;
            BigInt pw = 1;
            for (int j = 0; j < m; ++j) pw *= i;
            centralizer *= pw * factorial(m);
        }
        t.entries.emplace(CycleType(parts), Rational(BigInt(1), centralizer));
    });
    return t;
}

DistTable table_from_counts(int degree, const std::map<CycleType, std::uint64_t>& counts, Provenance provenance,
                            std::uint64_t samples, std::uint64_t seed) {
    std::uint64_t total = 0;
    for (const auto& [type, c] : counts) {
        if (type.degree() != degree) throw Error(ErrorCode::InvalidArgument, "type " + type.str() + " has the wrong degree");
        total += c;
    }
    if (total == 0) throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty histogram");
    DistTable t;
    t.degree = degree;
    t.provenance = provenance;
    t.samples = samples;
    t.seed = seed;
    for (const auto& [type, c] : counts)
        if (c) t.entries.emplace(type, Rational(BigInt(c), BigInt(total)));
    return t;
}

std::uint64_t WreathSpec::leaf_count() const {
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= static_cast<std::uint64_t>(d);
        if (n > (1ULL << 40)) break;
    }
    return n;
}

BigInt WreathSpec::order() const {
    check_wreath(*this);
    BigInt exponent = 0, pw = 1;
    for (int i = 0; i < k; ++i) {
        exponent += pw;
        pw *= d;
    }
    const BigInt f = factorial(d);
    BigInt out = 1;
    for (BigInt i = 0; i < exponent; ++i) out *= f;
    return out;
}

CycleType cycle_type(const Permutation& perm) {
    std::vector<int> parts;
    for (const auto& c : cycles_of(perm)) parts.push_back(static_cast<int>(c.size()));
    return CycleType(std::move(parts));
}

Permutation wreath_sample_element(const WreathSpec& spec, SplitMix64& rng) {
    check_wreath(spec);
    if (spec.leaf_count() > (1ULL << 20)) throw Error(ErrorCode::UnsupportedSize, "wreath sampling is limited to 2^20 leaves");
    if (spec.k == 1) return uniform_permutation(spec.d, rng);
    const Permutation base = wreath_sample_element(WreathSpec{spec.d, spec.k - 1}, rng);
    std::vector<Permutation> fibers;
    fibers.reserve(base.size());
    for (std::size_t b = 0; b < base.size(); ++b) fibers.push_back(uniform_permutation(spec.d, rng));
    std::vector<const Permutation*> ptrs;
    for (const auto& f : fibers) ptrs.push_back(&f);
    return lift(base, ptrs, spec.d);
}

CycleType wreath_sample(const WreathSpec& spec, SplitMix64& rng) { return cycle_type(wreath_sample_element(spec, rng)); }

DistTable wreath_distribution_exhaustive(const WreathSpec& spec, std::uint64_t cap) {
    check_wreath(spec);
    const BigInt order = spec.order();
    if (order > cap) throw Error(ErrorCode::UnsupportedSize, "wreath power of order " + order.str() + " exceeds the enumeration cap");
    const int d = spec.d;
    const std::vector<Permutation> sd = all_permutations(d);
    const std::size_t m = sd.size();

    // Composition table of S_d (mul[a][b] = a o b) and the types of its elements.
    std::vector<std::size_t> mul(m * m);
    {
        std::map<Permutation, std::size_t> index;
        for (std::size_t i = 0; i < m; ++i) index[sd[i]] = i;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                Permutation c(static_cast<std::size_t>(d));
                for (int j = 0; j < d; ++j) c[static_cast<std::size_t>(j)] = sd[a][static_cast<std::size_t>(sd[b][static_cast<std::size_t>(j)])];
                mul[a * m + b] = index.at(c);
            }
    }
    std::vector<std::vector<int>> sd_parts;
    for (const auto& p : sd) {
        const CycleType t = cycle_type(p);
        sd_parts.emplace_back(t.parts().begin(), t.parts().end());
    }

    std::map<CycleType, std::uint64_t> counts;
    if (spec.k == 1) {
        for (const auto& p : sd) ++counts[cycle_type(p)];
    } else {
        const std::vector<Permutation> base = wreath_elements(d, spec.k - 1, sd);
        const std::size_t blocks = base.front().size();
        std::vector<std::size_t> digits(blocks);
        std::vector<int> parts;
        for (const Permutation& pi : base) {
            const auto cycles = cycles_of(pi);
            std::fill(digits.begin(), digits.end(), 0);
            for (;;) {
                parts.clear();
                for (const auto& cyc : cycles) {
                    std::size_t sigma = 0;  // sd[0] is the identity
                    for (const int b : cyc) sigma = mul[digits[static_cast<std::size_t>(b)] * m + sigma];
                    for (const int c : sd_parts[sigma]) parts.push_back(c * static_cast<int>(cyc.size()));
                }
                ++counts[CycleType(parts)];
                std::size_t i = 0;
                while (i < blocks && ++digits[i] == m) digits[i++] = 0;
                if (i == blocks) break;
            }
        }
    }
    return table_from_counts(static_cast<int>(spec.leaf_count()), counts, Provenance::ExhaustiveEnumeration);
}

DistTable wreath_distribution_sampled(const WreathSpec& spec, std::uint64_t samples, std::uint64_t seed, unsigned jobs) {
    check_wreath(spec);
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sampled table needs at least one draw");
    if (spec.leaf_count() > (1ULL << 20)) throw Error(ErrorCode::UnsupportedSize, "wreath sampling is limited to 2^20 leaves");
    std::vector<std::map<CycleType, std::uint64_t>> partial(std::max(jobs, 1u));
    parallel_chunks(samples, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        auto& counts = partial[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng(hash64(seed, i));
            ++counts[wreath_sample(spec, rng)];
        }
    });
    std::map<CycleType, std::uint64_t> counts;
    for (const auto& p : partial)
        for (const auto& [t, c] : p) counts[t] += c;
    return table_from_counts(static_cast<int>(spec.leaf_count()), counts, Provenance::Sampled, samples, seed);
}

Rational full_cycle_probability(const WreathSpec& spec) {
    check_wreath(spec);
    BigInt den = 1;
    for (int i = 0; i < spec.k; ++i) den *= spec.d;
    return Rational(BigInt(1), den);
}

DistTable group_closure_distribution(const std::vector<Permutation>& generators, std::uint64_t cap) {
    if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "at least one generator is required");
    const std::size_t n = generators.front().size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "generators must act on at least one point");
    for (const auto& g : generators) {
        if (g.size() != n) throw Error(ErrorCode::InvalidArgument, "generators act on different point sets");
        Permutation s = g;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] != static_cast<int>(i)) throw Error(ErrorCode::InvalidArgument, "generator is not a permutation");
    }
    Permutation id(n);
    std::iota(id.begin(), id.end(), 0);
    std::unordered_set<Permutation, PermHash> seen{id};
    std::deque<Permutation> queue{id};
    std::map<CycleType, std::uint64_t> counts;
    while (!queue.empty()) {
        const Permutation g = std::move(queue.front());
        queue.pop_front();
        ++counts[cycle_type(g)];
        for (const auto& s : generators) {
            Permutation h(n);
            for (std::size_t i = 0; i < n; ++i) h[i] = s[static_cast<std::size_t>(g[i])];
            if (seen.insert(h).second) {
                if (seen.size() > cap) throw Error(ErrorCode::ClosureTooLarge, "group closure exceeds " + std::to_string(cap) + " elements");
                queue.push_back(std::move(h));
            }
        }
    }
    return table_from_counts(static_cast<int>(n), counts, Provenance::ExhaustiveEnumeration);
}

std::vector<Permutation> gl3_f2_generators() {
    // Matrices as column images of e1, e2, e3 (bit patterns 1, 2, 4).
    auto action = [](std::array<int, 3> cols) {
        Permutation p(7);
        for (int v = 1; v <= 7; ++v) {
            int image = 0;
            for (int bit = 0; bit < 3; ++bit)
                if (v >> bit & 1) image ^= cols[static_cast<std::size_t>(bit)];
            p[static_cast<std::size_t>(v - 1)] = image - 1;
        }
        return p;
    };
    // Transvection e2 -> e1 + e2, and the cyclic shift e1 -> e2 -> e3 -> e1.
    return {action({1, 3, 4}), action({2, 4, 1})};
}

DistTable psl32_distribution() { return group_closure_distribution(gl3_f2_generators()); }

Rational tv_distance_exact(const DistTable& a, const DistTable& b) {
    if (a.degree != b.degree)
        throw Error(ErrorCode::DegreeMismatch, "tables have degrees " + std::to_string(a.degree) + " and " + std::to_string(b.degree));
    Rational sum = 0;
    for (const auto& [t, p] : a.entries) sum += abs(p - b.prob(t));
    for (const auto& [t, p] : b.entries)
        if (!a.entries.contains(t)) sum += p;
    return sum / 2;
}

double tv_distance(const DistTable& a, const DistTable& b) { return to_double(tv_distance_exact(a, b)); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_csv(const DistTable& t) {
    std::string out = "# provenance: " + t.provenance_str() + "\n";
    out += "type,num,den,prob_float\n";
    for (const auto& [type, p] : t.entries)
        out += type.str() + "," + numerator(p).str() + "," + denominator(p).str() + "," + format_prob(to_double(p)) + "\n";
    return out;
}

}  // namespace galstat
