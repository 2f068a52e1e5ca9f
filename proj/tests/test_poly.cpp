#include "oracles.hpp"
#include "test_util.hpp"

using namespace galstat;

namespace {

Poly P(const FieldPtr& F, std::initializer_list<std::int64_t> c) { return Poly::from_ints(F, c); }

bool is_ramified(const FactorTypeResult& r) { return std::holds_alternative<RamifiedFlag>(r); }

}  // namespace

TEST_CASE("basic arithmetic examples") {
    const auto f5 = make_field(5, 1);
    CHECK(gcd(P(f5, {-1, 0, 1}), P(f5, {-1, 1})) == P(f5, {4, 1}));
    const auto [q, r] = divrem(P(f5, {0, 0, 0, 1}), P(f5, {0, 0, 1}));
    CHECK(q == P(f5, {0, 1}));
    CHECK(r.is_zero());
    CHECK(P(f5, {2, 1}) * P(f5, {3, 1}) == P(f5, {1, 0, 1}));
    CHECK((P(f5, {1, 2}) - P(f5, {1, 2})).is_zero());
    CHECK(P(f5, {1, 0, 3}).str() == "3*x^2 + 1");
    CHECK(P(f5, {4, 1}).eval(FieldElem{1}).code == 0);

    const auto f7 = make_field(7, 1);
    CHECK_CODE(FieldMismatch, P(f5, {1}) + P(f7, {1}));
    CHECK_CODE(DivisionByZero, divrem(P(f5, {1, 1}), Poly(f5)));
    CHECK_CODE(ZeroPolynomial, gcd(Poly(f5), Poly(f5)));
    CHECK(gcd(P(f5, {2, 2}), Poly(f5)) == P(f5, {1, 1}));
}

TEST_CASE("derivative examples") {
    const auto f5 = make_field(5, 1);
    CHECK(derivative(P(f5, {1, 1, 0, 1})) == P(f5, {1, 0, 3}));
    CHECK(derivative(P(f5, {1, 0, 0, 0, 0, 1})).is_zero());
    CHECK(derivative(P(f5, {3})).is_zero());
}

TEST_CASE("compose and powmod") {
    const auto f3 = make_field(3, 1);
    // (x^2 + 1)^2 + 1 = x^4 + 2x^2 + 2 over F_3.
    CHECK(compose(P(f3, {1, 0, 1}), P(f3, {1, 0, 1})) == P(f3, {2, 0, 2, 0, 1}));
    const auto f101 = make_field(101, 1);
    const Poly m = P(f101, {3, 1, 0, 1});
    Poly acc = P(f101, {1});
    for (int i = 0; i < 101; ++i) acc = divrem(acc * Poly::x(f101), m).second;
    CHECK(powmod(Poly::x(f101), 101, m) == acc);
}

TEST_CASE("resultant examples") {
    const auto f7 = make_field(7, 1);
    CHECK(resultant(P(f7, {-1, 1}), P(f7, {-1, 1})).code == 0);
    const auto f5 = make_field(5, 1);
    CHECK(resultant(P(f5, {-2, 1}), P(f5, {1, 0, 1})).code == 0);
    const auto f3 = make_field(3, 1);
    const Poly f = P(f3, {1, 0, 1}), g = P(f3, {1, 1, 1});
    // Oracle: 4x4 Sylvester determinant. By hand: g(i) g(-i) = i * (-i) = 1.
    CHECK(oracle::sylvester_resultant(f, g) == FieldElem{1});
    CHECK(resultant(f, g) == FieldElem{1});
    CHECK_CODE(ZeroPolynomial, resultant(f, Poly(f3)));
}

TEST_CASE("resultant matches the Sylvester determinant on random pairs") {
    const std::vector<std::pair<std::uint64_t, int>> fields{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {5, 2}, {2, 8}};
    for (auto [p, nu] : fields) {
        const auto F = make_field(p, nu);
        SplitMix64 rng(7 * p + static_cast<std::uint64_t>(nu));
        int mismatches = 0;
        for (int i = 0; i < 1000; ++i) {
            const Poly f = testutil::random_poly(F, static_cast<int>(uniform_below(rng, 7)), rng);
            const Poly g = testutil::random_poly(F, static_cast<int>(uniform_below(rng, 7)), rng);
            if (resultant(f, g) != oracle::sylvester_resultant(f, g)) ++mismatches;
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("discriminant examples") {
    const auto f5 = make_field(5, 1);
    CHECK(discriminant(P(f5, {1, 1, 1})).value == FieldElem{2});

    // x^3 + ax + b: -4a^3 - 27b^2 = -31 = 70 mod 101 at a = b = 1.
    const auto f101 = make_field(101, 1);
    const Poly cubic = P(f101, {1, 1, 0, 1});
    CHECK(f101->from_int(-4 - 27) == FieldElem{70});
    CHECK(discriminant(cubic).value == FieldElem{70});
    // Same value through the Sylvester oracle with the sign/leading-coefficient convention.
    const FieldElem syl = oracle::sylvester_resultant(cubic, derivative(cubic));
    CHECK(f101->neg(syl) == FieldElem{70});

    const auto f7 = make_field(7, 1);
    CHECK(discriminant(P(f7, {1, 2, 1})).value.code == 0);
    const auto d = discriminant(P(f5, {1, 0, 0, 0, 0, 1}));
    CHECK(d.derivative_vanishes);
    CHECK(d.value.code == 0);
    CHECK(discriminant(P(f5, {3, 2})).value == f5->one());
    CHECK_CODE(ConstantPolynomial, discriminant(P(f5, {3})));
    CHECK_CODE(ZeroPolynomial, discriminant(Poly(f5)));
}

TEST_CASE("discriminant of a non-monic quadratic follows b^2 - 4ac") {
    const auto f11 = make_field(11, 1);
    const Poly f = P(f11, {3, 5, 7});
    CHECK(discriminant(f).value == f11->from_int(25 - 4 * 7 * 3));
}

TEST_CASE("discriminant vanishes exactly on non-squarefree inputs") {
    for (auto [p, nu] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {2, 3}}) {
        const auto F = make_field(p, nu);
        SplitMix64 rng(p + 31 * static_cast<std::uint64_t>(nu));
        int bad = 0;
        for (int i = 0; i < 2000; ++i) {
            const Poly f = testutil::random_poly(F, 1 + static_cast<int>(uniform_below(rng, 6)), rng);
            const Poly fp = derivative(f);
            const bool degenerate = fp.is_zero() || gcd(f, fp).degree() > 0;
            if ((discriminant(f).value.code == 0) != degenerate) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("factor examples") {
    const auto f5 = make_field(5, 1);
    const auto a = factor(P(f5, {1, 0, 1}));
    REQUIRE(a.factors.size() == 2);
    CHECK(a.factors[0] == std::pair{P(f5, {2, 1}), 1});
    CHECK(a.factors[1] == std::pair{P(f5, {3, 1}), 1});

    const auto f3 = make_field(3, 1);
    const auto b = factor(P(f3, {1, 0, 0, 0, 1}));
    REQUIRE(b.factors.size() == 2);
    CHECK(b.factors[0].first == P(f3, {2, 1, 1}));
    CHECK(b.factors[1].first == P(f3, {2, 2, 1}));
    // Expansion oracle.
    CHECK(P(f3, {2, 1, 1}) * P(f3, {2, 2, 1}) == P(f3, {1, 0, 0, 0, 1}));

    const auto f2 = make_field(2, 1);
    const auto c = factor(P(f2, {1, 0, 1}));
    REQUIRE(c.factors.size() == 1);
    CHECK(c.factors[0] == std::pair{P(f2, {1, 1}), 2});

    const auto u = factor(P(f5, {4}));
    CHECK(u.factors.empty());
    CHECK(u.unit == FieldElem{4});
    CHECK_CODE(ZeroPolynomial, factor(Poly(f5)));
}

TEST_CASE("inseparable inputs descend through p-th roots") {
    const auto f3 = make_field(3, 1);
    // (x^3 + 2x + 1)^3 (x + 1)^2 = x^9 + 2x^3 + 1 times (x+1)^2.
    const Poly base = P(f3, {1, 2, 0, 1});
    Poly f = base * base * base * P(f3, {1, 1}) * P(f3, {1, 1});
    const auto fac = factor(f);
    CHECK(fac.expand(f3) == f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0] == std::pair{P(f3, {1, 1}), 2});
    CHECK(fac.factors[1] == std::pair{base, 3});

    const auto f4 = make_field(2, 2);
    const Poly g = Poly(f4, {f4->generator(), f4->zero(), f4->zero(), f4->zero(), f4->one()});  // x^4 + u
    const auto gf = factor(g);
    CHECK(gf.expand(f4) == g);
    REQUIRE(gf.factors.size() == 1);
    CHECK(gf.factors[0].second == 4);
}

TEST_CASE("factorization round trip on random polynomials") {
    const std::vector<std::pair<std::uint64_t, int>> fields{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {5, 2}, {2, 8}};
    for (auto [p, nu] : fields) {
        const auto F = make_field(p, nu);
        CAPTURE(F->q());
        SplitMix64 rng(1000 + p * 10 + static_cast<std::uint64_t>(nu));
        int failures = 0;
        for (int i = 0; i < 2000; ++i) {
            const Poly f = testutil::random_poly(F, 1 + static_cast<int>(uniform_below(rng, 12)), rng);
            const auto fac = factor(f, rng());
            bool ok = fac.expand(F) == f;
            for (const auto& [g, m] : fac.factors) ok = ok && g.is_monic() && m >= 1 && is_irreducible(g);
            for (std::size_t j = 1; j < fac.factors.size(); ++j) ok = ok && !(fac.factors[j - 1].first == fac.factors[j].first);
            if (!ok) ++failures;
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("factorization is seed independent") {
    const auto F = make_field(7, 1);
    SplitMix64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const Poly f = testutil::random_poly(F, 10, rng);
        const auto a = factor(f, 1), b = factor(f, 123456789);
        CHECK(a.factors == b.factors);
        CHECK(a.unit == b.unit);
    }
}

TEST_CASE("is_irreducible examples and errors") {
    const auto f3 = make_field(3, 1), f5 = make_field(5, 1);
    CHECK(is_irreducible(P(f3, {1, 0, 1})));
    CHECK_FALSE(is_irreducible(P(f5, {1, 0, 1})));
    CHECK_CODE(ZeroPolynomial, is_irreducible(Poly(f5)));
    CHECK_CODE(ConstantPolynomial, is_irreducible(P(f5, {2})));

    int count = 0;
    for (const Poly& f : testutil::all_monic(f5, 2)) {
        const bool irr = is_irreducible(f);
        CHECK(irr == (oracle::count_roots(f) == 0));
        count += irr;
    }
    CHECK(count == 10);
    CHECK(count == (25 - 5) / 2);
}

TEST_CASE("irreducible counts match the necklace formula") {
    const std::vector<std::pair<std::uint64_t, int>> cases{{2, 8}, {3, 5}, {5, 4}};
    for (auto [q, max_n] : cases) {
        const auto F = make_field(q, 1);
        for (int n = 1; n <= max_n; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            std::int64_t count = 0;
            for (const Poly& f : testutil::all_monic(F, n)) count += is_irreducible(f);
            CHECK(count == oracle::necklace_count(static_cast<std::int64_t>(q), n));
        }
    }
}

TEST_CASE("is_irreducible agrees with trial division and factor") {
    for (auto [p, nu] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        const auto F = make_field(p, nu);
        for (int n = 1; n <= 4; ++n) {
            if (n == 4 && F->q() > 4) continue;
            for (const Poly& f : testutil::all_monic(F, n)) {
                const bool irr = is_irreducible(f);
                CHECK(irr == oracle::irreducible_by_trial_division(f));
                const auto fac = factor(f);
                CHECK(irr == (fac.factors.size() == 1 && fac.factors[0].second == 1));
            }
        }
    }
}

TEST_CASE("factor_type examples") {
    const auto f101 = make_field(101, 1);
    CHECK(std::get<FactorType>(factor_type(P(f101, {0, 1, 0, 1}))) == FactorType({1, 1, 1}));
    const auto f3 = make_field(3, 1);
    CHECK(std::get<FactorType>(factor_type(P(f3, {1, 0, 1}))) == FactorType({2}));
    const auto f5 = make_field(5, 1);
    const Poly ram = P(f5, {1, 1}) * P(f5, {1, 1}) * P(f5, {2, 1});
    const auto r = factor_type(ram);
    REQUIRE(is_ramified(r));
    CHECK(std::get<RamifiedFlag>(r).pattern == std::vector<std::pair<int, int>>{{1, 2}, {1, 1}});
    CHECK_CODE(ConstantPolynomial, factor_type(P(f5, {1})));
}

TEST_CASE("factor_type of squarefree polynomials is a partition of the degree") {
    for (auto [p, nu] : std::vector<std::pair<std::uint64_t, int>>{{2, 1}, {7, 1}, {3, 2}, {2, 4}}) {
        const auto F = make_field(p, nu);
        SplitMix64 rng(5 * p + static_cast<std::uint64_t>(nu));
        for (int i = 0; i < 500; ++i) {
            const Poly f = testutil::random_poly(F, 1 + static_cast<int>(uniform_below(rng, 10)), rng);
            const auto t = factor_type(f);
            CHECK(is_ramified(t) == !is_squarefree(f));
            if (const auto* ft = std::get_if<FactorType>(&t)) {
                CHECK(ft->degree() == f.degree());
                std::vector<int> degrees;
                for (const auto& [g, m] : factor(f).factors) degrees.push_back(g.degree());
                CHECK(*ft == FactorType(degrees));
            }
        }
    }
}

TEST_CASE("is_morse examples") {
    const auto f7 = make_field(7, 1);
    const auto a = is_morse(P(f7, {0, -3, 0, 1}));
    CHECK(a.derivative_squarefree);
    CHECK(a.critical_values_distinct);
    CHECK(a.is_morse);
    CHECK_FALSE(a.characteristic_too_small);
    // Critical values at t = +-1 are 5 and 2.
    const Poly cubic = P(f7, {0, -3, 0, 1});
    CHECK(cubic.eval(FieldElem{1}) == FieldElem{5});
    CHECK(cubic.eval(FieldElem{6}) == FieldElem{2});

    const auto b = is_morse(P(f7, {0, 0, 0, 1}));
    CHECK_FALSE(b.derivative_squarefree);
    CHECK_FALSE(b.is_morse);

    const auto f101 = make_field(101, 1);
    const auto c = is_morse(P(f101, {0, 0, -2, 0, 1}));
    CHECK(c.derivative_squarefree);
    CHECK_FALSE(c.critical_values_distinct);
    CHECK_FALSE(c.is_morse);
    CHECK(c.degenerate_detail.has_value());

    const auto f3 = make_field(3, 1);
    CHECK(is_morse(P(f3, {1, 1, 0, 1})).characteristic_too_small);
    CHECK_CODE(InvalidArgument, is_morse(P(f7, {1, 1})));
}

TEST_CASE("is_morse agrees with direct critical-value comparison") {
    // Split cubics t^3 + a t + b over F_101: compare with explicit critical points.
    const auto F = make_field(101, 1);
    for (std::int64_t a = 0; a < 101; a += 7) {
        for (std::int64_t b = 0; b < 101; b += 13) {
            const Poly f = P(F, {b, a, 0, 1});
            const Poly fp = derivative(f);
            std::vector<FieldElem> crit;
            for (const FieldElem t : F->elements())
                if (fp.eval(t).code == 0) crit.push_back(t);
            const auto rep = is_morse(f);
            if (crit.size() == 2) {
                CHECK(rep.is_morse == (f.eval(crit[0]) != f.eval(crit[1])));
            }
            if (a == 0) CHECK_FALSE(rep.is_morse);
        }
    }
}
