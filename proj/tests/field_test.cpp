#include <cwe/field.hpp>

#include <gtest/gtest.h>

#include <map>
#include <random>

namespace {

using cwe::FieldContext;
using cwe::FieldElement;

struct Params {
    std::uint32_t p;
    unsigned m;
};

const std::vector<Params> kFields = {{3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 2}, {7, 3}};

FieldElement random_element(const FieldContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(ctx.order() - 1));
    return ctx.from_index(pick(rng));
}

// Definitional trace: x + x^p + ... + x^{p^{m-1}}, then read back as a prime-field value.
std::uint32_t trace_by_frobenius(const FieldContext& ctx, FieldElement x) {
    FieldElement acc = FieldElement::zero();
    FieldElement y = x;
    for (unsigned i = 0; i < ctx.m(); ++i) {
        acc = ctx.add(acc, y);
        y = ctx.pow(y, ctx.p());
    }
    const auto v = ctx.to_prime_field(acc);
    EXPECT_TRUE(v.has_value());
    return v.value_or(0);
}

} // namespace

TEST(Field, PrimeFieldGeneratorIsTwoForThree) {
    const auto ctx = cwe::build_field(3, 1, std::nullopt);
    EXPECT_EQ(ctx.coefficients(ctx.alpha_pow(0)), cwe::Polynomial{1});
    EXPECT_EQ(ctx.coefficients(ctx.alpha_pow(1)), cwe::Polynomial{2});
}

TEST(Field, NineElementField) {
    const auto ctx = cwe::build_field(3, 2, std::nullopt);
    EXPECT_EQ(ctx.prim_poly(), (cwe::Polynomial{2, 1, 1}));
    EXPECT_EQ(ctx.pow(ctx.alpha(), 8), ctx.one());
    EXPECT_EQ(ctx.pow(ctx.alpha(), 4), ctx.neg(ctx.one()));
    EXPECT_NE(ctx.pow(ctx.alpha(), 4), ctx.one());
}

TEST(Field, FrobeniusFixesEveryElement) {
    const auto ctx = cwe::build_field(5, 3, std::nullopt);
    for (auto x : ctx.elements()) EXPECT_EQ(ctx.pow(x, 125), x);
}

TEST(Field, SmallestPrimitivePolynomialIsPrimitiveAndMinimal) {
    for (const auto& [p, m] : kFields) {
        const auto f = cwe::smallest_primitive_polynomial(p, m);
        ASSERT_EQ(f.size(), m + 1);
        EXPECT_EQ(f.back(), 1u);
        EXPECT_TRUE(cwe::is_primitive_polynomial(p, f));
    }
    EXPECT_FALSE(cwe::is_primitive_polynomial(3, {1, 0, 1}));  // t^2 + 1 has order 4
    EXPECT_FALSE(cwe::is_primitive_polynomial(3, {0, 1, 1}));  // reducible
}

TEST(Field, BuildErrors) {
    const auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const cwe::Error& e) {
            return e.code();
        }
        return cwe::ErrorCode::NotRepresentable;
    };
    EXPECT_EQ(code_of([] { cwe::build_field(4, 2, std::nullopt); }), cwe::ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { cwe::build_field(9, 1, std::nullopt); }), cwe::ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { cwe::build_field(3, 0, std::nullopt); }), cwe::ErrorCode::BadExponent);
    EXPECT_EQ(code_of([] { cwe::build_field(3, 30, std::nullopt); }), cwe::ErrorCode::CapExceeded);
    EXPECT_EQ(code_of([] { cwe::build_field(3, 2, cwe::Polynomial{1, 0, 1}); }), cwe::ErrorCode::NotPrimitive);
}

TEST(Field, OverrideIsHonoured) {
    const auto ctx = cwe::build_field(3, 2, cwe::Polynomial{2, 2, 1});
    EXPECT_EQ(ctx.prim_poly(), (cwe::Polynomial{2, 2, 1}));
    // alpha satisfies its own polynomial: alpha^2 = -2 alpha - 2 = alpha + 1.
    EXPECT_EQ(ctx.mul(ctx.alpha(), ctx.alpha()), ctx.add(ctx.alpha(), ctx.one()));
}

TEST(Field, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(20261017);
    for (const auto& [p, m] : kFields) {
        const auto ctx = cwe::build_field(p, m, std::nullopt);
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = random_element(ctx, rng);
            const auto b = random_element(ctx, rng);
            const auto c = random_element(ctx, rng);
            EXPECT_EQ(ctx.add(a, ctx.neg(a)), FieldElement::zero());
            EXPECT_EQ(ctx.mul(FieldElement::zero(), a), FieldElement::zero());
            EXPECT_EQ(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
            EXPECT_EQ(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
            EXPECT_EQ(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            EXPECT_EQ(ctx.sub(ctx.add(a, b), b), a);
            if (!a.is_zero()) {
                EXPECT_EQ(ctx.mul(a, ctx.inv(a)), ctx.one());
            }
            EXPECT_EQ(ctx.trace(ctx.add(a, b)), (ctx.trace(a) + ctx.trace(b)) % p);
        }
        EXPECT_EQ(ctx.pow(ctx.alpha(), static_cast<std::int64_t>(ctx.group_order())), ctx.one());
    }
}

TEST(Field, IndexAndCoefficientRoundTrip) {
    for (const auto& [p, m] : kFields) {
        const auto ctx = cwe::build_field(p, m, std::nullopt);
        for (std::uint32_t i = 0; i < ctx.order(); ++i) {
            const auto x = ctx.from_index(i);
            EXPECT_EQ(ctx.index_of(x), i);
            EXPECT_EQ(ctx.from_coefficients(ctx.coefficients(x)), x);
        }
        for (std::int64_t c = 0; c < p; ++c) EXPECT_EQ(ctx.to_prime_field(ctx.from_prime_field(c)), c);
    }
}

TEST(Field, TraceMatchesFrobeniusSum) {
    for (const auto& [p, m] : kFields) {
        const auto ctx = cwe::build_field(p, m, std::nullopt);
        std::map<std::uint32_t, std::uint64_t> census;
        for (auto x : ctx.elements()) {
            EXPECT_EQ(ctx.trace(x), trace_by_frobenius(ctx, x));
            ++census[ctx.trace(x)];
        }
        ASSERT_EQ(census.size(), p);
        for (const auto& [v, n] : census) EXPECT_EQ(n, ctx.order() / p) << "value " << v;
        EXPECT_EQ(ctx.trace(FieldElement::zero()), 0u);
        const auto powers = ctx.trace_of_powers();
        ASSERT_EQ(powers.size(), ctx.group_order());
        for (std::uint32_t k = 0; k < ctx.group_order(); ++k) EXPECT_EQ(powers[k], ctx.trace(ctx.alpha_pow(k)));
    }
}

TEST(Field, TraceOfNineElementFieldIsBalanced) {
    const auto ctx = cwe::build_field(3, 2, std::nullopt);
    std::map<std::uint32_t, int> census;
    for (auto x : ctx.elements()) ++census[ctx.trace(x)];
    EXPECT_EQ(census, (std::map<std::uint32_t, int>{{0, 3}, {1, 3}, {2, 3}}));
}

TEST(Field, QuadraticCharacter) {
    const auto f3 = cwe::build_field(3, 1, std::nullopt);
    EXPECT_EQ(f3.quad_char(f3.one()), 1);
    EXPECT_EQ(f3.quad_char(f3.from_prime_field(2)), -1);
    EXPECT_EQ(f3.quad_char(FieldElement::zero()), 0);
    for (const auto& [p, m] : kFields) {
        const auto ctx = cwe::build_field(p, m, std::nullopt);
        const std::int64_t half = ctx.group_order() / 2;
        for (auto x : ctx.elements()) {
            if (x.is_zero()) continue;
            EXPECT_EQ(ctx.quad_char(ctx.mul(x, x)), 1);
            // Euler's criterion.
            const auto euler = ctx.pow(x, half);
            EXPECT_EQ(euler == ctx.one() ? 1 : -1, ctx.quad_char(x));
        }
    }
}

TEST(Field, MinimalPolynomials) {
    for (const auto& [p, m] : kFields) {
        const auto ctx = cwe::build_field(p, m, std::nullopt);
        EXPECT_EQ(ctx.minimal_polynomial(ctx.one()), (cwe::Polynomial{p - 1, 1}));
        EXPECT_EQ(ctx.minimal_polynomial(ctx.alpha()), ctx.prim_poly());
        for (auto x : ctx.elements()) {
            if (x.is_zero()) continue;
            const auto h = ctx.minimal_polynomial(x);
            EXPECT_EQ(m % (h.size() - 1), 0u);
            FieldElement acc = FieldElement::zero();
            for (std::size_t i = h.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), ctx.from_prime_field(h[i]));
            EXPECT_TRUE(acc.is_zero());
        }
    }
}

TEST(Field, DegenerateMinimalPolynomialWhenMIsTwiceL) {
    const auto ctx = cwe::build_field(3, 2, std::nullopt);
    EXPECT_EQ(ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -4)).size() - 1, 1u);
    const auto ctx3 = cwe::build_field(3, 3, std::nullopt);
    EXPECT_EQ(ctx3.minimal_polynomial(ctx3.pow(ctx3.alpha(), -4)).size() - 1, 3u);
}
