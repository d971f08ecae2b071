#include <cwe/char_sums.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace {

using cwe::CyclotomicInt;
using cwe::FieldElement;
using cwe::GaussTypeValue;

CyclotomicInt zeta(std::uint32_t p, std::int64_t k) { return CyclotomicInt::zeta_power(p, k); }

// Distribution of T (or S when b is pinned to zero) from field arithmetic alone.
cwe::SumDistribution distribution_by_field_arithmetic(const cwe::FieldContext& ctx, unsigned l, bool with_b) {
    cwe::SumDistribution dist(ctx.p(), ctx.m(), l);
    const auto elements = ctx.elements();
    for (auto a : elements) {
        for (auto b : elements) {
            if (!with_b && !b.is_zero()) continue;
            if (a.is_zero() && b.is_zero()) continue;
            dist.add(cwe::classify(cwe::exp_sum_T(ctx, l, a, b)), 1);
        }
    }
    return dist;
}

} // namespace

TEST(CharSums, Legendre) {
    EXPECT_EQ(cwe::legendre(1, 3), 1);
    EXPECT_EQ(cwe::legendre(2, 3), -1);
    EXPECT_EQ(cwe::legendre(4, 5), 1);
    EXPECT_EQ(cwe::legendre(2, 5), -1);
    EXPECT_EQ(cwe::legendre(0, 7), 0);
    EXPECT_EQ(cwe::legendre(-1, 7), -1);
}

TEST(CharSums, PrimeGaussSumSquares) {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const auto g = cwe::prime_gauss_sum(p);
        const std::int64_t sign = (p % 4 == 1) ? 1 : -1;
        EXPECT_EQ((g * g).as_integer(), sign * static_cast<std::int64_t>(p)) << p;
    }
}

TEST(CharSums, GaussSumDirectSmallPrimes) {
    const auto f3 = cwe::build_field(3, 1, std::nullopt);
    EXPECT_EQ(cwe::gauss_sum_direct(f3), zeta(3, 1) - zeta(3, 2));
    const auto f5 = cwe::build_field(5, 1, std::nullopt);
    EXPECT_EQ(cwe::gauss_sum_direct(f5), zeta(5, 1) - zeta(5, 2) - zeta(5, 3) + zeta(5, 4));
}

TEST(CharSums, GaussSumClosed) {
    EXPECT_EQ(cwe::gauss_sum_closed(3, 1), GaussTypeValue::make(1, 1, 1));
    EXPECT_EQ(cwe::gauss_sum_closed(5, 1), GaussTypeValue::real(1, 1));
    EXPECT_EQ(cwe::gauss_sum_closed(3, 2), GaussTypeValue::real(1, 2));
}

TEST(CharSums, GaussSumDirectAgreesWithClosed) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        for (unsigned m = 1; m <= 4; ++m) {
            if (cwe::ipow64(p, m) > 3000) continue;
            const auto ctx = cwe::build_field(p, m, std::nullopt);
            const auto direct = cwe::gauss_sum_direct(ctx);
            const auto closed = cwe::gauss_sum_closed(p, m);
            EXPECT_TRUE(cwe::gauss_sum_agrees(direct, closed)) << p << "^" << m;
            EXPECT_FALSE(cwe::gauss_sum_agrees(direct, -closed)) << p << "^" << m;
            EXPECT_EQ(cwe::classify(direct), closed);
            if (const auto exact = cwe::embed(closed, p)) {
                EXPECT_EQ(*exact, direct);
            }
        }
    }
}

TEST(CharSums, Classification) {
    EXPECT_EQ(cwe::classify(CyclotomicInt::integer(3, 9)), GaussTypeValue::real(1, 4));
    EXPECT_EQ(cwe::classify(CyclotomicInt::integer(3, -27)), GaussTypeValue::real(-1, 6));
    EXPECT_EQ(cwe::classify(zeta(3, 1) - zeta(3, 2)), GaussTypeValue::make(1, 1, 1));
    EXPECT_EQ(cwe::classify((zeta(3, 2) - zeta(3, 1)) * 9), GaussTypeValue::make(-1, 1, 5));
    EXPECT_EQ(cwe::classify(cwe::prime_gauss_sum(5) * -5), GaussTypeValue::real(-1, 3));
    try {
        (void)cwe::classify(CyclotomicInt::integer(3, 2));
        ADD_FAILURE() << "2 classified";
    } catch (const cwe::Error& e) {
        EXPECT_EQ(e.code(), cwe::ErrorCode::ValueOutsideLemma);
    }
    EXPECT_THROW((void)cwe::classify(zeta(5, 1)), cwe::Error);
}

TEST(CharSums, QuadraticSumIdentity) {
    const auto f3 = cwe::build_field(3, 1, std::nullopt);
    const auto [d1, c1] = cwe::quadratic_sum_identity_check(f3, f3.one(), FieldElement::zero(), FieldElement::zero());
    EXPECT_EQ(d1, cwe::gauss_sum_direct(f3));
    EXPECT_EQ(c1, d1);

    // x^2 + x over F_3 takes values 0, 2, 0.
    const auto [d2, c2] = cwe::quadratic_sum_identity_check(f3, f3.one(), f3.one(), FieldElement::zero());
    EXPECT_EQ(d2, CyclotomicInt::integer(3, 2) + zeta(3, 2));
    EXPECT_EQ(c2, d2);

    // 2x^2 over F_5 takes values 0, 2, 3, 3, 2.
    const auto f5 = cwe::build_field(5, 1, std::nullopt);
    const auto [d3, c3] =
        cwe::quadratic_sum_identity_check(f5, f5.from_prime_field(2), FieldElement::zero(), FieldElement::zero());
    EXPECT_EQ(d3, CyclotomicInt::integer(5, 1) + zeta(5, 2) * 2 + zeta(5, 3) * 2);
    EXPECT_EQ(d3, -cwe::prime_gauss_sum(5));
    EXPECT_EQ(c3, d3);

    try {
        (void)cwe::quadratic_sum_identity_check(f5, FieldElement::zero(), f5.one(), f5.one());
        ADD_FAILURE() << "a2 = 0 accepted";
    } catch (const cwe::Error& e) {
        EXPECT_EQ(e.code(), cwe::ErrorCode::DegenerateQuadratic);
    }
}

TEST(CharSums, SumsOfTheFirstForm) {
    const auto f9 = cwe::build_field(3, 2, std::nullopt);
    EXPECT_EQ(cwe::exp_sum_S(f9, 1, FieldElement::zero()).as_integer(), 9);
    for (auto a : f9.elements()) {
        if (a.is_zero()) continue;
        const auto v = cwe::exp_sum_S(f9, 1, a).as_integer();
        ASSERT_TRUE(v.has_value());
        EXPECT_TRUE(*v == -3 || *v == 9) << *v;
    }
    const auto f125 = cwe::build_field(5, 3, std::nullopt);
    const auto unit = cwe::prime_gauss_sum(5) * 5;
    for (auto a : f125.elements()) {
        if (a.is_zero()) continue;
        const auto v = cwe::exp_sum_S(f125, 1, a);
        EXPECT_TRUE(v == unit || v == -unit);
    }
}

TEST(CharSums, SecondFormWithZeroQuadraticPartIsGaussSum) {
    const auto ctx = cwe::build_field(3, 3, std::nullopt);
    const auto g = cwe::gauss_sum_direct(ctx);
    for (auto b : ctx.elements()) {
        if (b.is_zero()) continue;
        EXPECT_EQ(cwe::exp_sum_T(ctx, 1, FieldElement::zero(), b), g * ctx.quad_char(b));
    }
}

TEST(CharSums, FirstFormDistributions) {
    const auto f9 = cwe::build_field(3, 2, std::nullopt);
    auto expect = cwe::SumDistribution(3, 2, 1);
    expect.add(GaussTypeValue::real(-1, 2), 6);
    expect.add(GaussTypeValue::real(1, 4), 2);
    EXPECT_EQ(cwe::s_distribution(f9, 1), expect);
    EXPECT_EQ(cwe::s_distribution_closed(3, 2, 1), expect);

    const auto f81 = cwe::build_field(3, 4, std::nullopt);
    auto expect4 = cwe::SumDistribution(3, 4, 1);
    expect4.add(GaussTypeValue::real(1, 4), 60);
    expect4.add(GaussTypeValue::real(-1, 6), 20);
    EXPECT_EQ(cwe::s_distribution(f81, 1), expect4);
    EXPECT_EQ(cwe::s_distribution_closed(3, 4, 1), expect4);

    auto expect5 = cwe::SumDistribution(5, 3, 1);
    expect5.add(GaussTypeValue::real(1, 3), 62);
    expect5.add(GaussTypeValue::real(-1, 3), 62);
    EXPECT_EQ(cwe::s_distribution_closed(5, 3, 1), expect5);
}

TEST(CharSums, SecondFormFrequencies) {
    const auto f = cwe::t_frequencies(3, 3, 1);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0], 234);
    EXPECT_EQ(f[1], 156);
    EXPECT_EQ(f[2], 78);
    EXPECT_EQ(f[3], 13);
    const auto g = cwe::t_frequencies(3, 6, 2);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g[0], 235872);
    EXPECT_EQ(g[1], 32760);
    EXPECT_EQ(g[2], 26208);
    EXPECT_EQ(g[3], 364);
}

TEST(CharSums, SecondFormValuesAtTwentySeven) {
    const auto ctx = cwe::build_field(3, 3, std::nullopt);
    const auto dist = cwe::t_distribution(ctx, 1);
    std::set<unsigned> exps;
    for (const auto& e : dist.entries) exps.insert(e.value.half_exp);
    EXPECT_EQ(exps, (std::set<unsigned>{3, 4, 5}));
    for (const auto& e : dist.entries) EXPECT_EQ(e.value.imaginary, e.value.half_exp % 2 == 1);
    EXPECT_EQ(dist.total, 728);
}

// The fast table-driven sweep must agree with plain field arithmetic.
TEST(CharSums, SweepMatchesFieldArithmetic) {
    const struct {
        std::uint32_t p;
        unsigned m, l;
    } cases[] = {{3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {3, 4, 1}, {3, 4, 3}, {5, 2, 1}, {5, 3, 1}};
    for (const auto& c : cases) {
        const auto ctx = cwe::build_field(c.p, c.m, std::nullopt);
        EXPECT_EQ(cwe::s_distribution(ctx, c.l), distribution_by_field_arithmetic(ctx, c.l, false));
        if (cwe::ipow64(c.p, 3 * c.m) <= 2'000'000) {
            EXPECT_EQ(cwe::t_distribution(ctx, c.l), distribution_by_field_arithmetic(ctx, c.l, true));
        }
    }
}

TEST(CharSums, DirectEqualsClosedOnSmallGrid) {
    for (std::uint32_t p : {3u, 5u}) {
        for (unsigned m = 2; m <= (p == 3 ? 5u : 3u); ++m) {
            const auto ctx = cwe::build_field(p, m, std::nullopt);
            for (unsigned l = 1; l < m; ++l) {
                EXPECT_EQ(cwe::s_distribution(ctx, l), cwe::s_distribution_closed(p, m, l)) << p << " " << m << " " << l;
                EXPECT_EQ(cwe::t_distribution(ctx, l), cwe::t_distribution_closed(p, m, l)) << p << " " << m << " " << l;
            }
        }
    }
}

TEST(CharSums, GaloisScaling) {
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {3u, 5u}) {
        const auto ctx = cwe::build_field(p, 3, std::nullopt);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(ctx.order() - 1));
        for (int trial = 0; trial < 30; ++trial) {
            const auto a = ctx.from_index(pick(rng));
            const auto b = ctx.from_index(pick(rng));
            if (a.is_zero() && b.is_zero()) continue;
            const std::int64_t y = 1 + trial % (p - 1);
            const auto yy = ctx.from_prime_field(y);
            const auto t = cwe::exp_sum_T(ctx, 1, a, b);
            const auto scaled = cwe::exp_sum_T(ctx, 1, ctx.mul(yy, a), ctx.mul(yy, b));
            EXPECT_EQ(t.galois(y), scaled);
            auto expect = cwe::classify(t);
            if (expect.half_exp % 2 == 1) expect.sign *= cwe::legendre(y, p);
            EXPECT_EQ(cwe::classify(scaled), expect);
        }
    }
}

TEST(CharSums, RankExamples) {
    const auto f9 = cwe::build_field(3, 2, std::nullopt);
    const auto zero_rank = cwe::quadratic_form_rank(f9, cwe::trace_form(f9, 1, FieldElement::zero(), FieldElement::zero()));
    EXPECT_EQ(zero_rank.rank, 0u);
    EXPECT_EQ(zero_rank.radical_size(3), 9);
    for (auto a : f9.elements()) {
        if (a.is_zero() || cwe::exp_sum_S(f9, 1, a).as_integer() != 9) continue;
        const auto form = cwe::trace_form(f9, 1, a, FieldElement::zero());
        EXPECT_EQ(cwe::quadratic_form_rank(f9, form).rank, 0u);
        EXPECT_EQ(cwe::radical_size_by_enumeration(f9, form), 9);
    }

    const auto f27 = cwe::build_field(3, 3, std::nullopt);
    std::set<unsigned> ranks;
    for (auto a : f27.elements()) {
        for (auto b : f27.elements()) {
            if (a.is_zero() && b.is_zero()) continue;
            const auto form = cwe::trace_form(f27, 1, a, b);
            const auto r = cwe::quadratic_form_rank(f27, form);
            ranks.insert(r.rank);
            EXPECT_EQ(cwe::radical_size_by_enumeration(f27, form), r.radical_size(3));
            EXPECT_EQ(cwe::classify(cwe::exp_sum_T(f27, 1, a, b)).half_exp, 2 * 3 - r.rank);
        }
    }
    EXPECT_EQ(ranks, (std::set<unsigned>{1, 2, 3}));
}

TEST(CharSums, NonQuadraticFormIsRejected) {
    const auto ctx = cwe::build_field(5, 2, std::nullopt);
    const auto cubic = [&ctx](FieldElement x) { return ctx.trace(ctx.pow(x, 3)); };
    try {
        (void)cwe::quadratic_form_rank(ctx, cubic);
        ADD_FAILURE() << "cubic form accepted";
    } catch (const cwe::Error& e) {
        EXPECT_EQ(e.code(), cwe::ErrorCode::NotBilinear);
    }
}
