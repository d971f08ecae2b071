#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwe/cyclotomic.hpp"
#include "cwe/error.hpp"
#include "cwe/field.hpp"
#include "cwe/sweep.hpp"
#include "cwe/wide.hpp"

namespace cwe {

/// Legendre symbol (x / p) by Euler's criterion.
inline int legendre(std::int64_t x, std::uint32_t p) {
    std::uint64_t base = static_cast<std::uint64_t>(mod_floor(x, p));
    if (base == 0) return 0;
    std::uint64_t e = (p - 1) / 2;
    std::uint64_t r = 1;
    while (e != 0) {
        if (e & 1u) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

/// Quadratic Gauss sum over the prime field, sum_x (x/p) zeta^x. It equals
/// sqrt(p) for p = 1 mod 4 and i sqrt(p) for p = 3 mod 4.
inline CyclotomicInt prime_gauss_sum(std::uint32_t p) {
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint32_t x = 1; x < p; ++x) counts[x] = legendre(x, p);
    return CyclotomicInt::from_exponent_counts(p, counts);
}

/// Exact G(eta, chi) over F_{p^m} by summing over all nonzero elements.
inline CyclotomicInt gauss_sum_direct(const FieldContext& ctx) {
    std::vector<std::int64_t> counts(ctx.p(), 0);
    for (std::uint32_t i = 0; i < ctx.group_order(); ++i) {
        const auto x = FieldElement::from_log(i);
        counts[ctx.trace(x)] += ctx.quad_char(x);
    }
    return CyclotomicInt::from_exponent_counts(ctx.p(), counts);
}

inline GaussTypeValue gauss_sum_closed(std::uint32_t p, unsigned m) {
    const int sign = (m - 1) % 2 == 0 ? 1 : -1;
    const std::int64_t quarter = static_cast<std::int64_t>((std::uint64_t{p - 1} * (p - 1) / 4) % 4) * m;
    return GaussTypeValue::make(sign, quarter, m);
}

/// The value sign * p^k for k >= 0, or nullopt if |n| is not a power of p.
inline std::optional<GaussTypeValue> classify_integer(std::int64_t n, std::uint32_t p, unsigned parity_offset = 0) {
    if (n == 0) return std::nullopt;
    const int sign = n < 0 ? -1 : 1;
    std::int64_t a = n < 0 ? -n : n;
    unsigned k = 0;
    while (a % p == 0) {
        a /= p;
        ++k;
    }
    if (a != 1) return std::nullopt;
    return GaussTypeValue::real(sign, 2 * k + parity_offset);
}

/// Identifies an exact sum as sign * p^{e/2} (e even) or as an integer multiple
/// of the prime-field Gauss sum (e odd). Anything else is a value the closed
/// forms do not predict.
inline GaussTypeValue classify(const CyclotomicInt& v) {
    const std::uint32_t p = v.prime();
    if (const auto n = v.as_integer()) {
        if (const auto g = classify_integer(*n, p)) return *g;
        throw Error(ErrorCode::ValueOutsideLemma, "integer sum " + std::to_string(*n) + " is not +-p^k");
    }
    const CyclotomicInt unit = prime_gauss_sum(p);
    const auto scaled = (v * unit).as_integer();
    const std::int64_t unit_square = (p % 4 == 1 ? 1 : -1) * static_cast<std::int64_t>(p);
    if (scaled && *scaled % unit_square == 0) {
        const std::int64_t c = *scaled / unit_square;
        if (unit * c == v) {
            if (auto g = classify_integer(c, p, 1)) {
                g->imaginary = (p % 4 == 3);
                return *g;
            }
        }
    }
    throw Error(ErrorCode::ValueOutsideLemma, "sum " + v.to_string() + " is not of Gauss type");
}

/// Exact image of a GaussTypeValue in Z[zeta_p], if it lies there.
inline std::optional<CyclotomicInt> embed(const GaussTypeValue& g, std::uint32_t p) {
    if (g.half_exp % 2 == 0) {
        if (g.imaginary) return std::nullopt;
        return CyclotomicInt::integer(p, g.sign * ipow64(p, g.half_exp / 2));
    }
    if (g.imaginary != (p % 4 == 3)) return std::nullopt;
    return prime_gauss_sum(p) * (g.sign * ipow64(p, (g.half_exp - 1) / 2));
}

/// Compares a directly summed Gauss sum against the closed formula. Even
/// exponents compare exactly; odd exponents compare squares exactly and the
/// quartic class by the half-plane of the complex embedding.
inline bool gauss_sum_agrees(const CyclotomicInt& direct, const GaussTypeValue& closed) {
    const std::uint32_t p = direct.prime();
    if (closed.half_exp % 2 == 0) {
        const auto e = embed(closed, p);
        return e && *e == direct;
    }
    const auto sq = (direct * direct).as_integer();
    if (!sq || wide{*sq} != closed.square(p)) return false;
    const auto z = direct.embed();
    const long double mag = std::sqrt(static_cast<long double>(ipow64(p, closed.half_exp)));
    const long double on_axis = closed.imaginary ? z.imag() : z.real();
    const long double off_axis = closed.imaginary ? z.real() : z.imag();
    return std::fabs(off_axis) < 1e-6L * mag && on_axis * closed.sign > 0;
}

/// Returns (sum_x chi(a2 x^2 + a1 x + a0), chi(a0 - a1^2 (4 a2)^{-1}) eta(a2) G(eta, chi)).
inline std::pair<CyclotomicInt, CyclotomicInt> quadratic_sum_identity_check(const FieldContext& ctx, FieldElement a2,
                                                                             FieldElement a1, FieldElement a0) {
    if (a2.is_zero()) throw Error(ErrorCode::DegenerateQuadratic, "leading coefficient is zero");
    const std::uint32_t p = ctx.p();
    std::vector<std::int64_t> counts(p, 0);
    for (auto x : ctx.elements()) {
        const auto fx = ctx.add(ctx.add(ctx.mul(a2, ctx.mul(x, x)), ctx.mul(a1, x)), a0);
        ++counts[ctx.trace(fx)];
    }
    const auto direct = CyclotomicInt::from_exponent_counts(p, counts);

    const auto four_a2 = ctx.mul(ctx.from_prime_field(4), a2);
    const auto shift = ctx.sub(a0, ctx.mul(ctx.mul(a1, a1), ctx.inv(four_a2)));
    const auto closed = CyclotomicInt::zeta_power(p, ctx.trace(shift)) * gauss_sum_direct(ctx) * ctx.quad_char(a2);
    return {direct, closed};
}

/// x -> Tr(a x^{p^l+1} + b x^2), evaluated with field operations.
inline auto trace_form(const FieldContext& ctx, unsigned l, FieldElement a, FieldElement b) {
    const std::int64_t e1 = ipow64(ctx.p(), l) + 1;
    return [&ctx, e1, a, b](FieldElement x) {
        return ctx.trace(ctx.add(ctx.mul(a, ctx.pow(x, e1)), ctx.mul(b, ctx.mul(x, x))));
    };
}

template <class Form>
CyclotomicInt character_sum(const FieldContext& ctx, Form&& form) {
    std::vector<std::int64_t> counts(ctx.p(), 0);
    for (auto x : ctx.elements()) ++counts[form(x)];
    return CyclotomicInt::from_exponent_counts(ctx.p(), counts);
}

/// S(a) = sum over all x (x = 0 included) of zeta^{Tr(a x^{p^l+1})}.
inline CyclotomicInt exp_sum_S(const FieldContext& ctx, unsigned l, FieldElement a) {
    check_exponent(ctx.m(), l);
    return character_sum(ctx, trace_form(ctx, l, a, FieldElement::zero()));
}

/// T(a, b) = sum over all x of zeta^{Tr(a x^{p^l+1} + b x^2)}.
inline CyclotomicInt exp_sum_T(const FieldContext& ctx, unsigned l, FieldElement a, FieldElement b) {
    check_exponent(ctx.m(), l);
    return character_sum(ctx, trace_form(ctx, l, a, b));
}

/// Value distribution of S(a) over a != 0, or of T(a, b) over (a, b) != (0, 0).
struct SumDistribution {
    struct Entry {
        GaussTypeValue value;
        wide freq = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::uint32_t p = 0;
    unsigned m = 0;
    unsigned l = 0;
    unsigned d = 0;
    unsigned s = 0;
    std::vector<Entry> entries;  // sorted by value, no zero frequencies
    wide total = 0;

    SumDistribution() = default;
    SumDistribution(std::uint32_t p_, unsigned m_, unsigned l_)
        : p(p_), m(m_), l(l_), d(std::gcd(m_, l_)), s(m_ / std::gcd(m_, l_)) {}

    void add(const GaussTypeValue& value, wide freq) {
        if (freq == 0) return;
        total += freq;
        auto it = std::lower_bound(entries.begin(), entries.end(), value,
                                   [](const Entry& e, const GaussTypeValue& v) { return e.value < v; });
        if (it != entries.end() && it->value == value)
            it->freq += freq;
        else
            entries.insert(it, Entry{value, freq});
    }

    wide frequency_of(const GaussTypeValue& value) const {
        for (const auto& e : entries)
            if (e.value == value) return e.freq;
        return 0;
    }

    friend bool operator==(const SumDistribution& a, const SumDistribution& b) {
        return a.p == b.p && a.m == b.m && a.l == b.l && a.entries == b.entries && a.total == b.total;
    }
};

namespace detail {

inline SumDistribution distribution_from_census(const FieldContext& ctx, unsigned l, const SweepCensus& census) {
    SumDistribution dist(ctx.p(), ctx.m(), l);
    Composition zero_word(ctx.p(), 0);
    zero_word[0] = ctx.group_order();
    for (const auto& [comp, freq] : census.compositions) {
        // the all-zero tuple is excluded; other tuples may still give the zero word
        const wide f = comp == zero_word ? freq - 1 : freq;
        if (f == 0) continue;
        Composition with_origin = comp;
        ++with_origin[0];
        dist.add(classify(CyclotomicInt::from_exponent_counts(ctx.p(), with_origin)), f);
    }
    return dist;
}

// sqrt((-1)^{(p^d - 1)/2}) as a number of quarter turns.
inline std::int64_t twist(std::uint32_t p, unsigned d) { return ((ipow64(p, d) - 1) / 2) % 2; }

} // namespace detail

/// Tallies S(a) over every a != 0 by exhaustive evaluation.
inline SumDistribution s_distribution(const FieldContext& ctx, unsigned l, SweepOptions options = {}) {
    return detail::distribution_from_census(ctx, l, sweep_codewords(ctx, l, CodeId::C1, options));
}

/// Tallies T(a, b) over every (a, b) != (0, 0) by exhaustive evaluation.
inline SumDistribution t_distribution(const FieldContext& ctx, unsigned l, SweepOptions options = {}) {
    return detail::distribution_from_census(ctx, l, sweep_codewords(ctx, l, CodeId::C2, options));
}

/// Closed-form distribution of S(a), keyed on nu2(m) against nu2(l).
inline SumDistribution s_distribution_closed(std::uint32_t p, unsigned m, unsigned l) {
    check_exponent(m, l);
    SumDistribution dist(p, m, l);
    const unsigned d = dist.d;
    const wide q = ipow(p, m);
    const wide pd = ipow(p, d);
    const unsigned vm = nu2(m);
    const unsigned vl = nu2(l);
    if (vm <= vl) {
        const auto tw = detail::twist(p, d);
        dist.add(GaussTypeValue::make(1, tw, m), (q - 1) / 2);
        dist.add(GaussTypeValue::make(-1, tw, m), (q - 1) / 2);
    } else {
        const wide small = exact_div(pd * (q - 1), pd + 1, ErrorCode::ValueOutsideLemma, "p^d(p^m-1)/(p^d+1)");
        const wide large = exact_div(q - 1, pd + 1, ErrorCode::ValueOutsideLemma, "(p^m-1)/(p^d+1)");
        const int sign = vm == vl + 1 ? 1 : -1;
        dist.add(GaussTypeValue::real(-sign, m), small);
        dist.add(GaussTypeValue::real(sign, m + 2 * d), large);
    }
    return dist;
}

/// |R_1|..|R_4| (s odd) or |K_1|..|K_5| (s even) for the T(a, b) distribution.
inline std::vector<wide> t_frequencies(std::uint32_t p, unsigned m, unsigned l) {
    check_exponent(m, l);
    const unsigned d = std::gcd(m, l);
    const unsigned s = m / d;
    const auto P = [p](unsigned e) { return ipow(p, e); };
    const wide q1 = P(m) - 1;
    const wide den = 2 * (P(2 * d) - 1);
    const auto div = [](wide num, wide den_) {
        return exact_div(num, den_, ErrorCode::ValueOutsideLemma, "non-integral frequency");
    };
    if (s % 2 == 1) {
        const wide half = P((m - d) / 2);
        return {
            div((P(m + 2 * d) - P(m + d) - P(m) + P(2 * d)) * q1, den),
            div((P(m - d) + half) * q1, 2),
            div((P(m - d) - half) * q1, 2),
            div((P(m - d) - 1) * q1, den),
        };
    }
    const unsigned h = m / 2;
    return {
        div((P(m + 2 * d) - P(m + d) - P(m) + P(h + 2 * d) - P(h + d) + P(2 * d)) * q1, den),
        div((P(m + 2 * d) - P(m + d) - P(m) - P(h + 2 * d) + P(h + d) + P(2 * d)) * q1, den),
        div(P(m - d) * q1, 2),
        div((P(h) - 1) * (P(h - d) + 1) * q1, den),
        div((P(h) + 1) * (P(h - d) - 1) * q1, den),
    };
}

/// Closed-form distribution of T(a, b), split on the parity of s = m / d.
inline SumDistribution t_distribution_closed(std::uint32_t p, unsigned m, unsigned l) {
    SumDistribution dist(p, m, l);
    const unsigned d = dist.d;
    const auto f = t_frequencies(p, m, l);
    const auto tw = detail::twist(p, d);
    if (dist.s % 2 == 1) {
        dist.add(GaussTypeValue::make(1, tw, m), f[0]);
        dist.add(GaussTypeValue::make(-1, tw, m), f[0]);
        dist.add(GaussTypeValue::real(1, m + d), f[1]);
        dist.add(GaussTypeValue::real(-1, m + d), f[2]);
        dist.add(GaussTypeValue::make(1, tw, m + 2 * d), f[3]);
        dist.add(GaussTypeValue::make(-1, tw, m + 2 * d), f[3]);
    } else {
        dist.add(GaussTypeValue::real(1, m), f[0]);
        dist.add(GaussTypeValue::real(-1, m), f[1]);
        dist.add(GaussTypeValue::make(1, tw, m + d), f[2]);
        dist.add(GaussTypeValue::make(-1, tw, m + d), f[2]);
        dist.add(GaussTypeValue::real(1, m + 2 * d), f[3]);
        dist.add(GaussTypeValue::real(-1, m + 2 * d), f[4]);
    }
    return dist;
}

struct QuadraticFormRank {
    unsigned rank = 0;
    unsigned radical_dim = 0;
    wide radical_size(std::uint32_t p) const { return ipow(p, radical_dim); }
};

namespace detail {

inline unsigned rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::uint32_t p) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    unsigned rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        // inverse by Fermat
        std::int64_t inv = 1;
        {
            std::int64_t base = a[rank][col];
            std::uint64_t e = p - 2;
            while (e != 0) {
                if (e & 1u) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
        }
        for (auto& v : a[rank]) v = v * inv % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const std::int64_t factor = a[r][col];
            for (std::size_t c = 0; c < cols; ++c) a[r][c] = mod_floor(a[r][c] - factor * a[rank][c], p);
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Rank of an F_p-valued quadratic form on F_{p^m}: m minus the dimension of
/// the radical of B(x, z) = Q(x + z) - Q(x) - Q(z), with B taken on the basis
/// {1, alpha, ..., alpha^{m-1}}.
template <class Form>
QuadraticFormRank quadratic_form_rank(const FieldContext& ctx, Form&& form) {
    const std::uint32_t p = ctx.p();
    const unsigned m = ctx.m();
    const auto Q = [&](FieldElement x) { return static_cast<std::int64_t>(form(x)); };
    const auto B = [&](FieldElement x, FieldElement z) { return mod_floor(Q(ctx.add(x, z)) - Q(x) - Q(z), p); };

    std::vector<std::vector<std::int64_t>> gram(m, std::vector<std::int64_t>(m));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) gram[i][j] = B(ctx.alpha_pow(i), ctx.alpha_pow(j));

    const auto apply = [&](FieldElement x, FieldElement z) {
        const auto xc = ctx.coefficients(x);
        const auto zc = ctx.coefficients(z);
        std::int64_t acc = 0;
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) acc = (acc + std::int64_t{xc[i]} * zc[j] % p * gram[i][j]) % p;
        return acc;
    };
    if (Q(FieldElement::zero()) != 0) throw Error(ErrorCode::NotBilinear, "Q(0) != 0");
    std::vector<FieldElement> probes;
    const std::uint32_t n = ctx.group_order();
    for (std::uint32_t k = 0; k < 8; ++k) probes.push_back(ctx.alpha_pow((std::uint64_t{k} * 7919 + 3 * k + 1) % n));
    probes.push_back(ctx.add(ctx.one(), ctx.alpha()));
    for (auto x : probes) {
        if (mod_floor(2 * Q(x), p) != apply(x, x)) throw Error(ErrorCode::NotBilinear, "2Q(x) != B(x, x)");
        for (auto z : probes)
            if (B(x, z) != apply(x, z)) throw Error(ErrorCode::NotBilinear, "B is not bilinear on probes");
    }

    QuadraticFormRank out;
    out.rank = detail::rank_mod_p(std::move(gram), p);
    out.radical_dim = m - out.rank;
    return out;
}

/// |W| counted directly: elements x with Q(x + z) = Q(x) + Q(z) for every basis z.
template <class Form>
wide radical_size_by_enumeration(const FieldContext& ctx, Form&& form) {
    const std::uint32_t p = ctx.p();
    std::vector<std::int64_t> basis_values(ctx.m());
    for (unsigned j = 0; j < ctx.m(); ++j) basis_values[j] = form(ctx.alpha_pow(j));
    wide count = 0;
    for (auto x : ctx.elements()) {
        const std::int64_t qx = form(x);
        bool in_radical = true;
        for (unsigned j = 0; j < ctx.m() && in_radical; ++j)
            in_radical = mod_floor(static_cast<std::int64_t>(form(ctx.add(x, ctx.alpha_pow(j)))) - qx - basis_values[j],
                                   p) == 0;
        count += in_radical;
    }
    return count;
}

} // namespace cwe
