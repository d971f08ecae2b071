#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cwe/char_sums.hpp"
#include "cwe/cyclotomic.hpp"
#include "cwe/error.hpp"
#include "cwe/field.hpp"
#include "cwe/sweep.hpp"
#include "cwe/wide.hpp"

namespace cwe {

/// Complete weight enumerator: composition -> number of codewords. Keys are
/// ordered lexicographically descending, so the zero word comes first.
struct CweTable {
    CodeId code = CodeId::C1;
    std::uint32_t p = 0;
    unsigned m = 0;
    unsigned l = 0;
    unsigned dim = 0;
    std::map<Composition, wide, std::greater<>> entries;

    std::int64_t length() const { return ipow64(p, m) - 1; }

    wide total() const {
        wide t = 0;
        for (const auto& [c, f] : entries) t += f;
        return t;
    }

    void add(Composition c, wide freq) {
        if (freq != 0) entries[std::move(c)] += freq;
    }

    friend bool operator==(const CweTable& a, const CweTable& b) {
        return a.code == b.code && a.p == b.p && a.m == b.m && a.l == b.l && a.dim == b.dim && a.entries == b.entries;
    }
};

struct WeightDistribution {
    std::vector<wide> counts;  // counts[w] = A_w

    /// Smallest nonzero weight carrying a codeword, or nullopt for the zero code.
    std::optional<std::int64_t> min_distance() const {
        for (std::size_t w = 1; w < counts.size(); ++w)
            if (counts[w] != 0) return static_cast<std::int64_t>(w);
        return std::nullopt;
    }

    friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Lists invariant violations: row sums, the zero word, and the total p^dim.
inline std::vector<std::string> table_violations(const CweTable& t) {
    std::vector<std::string> out;
    const std::int64_t n = t.length();
    for (const auto& [c, f] : t.entries) {
        std::int64_t sum = 0;
        bool negative = false;
        for (auto k : c) {
            sum += k;
            negative |= k < 0;
        }
        if (c.size() != t.p || sum != n || negative) {
            std::string s;
            for (auto k : c) s += (s.empty() ? "" : ",") + std::to_string(k);
            out.push_back("composition (" + s + ") has row sum " + std::to_string(sum) + ", expected " +
                          std::to_string(n));
        }
    }
    Composition zero(t.p, 0);
    zero[0] = n;
    const auto it = t.entries.find(zero);
    if (it == t.entries.end() || it->second != 1) out.push_back("zero word frequency is not 1");
    if (t.total() != ipow(t.p, t.dim))
        out.push_back("frequencies sum to " + to_string(t.total()) + ", expected p^" + std::to_string(t.dim));
    return out;
}

inline WeightDistribution collapse_to_weights(const CweTable& t) {
    const std::int64_t n = t.length();
    WeightDistribution w;
    w.counts.assign(static_cast<std::size_t>(n + 1), 0);
    for (const auto& [c, f] : t.entries) w.counts[static_cast<std::size_t>(n - c[0])] += f;
    return w;
}

/// Composition of a codeword whose defining quadratic form has the given rank
/// and exponential sum value, via N(rho) = p^{m-1} + (1/p) sum_y zeta^{y rho} S(y.).
inline Composition strategy_composition(std::uint32_t p, unsigned m, const GaussTypeValue& sum_value, unsigned rank) {
    if (rank < 1 || rank > m)
        throw Error(ErrorCode::NonIntegralComposition, "rank " + std::to_string(rank) + " outside 1..m");
    if (sum_value.half_exp != 2 * m - rank)
        throw Error(ErrorCode::NonIntegralComposition, "|S| = p^{" + std::to_string(sum_value.half_exp) +
                                                           "/2} does not match rank " + std::to_string(rank));
    const std::int64_t base = ipow64(p, m - 1);
    Composition c(p);
    if (rank % 2 == 0) {
        if (sum_value.imaginary || sum_value.half_exp < 2)
            throw Error(ErrorCode::NonIntegralComposition, "S/p is not a rational integer");
        const std::int64_t s_over_p = sum_value.sign * ipow64(p, sum_value.half_exp / 2 - 1);
        c[0] = base - 1 + (static_cast<std::int64_t>(p) - 1) * s_over_p;
        for (std::uint32_t rho = 1; rho < p; ++rho) c[rho] = base - s_over_p;
        return c;
    }
    // S * G(eta_bar, chi_bar) / p must be a rational integer
    const GaussTypeValue product = sum_value * gauss_sum_closed(p, 1);
    if (product.imaginary || product.half_exp % 2 != 0 || product.half_exp < 2)
        throw Error(ErrorCode::NonIntegralComposition, "S G / p is not a rational integer");
    const std::int64_t twisted = product.sign * ipow64(p, product.half_exp / 2 - 1);
    c[0] = base - 1;
    for (std::uint32_t rho = 1; rho < p; ++rho) c[rho] = base + legendre(rho, p) * twisted;
    return c;
}

namespace detail {

inline Composition zero_word(std::uint32_t p, unsigned m) {
    Composition c(p, 0);
    c[0] = ipow64(p, m) - 1;
    return c;
}

// w_0^{k0} prod_rho w_rho^{k_rho}
inline Composition uniform(std::uint32_t p, std::int64_t k0, std::int64_t k_rho) {
    Composition c(p, k_rho);
    c[0] = k0;
    return c;
}

// w_0^{k0} prod_rho w_rho^{base + eta_bar(rho) delta}
inline Composition twisted(std::uint32_t p, std::int64_t k0, std::int64_t base, std::int64_t delta) {
    Composition c(p);
    c[0] = k0;
    for (std::uint32_t rho = 1; rho < p; ++rho) c[rho] = base + legendre(rho, p) * delta;
    return c;
}

} // namespace detail

inline unsigned c1_dimension(unsigned m, unsigned l) { return m == 2 * l ? m / 2 : m; }
inline unsigned c2_dimension(unsigned m, unsigned l) { return m == 2 * l ? 3 * m / 2 : 2 * m; }

/// Which closed-form case applies, e.g. "C1 (i) case 3" or "C2 (ii) d odd".
inline std::string theorem_case(CodeId code, unsigned m, unsigned l) {
    check_exponent(m, l);
    const unsigned d = std::gcd(m, l);
    const unsigned s = m / d;
    if (code == CodeId::C1) {
        if (m == 2 * l) return "C1 (ii) m=2l";
        const unsigned vm = nu2(m);
        const unsigned vl = nu2(l);
        if (vm == 0) return "C1 (i) case 1: 0=v2(m)<=v2(l)";
        if (vm <= vl) return "C1 (i) case 2: 1<=v2(m)<=v2(l)";
        if (vm == vl + 1) return "C1 (i) case 3: v2(m)=v2(l)+1";
        return "C1 (i) case 4: v2(m)>v2(l)+1";
    }
    if (m == 2 * l) return d % 2 == 1 ? "C2 (ii) case 1: m=2l, d odd" : "C2 (ii) case 2: m=2l, d even";
    if (s % 2 == 1) return d % 2 == 1 ? "C2 (i) case 1: s odd, d odd" : "C2 (i) case 2: s odd, d even";
    return d % 2 == 1 ? "C2 (i) case 3: s even, d odd" : "C2 (i) case 4: s even, d even";
}

inline CweTable closed_form_cwe_c1(std::uint32_t p, unsigned m, unsigned l) {
    check_exponent(m, l);
    CweTable t{CodeId::C1, p, m, l, c1_dimension(m, l), {}};
    const unsigned d = std::gcd(m, l);
    const auto P = [p](unsigned e) { return ipow64(p, e); };
    const std::int64_t base = P(m - 1);
    const std::int64_t pm1 = static_cast<std::int64_t>(p) - 1;
    const wide q1 = ipow(p, m) - 1;
    t.add(detail::zero_word(p, m), 1);

    if (m == 2 * l) {
        const std::int64_t x = P((m - 2) / 2);
        t.add(detail::uniform(p, base - 1 - pm1 * x, base + x), ipow(p, m / 2) - 1);
        return t;
    }
    const unsigned vm = nu2(m);
    const unsigned vl = nu2(l);
    if (vm == 0) {
        const std::int64_t x = P((m - 1) / 2);
        t.add(detail::twisted(p, base - 1, base, x), q1 / 2);
        t.add(detail::twisted(p, base - 1, base, -x), q1 / 2);
        return t;
    }
    const std::int64_t x = P((m - 2) / 2);
    if (vm <= vl) {
        t.add(detail::uniform(p, base - 1 + pm1 * x, base - x), q1 / 2);
        t.add(detail::uniform(p, base - 1 - pm1 * x, base + x), q1 / 2);
        return t;
    }
    const wide pd = ipow(p, d);
    const std::int64_t y = P((m + 2 * d - 2) / 2);
    const wide many = pd * q1 / (pd + 1);
    const wide few = q1 / (pd + 1);
    if (vm == vl + 1) {
        t.add(detail::uniform(p, base - 1 - pm1 * x, base + x), many);
        t.add(detail::uniform(p, base - 1 + pm1 * y, base - y), few);
    } else {
        t.add(detail::uniform(p, base - 1 + pm1 * x, base - x), many);
        t.add(detail::uniform(p, base - 1 - pm1 * y, base + y), few);
    }
    return t;
}

/// Selects the printed or the row-sum-consistent final term of the C2 case
/// with s even and d odd. The two differ only in the sign of the last
/// per-rho exponent.
enum class C2Variant { Repaired, AsPrinted };

inline CweTable closed_form_cwe_c2(std::uint32_t p, unsigned m, unsigned l, C2Variant variant = C2Variant::Repaired) {
    check_exponent(m, l);
    CweTable t{CodeId::C2, p, m, l, c2_dimension(m, l), {}};
    const unsigned d = std::gcd(m, l);
    const unsigned s = m / d;
    const auto P = [p](unsigned e) { return ipow64(p, e); };
    const std::int64_t base = P(m - 1);
    const std::int64_t pm1 = static_cast<std::int64_t>(p) - 1;
    const wide q1 = ipow(p, m) - 1;
    t.add(detail::zero_word(p, m), 1);

    // w_0^{base-1+(p-1)X} w_rho^{base-X}, and its mirror with X negated
    const auto down = [&](std::int64_t x) { return detail::uniform(p, base - 1 + pm1 * x, base - x); };
    const auto up = [&](std::int64_t x) { return detail::uniform(p, base - 1 - pm1 * x, base + x); };
    const auto tw = [&](std::int64_t x) { return detail::twisted(p, base - 1, base, x); };

    if (m == 2 * l) {
        const wide half_q = ipow(p, m / 2);
        const std::int64_t x = P((m - 2) / 2);
        t.add(down(x), half_q * q1 / 2);
        t.add(up(x), half_q * (half_q - 1) * (half_q - 1) / 2);
        if (d % 2 == 1) {
            const std::int64_t z = P((3 * m - 2) / 4);
            t.add(tw(z), q1 / 2);
            t.add(tw(-z), q1 / 2);
        } else {
            const std::int64_t z = P((3 * m - 4) / 4);
            t.add(down(z), q1 / 2);
            t.add(up(z), q1 / 2);
        }
        return t;
    }

    const auto f = t_frequencies(p, m, l);
    if (s % 2 == 1) {
        if (d % 2 == 1) {
            t.add(tw(P((m - 1) / 2)), f[0]);
            t.add(tw(-P((m - 1) / 2)), f[0]);
        } else {
            t.add(down(P((m - 2) / 2)), f[0]);
            t.add(up(P((m - 2) / 2)), f[0]);
        }
        t.add(down(P((m + d - 2) / 2)), f[1]);
        t.add(up(P((m + d - 2) / 2)), f[2]);
        if (d % 2 == 1) {
            t.add(tw(P((m + 2 * d - 1) / 2)), f[3]);
            t.add(tw(-P((m + 2 * d - 1) / 2)), f[3]);
        } else {
            t.add(down(P((m + 2 * d - 2) / 2)), f[3]);
            t.add(up(P((m + 2 * d - 2) / 2)), f[3]);
        }
        return t;
    }

    t.add(down(P((m - 2) / 2)), f[0]);
    t.add(up(P((m - 2) / 2)), f[1]);
    if (d % 2 == 1) {
        t.add(tw(P((m + d - 1) / 2)), f[2]);
        t.add(tw(-P((m + d - 1) / 2)), f[2]);
    } else {
        t.add(down(P((m + d - 2) / 2)), f[2]);
        t.add(up(P((m + d - 2) / 2)), f[2]);
    }
    const std::int64_t y = P((m + 2 * d - 2) / 2);
    t.add(down(y), f[3]);
    if (d % 2 == 1 && variant == C2Variant::AsPrinted)
        t.add(detail::uniform(p, base - 1 - pm1 * y, base - y), f[4]);
    else
        t.add(up(y), f[4]);
    return t;
}

inline CweTable closed_form_cwe(CodeId code, std::uint32_t p, unsigned m, unsigned l) {
    return code == CodeId::C1 ? closed_form_cwe_c1(p, m, l) : closed_form_cwe_c2(p, m, l);
}

/// Assembles a CWE from a sum distribution through strategy_composition,
/// taking rank = 2m - e for a value of modulus p^{e/2}. Rank-0 entries are
/// forms that vanish identically and land on the zero word.
inline CweTable cwe_from_distribution(CodeId code, const SumDistribution& dist) {
    const std::uint32_t p = dist.p;
    const unsigned m = dist.m;
    CweTable t{code, p, m, dist.l, code == CodeId::C1 ? c1_dimension(m, dist.l) : c2_dimension(m, dist.l), {}};
    std::map<Composition, wide, std::greater<>> raw;
    raw[detail::zero_word(p, m)] += 1;
    for (const auto& e : dist.entries) {
        if (e.value.half_exp > 2 * m) throw Error(ErrorCode::NonIntegralComposition, "|S| exceeds p^m");
        const unsigned rank = 2 * m - e.value.half_exp;
        if (rank == 0)
            raw[detail::zero_word(p, m)] += e.freq;
        else
            raw[strategy_composition(p, m, e.value, rank)] += e.freq;
    }
    const unsigned tuple_exp = code == CodeId::C1 ? m : 2 * m;
    const wide degeneracy = ipow(p, tuple_exp - t.dim);
    for (const auto& [c, f] : raw)
        t.add(c, exact_div(f, degeneracy, ErrorCode::DegeneracyMismatch, "frequency not divisible by degeneracy"));
    return t;
}

struct OracleResult {
    CweTable table;
    WeightDistribution weights;  // tallied independently of the compositions
    wide degeneracy = 1;
};

/// Exhaustive CWE: enumerates every coefficient tuple, then divides by the
/// number of tuples per codeword, (tuples) / p^dim with dim read off the
/// minimal polynomials of alpha^{-(p^l+1)} and alpha^{-2}.
inline OracleResult oracle_from_census(const FieldContext& ctx, unsigned l, CodeId code, const SweepCensus& census) {
    check_exponent(ctx.m(), l);
    const std::uint32_t p = ctx.p();
    const unsigned m = ctx.m();
    const auto e1 = ipow64(p, l) + 1;
    const auto h1 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -e1));
    const auto h2 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -2));
    unsigned dim = static_cast<unsigned>(h1.size() - 1);
    if (code == CodeId::C2) dim += (h1 == h2) ? 0u : static_cast<unsigned>(h2.size() - 1);

    const wide group = ipow(p, dim);
    const wide degeneracy =
        exact_div(census.tuples, group, ErrorCode::DegeneracyMismatch, "tuple count not divisible by p^dim");

    OracleResult out;
    out.degeneracy = degeneracy;
    out.table = CweTable{code, p, m, l, dim, {}};
    for (const auto& [c, f] : census.compositions)
        out.table.add(c, exact_div(f, degeneracy, ErrorCode::DegeneracyMismatch,
                                   "composition frequency not divisible by degeneracy"));
    const std::int64_t n = ctx.group_order();
    out.weights.counts.assign(static_cast<std::size_t>(n + 1), 0);
    for (const auto& [w, f] : census.weights)
        out.weights.counts[static_cast<std::size_t>(w)] +=
            exact_div(f, degeneracy, ErrorCode::DegeneracyMismatch, "weight frequency not divisible by degeneracy");
    return out;
}

inline OracleResult brute_force_oracle(const FieldContext& ctx, unsigned l, CodeId code, SweepOptions options = {}) {
    return oracle_from_census(ctx, l, code, sweep_codewords(ctx, l, code, options));
}

inline CweTable brute_force_cwe(const FieldContext& ctx, unsigned l, CodeId code, SweepOptions options = {}) {
    return brute_force_oracle(ctx, l, code, options).table;
}

} // namespace cwe
