#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cwe/error.hpp"
#include "cwe/field.hpp"
#include "cwe/wide.hpp"

namespace cwe {

enum class CodeId { C1, C2 };

constexpr std::string_view to_string(CodeId code) { return code == CodeId::C1 ? "C1" : "C2"; }

struct SweepOptions {
    /// Upper bound on (coefficient tuples) x (code length) symbol evaluations.
    std::uint64_t budget = 500'000'000;
    unsigned workers = 1;
};

/// Composition vector (k_0, ..., k_{p-1}) of one codeword.
using Composition = std::vector<std::int64_t>;

/// Raw tallies of one exhaustive pass over all coefficient tuples: every tuple
/// is counted, including the all-zero one and tuples that collide on the same
/// codeword.
struct SweepCensus {
    std::map<Composition, wide> compositions;
    std::map<std::int64_t, wide> weights;
    wide tuples = 0;
};

inline void check_exponent(unsigned m, unsigned l) {
    if (l == 0 || l >= m)
        throw Error(ErrorCode::BadExponent, "need 0 < l < m, got l=" + std::to_string(l) + " m=" + std::to_string(m));
}

inline std::uint64_t sweep_evaluations(const FieldContext& ctx, CodeId code) {
    const std::uint64_t tuples = code == CodeId::C1 ? ctx.order() : ctx.order() * ctx.order();
    return tuples * ctx.group_order();
}

namespace detail {

using Symbol = std::uint16_t;

// Row r of the table is the trace word (Tr(c x^e))_{x = alpha^k} for the
// coefficient with index r (0 -> c = 0, r -> c = alpha^{r-1}).
inline void trace_word(const FieldContext& ctx, std::uint32_t row, std::uint64_t e, Symbol* out) {
    const std::uint32_t n = ctx.group_order();
    if (row == 0) {
        std::fill(out, out + n, Symbol{0});
        return;
    }
    const auto tr = ctx.trace_of_powers();
    std::uint64_t pos = row - 1;
    const std::uint64_t step = e % n;
    for (std::uint32_t k = 0; k < n; ++k) {
        out[k] = static_cast<Symbol>(tr[pos]);
        pos += step;
        if (pos >= n) pos -= n;
    }
}

inline void merge_into(SweepCensus& into, const SweepCensus& from) {
    for (const auto& [c, f] : from.compositions) into.compositions[c] += f;
    for (const auto& [w, f] : from.weights) into.weights[w] += f;
    into.tuples += from.tuples;
}

} // namespace detail

/// Enumerates every codeword (Tr(a x^{p^l+1} + b x^2))_{x != 0} of the chosen
/// family (b = 0 for C1) using only integer tables. Results are independent of
/// the worker count.
inline SweepCensus sweep_codewords(const FieldContext& ctx, unsigned l, CodeId code, SweepOptions options = {}) {
    check_exponent(ctx.m(), l);
    const std::uint64_t evals = sweep_evaluations(ctx, code);
    if (evals > options.budget)
        throw Error(ErrorCode::BudgetExceeded,
                    std::to_string(evals) + " evaluations exceed budget " + std::to_string(options.budget));

    const std::uint32_t p = ctx.p();
    const std::uint32_t n = ctx.group_order();
    const auto q = static_cast<std::uint32_t>(ctx.order());
    const auto e1 = static_cast<std::uint64_t>(ipow64(p, l) + 1);

    std::vector<detail::Symbol> second;  // words Tr(b x^2), one row per b
    const std::uint32_t b_rows = code == CodeId::C2 ? q : 1;
    second.resize(std::size_t{b_rows} * n);
    for (std::uint32_t r = 0; r < b_rows; ++r) detail::trace_word(ctx, r, 2, second.data() + std::size_t{r} * n);

    std::vector<detail::Symbol> reduce(2 * p);
    for (std::uint32_t v = 0; v < 2 * p; ++v) reduce[v] = static_cast<detail::Symbol>(v % p);

    auto run = [&](std::uint32_t a_begin, std::uint32_t a_end, SweepCensus& out) {
        std::vector<detail::Symbol> first(n);
        Composition hist(p);
        for (std::uint32_t a = a_begin; a < a_end; ++a) {
            detail::trace_word(ctx, a, e1, first.data());
            for (std::uint32_t b = 0; b < b_rows; ++b) {
                const detail::Symbol* v = second.data() + std::size_t{b} * n;
                std::fill(hist.begin(), hist.end(), 0);
                std::int64_t nonzero = 0;
                for (std::uint32_t k = 0; k < n; ++k) {
                    const detail::Symbol c = reduce[first[k] + v[k]];
                    ++hist[c];
                    nonzero += (c != 0);
                }
                auto it = out.compositions.find(hist);
                if (it == out.compositions.end())
                    out.compositions.emplace(hist, 1);
                else
                    ++it->second;
                ++out.weights[nonzero];
                ++out.tuples;
            }
        }
    };

    const unsigned workers = std::clamp<unsigned>(options.workers, 1, q);
    if (workers == 1) {
        SweepCensus census;
        run(0, q, census);
        return census;
    }
    std::vector<SweepCensus> parts(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const auto lo = static_cast<std::uint32_t>(std::uint64_t{q} * w / workers);
            const auto hi = static_cast<std::uint32_t>(std::uint64_t{q} * (w + 1) / workers);
            pool.emplace_back([&, lo, hi, w] { run(lo, hi, parts[w]); });
        }
    }
    SweepCensus census;
    for (const auto& part : parts) detail::merge_into(census, part);
    return census;
}

} // namespace cwe
