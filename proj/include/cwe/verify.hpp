#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwe/char_sums.hpp"
#include "cwe/enumerator.hpp"
#include "cwe/error.hpp"
#include "cwe/field.hpp"

namespace cwe {

struct CompositionDiff {
    Composition composition;
    wide closed = 0;
    wide brute = 0;
};

struct DistributionDiff {
    GaussTypeValue value;
    wide direct = 0;
    wide closed = 0;
};

/// Notes the one place where the emitted closed form departs from the printed
/// formula (C2 with s even and d odd).
struct RepairNote {
    bool applied = false;
    std::string description;
    bool printed_form_matches_oracle = false;
    std::vector<std::string> printed_form_violations;
};

struct VerificationReport {
    CodeId code = CodeId::C1;
    std::uint32_t p = 0;
    unsigned m = 0;
    unsigned l = 0;
    Polynomial prim_poly;
    std::string case_label;

    std::optional<CweTable> closed;
    std::optional<CweTable> brute;
    std::optional<WeightDistribution> oracle_weights;
    std::vector<CompositionDiff> composition_diffs;
    std::vector<std::string> closed_violations;

    bool distributions_match = false;
    std::vector<DistributionDiff> distribution_diffs;
    bool strategy_matches = false;  // closed distribution pushed through the strategy
    bool weights_match = false;     // collapsed table vs. the oracle's own weight census
    std::map<unsigned, wide> rank_census;  // rank -> number of nonzero tuples

    RepairNote repair;
    std::vector<std::string> errors;
    bool budget_exceeded = false;
    bool match = false;

    double closed_ms = 0;
    double brute_ms = 0;
    double distribution_ms = 0;
};

namespace detail {

inline std::vector<CompositionDiff> diff_tables(const CweTable& closed, const CweTable& brute) {
    std::map<Composition, std::pair<wide, wide>, std::greater<>> merged;
    for (const auto& [c, f] : closed.entries) merged[c].first = f;
    for (const auto& [c, f] : brute.entries) merged[c].second = f;
    std::vector<CompositionDiff> out;
    for (const auto& [c, fs] : merged)
        if (fs.first != fs.second) out.push_back({c, fs.first, fs.second});
    return out;
}

inline std::vector<DistributionDiff> diff_distributions(const SumDistribution& direct, const SumDistribution& closed) {
    std::vector<GaussTypeValue> values;
    for (const auto& e : direct.entries) values.push_back(e.value);
    for (const auto& e : closed.entries) values.push_back(e.value);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<DistributionDiff> out;
    for (const auto& v : values) {
        const wide a = direct.frequency_of(v);
        const wide b = closed.frequency_of(v);
        if (a != b) out.push_back({v, a, b});
    }
    return out;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace detail

/// Runs both CWE routes plus the sum-distribution cross-check and collects
/// every discrepancy. Library errors are recorded in the report, not thrown.
inline VerificationReport verify(const FieldContext& ctx, unsigned l, CodeId code, SweepOptions options = {}) {
    VerificationReport r;
    r.code = code;
    r.p = ctx.p();
    r.m = ctx.m();
    r.l = l;
    r.prim_poly = ctx.prim_poly();
    const auto record = [&r](const Error& e) {
        r.errors.emplace_back(e.what());
        if (e.code() == ErrorCode::BudgetExceeded) r.budget_exceeded = true;
    };

    try {
        r.case_label = theorem_case(code, r.m, l);
    } catch (const Error& e) {
        record(e);
        return r;
    }

    auto t0 = std::chrono::steady_clock::now();
    std::optional<SumDistribution> closed_dist;
    try {
        r.closed = closed_form_cwe(code, r.p, r.m, l);
        r.closed_violations = table_violations(*r.closed);
        closed_dist = code == CodeId::C1 ? s_distribution_closed(r.p, r.m, l) : t_distribution_closed(r.p, r.m, l);
        r.strategy_matches = cwe_from_distribution(code, *closed_dist) == *r.closed;
    } catch (const Error& e) {
        record(e);
    }
    r.closed_ms = detail::elapsed_ms(t0);

    const unsigned d = std::gcd(r.m, l);
    const unsigned s = r.m / d;
    if (code == CodeId::C2 && r.m != 2 * l && s % 2 == 0 && d % 2 == 1) {
        r.repair.applied = true;
        r.repair.description =
            "final K5 term emitted as w_rho^{p^{m-1}+p^{(m+2d-2)/2}}; printed form has '-' and breaks the row sum";
    }

    t0 = std::chrono::steady_clock::now();
    std::optional<SweepCensus> census;
    try {
        // one sweep serves both the oracle table and the direct distribution
        census = sweep_codewords(ctx, l, code, options);
        auto oracle = oracle_from_census(ctx, l, code, *census);
        r.brute = oracle.table;
        r.oracle_weights = oracle.weights;
        r.weights_match = collapse_to_weights(oracle.table) == oracle.weights;
    } catch (const Error& e) {
        record(e);
    }
    r.brute_ms = detail::elapsed_ms(t0);

    t0 = std::chrono::steady_clock::now();
    if (census) {
        try {
            const auto direct = detail::distribution_from_census(ctx, l, *census);
            for (const auto& e : direct.entries) r.rank_census[2 * r.m - e.value.half_exp] += e.freq;
            if (closed_dist) {
                r.distribution_diffs = detail::diff_distributions(direct, *closed_dist);
                r.distributions_match = r.distribution_diffs.empty() && direct == *closed_dist;
            }
        } catch (const Error& e) {
            record(e);
        }
    }
    r.distribution_ms = detail::elapsed_ms(t0);

    if (r.closed && r.brute) {
        r.composition_diffs = detail::diff_tables(*r.closed, *r.brute);
        if (r.repair.applied) {
            const auto printed = closed_form_cwe_c2(r.p, r.m, l, C2Variant::AsPrinted);
            r.repair.printed_form_matches_oracle = printed == *r.brute;
            r.repair.printed_form_violations = table_violations(printed);
        }
    }
    r.match = r.errors.empty() && r.closed && r.brute && r.composition_diffs.empty() && r.closed_violations.empty() &&
              table_violations(*r.brute).empty() && r.distributions_match && r.strategy_matches && r.weights_match;
    return r;
}

} // namespace cwe
