#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "cwe/char_sums.hpp"
#include "cwe/enumerator.hpp"
#include "cwe/field.hpp"
#include "cwe/verify.hpp"

namespace cwe {

/// Frequencies that fit in 64 bits are numbers; larger ones are decimal strings.
inline nlohmann::json wide_to_json(wide v) {
    if (v >= 0 && v <= static_cast<wide>(std::numeric_limits<std::uint64_t>::max()))
        return static_cast<std::uint64_t>(v);
    if (v < 0 && v >= static_cast<wide>(std::numeric_limits<std::int64_t>::min())) return static_cast<std::int64_t>(v);
    return to_string(v);
}

inline wide wide_from_json(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return static_cast<wide>(j.get<std::uint64_t>());
    if (j.is_number_integer()) return static_cast<wide>(j.get<std::int64_t>());
    const auto s = j.get<std::string>();
    wide v = 0;
    std::size_t i = 0;
    const bool neg = !s.empty() && s[0] == '-';
    if (neg) i = 1;
    for (; i < s.size(); ++i) v = v * 10 + (s[i] - '0');
    return neg ? -v : v;
}

inline nlohmann::json field_to_json(const FieldContext& ctx) {
    return {{"p", ctx.p()}, {"m", ctx.m()}, {"prim_poly", ctx.prim_poly()}};
}

inline nlohmann::json to_json(const SumDistribution& dist) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : dist.entries)
        entries.push_back({{"sign", e.value.sign},
                           {"imaginary", e.value.imaginary},
                           {"half_exp", e.value.half_exp},
                           {"freq", wide_to_json(e.freq)}});
    return {{"p", dist.p}, {"m", dist.m},         {"l", dist.l},
            {"d", dist.d}, {"s", dist.s},         {"entries", entries},
            {"total", wide_to_json(dist.total)}};
}

inline SumDistribution sum_distribution_from_json(const nlohmann::json& j) {
    SumDistribution dist(j.at("p").get<std::uint32_t>(), j.at("m").get<unsigned>(), j.at("l").get<unsigned>());
    for (const auto& e : j.at("entries"))
        dist.add(GaussTypeValue{e.at("sign").get<int>(), e.at("imaginary").get<bool>(), e.at("half_exp").get<unsigned>()},
                 wide_from_json(e.at("freq")));
    return dist;
}

inline nlohmann::json to_json(const CweTable& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [c, f] : t.entries) entries.push_back({{"composition", c}, {"freq", wide_to_json(f)}});
    return {{"code", std::string(to_string(t.code))},
            {"p", t.p},
            {"m", t.m},
            {"l", t.l},
            {"dim", t.dim},
            {"entries", entries}};
}

inline CweTable cwe_table_from_json(const nlohmann::json& j) {
    CweTable t;
    t.code = j.at("code").get<std::string>() == "C1" ? CodeId::C1 : CodeId::C2;
    t.p = j.at("p").get<std::uint32_t>();
    t.m = j.at("m").get<unsigned>();
    t.l = j.at("l").get<unsigned>();
    t.dim = j.at("dim").get<unsigned>();
    for (const auto& e : j.at("entries")) t.add(e.at("composition").get<Composition>(), wide_from_json(e.at("freq")));
    return t;
}

inline nlohmann::json to_json(const WeightDistribution& w) {
    nlohmann::json nonzero = nlohmann::json::array();
    for (std::size_t i = 0; i < w.counts.size(); ++i)
        if (w.counts[i] != 0) nonzero.push_back({{"weight", i}, {"count", wide_to_json(w.counts[i])}});
    nlohmann::json out = {{"length", w.counts.empty() ? 0 : w.counts.size() - 1}, {"nonzero", nonzero}};
    if (const auto dmin = w.min_distance()) out["min_distance"] = *dmin;
    return out;
}

/// "freq*w0^k0*w1^k1*..." per entry, zero exponents omitted, joined by " + ".
inline std::string to_text(const CweTable& t) {
    std::string out;
    for (const auto& [c, f] : t.entries) {
        if (!out.empty()) out += " + ";
        out += to_string(f);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) out += "*w" + std::to_string(j) + "^" + std::to_string(c[j]);
    }
    return out;
}

inline std::string to_text(const SumDistribution& dist) {
    std::string out = "{";
    for (const auto& e : dist.entries) {
        if (out.size() > 1) out += ", ";
        out += e.value.to_string(dist.p) + ": " + to_string(e.freq);
    }
    return out + "}";
}

inline nlohmann::json to_json(const VerificationReport& r, bool with_timings = false) {
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : r.composition_diffs)
        diffs.push_back(
            {{"composition", d.composition}, {"closed", wide_to_json(d.closed)}, {"brute", wide_to_json(d.brute)}});
    nlohmann::json dist_diffs = nlohmann::json::array();
    for (const auto& d : r.distribution_diffs)
        dist_diffs.push_back({{"sign", d.value.sign},
                              {"imaginary", d.value.imaginary},
                              {"half_exp", d.value.half_exp},
                              {"direct", wide_to_json(d.direct)},
                              {"closed", wide_to_json(d.closed)}});
    nlohmann::json ranks = nlohmann::json::object();
    for (const auto& [rank, f] : r.rank_census) ranks[std::to_string(rank)] = wide_to_json(f);

    nlohmann::json out = {
        {"code", std::string(to_string(r.code))},
        {"p", r.p},
        {"m", r.m},
        {"l", r.l},
        {"prim_poly", r.prim_poly},
        {"case", r.case_label},
        {"match", r.match},
        {"composition_diffs", diffs},
        {"closed_violations", r.closed_violations},
        {"distributions_match", r.distributions_match},
        {"distribution_diffs", dist_diffs},
        {"strategy_matches", r.strategy_matches},
        {"weights_match", r.weights_match},
        {"rank_census", ranks},
        {"errors", r.errors},
        {"budget_exceeded", r.budget_exceeded},
    };
    if (r.repair.applied)
        out["repair"] = {{"description", r.repair.description},
                         {"printed_form_matches_oracle", r.repair.printed_form_matches_oracle},
                         {"printed_form_violations", r.repair.printed_form_violations}};
    if (r.closed) out["closed"] = to_json(*r.closed);
    if (r.brute) out["brute"] = to_json(*r.brute);
    if (with_timings)
        out["timings_ms"] = {{"closed", r.closed_ms}, {"brute", r.brute_ms}, {"distribution", r.distribution_ms}};
    return out;
}

} // namespace cwe
