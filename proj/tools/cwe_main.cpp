// Command-line front end: field-info, sum-dist, cwe, verify, sweep.
//
// Exit codes: 0 success/match, 1 verified mismatch, 2 usage or parameter
// error, 3 oracle budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwe/char_sums.hpp"
#include "cwe/enumerator.hpp"
#include "cwe/error.hpp"
#include "cwe/field.hpp"
#include "cwe/serialize.hpp"
#include "cwe/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct RunConfig {
    std::uint32_t p = 3;
    unsigned m = 2;
    std::optional<unsigned> l;
    std::string code = "c1";
    std::string method = "both";
    std::string format = "json";
    std::string poly;
    std::uint64_t budget = 500'000'000;
    unsigned workers = 1;
    std::string out;
    bool timings = false;
    // sweep only
    std::vector<std::uint32_t> primes{3, 5};
    unsigned max_m = 4;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw CLI::FileError("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::optional<cwe::Polynomial> parse_poly(const std::string& text) {
    if (text.empty()) return std::nullopt;
    cwe::Polynomial f;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return f;
}

cwe::CodeId parse_code(const std::string& code) {
    if (code == "c1" || code == "C1") return cwe::CodeId::C1;
    if (code == "c2" || code == "C2") return cwe::CodeId::C2;
    throw CLI::ValidationError("--code", "expected c1 or c2");
}

unsigned require_l(const RunConfig& cfg) {
    if (!cfg.l) throw CLI::RequiredError("--l");
    return *cfg.l;
}

cwe::FieldContext make_field(const RunConfig& cfg) { return cwe::build_field(cfg.p, cfg.m, parse_poly(cfg.poly)); }

cwe::SweepOptions sweep_options(const RunConfig& cfg) { return {cfg.budget, cfg.workers}; }

void emit(const RunConfig& cfg, const nlohmann::json& json, const std::string& text) {
    Output out(cfg.out);
    if (cfg.format == "text")
        out.stream() << text;
    else
        out.stream() << json.dump(2) << '\n';
}

int cmd_field_info(const RunConfig& cfg) {
    const auto ctx = make_field(cfg);
    nlohmann::json j = {{"field", cwe::field_to_json(ctx)}};
    std::ostringstream text;
    text << "field " << ctx.descriptor() << "\n";
    const auto h2 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -2));
    j["deg_h2"] = h2.size() - 1;
    text << "deg(h2) = " << h2.size() - 1 << "\n";
    if (cfg.l) {
        cwe::check_exponent(cfg.m, *cfg.l);
        const auto h1 = ctx.minimal_polynomial(ctx.pow(ctx.alpha(), -(cwe::ipow64(cfg.p, *cfg.l) + 1)));
        const auto deg1 = h1.size() - 1;
        const auto dim2 = deg1 + (h1 == h2 ? 0 : h2.size() - 1);
        j["l"] = *cfg.l;
        j["h1"] = h1;
        j["h2"] = h2;
        j["deg_h1"] = deg1;
        j["dim_c1"] = deg1;
        j["dim_c2"] = dim2;
        text << "deg(h1) = " << deg1 << "\n"
             << "dim C1 = " << deg1 << "\n"
             << "dim C2 = " << dim2 << "\n";
    }
    emit(cfg, j, text.str());
    return kOk;
}

int cmd_sum_dist(const RunConfig& cfg) {
    const unsigned l = require_l(cfg);
    const auto code = parse_code(cfg.code);
    const auto ctx = make_field(cfg);
    const bool want_closed = cfg.method == "closed" || cfg.method == "both";
    const bool want_direct = cfg.method != "closed";

    nlohmann::json j = {{"field", cwe::field_to_json(ctx)}, {"sum", code == cwe::CodeId::C1 ? "S" : "T"}};
    std::ostringstream text;
    std::optional<cwe::SumDistribution> closed;
    std::optional<cwe::SumDistribution> direct;
    if (want_closed) {
        closed = code == cwe::CodeId::C1 ? cwe::s_distribution_closed(cfg.p, cfg.m, l)
                                         : cwe::t_distribution_closed(cfg.p, cfg.m, l);
        j["closed"] = cwe::to_json(*closed);
        text << "closed: " << cwe::to_text(*closed) << "\n";
    }
    if (want_direct) {
        direct = code == cwe::CodeId::C1 ? cwe::s_distribution(ctx, l, sweep_options(cfg))
                                         : cwe::t_distribution(ctx, l, sweep_options(cfg));
        j["direct"] = cwe::to_json(*direct);
        text << "direct: " << cwe::to_text(*direct) << "\n";
    }
    int rc = kOk;
    if (closed && direct) {
        const bool match = *closed == *direct;
        j["match"] = match;
        text << "match: " << (match ? "yes" : "no") << "\n";
        rc = match ? kOk : kMismatch;
    }
    emit(cfg, j, text.str());
    return rc;
}

int cmd_cwe(const RunConfig& cfg) {
    const unsigned l = require_l(cfg);
    const auto code = parse_code(cfg.code);
    const auto ctx = make_field(cfg);
    nlohmann::json j = {{"field", cwe::field_to_json(ctx)}, {"case", cwe::theorem_case(code, cfg.m, l)}};
    std::ostringstream text;
    std::optional<cwe::CweTable> closed;
    std::optional<cwe::CweTable> brute;
    if (cfg.method == "closed" || cfg.method == "both") {
        closed = cwe::closed_form_cwe(code, cfg.p, cfg.m, l);
        j["closed"] = cwe::to_json(*closed);
        j["weights"] = cwe::to_json(cwe::collapse_to_weights(*closed));
        text << "closed: " << cwe::to_text(*closed) << "\n";
    }
    if (cfg.method == "brute" || cfg.method == "both") {
        brute = cwe::brute_force_cwe(ctx, l, code, sweep_options(cfg));
        j["brute"] = cwe::to_json(*brute);
        j["weights"] = cwe::to_json(cwe::collapse_to_weights(*brute));
        text << "brute: " << cwe::to_text(*brute) << "\n";
    }
    const auto weights = cwe::collapse_to_weights(closed ? *closed : *brute);
    if (const auto dmin = weights.min_distance()) text << "min distance: " << *dmin << "\n";
    int rc = kOk;
    if (closed && brute) {
        const bool match = *closed == *brute;
        j["match"] = match;
        text << "match: " << (match ? "yes" : "no") << "\n";
        rc = match ? kOk : kMismatch;
    }
    emit(cfg, j, text.str());
    return rc;
}

std::string report_text(const cwe::VerificationReport& r) {
    std::ostringstream s;
    s << cwe::to_string(r.code) << " p=" << r.p << " m=" << r.m << " l=" << r.l << " [" << r.case_label
      << "]: " << (r.match ? "match" : "MISMATCH") << "\n";
    for (const auto& e : r.errors) s << "  error: " << e << "\n";
    for (const auto& v : r.closed_violations) s << "  closed-form violation: " << v << "\n";
    if (!r.composition_diffs.empty()) s << "  " << r.composition_diffs.size() << " composition diffs\n";
    if (r.repair.applied)
        s << "  repair: " << r.repair.description
          << " (printed form matches oracle: " << (r.repair.printed_form_matches_oracle ? "yes" : "no") << ")\n";
    return s.str();
}

int cmd_verify(const RunConfig& cfg) {
    const unsigned l = require_l(cfg);
    const auto code = parse_code(cfg.code);
    const auto ctx = make_field(cfg);
    const auto report = cwe::verify(ctx, l, code, sweep_options(cfg));
    if (cfg.timings)
        std::cerr << "closed " << report.closed_ms << " ms, brute " << report.brute_ms << " ms, distribution "
                  << report.distribution_ms << " ms\n";
    emit(cfg, cwe::to_json(report, cfg.timings), report_text(report));
    if (report.budget_exceeded) return kBudget;
    return report.match ? kOk : kMismatch;
}

int cmd_sweep(const RunConfig& cfg) {
    std::vector<cwe::CodeId> codes;
    if (cfg.code == "both")
        codes = {cwe::CodeId::C1, cwe::CodeId::C2};
    else
        codes = {parse_code(cfg.code)};

    nlohmann::json results = nlohmann::json::array();
    std::string text;
    bool all_match = true;
    for (auto p : cfg.primes) {
        for (unsigned m = 2; m <= cfg.max_m; ++m) {
            const auto ctx = cwe::build_field(p, m);
            for (unsigned l = 1; l < m; ++l) {
                if (cfg.l && *cfg.l != l) continue;
                for (auto code : codes) {
                    const auto r = cwe::verify(ctx, l, code, sweep_options(cfg));
                    nlohmann::json row = {{"code", std::string(cwe::to_string(code))},
                                          {"p", p},
                                          {"m", m},
                                          {"l", l},
                                          {"case", r.case_label},
                                          {"match", r.match},
                                          {"skipped", r.budget_exceeded},
                                          {"errors", r.errors}};
                    if (r.repair.applied) row["repaired"] = true;
                    results.push_back(row);
                    text += r.budget_exceeded ? "skipped (budget) " : "";
                    text += report_text(r);
                    if (!r.match && !r.budget_exceeded) all_match = false;
                }
            }
        }
    }
    emit(cfg, {{"results", results}, {"all_match", all_match}}, text);
    return all_match ? kOk : kMismatch;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_l) {
    sub->add_option("--p", cfg.p, "odd prime p")->required();
    sub->add_option("--m", cfg.m, "extension degree m")->required();
    if (with_l) sub->add_option("--l", cfg.l, "exponent parameter, 0 < l < m");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--poly", cfg.poly, "primitive polynomial override, coefficients constant term first");
    sub->add_option("--out", cfg.out, "write output to FILE");
}

void add_sweep_controls(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--budget", cfg.budget, "maximum oracle symbol evaluations");
    sub->add_option("--workers", cfg.workers, "sweep worker threads")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete weight enumerators of the cyclic codes C1 and C2"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* field_info = app.add_subcommand("field-info", "field descriptor, minimal polynomials and code dimensions");
    add_common(field_info, cfg, true);

    auto* sum_dist = app.add_subcommand("sum-dist", "value distribution of S(a) (--code c1) or T(a,b) (--code c2)");
    add_common(sum_dist, cfg, true);
    add_sweep_controls(sum_dist, cfg);
    sum_dist->add_option("--code", cfg.code, "c1 or c2");
    sum_dist->add_option("--method", cfg.method, "closed, direct, brute or both")
        ->check(CLI::IsMember({"closed", "direct", "brute", "both"}));

    auto* cwe_cmd = app.add_subcommand("cwe", "complete weight enumerator");
    add_common(cwe_cmd, cfg, true);
    add_sweep_controls(cwe_cmd, cfg);
    cwe_cmd->add_option("--code", cfg.code, "c1 or c2");
    cwe_cmd->add_option("--method", cfg.method, "closed, brute or both")
        ->check(CLI::IsMember({"closed", "brute", "both"}));

    auto* verify_cmd = app.add_subcommand("verify", "cross-check closed forms against the exhaustive oracle");
    add_common(verify_cmd, cfg, true);
    add_sweep_controls(verify_cmd, cfg);
    verify_cmd->add_option("--code", cfg.code, "c1 or c2");
    verify_cmd->add_flag("--timings", cfg.timings, "include wall-clock timings");

    auto* sweep = app.add_subcommand("sweep", "verify every (p, m, l) in a grid");
    sweep->add_option("--p", cfg.primes, "primes to sweep")->delimiter(',');
    sweep->add_option("--m", cfg.max_m, "largest m (m starts at 2)");
    sweep->add_option("--l", cfg.l, "restrict to one l");
    sweep->add_option("--code", cfg.code, "c1, c2 or both")->check(CLI::IsMember({"c1", "c2", "both", "C1", "C2"}));
    sweep->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sweep->add_option("--out", cfg.out, "write output to FILE");
    add_sweep_controls(sweep, cfg);
    cfg.code = "c1";

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (sweep->parsed() && sweep->count("--code") == 0) cfg.code = "both";

    try {
        if (field_info->parsed()) return cmd_field_info(cfg);
        if (sum_dist->parsed()) return cmd_sum_dist(cfg);
        if (cwe_cmd->parsed()) return cmd_cwe(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
        return cmd_sweep(cfg);
    } catch (const cwe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == cwe::ErrorCode::BudgetExceeded ? kBudget : kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
