// wahl_cli: T-strings, discrepancies, blow-down traces, the bad-curve oracle
// and the length bounds from the command line.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

#include "wahl/wahl.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes all of `text` to `path`, replacing any previous content.
void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string join(const std::vector<wahl::Rational>& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + wahl::to_string(a[i]);
    return s + "]";
}

int cmd_expand(const std::string& p_text, const std::string& q_text, bool json) {
    wahl::WahlParams params;
    try {
        params = wahl::make_params(wahl::Integer(p_text), wahl::Integer(q_text));
    } catch (const std::runtime_error&) {
        throw UsageError("p and q must be integers");
    }
    auto t = wahl::wahl_tstring(params);
    auto a = wahl::discrepancies(t);
    if (json) {
        wahl::Json j = wahl::to_json(params);
        j["b"] = wahl::to_json(t);
        j["discrepancies"] = wahl::to_json(a);
        std::cout << j.dump() << '\n';
    } else {
        std::cout << wahl::to_string(t) << ", a = " << join(a) << '\n';
    }
    return kOk;
}

int cmd_atlas(int max_len, const std::string& out) {
    std::ostringstream buf;
    wahl::write_atlas(buf, max_len); // every record is validated before anything is written
    if (out.empty())
        std::cout << buf.str();
    else
        write_file(out, buf.str());
    return kOk;
}

int cmd_blowdown(const std::string& path, const std::string& out, bool json, bool highest_id) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    auto config = wahl::parse_config(in);
    wahl::ContractOptions opts;
    opts.prefer_highest_id = highest_id;
    auto trace = wahl::contract_all(config, opts);
    std::ostringstream jsonl;
    wahl::write_trace_jsonl(jsonl, trace);
    if (!out.empty()) write_file(out, jsonl.str());
    if (json)
        std::cout << jsonl.str();
    else
        wahl::write_trace_text(std::cout, trace);
    return kOk;
}

int cmd_verify(const std::string& filter, bool flip_sign) {
    wahl::ReferenceHooks hooks;
    if (flip_sign)
        hooks.discrepancies = [](const wahl::TString& t) {
            auto a = wahl::discrepancies(t);
            for (auto& x : a) x = -x;
            return a;
        };
    std::vector<wahl::CheckResult> results;
    try {
        results = wahl::run_reference_checks(filter, hooks);
    } catch (const wahl::DomainError& e) {
        throw UsageError(e.what());
    }
    std::size_t w_name = 4, w_anchor = 6;
    for (const auto& r : results) {
        w_name = std::max(w_name, r.group.size() + 1 + r.name.size());
        w_anchor = std::max(w_anchor, r.anchor.size());
    }
    std::cout << std::left << std::setw(6) << "" << std::setw(static_cast<int>(w_name) + 2) << "check"
              << std::setw(static_cast<int>(w_anchor) + 2) << "anchor"
              << "observed\n";
    std::size_t failed = 0;
    for (const auto& r : results) {
        failed += !r.passed;
        std::cout << std::left << std::setw(6) << (r.passed ? "PASS" : "FAIL")
                  << std::setw(static_cast<int>(w_name) + 2) << (r.group + "/" + r.name)
                  << std::setw(static_cast<int>(w_anchor) + 2) << r.anchor << r.detail << '\n';
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
    return failed ? kVerifyFailed : kOk;
}

int cmd_oracle(int max_len, const std::string& out) {
    auto rep = wahl::case_oracle(max_len);
    if (!out.empty()) {
        std::ostringstream buf;
        wahl::write_oracle_jsonl(buf, rep);
        write_file(out, buf.str());
    }
    std::cout << "configurations examined: " << rep.examined << '\n'
              << "single survivors: " << rep.survivors << '\n'
              << "pair survivors: " << rep.pair_survivors << '\n';
    std::cout << std::left << std::setw(8) << "case" << std::setw(10) << "total" << "contradicted\n";
    for (const auto& [id, total] : rep.case_total) {
        auto it = rep.case_contradicted.find(id);
        std::cout << std::setw(8) << id << std::setw(10) << total << (it == rep.case_contradicted.end() ? 0 : it->second)
                  << '\n';
    }
    auto list = [](const char* what, const std::vector<std::string>& xs) {
        for (const auto& x : xs) std::cout << what << ": " << x << '\n';
    };
    list("bound failure", rep.bound_failures);
    list("special-string survivor", rep.special_survivors);
    list("symmetry mismatch", rep.symmetry_mismatches);
    list("classification failure", rep.classification_failures);
    bool a1 = rep.cases_refuted("A.1"), a5 = rep.cases_refuted("A.5");
    if (!a1) std::cout << "case A.1 has a surviving configuration\n";
    if (!a5) std::cout << "case A.5 has a surviving configuration\n";
    std::cout << (rep.ok() ? "oracle: all checks hold\n" : "oracle: FAILED\n");
    return rep.ok() ? kOk : kVerifyFailed;
}

int cmd_bounds(long long ksq, long long ell, long long p_bad, bool json) {
    if (ell >= 0) {
        if (p_bad < 0) p_bad = wahl::max_bad_curves(ell);
        auto r = wahl::inequality_chain(ksq, ell, p_bad);
        if (json) {
            std::cout << wahl::to_json(r).dump() << '\n';
        } else {
            std::cout << "K^2 = " << r.ksq << ", l = " << r.ell << ", bad curves p = " << r.p_bad << '\n'
                      << "  k >= l - K^2 = " << r.k_min << '\n'
                      << "  budget 2(k-p) + p <= l + 1 = " << r.rana_budget << ": " << (r.budget_ok ? "ok" : "violated") << '\n'
                      << "  l <= 2K^2 + p + 1 = " << 2 * r.ksq + r.p_bad + 1 << ": "
                      << (r.length_vs_bad_ok ? "ok" : "violated") << '\n'
                      << "  p <= (l+5)/2 = " << wahl::to_string(r.p_max) << ": " << (r.bad_count_ok ? "ok" : "violated")
                      << '\n'
                      << "  l <= 4K^2 + 7 = " << r.bound_general << ": " << (r.general_ok ? "ok" : "violated") << '\n'
                      << (r.feasible() ? "feasible\n" : "infeasible\n");
        }
        return kOk;
    }
    if (json) {
        wahl::Json arr = wahl::Json::array();
        for (long long k = 1; k <= ksq; ++k)
            arr.push_back({{"ksq", k},
                           {"bound_general", wahl::general_bound(k)},
                           {"bound_special", wahl::special_bound(k)},
                           {"max_p", wahl::max_p_B_p1(k)}});
        std::cout << arr.dump() << '\n';
    } else {
        wahl::write_bounds_table(std::cout, ksq);
    }
    return kOk;
}

int cmd_surface(const std::string& kind, long long value) {
    wahl::SurfaceKind k;
    if (kind == "degree")
        k = wahl::SurfaceKind::DegreeDInP3;
    else if (kind == "horikawa")
        k = wahl::SurfaceKind::Horikawa;
    else
        throw UsageError("unknown surface kind '" + kind + "'");
    auto r = wahl::surface_examples(k, value);
    std::cout << wahl::to_json(r).dump() << '\n';
    return r.within_general ? kOk : kVerifyFailed;
}

int cmd_property(std::uint64_t seed, std::size_t count, int depth) {
    auto rep = wahl::random_orthogonality_check(seed, count, depth);
    for (const auto& f : rep.failures) std::cout << "failure: " << f << '\n';
    std::cout << rep.samples - rep.failures.size() << "/" << rep.samples << " random exceptional curves pass\n";
    return rep.ok() ? kOk : kVerifyFailed;
}

} // namespace


int main(int argc, char** argv) {
    CLI::App app{"Wahl chains, discrepancies and exceptional curves"};
    app.require_subcommand(1);

    bool json = false;
    std::string out;
    int max_len = 0;
    std::string filter;
    std::uint64_t seed = 1;

    std::string p_text, q_text;
    auto* expand = app.add_subcommand("expand", "T-string and discrepancies of 1/p^2(pq-1, 1)");
    expand->add_option("p", p_text)->required();
    expand->add_option("q", q_text)->required();
    expand->add_flag("--json", json, "Print JSON");

    auto* atlas = app.add_subcommand("atlas", "Write every T-string up to a length as JSONL");
    atlas->add_option("--max-len", max_len, "Largest length")->required()->check(CLI::Range(1, wahl::kDefaultMaxLength));
    atlas->add_option("--out", out, "Output file (default: standard output)");

    std::string config_path;
    bool highest = false;
    auto* blowdown = app.add_subcommand("blowdown", "Contract (-1,-1) curves of a configuration file");
    blowdown->add_option("config", config_path, "Configuration JSON")->required();
    blowdown->add_option("--out", out, "Also write the JSONL trace to this file");
    blowdown->add_flag("--json", json, "Print the trace as JSONL");
    blowdown->add_flag("--highest-id", highest, "Contract the highest id first instead of the lowest");

    bool flip = false;
    auto* verify = app.add_subcommand("verify", "Run the worked-example regression suite");
    verify->add_option("--filter", filter, "Only this group: tstring, discrepancy, curveconfig, badcurves, bounds");
    verify->add_flag("--flip-discrepancy-sign", flip, "Self-test: negate the discrepancy solver's output");

    int oracle_len = 6;
    auto* oracle = app.add_subcommand("oracle", "Enumerate bad-curve configurations on short chains");
    oracle->add_option("--max-len", oracle_len, "Largest length")->check(CLI::Range(1, wahl::kOracleMaxLength));
    oracle->add_option("--out", out, "JSONL record file");

    long long ksq = 5, ell = -1, p_bad = -1;
    auto* bounds = app.add_subcommand("bounds", "Length bounds in terms of K^2");
    bounds->add_option("--ksq", ksq, "K^2 (table rows 1..K^2 unless --ell is given)")->check(CLI::PositiveNumber);
    bounds->add_option("--ell", ell, "Check the inequality chain for this length")->check(CLI::NonNegativeNumber);
    bounds->add_option("--p-bad", p_bad, "Number of bad curves (default floor((l+5)/2))")->check(CLI::NonNegativeNumber);
    bounds->add_flag("--json", json, "Print JSON");

    std::string kind;
    long long value = 0;
    auto* surface = app.add_subcommand("surface", "Invariants of degree-d surfaces and Horikawa surfaces");
    surface->add_option("kind", kind, "degree | horikawa")->required();
    surface->add_option("value", value, "d or n")->required();

    std::size_t count = 1000;
    int depth = 6;
    auto* property = app.add_subcommand("property", "Random exceptional curves against E.A_i = 0, E.A_last = -1");
    property->add_option("--seed", seed, "RNG seed");
    property->add_option("--count", count, "Number of samples");
    property->add_option("--depth", depth, "Largest number of blow-ups")->check(CLI::Range(0, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*expand) return cmd_expand(p_text, q_text, json);
        if (*atlas) return cmd_atlas(max_len, out);
        if (*blowdown) return cmd_blowdown(config_path, out, json, highest);
        if (*verify) return cmd_verify(filter, flip);
        if (*oracle) return cmd_oracle(oracle_len, out);
        if (*bounds) return cmd_bounds(ksq, ell, p_bad, json);
        if (*surface) return cmd_surface(kind, value);
        if (*property) return cmd_property(seed, count, depth);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const wahl::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const wahl::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const wahl::ResourceLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kUsage;
}
