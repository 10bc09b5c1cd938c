#pragma once

// JSON and JSONL encodings: T-strings, atlas records, curve configurations,
// blow-down traces, oracle records and bound reports.

#include "wahl/arith.hpp"
#include "wahl/badcurves.hpp"
#include "wahl/bounds.hpp"
#include "wahl/curveconfig.hpp"
#include "wahl/discrepancy.hpp"
#include "wahl/tstring.hpp"

#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wahl {

using Json = nlohmann::ordered_json;

/// Malformed input file, with a 1-based position when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(line ? what + " at line " + std::to_string(line) + ", column " + std::to_string(column)
                                  : what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline Json to_json(const TString& t) { return Json(t.entries()); }

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
inline Json integer_json(const Integer& n) {
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return Json(n.convert_to<long long>());
    return Json(n.str());
}

inline Json to_json(const WahlParams& w) { return {{"p", integer_json(w.p)}, {"q", integer_json(w.q)}}; }

inline Json to_json(const std::vector<Rational>& a) {
    Json out = Json::array();
    for (const auto& x : a) out.push_back(to_string(x));
    return out;
}

// --- atlas -----------------------------------------------------------------

struct AtlasRecord {
    Integer p;
    Integer q;
    std::size_t ell = 0;
    TString b = TString::base();
    std::vector<Rational> discrepancies;
    Integer det;
    bool checksum_ok = false;
};

/// Builds and validates the record of one string; throws std::logic_error on
/// any broken invariant.
inline AtlasRecord make_atlas_record(const TString& t) {
    AtlasRecord r;
    auto params = tstring_to_params(t);
    r.p = params.p;
    r.q = params.q;
    r.ell = t.length();
    r.b = t;
    r.discrepancies = discrepancies(t);
    r.det = intersection_matrix(t).determinant();
    r.checksum_ok = checksum_ok(t);
    Integer abs_det = r.det < 0 ? Integer(-r.det) : r.det;
    auto check = check_discrepancies(t, r.discrepancies, r.p);
    if (abs_det != r.p * r.p || !r.checksum_ok || !check.in_open_interval || !check.kawamata || !check.solves_system ||
        wahl_tstring(params) != t)
        throw std::logic_error("atlas invariant failed for " + to_string(t));
    return r;
}

/// det is written as |det| = p^2.
inline Json to_json(const AtlasRecord& r) {
    Json j;
    j["p"] = integer_json(r.p);
    j["q"] = integer_json(r.q);
    j["ell"] = r.ell;
    j["b"] = to_json(r.b);
    j["discrepancies"] = to_json(r.discrepancies);
    j["det"] = integer_json(r.det < 0 ? Integer(-r.det) : r.det);
    j["checksum_ok"] = r.checksum_ok;
    return j;
}

inline void write_atlas(std::ostream& os, int max_len) {
    for (const auto& level : enumerate_tstrings(max_len))
        for (const auto& t : level) os << to_json(make_atlas_record(t)).dump() << '\n';
}

// --- curve configurations --------------------------------------------------

inline Json to_json(const CurveConfig& c) {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& [id, cur] : c.curves())
        j["vertices"].push_back(
            {{"id", id}, {"self_int", cur.self_int}, {"k_degree", cur.k_degree}, {"mult", cur.mult}, {"label", cur.label}});
    j["edges"] = Json::array();
    for (const auto& [key, m] : c.edges()) j["edges"].push_back({{"a", key.first}, {"b", key.second}, {"m", m}});
    return j;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

template <class T>
T field(const Json& obj, const char* name, const std::string& where) {
    if (!obj.is_object() || !obj.contains(name)) throw ParseError(where + ": missing field '" + name + "'");
    try {
        return obj.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(where + ": field '" + name + "' has the wrong type");
    }
}

} // namespace detail

/// {"vertices": [{"id", "self_int", "k_degree"?, "mult"?, "label"?}],
///  "edges": [{"a", "b", "m"?}]}. A missing k_degree means a rational curve.
inline CurveConfig config_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices")) throw ParseError("configuration needs a 'vertices' array");
    CurveConfig c;
    const auto& vs = j.at("vertices");
    if (!vs.is_array()) throw ParseError("'vertices' must be an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& v = vs[i];
        std::string where = "vertex " + std::to_string(i);
        Curve cur;
        cur.id = detail::field<VertexId>(v, "id", where);
        cur.self_int = detail::field<Degree>(v, "self_int", where);
        cur.k_degree = v.contains("k_degree") ? detail::field<Degree>(v, "k_degree", where) : -2 - cur.self_int;
        cur.mult = v.contains("mult") ? detail::field<Degree>(v, "mult", where) : 0;
        cur.label = v.contains("label") ? detail::field<std::string>(v, "label", where) : std::string{};
        try {
            c.insert_curve(std::move(cur));
        } catch (const DomainError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.contains("edges")) {
        const auto& es = j.at("edges");
        if (!es.is_array()) throw ParseError("'edges' must be an array");
        for (std::size_t i = 0; i < es.size(); ++i) {
            std::string where = "edge " + std::to_string(i);
            auto a = detail::field<VertexId>(es[i], "a", where);
            auto b = detail::field<VertexId>(es[i], "b", where);
            Degree m = es[i].contains("m") ? detail::field<Degree>(es[i], "m", where) : 1;
            try {
                c.set_intersection(a, b, m);
            } catch (const DomainError& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
    }
    return c;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = detail::line_column(text, e.byte);
        throw ParseError("malformed JSON", line, column);
    }
}

inline CurveConfig parse_config(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return config_from_json(parse_json_text(text));
}

// --- traces ----------------------------------------------------------------

inline Json to_json(const SwViolation& v) {
    return {{"id", v.id}, {"label", v.label}, {"self_int", v.self_int}, {"k_degree", v.k_degree}, {"rule", v.rule}};
}

/// One line per contraction step, then a status line.
inline void write_trace_jsonl(std::ostream& os, const BlowDownTrace& t) {
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        const auto& s = t.steps[k];
        Json j;
        j["step"] = k + 1;
        j["contracted"] = s.vertex;
        j["label"] = s.label;
        j["config"] = to_json(s.after);
        j["violations"] = Json::array();
        for (const auto& v : s.violations) j["violations"].push_back(to_json(v));
        os << j.dump() << '\n';
    }
    Json fin;
    fin["status"] = to_string(t.status);
    fin["steps"] = t.steps.size();
    fin["fully_contracted"] = t.fully_contracted;
    fin["violations"] = Json::array();
    for (const auto& v : t.violations) fin["violations"].push_back(to_json(v));
    fin["final"] = to_json(t.final_config);
    os << fin.dump() << '\n';
}

inline void write_trace_text(std::ostream& os, const BlowDownTrace& t) {
    auto show = [&os](const CurveConfig& c) {
        for (const auto& [id, cur] : c.curves())
            os << "    " << cur.label << " (id " << id << "): C^2=" << cur.self_int << " K.C=" << cur.k_degree
               << " mult=" << cur.mult << '\n';
    };
    os << "initial:\n";
    show(t.initial);
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
        os << "step " << k + 1 << ": contract " << t.steps[k].label << '\n';
        show(t.steps[k].after);
        for (const auto& v : t.steps[k].violations)
            os << "    violation: " << v.label << " (" << v.self_int << ", " << v.k_degree << ") " << v.rule << '\n';
    }
    for (const auto& v : t.violations)
        if (t.steps.empty()) os << "violation: " << v.label << " (" << v.self_int << ", " << v.k_degree << ") " << v.rule << '\n';
    os << "status: " << to_string(t.status) << " after " << t.steps.size() << " step(s)\n";
}

// --- oracle ----------------------------------------------------------------

inline Json to_json(const BadCurveClass& c) {
    Json j;
    j["type"] = to_string(c.type);
    if (c.x_prime) j["x_prime"] = c.x_prime;
    if (c.x) j["x"] = c.x;
    if (c.y) j["y"] = c.y;
    if (c.y_prime) j["y_prime"] = c.y_prime;
    j["n"] = c.internal_count;
    return j;
}

inline Json to_json(const OracleRecord& r) {
    Json j;
    j["b"] = to_json(r.t);
    j["case"] = r.case_id;
    j["classes"] = Json::array();
    for (const auto& c : r.classes) j["classes"].push_back(to_json(c));
    j["n"] = r.internal_count;
    j["verdict"] = to_string(r.verdict);
    j["certificate"] = r.certificate;
    if (r.e_dot_chain) {
        j["e_dot_chain"] = *r.e_dot_chain;
        j["e_dot"] = r.e_dot;
    }
    if (r.verdict == Verdict::Survives) j["within_bound"] = r.within_bound;
    return j;
}

inline void write_oracle_jsonl(std::ostream& os, const OracleReport& rep) {
    for (const auto& r : rep.records) os << to_json(r).dump() << '\n';
}

// --- bounds ----------------------------------------------------------------

inline Json to_json(const BoundReport& r) {
    Json j;
    j["ksq"] = r.ksq;
    j["ell"] = r.ell;
    j["p_bad"] = r.p_bad;
    j["k_min"] = r.k_min;
    j["rana_budget"] = r.rana_budget;
    j["p_max"] = to_string(r.p_max);
    j["bound_general"] = r.bound_general;
    j["bound_special"] = r.bound_special;
    j["budget_ok"] = r.budget_ok;
    j["length_vs_bad_ok"] = r.length_vs_bad_ok;
    j["bad_count_ok"] = r.bad_count_ok;
    j["general_ok"] = r.general_ok;
    j["feasible"] = r.feasible();
    return j;
}

inline Json to_json(const SurfaceRecord& r) {
    Json j;
    j["kind"] = to_string(r.kind);
    j["parameter"] = r.parameter;
    j["ksq"] = integer_json(r.ksq);
    if (r.kind == SurfaceKind::DegreeDInP3) {
        j["p_g"] = integer_json(r.p_g);
    } else {
        j["b_plus"] = integer_json(r.b_plus);
        j["ell"] = r.ell;
        j["chain_length_checked"] = r.chain_length_checked;
    }
    j["within_general"] = r.within_general;
    j["within_special"] = r.within_special;
    return j;
}

/// Bounds for K^2 = 1..ksq_max, with the published polynomial bound
/// 400 (K^2)^4 as an unverified reference column.
inline void write_bounds_table(std::ostream& os, long long ksq_max) {
    os << std::setw(6) << "K^2" << std::setw(10) << "4K^2+7" << std::setw(10) << "2K^2+1" << std::setw(8) << "max p"
       << std::setw(16) << "400(K^2)^4" << '\n';
    for (long long k = 1; k <= ksq_max; ++k) {
        Integer ref = Integer(400) * Integer(k) * k * k * k;
        os << std::setw(6) << k << std::setw(10) << general_bound(k) << std::setw(10) << special_bound(k) << std::setw(8)
           << max_p_B_p1(k) << std::setw(16) << ref.str() << '\n';
    }
}

} // namespace wahl
