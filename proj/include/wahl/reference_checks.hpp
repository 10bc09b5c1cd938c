#pragma once

// Regression suite of published worked examples: small fixed inputs with
// known answers, grouped by module and filterable by group name.

#include "wahl/arith.hpp"
#include "wahl/badcurves.hpp"
#include "wahl/bounds.hpp"
#include "wahl/curveconfig.hpp"
#include "wahl/discrepancy.hpp"
#include "wahl/tstring.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wahl {

// --- worked blow-up examples -----------------------------------------------

/// A (-1)-sphere blown up at one point: E1 the new (-1) curve, E2 the old one.
/// Ids: 0 = E2, 1 = E1.
inline CurveConfig one_point_blowup() {
    CurveConfig c;
    c.add_curve(-1, -1, 1, "E2");
    c = blow_up(c, GenericOn{0}, "E1");
    return c;
}

enum class SecondPoint { OnFirstOnly, OnSecondOnly, AtCrossing };

/// One further blow-up of one_point_blowup(). F1 is always the new curve; the
/// old curves are renamed as drawn in the three standard pictures.
inline CurveConfig two_point_blowup(SecondPoint where) {
    CurveConfig c = one_point_blowup();
    switch (where) {
    case SecondPoint::OnFirstOnly:
        c = blow_up(c, GenericOn{1}, "F1");
        c.curve_mut(1).label = "F2";
        c.curve_mut(0).label = "F3";
        break;
    case SecondPoint::OnSecondOnly:
        c = blow_up(c, GenericOn{0}, "F1");
        c.curve_mut(1).label = "F2";
        c.curve_mut(0).label = "F3";
        break;
    case SecondPoint::AtCrossing:
        c = blow_up(c, AtIntersection{1, 0}, "F1");
        c.curve_mut(1).label = "F2";
        c.curve_mut(0).label = "F3";
        break;
    }
    return c;
}

/// Same curves, intersections, K-degrees and multiplicities; labels ignored.
inline bool same_intersection_data(const CurveConfig& a, const CurveConfig& b) {
    if (a.size() != b.size() || a.edges() != b.edges()) return false;
    for (const auto& [id, cur] : a.curves()) {
        if (!b.contains(id)) return false;
        const auto& other = b.curve(id);
        if (cur.self_int != other.self_int || cur.k_degree != other.k_degree || cur.mult != other.mult) return false;
    }
    return true;
}

/// Three curves a, b, c with a.b = b.c = 2: a degenerate fibre whose
/// components meet twice.
inline CurveConfig doubly_meeting_chain() {
    CurveConfig c;
    c.add_rational_curve(-1, 1, "a");
    c.add_rational_curve(-4, 1, "b");
    c.add_rational_curve(-1, 1, "c");
    c.connect(0, 1, 2);
    c.connect(1, 2, 2);
    return c;
}

// --- suite -----------------------------------------------------------------

struct CheckResult {
    std::string group;
    std::string name;
    std::string anchor; // what the expected value is taken from
    bool passed = false;
    std::string detail;
};

/// Replaceable pieces, so that a deliberately broken implementation can be
/// shown to be caught.
struct ReferenceHooks {
    std::function<std::vector<Rational>(const TString&)> discrepancies = [](const TString& t) {
        return wahl::discrepancies(t);
    };
};

inline const std::vector<std::string>& reference_groups() {
    static const std::vector<std::string> groups{"tstring", "discrepancy", "curveconfig", "badcurves", "bounds"};
    return groups;
}

namespace detail {

inline std::string describe_k_labels(const CurveConfig& c, const std::vector<VertexId>& order) {
    std::string s = "(";
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c.curve(order[i]).k_degree);
    }
    return s + ")";
}

inline bool labels_and_mults(const CurveConfig& c, const std::vector<VertexId>& order, const std::vector<Degree>& k,
                             const std::vector<Degree>& m) {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (c.curve(order[i]).k_degree != k[i] || c.curve(order[i]).mult != m[i]) return false;
    return true;
}

inline bool is_path(const CurveConfig& c, const std::vector<VertexId>& order) {
    if (c.edges().size() + 1 != order.size()) return false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (c.intersection(order[i], order[i + 1]) != 1) return false;
    return true;
}

} // namespace detail

/// Runs the suite; an empty filter runs every group. Throws DomainError for an
/// unknown group name.
inline std::vector<CheckResult> run_reference_checks(const std::string& filter = {}, const ReferenceHooks& hooks = {}) {
    if (!filter.empty() && std::find(reference_groups().begin(), reference_groups().end(), filter) == reference_groups().end())
        throw DomainError("unknown check group '" + filter + "'");
    std::vector<CheckResult> out;
    auto want = [&](const char* g) { return filter.empty() || filter == g; };
    auto run = [&](const char* group, const char* name, const char* anchor, auto&& fn) {
        CheckResult r{group, name, anchor, false, {}};
        try {
            r.passed = fn(r.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    };

    if (want("tstring")) {
        run("tstring", "base_string_for_p2_q1", "base string of the L/R generation", [](std::string& d) {
            auto t = wahl_tstring(make_params(2, 1));
            d = to_string(t);
            return t == TString::base();
        });
        run("tstring", "L_and_R_of_base", "operation definitions applied to [4]", [](std::string& d) {
            auto l = apply_L(TString::base()), r = apply_R(TString::base());
            d = "L=" + to_string(l) + " R=" + to_string(r);
            return l.entries() == std::vector<int>{2, 5} && r.entries() == std::vector<int>{5, 2};
        });
        run("tstring", "params_of_base", "base string corresponds to (2,1)", [](std::string& d) {
            auto p = tstring_to_params(TString::base());
            d = "(" + p.p.str() + "," + p.q.str() + ")";
            return p.p == 2 && p.q == 1;
        });
        run("tstring", "enumeration_length_one", "every T-string descends from [4]", [](std::string& d) {
            auto levels = enumerate_tstrings(1);
            d = std::to_string(levels.front().size()) + " string(s)";
            return levels.size() == 1 && levels.front() == std::vector<TString>{TString::base()};
        });
    }

    if (want("discrepancy")) {
        run("discrepancy", "base_discrepancy", "a_1 of [4]", [&](std::string& d) {
            auto a = hooks.discrepancies(TString::base());
            d = a.empty() ? "empty" : to_string(a.front());
            return a.size() == 1 && a.front() == make_rational(-1, 2);
        });
        run("discrepancy", "single_hit_pairing", "single-intersection pattern on [4]", [&](std::string& d) {
            auto a = hooks.discrepancies(TString::base());
            Rational v = a.at(0);
            d = "pairing " + to_string(v);
            return v == make_rational(-1, 2) && !(v < Rational(-1));
        });
        run("discrepancy", "endpoint_pairing", "endpoint pattern on [3,5,2]", [&](std::string& d) {
            auto t = TString::from_entries({3, 5, 2});
            auto a = hooks.discrepancies(t);
            Rational v = a.at(0) + a.at(2);
            d = "a1 + a3 = " + to_string(v);
            return v == Rational(-1) && !(v < Rational(-1));
        });
    }

    if (want("curveconfig")) {
        run("curveconfig", "one_point_blowup", "picture E1(-1) - E2(0)", [](std::string& d) {
            auto c = one_point_blowup();
            d = "K " + detail::describe_k_labels(c, {1, 0});
            return detail::is_path(c, {1, 0}) && detail::labels_and_mults(c, {1, 0}, {-1, 0}, {1, 1});
        });
        run("curveconfig", "second_point_on_first_only", "picture F1(-1) - F2(0) - F3(0)", [](std::string& d) {
            auto c = two_point_blowup(SecondPoint::OnFirstOnly);
            d = "K " + detail::describe_k_labels(c, {2, 1, 0});
            return detail::is_path(c, {2, 1, 0}) && detail::labels_and_mults(c, {2, 1, 0}, {-1, 0, 0}, {1, 1, 1});
        });
        run("curveconfig", "second_point_on_second_only", "picture F2(-1) - F3(1) - F1(-1)", [](std::string& d) {
            auto c = two_point_blowup(SecondPoint::OnSecondOnly);
            d = "K " + detail::describe_k_labels(c, {1, 0, 2});
            return detail::is_path(c, {1, 0, 2}) && detail::labels_and_mults(c, {1, 0, 2}, {-1, 1, -1}, {1, 1, 1});
        });
        run("curveconfig", "second_point_at_crossing", "picture F2(0) - 2F1(-1) - F3(1)", [](std::string& d) {
            auto c = two_point_blowup(SecondPoint::AtCrossing);
            d = "K " + detail::describe_k_labels(c, {1, 2, 0}) + " mult F1 = " + std::to_string(c.curve(2).mult);
            return detail::is_path(c, {1, 2, 0}) && detail::labels_and_mults(c, {1, 2, 0}, {0, -1, 1}, {1, 2, 1});
        });
        run("curveconfig", "blowdown_of_crossing_example", "inverse of the crossing blow-up", [](std::string& d) {
            auto down = blow_down(two_point_blowup(SecondPoint::AtCrossing), 2);
            d = "K " + detail::describe_k_labels(down, {1, 0});
            return same_intersection_data(down, one_point_blowup());
        });
        run("curveconfig", "crossing_example_contracts", "exceptional curve of the first kind", [](std::string& d) {
            auto t = contract_all(two_point_blowup(SecondPoint::AtCrossing));
            d = std::string(to_string(t.status)) + " in " + std::to_string(t.steps.size()) + " steps";
            return t.status == TraceStatus::ContractedToPoint && t.steps.size() == 3;
        });
        run("curveconfig", "crossing_example_structure", "structural properties and E^2 = K.E = -1", [](std::string& d) {
            auto r = validate_zariski(two_point_blowup(SecondPoint::AtCrossing));
            d = "E^2=" + std::to_string(r.e_squared) + " K.E=" + std::to_string(r.k_dot_e) +
                " rule(5) contraction-order=" + (r.mult_rule_contraction_order ? "holds" : "fails") +
                " creation-order=" + (r.mult_rule_creation_order ? "holds" : "fails");
            return r.ok() && r.e_dot_component.at(2) == 0 && r.e_dot_component.at(1) == 0 &&
                   r.e_dot_component.at(0) == -1;
        });
        run("curveconfig", "sw_rule_rejects_k_minus_two", "no rational curve with K.A <= -2", [](std::string& d) {
            CurveConfig c;
            c.add_curve(0, -2);
            auto v = sw_check(c);
            d = std::to_string(v.size()) + " violation(s)";
            return v.size() == 1;
        });
        run("curveconfig", "interior_hit_on_minus_two_chain", "e cannot meet an interior -2 sphere", [](std::string& d) {
            auto t = contract_all(minus_two_chain_with_hit(3, 2));
            d = to_string(t.status);
            bool zero_minus_two = false;
            for (const auto& v : t.violations) zero_minus_two |= v.self_int == 0 && v.k_degree == -2;
            return t.status == TraceStatus::SwViolation && zero_minus_two;
        });
        run("curveconfig", "double_intersections_rejected", "components meeting twice", [](std::string& d) {
            auto r = validate_zariski(doubly_meeting_chain());
            d = r.transverse ? "transverse" : "not transverse";
            return !r.transverse && !r.ok();
        });
        run("curveconfig", "iterated_blowdown_equality", "-n, -1, -2, .., -2 chain gives K.T = K.S - 2(n-1)",
            [](std::string& d) {
                auto r = iterated_blowdown_trace(4, 2, {-4, -1, -2, -2}, 10);
                d = "K.T = " + std::to_string(r.k_t) + ", bound " + std::to_string(r.bound);
                return r.k_t == r.bound && r.k_t == 10 - 6;
            });
        run("curveconfig", "crossing_components_not_nested", "curves sharing a component are nested",
            [](std::string& d) {
                auto n = nesting_relation({1, 2}, {2, 3});
                d = to_string(n);
                return n == Nesting::Crossing && !is_nested({1, 2}, {2, 3});
            });
    }

    if (want("badcurves")) {
        run("badcurves", "single_hit_forbidden", "pattern: one C_j met once", [](std::string& d) {
            std::vector<long long> v{1};
            auto r = forbidden_patterns(TString::base(), v);
            d = "pairing " + to_string(r.pairing);
            return r.single_hit && r.inequality_violated;
        });
        run("badcurves", "endpoint_pair_forbidden", "pattern: C_1 and C_l met once", [](std::string& d) {
            std::vector<long long> v{1, 0, 1};
            auto r = forbidden_patterns(TString::from_entries({3, 5, 2}), v);
            d = "pairing " + to_string(r.pairing);
            return r.endpoint_pair && r.inequality_violated;
        });
        run("badcurves", "unbroken_needs_two", "unbroken spheres meet the chain at least twice", [](std::string& d) {
            std::vector<long long> v{1};
            auto r = unbroken_checks(TString::base(), v);
            d = r.total_ok ? "sum ok" : "sum < 2";
            return !r.total_ok;
        });
        run("badcurves", "no_bad_curves_on_special_strings", "[l+3,2,..,2] and reversal carry no bad curves",
            [](std::string& d) {
                auto rep = case_oracle(5);
                std::size_t specials = 0;
                for (const auto& level : enumerate_tstrings(5))
                    for (const auto& t : level) specials += is_special_string(t);
                d = std::to_string(specials) + " special strings, " + std::to_string(rep.special_survivors.size()) +
                    " survivors";
                return specials == 8 && rep.special_survivors.empty();
            });
    }

    if (want("bounds")) {
        run("bounds", "max_index_for_ksq_5", "p <= 12 when K^2 = 5", [](std::string& d) {
            d = std::to_string(max_p_B_p1(5));
            return max_p_B_p1(5) == 12 && special_bound(5) == 11;
        });
        run("bounds", "horikawa_h3", "K^2 = 4n-6, b+ = 2n-1, l = n-1 = (K^2+2)/4", [](std::string& d) {
            auto r = surface_examples(SurfaceKind::Horikawa, 3);
            d = "K^2=" + r.ksq.str() + " b+=" + r.b_plus.str() + " l=" + std::to_string(r.ell);
            return r.ksq == 6 && r.b_plus == 5 && r.ell == 2 && 4 * r.ell == r.ksq + 2 && r.chain_length_checked;
        });
        run("bounds", "quintic_surface", "K^2 = d(d-4)^2, p_g = d(d^2-6d+11)/6 - 1 at d = 5", [](std::string& d) {
            auto r = surface_examples(SurfaceKind::DegreeDInP3, 5);
            d = "K^2=" + r.ksq.str() + " p_g=" + r.p_g.str();
            return r.ksq == 5 && r.p_g == 4;
        });
    }
    return out;
}

} // namespace wahl
