#pragma once

// Exceptional curves measured against the resolution chain C_1..C_l: forbidden
// incidence patterns, the checks every unbroken (-1)-sphere passes, the
// good / bad (A, B1, B2) classification, the per-type counting bounds, and a
// desk-scale oracle that builds every admissible bad configuration and runs
// it through the blow-down engine.

#include "wahl/arith.hpp"
#include "wahl/curveconfig.hpp"
#include "wahl/discrepancy.hpp"
#include "wahl/tstring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace wahl {

// --- incidence checks ------------------------------------------------------

struct PatternReport {
    bool single_hit = false;    // one C_j met once, all others zero
    bool endpoint_pair = false; // C_1 and C_l met once, middle zero (l >= 2)
    Rational pairing;           // sum a_j v_j
    bool inequality_violated = false; // pairing < -1 fails

    bool forbidden() const { return single_hit || endpoint_pair; }
};

/// Incidence patterns impossible for a curve with K.F = -1.
inline PatternReport forbidden_patterns(const TString& t, std::span<const long long> v) {
    const std::size_t l = t.length();
    if (v.size() != l) throw DomainError("incidence vector length differs from T-string length");
    PatternReport r;
    long long total = std::accumulate(v.begin(), v.end(), 0LL);
    long long ones = std::count(v.begin(), v.end(), 1LL);
    r.single_hit = total == 1 && ones == 1;
    r.endpoint_pair = l >= 2 && v.front() == 1 && v.back() == 1 && total == 2;
    auto pairing = canonical_pairing(t, v, -1);
    r.pairing = pairing.value;
    r.inequality_violated = !pairing.magic_ok;
    return r;
}

struct UnbrokenReport {
    bool total_ok = false;   // sum v_j >= 2
    bool entries_ok = false; // v_j <= b_j - 1, equality only when b_j = 2 and v_j = 1
    std::vector<std::string> failures;

    bool ok() const { return total_ok && entries_ok; }
};

inline UnbrokenReport unbroken_checks(const TString& t, std::span<const long long> v) {
    if (v.size() != t.length()) throw DomainError("incidence vector length differs from T-string length");
    UnbrokenReport r;
    long long total = std::accumulate(v.begin(), v.end(), 0LL);
    r.total_ok = total >= 2;
    if (!r.total_ok) r.failures.push_back("sum E.C_j = " + std::to_string(total) + " < 2");
    r.entries_ok = true;
    for (std::size_t j = 0; j < v.size(); ++j) {
        long long cap = t[j] - 1;
        bool ok = v[j] < cap || (v[j] == cap && t[j] == 2 && v[j] == 1);
        if (!ok) {
            r.entries_ok = false;
            r.failures.push_back("E.C_" + std::to_string(j + 1) + " = " + std::to_string(v[j]) + " against b = " +
                                 std::to_string(t[j]));
        }
    }
    return r;
}

/// n spheres of self-intersection -2 in a chain, plus a (-1,-1) curve meeting
/// the chain sphere at 1-based position `hit` once.
inline CurveConfig minus_two_chain_with_hit(int n, int hit) {
    if (n < 1 || hit < 1 || hit > n) throw DomainError("hit position must lie on the chain");
    CurveConfig c;
    for (int j = 1; j <= n; ++j) c.add_rational_curve(-2, 0, "C" + std::to_string(j));
    for (int j = 1; j < n; ++j) c.connect(j - 1, j);
    VertexId e = c.add_curve(-1, -1, 1, "e");
    c.connect(e, hit - 1);
    return c;
}

// --- classification --------------------------------------------------------

enum class BadType { Good, A, B1, B2 };

inline const char* to_string(BadType t) {
    switch (t) {
    case BadType::Good: return "GOOD";
    case BadType::A: return "A";
    case BadType::B1: return "B1";
    case BadType::B2: return "B2";
    }
    return "?";
}

/// Indices are 1-based chain positions. Unused fields stay 0:
/// A{x',x,y,y'}, B1{x',x,y'}, B2{x',y,y'}.
struct BadCurveClass {
    BadType type = BadType::Good;
    int x_prime = 0;
    int x = 0;
    int y = 0;
    int y_prime = 0;
    int internal_count = 0;

    friend auto operator<=>(const BadCurveClass&, const BadCurveClass&) = default;
    friend bool operator==(const BadCurveClass&, const BadCurveClass&) = default;
};

inline std::string to_string(const BadCurveClass& c) {
    auto s = std::string(to_string(c.type));
    switch (c.type) {
    case BadType::A:
        return s + "{x'=" + std::to_string(c.x_prime) + ",x=" + std::to_string(c.x) + ",y=" + std::to_string(c.y) +
               ",y'=" + std::to_string(c.y_prime) + "}";
    case BadType::B1:
        return s + "{x'=" + std::to_string(c.x_prime) + ",x=" + std::to_string(c.x) + ",y'=" + std::to_string(c.y_prime) + "}";
    case BadType::B2:
        return s + "{x'=" + std::to_string(c.x_prime) + ",y=" + std::to_string(c.y) + ",y'=" + std::to_string(c.y_prime) + "}";
    default: return s;
    }
}

struct ChainIncidence {
    TString t = TString::base();
    std::vector<long long> v;      // E.C_j
    std::set<int> internal;        // 1-based indices of internal spheres
    std::pair<int, int> e_hits{0, 0}; // chain spheres met by the (-1) component
};

class ClassificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// GOOD iff E.sum C_j >= 2; otherwise the bad type fixed by the internal
/// spheres and the two spheres met by the (-1) component.
inline BadCurveClass classify(const ChainIncidence& inc) {
    const int l = static_cast<int>(inc.t.length());
    if (static_cast<int>(inc.v.size()) != l) throw ClassificationError("incidence length mismatch");
    long long total = std::accumulate(inc.v.begin(), inc.v.end(), 0LL);
    if (total >= 2) return BadCurveClass{};
    if (total != 1) throw ClassificationError("E.sum C_j = " + std::to_string(total) + " < 1");
    if (inc.internal.empty()) throw ClassificationError("E.sum C_j = 1 without internal spheres");
    for (int j : inc.internal)
        if (j < 1 || j > l) throw ClassificationError("internal index out of range");
    auto [xp, yp] = std::minmax(inc.e_hits.first, inc.e_hits.second);
    if (xp < 1 || yp > l || xp == yp) throw ClassificationError("(-1) component must meet two distinct chain spheres");

    int x = 0;
    while (x < l && inc.internal.count(x + 1)) ++x;
    int y = l + 1;
    while (y > 1 && inc.internal.count(y - 1)) --y;
    const int n = static_cast<int>(inc.internal.size());
    if (x == l) throw ClassificationError("whole chain internal");

    BadCurveClass c;
    c.internal_count = n;
    if (x > 0 && y <= l && x + (l - y + 1) == n && x < y - 1) {
        if (!(xp <= x && yp >= y)) throw ClassificationError("type A needs the (-1) component on both internal arms");
        c.type = BadType::A;
        c.x_prime = xp;
        c.x = x;
        c.y = y;
        c.y_prime = yp;
        return c;
    }
    if (x > 0 && x == n) {
        if (!(xp <= x && x < yp)) throw ClassificationError("type B1 needs one internal and one external hit");
        c.type = BadType::B1;
        c.x_prime = xp;
        c.x = x;
        c.y_prime = yp;
        return c;
    }
    if (y <= l && l - y + 1 == n) {
        if (!(xp < y && y <= yp)) throw ClassificationError("type B2 needs one external and one internal hit");
        c.type = BadType::B2;
        c.x_prime = xp;
        c.y = y;
        c.y_prime = yp;
        return c;
    }
    throw ClassificationError("internal spheres are not end intervals");
}

// --- counting bounds -------------------------------------------------------

struct TypeBoundsReport {
    bool a_ok = true;     // maximal A: 2n <= l + 4
    bool b1_ok = true;    // maximal B1: 2n <= l + 4
    bool b2_ok = true;    // maximal B2: 2n <= l + 4
    bool joint_ok = true; // B1 and B2 together: 2(n1 + n2) <= l + 5
    bool total_ok = true; // bad-curve count <= floor((l + 5) / 2)
    long long total_bad = 0;
    long long total_cap = 0;
    std::vector<std::string> failures;

    bool ok() const { return a_ok && b1_ok && b2_ok && joint_ok && total_ok; }
};

/// `classes` holds the maximal curve of each bad type present (at most one per
/// type). The number of bad curves is at most n for a maximal A curve, and
/// n1 + n2 otherwise.
inline TypeBoundsReport type_bounds(int l, std::span<const BadCurveClass> classes) {
    if (l < 1) throw DomainError("length must be positive");
    std::map<BadType, int> n;
    for (const auto& c : classes) {
        if (c.type == BadType::Good) continue;
        if (c.internal_count < 1) throw DomainError("bad curves contain at least one internal sphere");
        if (!n.emplace(c.type, c.internal_count).second)
            throw DomainError(std::string("more than one maximal class of type ") + to_string(c.type));
    }
    TypeBoundsReport r;
    auto check_single = [&](BadType t, bool& flag) {
        auto it = n.find(t);
        if (it != n.end() && 2 * it->second > l + 4) {
            flag = false;
            r.failures.push_back(std::string(to_string(t)) + ": n = " + std::to_string(it->second) + " > (l+4)/2");
        }
    };
    check_single(BadType::A, r.a_ok);
    check_single(BadType::B1, r.b1_ok);
    check_single(BadType::B2, r.b2_ok);
    int n1 = n.count(BadType::B1) ? n[BadType::B1] : 0;
    int n2 = n.count(BadType::B2) ? n[BadType::B2] : 0;
    if (n1 > 0 && n2 > 0 && 2 * (n1 + n2) > l + 5) {
        r.joint_ok = false;
        r.failures.push_back("n1 + n2 = " + std::to_string(n1 + n2) + " > (l+5)/2");
    }
    r.total_bad = n.count(BadType::A) ? n[BadType::A] : n1 + n2;
    r.total_cap = (l + 5) / 2;
    if (r.total_bad > r.total_cap) {
        r.total_ok = false;
        r.failures.push_back("bad curves " + std::to_string(r.total_bad) + " > floor((l+5)/2)");
    }
    return r;
}

// --- case oracle -----------------------------------------------------------

inline constexpr int kOracleMaxLength = 8;

enum class Verdict { Survives, ForbiddenPattern, ZariskiViolation, SwViolation, NotContractible, NotBad, Incompatible };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Survives: return "SURVIVES";
    case Verdict::ForbiddenPattern: return "FORBIDDEN_PATTERN";
    case Verdict::ZariskiViolation: return "ZARISKI_VIOLATION";
    case Verdict::SwViolation: return "SW_VIOLATION";
    case Verdict::NotContractible: return "NOT_CONTRACTIBLE";
    case Verdict::NotBad: return "NOT_BAD";
    case Verdict::Incompatible: return "INCOMPATIBLE";
    }
    return "?";
}

/// Case labels of the type A / B1 / B2 analysis. Where a position qualifies
/// for several roles (x' = 1 = x) the chain end takes precedence.
inline std::string case_id(const BadCurveClass& c, int l) {
    enum Role { End, Boundary, Inner };
    auto left = c.x_prime == 1 ? End : (c.x_prime == c.x ? Boundary : Inner);
    auto right = c.y_prime == l ? End : (c.y_prime == c.y ? Boundary : Inner);
    switch (c.type) {
    case BadType::A: {
        if (left == Inner && right == Inner) return "A.1";
        if (left == Inner || right == Inner) return "A.2";
        if (left == Boundary && right == Boundary) return "A.3";
        if (left == End && right == End) return "A.5";
        return "A.4";
    }
    case BadType::B1: return c.x_prime == 1 ? "B1.1" : (c.x_prime == c.x ? "B1.3" : "B1.2");
    case BadType::B2: return c.y_prime == l ? "B2.1" : (c.y_prime == c.y ? "B2.3" : "B2.2");
    default: return "GOOD";
    }
}

/// Every bad-curve shape the index constraints allow on a chain of length l.
inline std::vector<BadCurveClass> admissible_bad_classes(int l) {
    std::vector<BadCurveClass> out;
    for (int x = 1; x <= l; ++x)
        for (int y = x + 2; y <= l; ++y)
            for (int xp = 1; xp <= x; ++xp)
                for (int yp = y; yp <= l; ++yp) out.push_back({BadType::A, xp, x, y, yp, x + (l - y + 1)});
    for (int x = 1; x < l; ++x)
        for (int xp = 1; xp <= x; ++xp)
            for (int yp = x + 1; yp <= l; ++yp) out.push_back({BadType::B1, xp, x, 0, yp, x});
    for (int y = 2; y <= l; ++y)
        for (int xp = 1; xp < y; ++xp)
            for (int yp = y; yp <= l; ++yp) out.push_back({BadType::B2, xp, 0, y, yp, l - y + 1});
    return out;
}

inline std::set<int> internal_spheres(const BadCurveClass& c, int l) {
    std::set<int> s;
    if (c.type == BadType::A || c.type == BadType::B1)
        for (int j = 1; j <= c.x; ++j) s.insert(j);
    if (c.type == BadType::A || c.type == BadType::B2)
        for (int j = c.y; j <= l; ++j) s.insert(j);
    return s;
}

/// Mirror image under reversing the chain; B1 and B2 swap.
inline BadCurveClass mirror(const BadCurveClass& c, int l) {
    auto r = [l](int j) { return j == 0 ? 0 : l + 1 - j; };
    BadCurveClass m = c;
    switch (c.type) {
    case BadType::A: m = {BadType::A, r(c.y_prime), r(c.y), r(c.x), r(c.x_prime), c.internal_count}; break;
    case BadType::B1: m = {BadType::B2, r(c.y_prime), 0, r(c.x), r(c.x_prime), c.internal_count}; break;
    case BadType::B2: m = {BadType::B1, r(c.y_prime), r(c.y), 0, r(c.x_prime), c.internal_count}; break;
    default: break;
    }
    return m;
}

/// The resolution chain as curves C1..Cl with ids 0..l-1.
inline CurveConfig chain_config(const TString& t) {
    CurveConfig c;
    for (std::size_t j = 0; j < t.length(); ++j) c.add_curve(-t[j], t[j] - 2, 0, "C" + std::to_string(j + 1));
    for (std::size_t j = 1; j < t.length(); ++j) c.connect(static_cast<VertexId>(j - 1), static_cast<VertexId>(j));
    return c;
}

/// Strings of the special family (p, 1) and (p, p-1): [l+3, 2, .., 2] and its reversal.
inline bool is_special_string(const TString& t) {
    const auto l = static_cast<int>(t.length());
    if (l < 2) return false;
    bool head = t[0] == l + 3 && std::all_of(t.begin() + 1, t.end(), [](int b) { return b == 2; });
    bool tail = t[l - 1] == l + 3 && std::all_of(t.begin(), t.end() - 1, [](int b) { return b == 2; });
    return head || tail;
}

struct OracleRecord {
    TString t = TString::base();
    std::vector<BadCurveClass> classes; // one entry, or a (B1, B2) pair
    std::string case_id;
    int internal_count = 0; // n, or n1 + n2 for pairs
    Verdict verdict = Verdict::Survives;
    std::string certificate;
    std::optional<long long> e_dot_chain; // E.sum C_j when multiplicities exist
    std::vector<long long> e_dot;         // E.C_j
    bool pairing_ok = true;               // the (-1) component satisfies sum a_j v_j < -1
    bool within_bound = true;             // survivors only
};

struct OracleReport {
    int max_len = 0;
    std::vector<OracleRecord> records;
    std::size_t examined = 0;
    std::size_t survivors = 0;
    std::size_t pair_survivors = 0;
    std::map<std::string, std::size_t> case_total;
    std::map<std::string, std::size_t> case_contradicted;
    std::vector<std::string> bound_failures;
    std::vector<std::string> special_survivors;
    std::vector<std::string> symmetry_mismatches;
    std::vector<std::string> classification_failures;

    bool cases_refuted(const std::string& id) const {
        auto t = case_total.find(id);
        std::size_t total = t == case_total.end() ? 0 : t->second;
        auto c = case_contradicted.find(id);
        return total == (c == case_contradicted.end() ? 0 : c->second);
    }

    bool ok() const {
        return bound_failures.empty() && special_survivors.empty() && symmetry_mismatches.empty() &&
               classification_failures.empty() && cases_refuted("A.1") && cases_refuted("A.5");
    }
};

namespace detail {

struct Attempt {
    Verdict verdict = Verdict::Survives;
    std::string certificate;
};

// Structure of the still-uncontracted components of each exceptional curve:
// transverse, a tree, (-1) components with <= 2 neighbours.
inline std::optional<std::string> zariski_defect(const CurveConfig& c, const std::vector<std::set<VertexId>>& groups) {
    for (const auto& g : groups) {
        std::set<VertexId> alive;
        for (VertexId id : g)
            if (c.contains(id)) alive.insert(id);
        if (alive.empty()) continue;
        for (const auto& [key, m] : c.edges())
            if (alive.count(key.first) && alive.count(key.second) && m > 1)
                return c.curve(key.first).label + " meets " + c.curve(key.second).label + " with multiplicity " +
                       std::to_string(m);
        if (!is_connected_tree(c, alive)) return std::string("components no longer form a tree");
        for (VertexId id : alive) {
            if (!is_minus_one_curve(c.curve(id))) continue;
            int deg = 0;
            for (VertexId n : c.neighbors(id)) deg += alive.count(n) ? 1 : 0;
            if (deg > 2) return c.curve(id).label + " is a (-1)-curve meeting " + std::to_string(deg) + " components";
        }
    }
    return std::nullopt;
}

inline std::string describe(const SwViolation& v) {
    return v.label + " has (C^2, K.C) = (" + std::to_string(v.self_int) + ", " + std::to_string(v.k_degree) + ")";
}

/// Contracts the union of `groups`, keeping every other curve, and reports
/// the first structural or SW failure.
inline Attempt contract_groups(const CurveConfig& c, const std::vector<std::set<VertexId>>& groups) {
    std::set<VertexId> comps;
    for (const auto& g : groups) comps.insert(g.begin(), g.end());
    ContractOptions opts;
    for (VertexId id : c.ids())
        if (!comps.count(id)) opts.keep.insert(id);
    auto trace = contract_all(c, opts);
    if (auto d = zariski_defect(c, groups)) return {Verdict::ZariskiViolation, "initially: " + *d};
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        std::string at = "after contracting " + step.label + " (step " + std::to_string(k + 1) + "): ";
        if (auto d = zariski_defect(step.after, groups)) return {Verdict::ZariskiViolation, at + *d};
        if (!step.violations.empty()) return {Verdict::SwViolation, at + describe(step.violations.front())};
    }
    if (trace.status == TraceStatus::SwViolation)
        return {Verdict::SwViolation, "initially: " + describe(trace.violations.front())};
    if (!trace.fully_contracted) {
        std::string left;
        for (VertexId id : comps)
            if (trace.final_config.contains(id)) left += (left.empty() ? "" : ",") + trace.final_config.curve(id).label;
        return {Verdict::NotContractible, "stuck with " + left + " uncontracted"};
    }
    return {};
}

struct BuiltCurve {
    CurveConfig config;
    std::set<VertexId> components;
    VertexId e = 0;
};

inline VertexId attach_minus_one(CurveConfig& c, const BadCurveClass& cls, const std::string& label) {
    VertexId e = c.add_curve(-1, -1, 1, label);
    c.connect(e, cls.x_prime - 1);
    c.connect(e, cls.y_prime - 1);
    return e;
}

inline std::set<VertexId> components_of(const BadCurveClass& cls, int l, VertexId e) {
    std::set<VertexId> comps{e};
    for (int j : internal_spheres(cls, l)) comps.insert(j - 1);
    return comps;
}

} // namespace detail

/// Runs one admissible bad configuration through the engine.
inline OracleRecord examine_bad_configuration(const TString& t, const BadCurveClass& cls) {
    const int l = static_cast<int>(t.length());
    OracleRecord rec;
    rec.t = t;
    rec.classes = {cls};
    rec.case_id = case_id(cls, l);
    rec.internal_count = cls.internal_count;

    CurveConfig c = chain_config(t);
    VertexId e = detail::attach_minus_one(c, cls, "e");
    auto comps = detail::components_of(cls, l, e);
    for (VertexId id : comps) c.curve_mut(id).mult = 1;

    std::vector<long long> e_incidence(static_cast<std::size_t>(l), 0);
    e_incidence[cls.x_prime - 1] = 1;
    e_incidence[cls.y_prime - 1] = 1;
    auto pattern = forbidden_patterns(t, e_incidence);
    rec.pairing_ok = !pattern.inequality_violated;
    if (pattern.forbidden()) {
        rec.verdict = Verdict::ForbiddenPattern;
        rec.certificate = pattern.endpoint_pair ? "e meets exactly C1 and Cl once" : "e meets a single chain sphere once";
        return rec;
    }
    auto attempt = detail::contract_groups(c, {comps});
    if (attempt.verdict != Verdict::Survives) {
        rec.verdict = attempt.verdict;
        rec.certificate = attempt.certificate;
        return rec;
    }
    auto mult = reconstruct_multiplicities(c, comps);
    if (!mult) throw std::logic_error("contractible configuration without multiplicities");
    long long total = 0;
    for (int j = 0; j < l; ++j) {
        rec.e_dot.push_back(dot(c, *mult, j));
        total += rec.e_dot.back();
    }
    rec.e_dot_chain = total;
    if (total != 1) {
        rec.verdict = Verdict::NotBad;
        rec.certificate = "E.sum C_j = " + std::to_string(total);
        return rec;
    }
    rec.verdict = Verdict::Survives;
    rec.within_bound = 2 * cls.internal_count <= l + 4;
    rec.certificate = "contracts to a point; E.sum C_j = 1";
    return rec;
}

/// A maximal B1 curve and a maximal B2 curve on the same chain, together.
inline OracleRecord examine_bad_pair(const TString& t, const BadCurveClass& b1, const BadCurveClass& b2) {
    const int l = static_cast<int>(t.length());
    OracleRecord rec;
    rec.t = t;
    rec.classes = {b1, b2};
    rec.case_id = case_id(b1, l) + "+" + case_id(b2, l);
    rec.internal_count = b1.internal_count + b2.internal_count;

    CurveConfig c = chain_config(t);
    VertexId e1 = detail::attach_minus_one(c, b1, "e1");
    VertexId e2 = detail::attach_minus_one(c, b2, "e2");
    auto comps1 = detail::components_of(b1, l, e1);
    auto comps2 = detail::components_of(b2, l, e2);
    std::vector<VertexId> common;
    std::set_intersection(comps1.begin(), comps1.end(), comps2.begin(), comps2.end(), std::back_inserter(common));
    if (!common.empty()) {
        rec.verdict = Verdict::Incompatible;
        rec.certificate = "B1 and B2 curves share a component";
        return rec;
    }
    auto m1 = reconstruct_multiplicities(c, comps1);
    auto m2 = reconstruct_multiplicities(c, comps2);
    if (!m1 || !m2) {
        rec.verdict = Verdict::NotContractible;
        rec.certificate = "one of the curves does not contract on its own";
        return rec;
    }
    if (long long d = dot(c, *m1, *m2); d != 0) {
        rec.verdict = Verdict::Incompatible;
        rec.certificate = "E1.E2 = " + std::to_string(d) + " for distinct (-1)-classes";
        return rec;
    }
    auto attempt = detail::contract_groups(c, {comps1, comps2});
    if (attempt.verdict != Verdict::Survives) {
        rec.verdict = attempt.verdict;
        rec.certificate = attempt.certificate;
        return rec;
    }
    rec.verdict = Verdict::Survives;
    rec.within_bound = 2 * rec.internal_count <= l + 5;
    rec.certificate = "both contract; E1.E2 = 0";
    return rec;
}

/// Every T-string of length <= max_len against every admissible bad shape,
/// plus every compatible pair of surviving B1 and B2 curves. Records are
/// ordered by string (enumeration order), then shape.
inline OracleReport case_oracle(int max_len, int cap = kOracleMaxLength) {
    if (max_len < 1) throw DomainError("oracle length must be positive");
    if (max_len > cap) throw ResourceLimit("oracle length " + std::to_string(max_len) + " exceeds cap " + std::to_string(cap));
    OracleReport rep;
    rep.max_len = max_len;
    using Key = std::pair<std::vector<int>, BadCurveClass>;
    std::set<Key> surviving;
    auto levels = enumerate_tstrings(max_len, cap);
    for (const auto& level : levels) {
        for (const auto& t : level) {
            const int l = static_cast<int>(t.length());
            std::vector<BadCurveClass> b1s, b2s;
            for (const auto& cls : admissible_bad_classes(l)) {
                auto rec = examine_bad_configuration(t, cls);
                ++rep.examined;
                ++rep.case_total[rec.case_id];
                if (rec.verdict != Verdict::Survives && rec.verdict != Verdict::NotBad) ++rep.case_contradicted[rec.case_id];
                if (rec.e_dot_chain) {
                    ChainIncidence inc{t, rec.e_dot, internal_spheres(cls, l), {cls.x_prime, cls.y_prime}};
                    try {
                        auto got = classify(inc);
                        BadType want = *rec.e_dot_chain >= 2 ? BadType::Good : cls.type;
                        if (got.type != want || (want != BadType::Good && got != cls))
                            rep.classification_failures.push_back(to_string(t) + " " + to_string(cls) + " classified as " +
                                                                  to_string(got));
                    } catch (const ClassificationError& err) {
                        rep.classification_failures.push_back(to_string(t) + " " + to_string(cls) + ": " + err.what());
                    }
                }
                if (rec.verdict == Verdict::Survives) {
                    ++rep.survivors;
                    surviving.insert({t.entries(), cls});
                    if (!rec.within_bound) rep.bound_failures.push_back(to_string(t) + " " + to_string(cls));
                    if (is_special_string(t)) rep.special_survivors.push_back(to_string(t) + " " + to_string(cls));
                    if (cls.type == BadType::B1) b1s.push_back(cls);
                    if (cls.type == BadType::B2) b2s.push_back(cls);
                }
                rep.records.push_back(std::move(rec));
            }
            for (const auto& b1 : b1s)
                for (const auto& b2 : b2s) {
                    if (b1.x >= b2.y) continue;
                    auto rec = examine_bad_pair(t, b1, b2);
                    ++rep.examined;
                    if (rec.verdict == Verdict::Survives) {
                        ++rep.pair_survivors;
                        if (!rec.within_bound) rep.bound_failures.push_back(to_string(t) + " " + rec.case_id + " pair");
                        if (is_special_string(t)) rep.special_survivors.push_back(to_string(t) + " pair " + rec.case_id);
                    }
                    rep.records.push_back(std::move(rec));
                }
        }
    }
    for (const auto& [entries, cls] : surviving) {
        const int l = static_cast<int>(entries.size());
        std::vector<int> rev(entries.rbegin(), entries.rend());
        if (!surviving.count({rev, mirror(cls, l)}))
            rep.symmetry_mismatches.push_back(to_string(TString::from_entries(entries)) + " " + to_string(cls));
    }
    return rep;
}

} // namespace wahl
