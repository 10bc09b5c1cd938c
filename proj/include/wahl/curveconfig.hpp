#pragma once

// Configurations of rational curves and the blow-up / blow-down calculus on
// them. Only homological data is tracked: C^2, K.C, pairwise intersection
// numbers, and the multiplicity of each curve in one tracked divisor.

#include "wahl/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wahl {

using VertexId = int;
using Degree = long long;

struct Curve {
    VertexId id = 0;
    Degree self_int = 0;
    Degree k_degree = 0;
    Degree mult = 0;
    std::string label;

    friend bool operator==(const Curve&, const Curve&) = default;
};

class CurveConfig {
public:
    using EdgeKey = std::pair<VertexId, VertexId>;

    /// Adds a curve with explicit K-degree under the next free id.
    VertexId add_curve(Degree self_int, Degree k_degree, Degree mult = 0, std::string label = {}) {
        VertexId id = next_id_;
        insert_curve(Curve{id, self_int, k_degree, mult, std::move(label)});
        return id;
    }

    /// Embedded rational curve: K.C = -2 - C^2.
    VertexId add_rational_curve(Degree self_int, Degree mult = 0, std::string label = {}) {
        return add_curve(self_int, -2 - self_int, mult, std::move(label));
    }

    void insert_curve(Curve c) {
        if (c.id < 0) throw DomainError("vertex ids must be nonnegative");
        if (curves_.count(c.id)) throw DomainError("duplicate vertex id " + std::to_string(c.id));
        if (c.mult < 0) throw DomainError("multiplicities must be nonnegative");
        if (c.label.empty()) c.label = "v" + std::to_string(c.id);
        next_id_ = std::max(next_id_, c.id + 1);
        curves_.emplace(c.id, std::move(c));
    }

    /// Sets the intersection number of two distinct curves; zero removes the edge.
    void set_intersection(VertexId a, VertexId b, Degree m) {
        if (a == b) throw DomainError("self-edges are not allowed");
        require(a);
        require(b);
        if (m < 0) throw DomainError("edge multiplicities must be nonnegative");
        auto key = edge_key(a, b);
        if (m == 0)
            edges_.erase(key);
        else
            edges_[key] = m;
    }

    void connect(VertexId a, VertexId b, Degree m = 1) { set_intersection(a, b, m); }

    /// a.b, with a.a = a^2.
    Degree intersection(VertexId a, VertexId b) const {
        if (a == b) return curve(a).self_int;
        auto it = edges_.find(edge_key(a, b));
        return it == edges_.end() ? 0 : it->second;
    }

    const Curve& curve(VertexId id) const {
        auto it = curves_.find(id);
        if (it == curves_.end()) throw DomainError("unknown vertex id " + std::to_string(id));
        return it->second;
    }

    Curve& curve_mut(VertexId id) {
        auto it = curves_.find(id);
        if (it == curves_.end()) throw DomainError("unknown vertex id " + std::to_string(id));
        return it->second;
    }

    bool contains(VertexId id) const { return curves_.count(id) != 0; }
    std::size_t size() const { return curves_.size(); }
    bool empty() const { return curves_.empty(); }
    VertexId next_id() const { return next_id_; }

    const std::map<VertexId, Curve>& curves() const { return curves_; }
    const std::map<EdgeKey, Degree>& edges() const { return edges_; }

    std::vector<VertexId> ids() const {
        std::vector<VertexId> out;
        out.reserve(curves_.size());
        for (const auto& [id, c] : curves_) out.push_back(id);
        return out;
    }

    std::vector<VertexId> neighbors(VertexId id) const {
        std::vector<VertexId> out;
        for (const auto& [key, m] : edges_) {
            if (key.first == id) out.push_back(key.second);
            if (key.second == id) out.push_back(key.first);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void remove_curve(VertexId id) {
        require(id);
        curves_.erase(id);
        std::erase_if(edges_, [id](const auto& kv) { return kv.first.first == id || kv.first.second == id; });
    }

    /// Curves in `keep` and the edges among them; ids are preserved.
    CurveConfig induced(const std::set<VertexId>& keep) const {
        CurveConfig out;
        for (VertexId id : keep) out.insert_curve(curve(id));
        for (const auto& [key, m] : edges_)
            if (keep.count(key.first) && keep.count(key.second)) out.edges_[key] = m;
        out.next_id_ = std::max(out.next_id_, next_id_);
        return out;
    }

    /// Structural equality: curves and edges; the id counter is ignored.
    friend bool operator==(const CurveConfig& a, const CurveConfig& b) {
        return a.curves_ == b.curves_ && a.edges_ == b.edges_;
    }

    static EdgeKey edge_key(VertexId a, VertexId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

private:
    void require(VertexId id) const {
        if (!contains(id)) throw DomainError("unknown vertex id " + std::to_string(id));
    }

    std::map<VertexId, Curve> curves_;
    std::map<EdgeKey, Degree> edges_;
    VertexId next_id_ = 0;
};

inline bool is_minus_one_curve(const Curve& c) { return c.self_int == -1 && c.k_degree == -1; }

// --- blow-up / blow-down ---------------------------------------------------

struct GenericOn {
    VertexId v;
};
struct AtIntersection {
    VertexId v;
    VertexId w;
};
struct FreePoint {};

using PointSpec = std::variant<GenericOn, AtIntersection, FreePoint>;

/// Blows up a point and takes the total transform of the tracked divisor. The
/// exceptional curve gets id `c.next_id()`.
inline CurveConfig blow_up(const CurveConfig& c, const PointSpec& point, std::string label = {}) {
    CurveConfig out = c;
    VertexId e = out.next_id();
    if (label.empty()) label = "e" + std::to_string(e);
    if (const auto* g = std::get_if<GenericOn>(&point)) {
        Curve& v = out.curve_mut(g->v);
        --v.self_int;
        ++v.k_degree;
        Degree m = v.mult;
        out.add_curve(-1, -1, m, std::move(label));
        out.set_intersection(g->v, e, 1);
    } else if (const auto* x = std::get_if<AtIntersection>(&point)) {
        Degree existing = c.contains(x->v) && c.contains(x->w) && x->v != x->w ? c.intersection(x->v, x->w) : 0;
        if (existing < 1)
            throw DomainError("no intersection between " + std::to_string(x->v) + " and " + std::to_string(x->w));
        Curve& v = out.curve_mut(x->v);
        Curve& w = out.curve_mut(x->w);
        --v.self_int;
        ++v.k_degree;
        --w.self_int;
        ++w.k_degree;
        Degree m = v.mult + w.mult;
        out.set_intersection(x->v, x->w, existing - 1);
        out.add_curve(-1, -1, m, std::move(label));
        out.set_intersection(x->v, e, 1);
        out.set_intersection(x->w, e, 1);
    } else {
        out.add_curve(-1, -1, 0, std::move(label));
    }
    return out;
}

/// Contracts a (-1,-1) curve e: C.D += (C.e)(D.e), C^2 += (C.e)^2, K.C -= C.e.
inline CurveConfig blow_down(const CurveConfig& c, VertexId v) {
    const Curve& target = c.curve(v);
    if (!is_minus_one_curve(target))
        throw DomainError("blow_down needs a (-1,-1) curve, vertex " + std::to_string(v) + " has (" +
                          std::to_string(target.self_int) + "," + std::to_string(target.k_degree) + ")");
    std::vector<std::pair<VertexId, Degree>> hits;
    for (VertexId n : c.neighbors(v)) hits.emplace_back(n, c.intersection(v, n));
    CurveConfig out = c;
    out.remove_curve(v);
    for (const auto& [id, m] : hits) {
        Curve& cur = out.curve_mut(id);
        cur.self_int += m * m;
        cur.k_degree -= m;
    }
    for (std::size_t i = 0; i < hits.size(); ++i)
        for (std::size_t j = i + 1; j < hits.size(); ++j) {
            auto [a, ma] = hits[i];
            auto [b, mb] = hits[j];
            out.set_intersection(a, b, out.intersection(a, b) + ma * mb);
        }
    return out;
}

// --- SW obstruction rule ---------------------------------------------------

struct SwViolation {
    VertexId id = 0;
    std::string label;
    Degree self_int = 0;
    Degree k_degree = 0;
    std::string rule;

    friend bool operator==(const SwViolation&, const SwViolation&) = default;
};

/// With b+ > 1, a rational curve with K.A <= -1 must be a (-1,-1) curve.
inline std::vector<SwViolation> sw_check(const CurveConfig& c) {
    std::vector<SwViolation> out;
    for (const auto& [id, cur] : c.curves()) {
        if (cur.k_degree <= -2)
            out.push_back({id, cur.label, cur.self_int, cur.k_degree, "K.A <= -2"});
        else if (cur.k_degree == -1 && cur.self_int != -1)
            out.push_back({id, cur.label, cur.self_int, cur.k_degree, "K.A = -1 but A^2 != -1"});
    }
    return out;
}

// --- iterated contraction --------------------------------------------------

enum class TraceStatus { ContractedToPoint, Stuck, SwViolation };

inline const char* to_string(TraceStatus s) {
    switch (s) {
    case TraceStatus::ContractedToPoint: return "CONTRACTED_TO_POINT";
    case TraceStatus::Stuck: return "STUCK";
    case TraceStatus::SwViolation: return "SW_VIOLATION";
    }
    return "?";
}

struct ContractOptions {
    std::set<VertexId> keep;        // never contracted
    bool stop_on_violation = true;
    bool prefer_highest_id = false; // tie-break; default is lowest id
};

struct ContractionStep {
    VertexId vertex = 0;
    std::string label;
    CurveConfig before;
    CurveConfig after;
    std::vector<SwViolation> violations;
};

struct BlowDownTrace {
    CurveConfig initial;
    std::vector<ContractionStep> steps;
    TraceStatus status = TraceStatus::Stuck;
    bool fully_contracted = false; // every non-kept curve was contracted
    std::vector<SwViolation> violations;
    CurveConfig final_config;

    std::vector<VertexId> order() const {
        std::vector<VertexId> out;
        for (const auto& s : steps) out.push_back(s.vertex);
        return out;
    }
};

/// Repeatedly blows down (-1,-1) curves, running sw_check before the first and
/// after every step.
inline BlowDownTrace contract_all(const CurveConfig& c, const ContractOptions& opts = {}) {
    BlowDownTrace trace;
    trace.initial = c;
    CurveConfig cur = c;
    trace.violations = sw_check(cur);
    bool violated = !trace.violations.empty();
    if (!(violated && opts.stop_on_violation)) {
        while (true) {
            std::optional<VertexId> pick;
            for (const auto& [id, curve] : cur.curves()) {
                if (opts.keep.count(id) || !is_minus_one_curve(curve)) continue;
                if (!pick || opts.prefer_highest_id) pick = id;
                if (!opts.prefer_highest_id) break;
            }
            if (!pick) break;
            ContractionStep step;
            step.vertex = *pick;
            step.label = cur.curve(*pick).label;
            step.before = cur;
            cur = blow_down(cur, *pick);
            step.after = cur;
            step.violations = sw_check(cur);
            if (!step.violations.empty()) {
                violated = true;
                for (const auto& v : step.violations)
                    if (std::find(trace.violations.begin(), trace.violations.end(), v) == trace.violations.end())
                        trace.violations.push_back(v);
            }
            trace.steps.push_back(std::move(step));
            if (violated && opts.stop_on_violation) break;
        }
    }
    trace.fully_contracted = std::all_of(cur.curves().begin(), cur.curves().end(),
                                         [&](const auto& kv) { return opts.keep.count(kv.first) != 0; });
    if (violated)
        trace.status = TraceStatus::SwViolation;
    else
        trace.status = trace.fully_contracted ? TraceStatus::ContractedToPoint : TraceStatus::Stuck;
    trace.final_config = std::move(cur);
    return trace;
}

// --- exceptional curves of the first kind ----------------------------------

using Divisor = std::map<VertexId, Degree>;

/// The tracked divisor: curves with nonzero multiplicity.
inline Divisor tracked_divisor(const CurveConfig& c) {
    Divisor d;
    for (const auto& [id, cur] : c.curves())
        if (cur.mult != 0) d[id] = cur.mult;
    return d;
}

inline std::set<VertexId> support(const Divisor& d) {
    std::set<VertexId> s;
    for (const auto& [id, m] : d)
        if (m != 0) s.insert(id);
    return s;
}

/// E.A for a divisor E and a curve A.
inline Degree dot(const CurveConfig& c, const Divisor& e, VertexId a) {
    Degree total = 0;
    for (const auto& [id, m] : e) total += m * c.intersection(id, a);
    return total;
}

inline Degree dot(const CurveConfig& c, const Divisor& e, const Divisor& f) {
    Degree total = 0;
    for (const auto& [id, m] : f) total += m * dot(c, e, id);
    return total;
}

inline Degree k_dot(const CurveConfig& c, const Divisor& e) {
    Degree total = 0;
    for (const auto& [id, m] : e) total += m * c.curve(id).k_degree;
    return total;
}

/// Multiplicities of the exceptional curve supported on `components`, rebuilt
/// from the contraction: the last contracted curve has multiplicity 1, and each
/// earlier one gets sum m(B) (B.A) over curves B still present when A is
/// contracted. Empty if the components do not contract to a point.
inline std::optional<Divisor> reconstruct_multiplicities(const CurveConfig& c, const std::set<VertexId>& components,
                                                         const ContractOptions& opts = {}) {
    ContractOptions sub = opts;
    sub.keep.clear();
    sub.stop_on_violation = false;
    auto trace = contract_all(c.induced(components), sub);
    if (!trace.fully_contracted || trace.steps.empty()) return std::nullopt;
    Divisor m;
    for (std::size_t s = trace.steps.size(); s-- > 0;) {
        const auto& step = trace.steps[s];
        if (s + 1 == trace.steps.size()) {
            m[step.vertex] = 1;
            continue;
        }
        Degree total = 0;
        for (const auto& [id, mult] : m) total += mult * step.before.intersection(id, step.vertex);
        m[step.vertex] = total;
    }
    return m;
}

struct ZariskiReport {
    bool contractible = false;
    bool negative_self_intersections = false; // every component has C^2 < 0
    bool transverse = false;                  // all edge multiplicities 1
    bool tree = false;                        // connected tree
    bool later_neighbor_unique = false;       // literal: at most one later-contracted neighbor
    bool contracted_meets_at_most_two = false; // at each stage the contracted curve meets <= 2 others
    bool mult_rule_contraction_order = false; // m_i = sum_{j<i} m_j A_j.A_i, contraction order, final intersections
    bool mult_rule_creation_order = false;    // same recursion in creation order, intersections at creation
    bool orthogonality = false;               // E.A_i = 0 for i < n, E.A_n = -1
    bool minus_one_components = false;        // some (-1,-1) curve, each with <= 2 neighbors
    Degree e_squared = 0;
    Degree k_dot_e = 0;
    std::vector<VertexId> contraction_order;
    std::map<VertexId, Degree> e_dot_component;
    std::vector<std::string> failures;

    /// Everything except the two order-dependent readings (later-neighbor
    /// uniqueness, multiplicity recursion), which fail on genuine exceptional curves.
    bool ok() const {
        return contractible && negative_self_intersections && transverse && tree && contracted_meets_at_most_two &&
               orthogonality && minus_one_components && e_squared == -1 && k_dot_e == -1;
    }
};

inline bool is_connected_tree(const CurveConfig& c, const std::set<VertexId>& nodes) {
    if (nodes.empty()) return false;
    std::size_t edge_count = 0;
    for (const auto& [key, m] : c.edges())
        if (nodes.count(key.first) && nodes.count(key.second)) ++edge_count;
    if (edge_count != nodes.size() - 1) return false;
    std::set<VertexId> seen{*nodes.begin()};
    std::vector<VertexId> stack{*nodes.begin()};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId n : c.neighbors(v))
            if (nodes.count(n) && seen.insert(n).second) stack.push_back(n);
    }
    return seen.size() == nodes.size();
}

/// Checks the structural properties of an exceptional curve of the first kind
/// for `divisor` (defaults to the tracked multiplicities).
inline ZariskiReport validate_zariski(const CurveConfig& c, std::optional<Divisor> divisor = std::nullopt) {
    ZariskiReport r;
    Divisor e = divisor ? *divisor : tracked_divisor(c);
    auto comps = support(e);
    auto fail = [&r](std::string what) { r.failures.push_back(std::move(what)); };
    if (comps.empty()) {
        fail("empty divisor");
        return r;
    }
    for (VertexId id : comps)
        if (!c.contains(id)) throw DomainError("divisor references unknown vertex " + std::to_string(id));

    r.negative_self_intersections =
        std::all_of(comps.begin(), comps.end(), [&](VertexId id) { return c.curve(id).self_int < 0; });
    if (!r.negative_self_intersections) fail("component with nonnegative self-intersection");

    r.transverse = true;
    for (const auto& [key, m] : c.edges())
        if (comps.count(key.first) && comps.count(key.second) && m != 1) r.transverse = false;
    if (!r.transverse) fail("components meet with multiplicity > 1");

    r.tree = is_connected_tree(c, comps);
    if (!r.tree) fail("dual graph is not a connected tree");

    r.minus_one_components = false;
    bool degree_ok = true;
    for (VertexId id : comps) {
        if (!is_minus_one_curve(c.curve(id))) continue;
        r.minus_one_components = true;
        std::size_t deg = 0;
        for (VertexId n : c.neighbors(id)) deg += comps.count(n);
        if (deg > 2) degree_ok = false;
    }
    r.minus_one_components = r.minus_one_components && degree_ok;
    if (!r.minus_one_components) fail("no (-1,-1) component, or one meets more than 2 components");

    r.e_squared = dot(c, e, e);
    r.k_dot_e = k_dot(c, e);
    if (r.e_squared != -1) fail("E^2 = " + std::to_string(r.e_squared) + ", expected -1");
    if (r.k_dot_e != -1) fail("K.E = " + std::to_string(r.k_dot_e) + ", expected -1");
    for (VertexId id : comps) r.e_dot_component[id] = dot(c, e, id);

    auto trace = contract_all(c.induced(comps), ContractOptions{{}, false, false});
    r.contractible = trace.fully_contracted;
    if (!r.contractible) {
        fail("components do not contract to a point");
        return r;
    }
    r.contraction_order = trace.order();
    const auto& order = r.contraction_order;
    const std::size_t n = order.size();

    r.later_neighbor_unique = true;
    for (std::size_t i = 0; i < n; ++i) {
        int later = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (c.intersection(order[i], order[j]) != 0) ++later;
        if (later > 1) r.later_neighbor_unique = false;
    }

    r.contracted_meets_at_most_two = true;
    for (const auto& step : trace.steps)
        if (step.before.neighbors(step.vertex).size() > 2) r.contracted_meets_at_most_two = false;
    if (!r.contracted_meets_at_most_two) fail("a contracted component meets more than two remaining components");

    r.orthogonality = true;
    Degree sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Degree v = r.e_dot_component[order[i]];
        sum += v;
        if (v != (i + 1 == n ? -1 : 0)) r.orthogonality = false;
    }
    if (sum != -1) r.orthogonality = false;
    if (!r.orthogonality) fail("E.A_i != 0 before the last component or E.A_n != -1");

    r.mult_rule_contraction_order = true;
    for (std::size_t i = 0; i < n; ++i) {
        Degree rhs = 0;
        for (std::size_t j = 0; j < i; ++j) rhs += e.at(order[j]) * c.intersection(order[j], order[i]);
        if (rhs != e.at(order[i])) r.mult_rule_contraction_order = false;
    }
    r.mult_rule_creation_order = true;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        Degree rhs = 0;
        for (std::size_t t = s + 1; t < n; ++t)
            rhs += e.at(order[t]) * trace.steps[s].before.intersection(order[t], order[s]);
        if (rhs != e.at(order[s])) r.mult_rule_creation_order = false;
    }
    if (n > 0 && e.at(order[n - 1]) != 1) r.mult_rule_creation_order = false;
    return r;
}

enum class Nesting { Nested, Disjoint, Crossing };

inline const char* to_string(Nesting n) {
    switch (n) {
    case Nesting::Nested: return "NESTED";
    case Nesting::Disjoint: return "DISJOINT";
    case Nesting::Crossing: return "CROSSING";
    }
    return "?";
}

/// Crossing (shared components, neither contains the other) cannot happen for
/// exceptional curves when b+ > 1.
inline Nesting nesting_relation(const std::set<VertexId>& a, const std::set<VertexId>& b) {
    bool a_in_b = std::includes(b.begin(), b.end(), a.begin(), a.end());
    bool b_in_a = std::includes(a.begin(), a.end(), b.begin(), b.end());
    if (a_in_b || b_in_a) return Nesting::Nested;
    std::vector<VertexId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty() ? Nesting::Disjoint : Nesting::Crossing;
}

inline bool is_nested(const std::set<VertexId>& a, const std::set<VertexId>& b) {
    return nesting_relation(a, b) == Nesting::Nested;
}

// --- iterated blow-down of a curve through a chain --------------------------

struct IteratedStage {
    VertexId contracted = 0;
    Degree s_meets_contracted = 0; // S.F at the moment F is contracted
    Degree k_s_after = 0;
    std::map<VertexId, Degree> s_meets; // S with remaining chain curves, after the step
};

struct IteratedBlowdown {
    std::vector<VertexId> chain_ids; // F_1..F_n
    VertexId s_id = 0;
    std::vector<IteratedStage> stages;
    Degree k_s = 0;
    Degree k_t = 0;
    Degree bound = 0; // K.S - 2(n-1)
    bool bound_holds = false;
    // Always true for valid chains: every contracted curve meets the image of
    // S, S meets at most two remaining chain curves, and K drops by S.F.
    bool bookkeeping_ok = false;
    // Holds when the contraction never reaches an end of the chain early
    // (e.g. the -2 tail case); informational.
    bool meets_exactly_two_in_middle = false;
    bool pair_sum_grows_by_one = false;
};

/// Chain F_1..F_n with self-intersections `chain_self_ints` (embedded rational
/// curves), a single (-1) curve at 1-based position i, and a rational curve S
/// with K.S = k_s meeting F_i once. Contracts the chain keeping S.
inline IteratedBlowdown iterated_blowdown_trace(int n, int i, const std::vector<Degree>& chain_self_ints, Degree k_s) {
    if (n < 2 || static_cast<int>(chain_self_ints.size()) != n)
        throw DomainError("iterated blow-down needs n >= 2 chain self-intersections");
    if (i < 2 || i > n - 1) throw DomainError("the (-1) curve must sit at an interior position 2..n-1");
    for (int j = 1; j <= n; ++j) {
        bool minus_one = chain_self_ints[j - 1] == -1;
        if (minus_one != (j == i)) throw DomainError("chain must have exactly one (-1) curve, at position i");
    }
    IteratedBlowdown out;
    CurveConfig c;
    for (int j = 1; j <= n; ++j) out.chain_ids.push_back(c.add_rational_curve(chain_self_ints[j - 1], 1, "F" + std::to_string(j)));
    for (int j = 1; j < n; ++j) c.connect(out.chain_ids[j - 1], out.chain_ids[j]);
    auto alone = contract_all(c, ContractOptions{{}, true, false});
    if (alone.status != TraceStatus::ContractedToPoint)
        throw DomainError("chain is not an exceptional curve of the first kind");

    out.s_id = c.add_curve(-2 - k_s, k_s, 0, "S");
    c.connect(out.s_id, out.chain_ids[i - 1]);
    out.k_s = k_s;
    auto trace = contract_all(c, ContractOptions{{out.s_id}, false, false});
    if (!trace.fully_contracted) throw std::logic_error("chain failed to contract in the presence of S");

    out.bookkeeping_ok = true;
    out.meets_exactly_two_in_middle = true;
    out.pair_sum_grows_by_one = true;
    Degree k_prev = k_s;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        IteratedStage st;
        st.contracted = step.vertex;
        st.s_meets_contracted = step.before.intersection(out.s_id, step.vertex);
        st.k_s_after = step.after.curve(out.s_id).k_degree;
        Degree sum = 0;
        for (VertexId f : out.chain_ids)
            if (step.after.contains(f))
                if (Degree m = step.after.intersection(out.s_id, f)) {
                    st.s_meets[f] = m;
                    sum += m;
                }
        if (st.s_meets_contracted < 1 || st.k_s_after != k_prev - st.s_meets_contracted || st.s_meets.size() > 2)
            out.bookkeeping_ok = false;
        const std::size_t stage = k + 1;
        if (stage + 1 < static_cast<std::size_t>(n)) {
            if (st.s_meets.size() != 2) out.meets_exactly_two_in_middle = false;
            if (sum != static_cast<Degree>(stage) + 1) out.pair_sum_grows_by_one = false;
        }
        k_prev = st.k_s_after;
        out.stages.push_back(std::move(st));
    }
    out.k_t = trace.final_config.curve(out.s_id).k_degree;
    out.bound = k_s - 2 * (n - 1);
    out.bound_holds = out.k_t <= out.bound;
    return out;
}

/// Every chain of at most `max_n` curves with exactly one (-1) curve that is an
/// exceptional curve of the first kind, as self-intersection sequences in both
/// orientations. Built from blow-ups at points of the current (-1) curve, the
/// only way to keep a single (-1) component.
inline std::vector<std::vector<Degree>> enumerate_exceptional_chains(int max_n) {
    if (max_n < 1) throw DomainError("max_n must be positive");
    if (max_n > 12) throw ResourceLimit("exceptional chain enumeration capped at 12 curves");
    struct State {
        CurveConfig config;
        std::vector<VertexId> order;
        std::size_t minus_one_pos;
    };
    std::set<std::vector<Degree>> seen;
    std::vector<State> frontier;
    {
        CurveConfig c;
        VertexId e = c.add_curve(-1, -1, 1);
        frontier.push_back({c, {e}, 0});
    }
    auto record = [&](const State& s) {
        std::vector<Degree> seq;
        for (VertexId id : s.order) seq.push_back(s.config.curve(id).self_int);
        bool fresh = seen.insert(seq).second;
        std::reverse(seq.begin(), seq.end());
        seen.insert(seq);
        return fresh;
    };
    record(frontier.front());
    for (int len = 2; len <= max_n; ++len) {
        std::vector<State> next;
        for (const auto& s : frontier) {
            VertexId e = s.order[s.minus_one_pos];
            auto push = [&](State st) {
                if (record(st)) next.push_back(std::move(st));
            };
            if (s.minus_one_pos > 0) {
                State st{blow_up(s.config, AtIntersection{e, s.order[s.minus_one_pos - 1]}), s.order, s.minus_one_pos};
                st.order.insert(st.order.begin() + static_cast<std::ptrdiff_t>(s.minus_one_pos), st.config.next_id() - 1);
                push(std::move(st));
            }
            if (s.minus_one_pos + 1 < s.order.size()) {
                State st{blow_up(s.config, AtIntersection{e, s.order[s.minus_one_pos + 1]}), s.order, s.minus_one_pos + 1};
                st.order.insert(st.order.begin() + static_cast<std::ptrdiff_t>(s.minus_one_pos + 1), st.config.next_id() - 1);
                push(std::move(st));
            }
            if (s.minus_one_pos + 1 == s.order.size()) {
                State st{blow_up(s.config, GenericOn{e}), s.order, s.order.size()};
                st.order.push_back(st.config.next_id() - 1);
                push(std::move(st));
            }
            if (s.minus_one_pos == 0) {
                State st{blow_up(s.config, GenericOn{e}), s.order, 0};
                st.order.insert(st.order.begin(), st.config.next_id() - 1);
                push(std::move(st));
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// --- random exceptional curves ---------------------------------------------

/// A (-1,-1) curve of multiplicity 1 followed by `depth` blow-ups at uniformly
/// chosen points of the total transform (generic points of a component or
/// intersection points).
inline CurveConfig random_exceptional_curve(std::mt19937_64& rng, int depth) {
    CurveConfig c;
    c.add_curve(-1, -1, 1, "E");
    for (int k = 0; k < depth; ++k) {
        std::vector<PointSpec> choices;
        for (VertexId id : c.ids()) choices.push_back(GenericOn{id});
        for (const auto& [key, m] : c.edges()) choices.push_back(AtIntersection{key.first, key.second});
        std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
        c = blow_up(c, choices[pick(rng)]);
    }
    return c;
}

struct RandomCurveReport {
    std::size_t samples = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// `count` random exceptional curves of depth uniform in [0, max_depth], each
/// checked for E.A_i = 0 before the last component, E.A_last = -1,
/// E^2 = -1 and K.E = -1.
inline RandomCurveReport random_orthogonality_check(std::uint64_t seed, std::size_t count, int max_depth) {
    if (max_depth < 0) throw DomainError("depth must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> depth(0, max_depth);
    RandomCurveReport rep;
    for (std::size_t k = 0; k < count; ++k) {
        int d = depth(rng);
        auto c = random_exceptional_curve(rng, d);
        auto r = validate_zariski(c);
        ++rep.samples;
        if (!r.contractible || !r.orthogonality || r.e_squared != -1 || r.k_dot_e != -1) {
            std::string why = "sample " + std::to_string(k) + " (depth " + std::to_string(d) + ")";
            for (const auto& f : r.failures) why += "; " + f;
            rep.failures.push_back(std::move(why));
        }
    }
    return rep;
}

} // namespace wahl
