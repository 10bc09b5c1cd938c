#pragma once

// Length bounds for Wahl chains on surfaces of general type, the inequality
// chain they come from, and invariants of the standard example surfaces.

#include "wahl/arith.hpp"
#include "wahl/tstring.hpp"

#include <string>
#include <vector>

namespace wahl {

/// l <= 4 K^2 + 7 for any Wahl chain.
inline long long general_bound(long long ksq) {
    if (ksq < 1) throw DomainError("K^2 must be positive, got " + std::to_string(ksq));
    return 4 * ksq + 7;
}

/// l <= 2 K^2 + 1 for the chains of 1/n^2(n-1, 1).
inline long long special_bound(long long ksq) {
    if (ksq < 1) throw DomainError("K^2 must be positive, got " + std::to_string(ksq));
    return 2 * ksq + 1;
}

/// Largest p with a 1/p^2(p-1, 1) chain (l = p - 1) allowed by special_bound.
inline long long max_p_B_p1(long long ksq) { return special_bound(ksq) + 1; }

/// Upper bound on the number of bad curves: floor((l + 5) / 2).
inline long long max_bad_curves(long long ell) {
    if (ell < 0) throw DomainError("length must be nonnegative");
    return (ell + 5) / 2;
}

struct BoundReport {
    long long ksq = 0;
    long long ell = 0;
    long long p_bad = 0;
    long long k_min = 0;       // l - K^2, minimum number of disjoint (-1)-classes
    long long rana_budget = 0; // sum of E_i.C_j available: l + 1
    Rational p_max;            // (l + 5) / 2
    long long bound_general = 0;
    long long bound_special = 0;

    bool budget_ok = false;       // 2 max(0, k_min - p) + p <= l + 1
    bool length_vs_bad_ok = false; // l <= 2 K^2 + p + 1
    bool bad_count_ok = false;    // p <= floor((l + 5) / 2)
    bool general_ok = false;      // l <= 4 K^2 + 7

    bool feasible() const { return budget_ok && length_vs_bad_ok && bad_count_ok; }
};

inline BoundReport inequality_chain(long long ksq, long long ell, long long p_bad) {
    if (ksq < 0 || ell < 0 || p_bad < 0) throw DomainError("inequality_chain needs nonnegative inputs");
    BoundReport r;
    r.ksq = ksq;
    r.ell = ell;
    r.p_bad = p_bad;
    r.k_min = ell - ksq;
    r.rana_budget = ell + 1;
    r.p_max = make_rational(ell + 5, 2);
    r.bound_general = 4 * ksq + 7;
    r.bound_special = 2 * ksq + 1;
    long long good = r.k_min > p_bad ? r.k_min - p_bad : 0;
    r.budget_ok = ell == 0 || 2 * good + p_bad <= r.rana_budget;
    r.length_vs_bad_ok = ell == 0 || ell <= 2 * ksq + p_bad + 1;
    r.bad_count_ok = p_bad <= max_bad_curves(ell);
    r.general_ok = ell <= r.bound_general;
    return r;
}

enum class SurfaceKind { DegreeDInP3, Horikawa };

inline const char* to_string(SurfaceKind k) { return k == SurfaceKind::DegreeDInP3 ? "DEGREE_D_IN_P3" : "HORIKAWA"; }

struct SurfaceRecord {
    SurfaceKind kind = SurfaceKind::DegreeDInP3;
    long long parameter = 0;
    Integer ksq;
    Integer p_g;      // degree-d surfaces
    Integer b_plus;   // Horikawa surfaces
    long long ell = 0; // length of the chain carried by H(n); 0 if none
    bool chain_length_checked = false;
    bool within_general = false;
    bool within_special = false;
};

/// Smooth degree-d surface in P^3 (d >= 5): K^2 = d(d-4)^2, p_g = d(d^2-6d+11)/6 - 1.
/// Horikawa surface H(n) (n >= 2): K^2 = 4n - 6, b+ = 2n - 1, carrying a
/// chain of length n - 1, so 4 l = K^2 + 2.
inline SurfaceRecord surface_examples(SurfaceKind kind, long long value) {
    SurfaceRecord r;
    r.kind = kind;
    r.parameter = value;
    if (kind == SurfaceKind::DegreeDInP3) {
        if (value < 5) throw DomainError("degree must be at least 5, got " + std::to_string(value));
        Integer d = value;
        r.ksq = d * (d - 4) * (d - 4);
        Integer num = d * (d * d - 6 * d + 11);
        if (num % 6 != 0) throw std::logic_error("geometric genus formula not integral");
        r.p_g = num / 6 - 1;
        r.within_general = true; // no chain attached
        r.within_special = true;
        return r;
    }
    if (value < 2) throw DomainError("Horikawa index must be at least 2, got " + std::to_string(value));
    r.ksq = 4 * value - 6;
    r.b_plus = 2 * value - 1;
    r.ell = value - 1;
    // Index n chain 1/n^2(n(n-1) - 1, 1), of length n - 1.
    auto t = wahl_tstring(make_params(value, value - 1));
    r.chain_length_checked = static_cast<long long>(t.length()) == r.ell && 4 * r.ell == r.ksq + 2;
    long long ksq = r.ksq.convert_to<long long>();
    r.within_general = r.ell <= general_bound(ksq);
    r.within_special = r.ell <= special_bound(ksq);
    return r;
}

} // namespace wahl
