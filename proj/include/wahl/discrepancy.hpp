#pragma once

// Discrepancies of a Wahl singularity: K = sum a_j C_j on the resolution chain,
// determined by K.C_j = b_j - 2 and the tridiagonal intersection form.

#include "wahl/arith.hpp"
#include "wahl/tstring.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wahl {

/// C_i.C_i = -b_i, C_i.C_{i+1} = 1, zero elsewhere.
class IntersectionMatrix {
public:
    explicit IntersectionMatrix(std::span<const int> b) : diag_(b.begin(), b.end()) {
        for (int x : diag_)
            if (x < 1) throw DomainError("intersection matrix needs positive b_j");
    }

    std::size_t size() const { return diag_.size(); }

    int operator()(std::size_t i, std::size_t j) const {
        if (i == j) return -diag_[i];
        if (i + 1 == j || j + 1 == i) return 1;
        return 0;
    }

    /// Leading principal minors D_0 = 1, D_1, .., D_l via the continuant recurrence
    /// D_k = -b_k D_{k-1} - D_{k-2}.
    std::vector<Integer> leading_minors() const {
        std::vector<Integer> d(size() + 1);
        d[0] = 1;
        for (std::size_t k = 1; k <= size(); ++k) {
            d[k] = -Integer(diag_[k - 1]) * d[k - 1];
            if (k >= 2) d[k] -= d[k - 2];
        }
        return d;
    }

    Integer determinant() const { return leading_minors().back(); }

    /// sign(D_k) = (-1)^k for every k.
    bool negative_definite() const {
        auto d = leading_minors();
        for (std::size_t k = 1; k < d.size(); ++k) {
            int want = (k % 2 == 0) ? 1 : -1;
            if (d[k].sign() != want) return false;
        }
        return true;
    }

private:
    std::vector<int> diag_;
};

inline IntersectionMatrix intersection_matrix(const TString& t) { return IntersectionMatrix(t.entries()); }

/// Solves M a = r for the tridiagonal form of `b`. Forward elimination stays in
/// the integers: row k becomes D_k a_k + D_{k-1} a_{k+1} = T_k with
/// T_k = D_{k-1} r_k - T_{k-1}; rationals only appear in back substitution.
inline std::vector<Rational> solve_chain_system(std::span<const int> b, std::span<const Integer> rhs) {
    IntersectionMatrix m(b);
    const std::size_t n = m.size();
    if (rhs.size() != n) throw DomainError("right-hand side length mismatch");
    auto d = m.leading_minors();
    std::vector<Integer> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = d[k] * rhs[k];
        if (k > 0) t[k] -= t[k - 1];
    }
    std::vector<Rational> a(n);
    for (std::size_t k = n; k-- > 0;) {
        // row k (0-based): D_{k+1} a_k + D_k a_{k+1} = T_k
        Rational acc(t[k]);
        if (k + 1 < n) acc -= Rational(d[k]) * a[k + 1];
        if (d[k + 1] == 0) throw DomainError("singular chain system");
        a[k] = acc / Rational(d[k + 1]);
    }
    return a;
}

/// K-degrees of the chain spheres: K.C_j = b_j - 2.
inline std::vector<Integer> canonical_degrees(std::span<const int> b) {
    std::vector<Integer> r;
    r.reserve(b.size());
    for (int x : b) r.emplace_back(x - 2);
    return r;
}

/// a_1..a_l, each in (-1, 0), with a_1 + a_l = -1.
inline std::vector<Rational> discrepancies(const TString& t) {
    auto rhs = canonical_degrees(t.entries());
    return solve_chain_system(t.entries(), rhs);
}

struct PairingResult {
    Rational value;
    bool magic_ok = false; // value < K.F, required of every holomorphic curve F
};

/// sum_j a_j (F.C_j) against K.F.
inline PairingResult canonical_pairing(const TString& t, std::span<const long long> incidence, long long k_dot_f) {
    if (incidence.size() != t.length()) throw DomainError("incidence vector length differs from T-string length");
    for (auto v : incidence)
        if (v < 0) throw DomainError("incidence vector must be nonnegative");
    auto a = discrepancies(t);
    Rational value = 0;
    for (std::size_t j = 0; j < a.size(); ++j) value += a[j] * Rational(incidence[j]);
    bool ok = value < Rational(k_dot_f);
    return PairingResult{std::move(value), ok};
}

struct DiscrepancyCheck {
    bool in_open_interval = true; // every a_j in (-1, 0)
    bool kawamata = true;         // a_1 + a_l = -1
    bool denominators_divide = true;
    bool solves_system = true;    // M a == K-degree vector
};

/// Verifies the invariants of a discrepancy vector against its string and index p.
inline DiscrepancyCheck check_discrepancies(const TString& t, std::span<const Rational> a, const Integer& p) {
    DiscrepancyCheck out;
    const Rational zero = 0, minus_one = -1;
    for (const auto& x : a) {
        if (!(x > minus_one && x < zero)) out.in_open_interval = false;
        if ((p * p) % denominator(x) != 0) out.denominators_divide = false;
    }
    out.kawamata = a.size() == t.length() && !a.empty() && a.front() + a.back() == minus_one;
    auto m = intersection_matrix(t);
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (int c = m(i, j)) row += Rational(c) * a[j];
        if (row != Rational(t[i] - 2)) out.solves_system = false;
    }
    return out;
}

} // namespace wahl
