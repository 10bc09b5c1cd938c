#pragma once

// T-strings: the self-intersection chains [b_1..b_l] of minimal resolutions of
// Wahl singularities 1/p^2(pq-1, 1), their generation from [4] by the L and R
// operations, recognition, and the correspondence with (p, q).
//
// Parameter convention: (p, q) <-> hj_expand(p^2, pq - 1). Under it
//   R : (p, q) -> (p + q, q)
//   L : (p, q) -> (2p - q, p)
// and reversing a string sends (p, q) to (p, p - q).

#include "wahl/arith.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wahl {

/// Default cap on enumerated length; the number of strings doubles per step.
inline constexpr int kDefaultMaxLength = 16;

struct WahlParams {
    Integer p;
    Integer q;

    friend bool operator==(const WahlParams&, const WahlParams&) = default;
};

/// Validates gcd(p, q) = 1 and 0 < q < p.
inline WahlParams make_params(Integer p, Integer q) {
    if (q <= 0 || q >= p) throw DomainError("Wahl parameters need 0 < q < p, got p=" + p.str() + " q=" + q.str());
    if (gcd(p, q) != 1) throw DomainError("Wahl parameters need gcd(p, q) = 1, got p=" + p.str() + " q=" + q.str());
    return WahlParams{std::move(p), std::move(q)};
}

/// Hirzebruch-Jung (minus) continued fraction n/m = b1 - 1/(b2 - 1/(...)), all b >= 2.
inline std::vector<int> hj_expand(Integer n, Integer m) {
    if (m <= 0 || m >= n) throw DomainError("hj_expand needs 0 < m < n, got n=" + n.str() + " m=" + m.str());
    if (gcd(n, m) != 1) throw DomainError("hj_expand needs coprime inputs, got n=" + n.str() + " m=" + m.str());
    std::vector<int> out;
    while (m != 0) {
        Integer b = (n + m - 1) / m; // ceil(n/m)
        if (b > std::numeric_limits<int>::max()) throw DomainError("continued fraction entry exceeds int range");
        out.push_back(b.convert_to<int>());
        Integer next = b * m - n;
        n = std::move(m);
        m = std::move(next);
    }
    return out;
}

/// Exact value of b1 - 1/(b2 - ...). Entries must be >= 2.
inline Rational eval_cf(std::span<const int> b) {
    if (b.empty()) throw DomainError("eval_cf of empty sequence");
    for (int x : b)
        if (x < 2) throw DomainError("eval_cf needs entries >= 2");
    Integer num = b.back();
    Integer den = 1;
    for (auto it = b.rbegin() + 1; it != b.rend(); ++it) {
        Integer next = Integer(*it) * num - den;
        den = std::move(num);
        num = std::move(next);
    }
    return make_rational(num, den);
}

/// sum(b_j - 2) == length + 1; necessary for T-strings, not sufficient.
inline bool checksum_ok(std::span<const int> b) {
    long long total = 0;
    for (int x : b) total += x - 2;
    return total == static_cast<long long>(b.size()) + 1;
}

struct Recognition {
    bool accepted = false;
    // Reductions in the order they were peeled off: "RL" means t = R(L([4])).
    std::string word;
    std::string reason;
};

/// Reverse L/R reduction down to [4].
inline Recognition recognize(std::span<const int> seq) {
    Recognition out;
    if (seq.empty()) {
        out.reason = "empty sequence";
        return out;
    }
    if (std::any_of(seq.begin(), seq.end(), [](int x) { return x < 2; })) {
        out.reason = "entry below 2";
        return out;
    }
    if (!checksum_ok(seq)) {
        long long total = 0;
        for (int x : seq) total += x - 2;
        out.reason = "checksum sum(b-2)=" + std::to_string(total) + " != " + std::to_string(seq.size() + 1);
        return out;
    }
    std::vector<int> cur(seq.begin(), seq.end());
    while (cur.size() > 1) {
        bool starts2 = cur.front() == 2;
        bool ends2 = cur.back() == 2;
        if (starts2 && ends2) {
            out.reason = "string starts and ends with 2";
            return out;
        }
        if (starts2) {
            cur.erase(cur.begin());
            --cur.back();
            out.word.push_back('L');
        } else if (ends2) {
            cur.pop_back();
            --cur.front();
            out.word.push_back('R');
        } else {
            out.reason = "no reduction applies";
            return out;
        }
        if (cur.front() < 2 || cur.back() < 2) {
            out.reason = "reduction produced entry below 2";
            return out;
        }
    }
    if (cur.front() != 4) {
        out.reason = "reduced to [" + std::to_string(cur.front()) + "] instead of [4]";
        return out;
    }
    out.accepted = true;
    return out;
}

inline bool is_tstring(std::span<const int> seq) { return recognize(seq).accepted; }

class TString {
public:
    /// The base string [4] of (p, q) = (2, 1).
    static TString base() { return TString(std::vector<int>{4}); }

    /// Validates by recognition; throws DomainError otherwise.
    static TString from_entries(std::vector<int> b) {
        auto rec = recognize(b);
        if (!rec.accepted) throw DomainError("not a T-string: " + rec.reason);
        return TString(std::move(b));
    }

    const std::vector<int>& entries() const { return b_; }
    std::size_t length() const { return b_.size(); }
    int operator[](std::size_t i) const { return b_[i]; }
    auto begin() const { return b_.begin(); }
    auto end() const { return b_.end(); }
    operator std::span<const int>() const { return b_; }

    friend auto operator<=>(const TString&, const TString&) = default;
    friend bool operator==(const TString&, const TString&) = default;

    friend TString apply_L(const TString& t);
    friend TString apply_R(const TString& t);
    friend TString reversed(const TString& t);

private:
    explicit TString(std::vector<int> b) : b_(std::move(b)) {}

    std::vector<int> b_;
};

/// L[b1..bl] = [2, b1, .., b_{l-1}, b_l + 1]
inline TString apply_L(const TString& t) {
    std::vector<int> b;
    b.reserve(t.length() + 1);
    b.push_back(2);
    b.insert(b.end(), t.b_.begin(), t.b_.end());
    ++b.back();
    return TString(std::move(b));
}

/// R[b1..bl] = [b1 + 1, b2, .., b_l, 2]
inline TString apply_R(const TString& t) {
    std::vector<int> b = t.b_;
    ++b.front();
    b.push_back(2);
    return TString(std::move(b));
}

inline TString reversed(const TString& t) {
    return TString(std::vector<int>(t.b_.rbegin(), t.b_.rend()));
}

inline std::string to_string(const TString& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.length(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + "]";
}

/// Minimal resolution chain of 1/p^2(pq-1, 1).
inline TString wahl_tstring(const WahlParams& params) {
    const Integer& p = params.p;
    return TString::from_entries(hj_expand(p * p, p * params.q - 1));
}

/// All T-strings of length 1..max_len, grouped by length. Breadth-first, the
/// L-child of each parent precedes its R-child.
inline std::vector<std::vector<TString>> enumerate_tstrings(int max_len, int cap = kDefaultMaxLength) {
    if (max_len < 1) throw DomainError("enumerate_tstrings needs max_len >= 1");
    if (max_len > cap)
        throw ResourceLimit("max length " + std::to_string(max_len) + " exceeds cap " + std::to_string(cap));
    std::vector<std::vector<TString>> levels;
    levels.push_back({TString::base()});
    for (int len = 2; len <= max_len; ++len) {
        const auto& prev = levels.back();
        std::vector<TString> next;
        next.reserve(prev.size() * 2);
        for (const auto& t : prev) {
            next.push_back(apply_L(t));
            next.push_back(apply_R(t));
        }
        levels.push_back(std::move(next));
    }
    return levels;
}

/// Recovers (p, q) with wahl_tstring(p, q) == t.
inline WahlParams tstring_to_params(const TString& t) {
    auto rec = recognize(t);
    if (!rec.accepted) throw DomainError("not a T-string: " + rec.reason);
    Integer p = 2, q = 1;
    for (auto it = rec.word.rbegin(); it != rec.word.rend(); ++it) {
        if (*it == 'R') {
            p = p + q;
        } else {
            Integer np = 2 * p - q;
            q = std::move(p);
            p = std::move(np);
        }
    }
    // Independent route: t evaluates to p^2 / (pq - 1).
    Rational value = eval_cf(t);
    if (numerator(value) != p * p || denominator(value) != p * q - 1)
        throw std::logic_error("parameter maps disagree with continued fraction for " + to_string(t));
    return make_params(std::move(p), std::move(q));
}

inline WahlParams tstring_to_params(std::span<const int> seq) {
    return tstring_to_params(TString::from_entries(std::vector<int>(seq.begin(), seq.end())));
}

} // namespace wahl
