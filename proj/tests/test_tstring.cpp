#include "wahl/tstring.hpp"

#include <catch_amalgamated.hpp>

#include <functional>
#include <set>

using namespace wahl;

namespace {

std::vector<int> v(std::initializer_list<int> xs) { return xs; }

std::string seq_text(const std::vector<int>& b) {
    std::string s;
    for (int x : b) s += std::to_string(x) + " ";
    return s;
}

// Test-side characterisation, independent of the L/R reduction: a sequence is
// a T-string iff its continued fraction is p^2 / (pq - 1) with 0 < q < p coprime.
std::optional<WahlParams> params_by_value(const std::vector<int>& b) {
    Rational r = eval_cf(b);
    Integer n = numerator(r), m = denominator(r);
    Integer p = isqrt(n);
    if (p * p != n || p < 2) return std::nullopt;
    if ((m + 1) % p != 0) return std::nullopt;
    Integer q = (m + 1) / p;
    if (q <= 0 || q >= p || gcd(p, q) != 1) return std::nullopt;
    return WahlParams{p, q};
}

// Every sequence of the given length with entries in [2, max_entry].
void for_each_sequence(int len, int max_entry, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> b(static_cast<std::size_t>(len), 2);
    while (true) {
        f(b);
        int i = len - 1;
        while (i >= 0 && b[i] == max_entry) b[i--] = 2;
        if (i < 0) return;
        ++b[i];
    }
}

} // namespace

TEST_CASE("hj_expand worked values", "[tstring]") {
    CHECK(hj_expand(9, 2) == v({5, 2}));
    CHECK(hj_expand(4, 3) == v({2, 2, 2}));
    CHECK(hj_expand(4, 1) == v({4}));
    CHECK(hj_expand(25, 9) == v({3, 5, 2}));
}

TEST_CASE("hj_expand rejects bad input", "[tstring]") {
    CHECK_THROWS_AS(hj_expand(4, 2), DomainError);
    CHECK_THROWS_AS(hj_expand(4, 0), DomainError);
    CHECK_THROWS_AS(hj_expand(4, 4), DomainError);
    CHECK_THROWS_AS(hj_expand(4, 5), DomainError);
}

TEST_CASE("eval_cf worked values", "[tstring]") {
    CHECK(eval_cf(v({4})) == Rational(4));
    CHECK(eval_cf(v({5, 2})) == make_rational(9, 2));
    CHECK(eval_cf(v({2, 5})) == make_rational(9, 5));
    CHECK_THROWS_AS(eval_cf(v({1, 3})), DomainError);
    CHECK(to_string(eval_cf(v({4}))) == "4/1");
}

TEST_CASE("expansion round trip for every coprime pair below 120", "[tstring][property]") {
    for (int n = 2; n < 120; ++n)
        for (int m = 1; m < n; ++m) {
            if (gcd(n, m) != 1) continue;
            auto b = hj_expand(n, m);
            REQUIRE(std::all_of(b.begin(), b.end(), [](int x) { return x >= 2; }));
            REQUIRE(eval_cf(b) == make_rational(n, m));
            REQUIRE(hj_expand(n, m) == b);
        }
}

TEST_CASE("wahl_tstring worked values", "[tstring]") {
    CHECK(wahl_tstring(make_params(2, 1)).entries() == v({4}));
    CHECK(wahl_tstring(make_params(3, 1)).entries() == v({5, 2}));
    CHECK(wahl_tstring(make_params(5, 2)).entries() == v({3, 5, 2}));
    CHECK_THROWS_AS(make_params(4, 2), DomainError);
    CHECK_THROWS_AS(make_params(3, 3), DomainError);
    CHECK_THROWS_AS(make_params(3, 0), DomainError);
}

TEST_CASE("L and R", "[tstring]") {
    auto base = TString::base();
    CHECK(apply_L(base).entries() == v({2, 5}));
    CHECK(apply_R(base).entries() == v({5, 2}));
    CHECK(apply_R(apply_L(base)).entries() == v({3, 5, 2}));
    CHECK(apply_R(apply_L(base)) == wahl_tstring(make_params(5, 2)));
}

TEST_CASE("enumeration shape", "[tstring]") {
    auto one = enumerate_tstrings(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::vector<TString>{TString::base()});
    auto two = enumerate_tstrings(2);
    REQUIRE(two.size() == 2);
    REQUIRE(two[1].size() == 2);
    CHECK(two[1][0].entries() == v({2, 5}));
    CHECK(two[1][1].entries() == v({5, 2}));
    CHECK_THROWS_AS(enumerate_tstrings(17), ResourceLimit);
    CHECK_NOTHROW(enumerate_tstrings(3, 3));
    CHECK_THROWS_AS(enumerate_tstrings(0), DomainError);
}

TEST_CASE("enumeration up to length 12 is collision free with 2^(l-1) strings per length", "[tstring][property]") {
    auto levels = enumerate_tstrings(12);
    std::set<std::vector<int>> all;
    std::size_t total = 0;
    for (std::size_t l = 1; l <= levels.size(); ++l) {
        REQUIRE(levels[l - 1].size() == (std::size_t{1} << (l - 1)));
        for (const auto& t : levels[l - 1]) {
            REQUIRE(t.length() == l);
            REQUIRE(all.insert(t.entries()).second);
            REQUIRE(checksum_ok(t));
            REQUIRE(is_tstring(t));
            ++total;
        }
    }
    CHECK(total == 4095);
}

TEST_CASE("recognition words", "[tstring]") {
    auto r = recognize(v({3, 5, 2}));
    CHECK(r.accepted);
    CHECK(r.word == "RL");
    auto base = recognize(v({4}));
    CHECK(base.accepted);
    CHECK(base.word.empty());
    auto bad = recognize(v({3, 3}));
    CHECK_FALSE(bad.accepted);
    CHECK(bad.reason.find("checksum") != std::string::npos);
    CHECK_FALSE(is_tstring(v({})));
    CHECK_FALSE(is_tstring(v({1, 6})));
    CHECK_FALSE(is_tstring(v({2, 6, 2})));
    CHECK_THROWS_AS(TString::from_entries(v({3, 3})), DomainError);
}

TEST_CASE("the word rebuilds the string", "[tstring][property]") {
    for (const auto& level : enumerate_tstrings(9))
        for (const auto& t : level) {
            auto r = recognize(t);
            REQUIRE(r.accepted);
            TString u = TString::base();
            for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) u = *it == 'L' ? apply_L(u) : apply_R(u);
            REQUIRE(u == t);
        }
}

TEST_CASE("checksum passes but recognition rejects", "[tstring]") {
    // found by the search below; kept as a fixed witness
    CHECK(checksum_ok(v({3, 4})));
    CHECK_FALSE(is_tstring(v({3, 4})));

    std::size_t witnesses = 0;
    for (int len = 1; len <= 4; ++len)
        for_each_sequence(len, len + 4, [&](const std::vector<int>& b) {
            if (checksum_ok(b) && !is_tstring(b)) ++witnesses;
        });
    CHECK(witnesses > 0);
}

TEST_CASE("recognition agrees with the continued-fraction characterisation", "[tstring][property]") {
    // Every entry of a T-string of length l is at most l + 3.
    for (int len = 1; len <= 6; ++len)
        for_each_sequence(len, len + 3, [&](const std::vector<int>& b) {
            auto by_value = params_by_value(b);
            bool recognised = is_tstring(b);
            INFO(seq_text(b));
            REQUIRE(recognised == by_value.has_value());
            if (recognised) REQUIRE(tstring_to_params(b) == *by_value);
        });
}

TEST_CASE("tstring_to_params worked values", "[tstring]") {
    CHECK(tstring_to_params(TString::base()) == WahlParams{2, 1});
    CHECK(tstring_to_params(v({5, 2})) == WahlParams{3, 1});
    CHECK(tstring_to_params(v({2, 5, 3})) == WahlParams{5, 3});
    CHECK(eval_cf(v({2, 5, 3})) == make_rational(25, 14));
    CHECK_THROWS_AS(tstring_to_params(v({3, 3})), DomainError);
}

TEST_CASE("parameters: roundtrip, index bound, reversal duality", "[tstring][property]") {
    for (const auto& level : enumerate_tstrings(12))
        for (const auto& t : level) {
            auto w = tstring_to_params(t);
            REQUIRE(wahl_tstring(w) == t);
            REQUIRE(w.p <= (Integer(1) << static_cast<unsigned>(t.length())));
            auto r = reversed(t);
            REQUIRE(is_tstring(r));
            auto wr = tstring_to_params(r);
            REQUIRE(wr.p == w.p);
            REQUIRE(wr.q == w.p - w.q);
            Integer p2 = w.p * w.p;
            REQUIRE(((w.p * w.q - 1) * (w.p * (w.p - w.q) - 1)) % p2 == 1);
        }
}

TEST_CASE("parameter maps of L and R", "[tstring][property]") {
    for (const auto& level : enumerate_tstrings(10))
        for (const auto& t : level) {
            auto w = tstring_to_params(t);
            CHECK(tstring_to_params(apply_R(t)) == WahlParams{w.p + w.q, w.q});
            CHECK(tstring_to_params(apply_L(t)) == WahlParams{2 * w.p - w.q, w.p});
        }
}
