// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "wahl/wahl.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace wahl;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    Outcome out;
    auto start = Clock::now();
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_time = limit_seconds <= 0 || secs < limit_seconds;
    bool ok = out.passed && in_time;
    if (!ok) ++failures;
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs * 1000.0 << " ms";
    if (limit_seconds > 0) time << " (limit " << limit_seconds * 1000.0 << " ms)";
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << title << " [" << time.str() << "]";
    if (!out.detail.empty()) std::cout << " " << out.detail;
    if (out.passed && !in_time) std::cout << " too slow";
    std::cout << '\n';
}

const Curve* by_label(const CurveConfig& c, const std::string& label) {
    for (const auto& [id, cur] : c.curves())
        if (cur.label == label) return &cur;
    return nullptr;
}

// Labels in drawing order with their expected K-degree and multiplicity; the
// curves must form exactly that path.
bool picture_matches(const CurveConfig& c, const std::vector<std::tuple<std::string, Degree, Degree>>& expected,
                     std::string& why) {
    if (c.size() != expected.size()) {
        why = "wrong number of curves";
        return false;
    }
    std::vector<VertexId> ids;
    for (const auto& [label, k, m] : expected) {
        const Curve* cur = by_label(c, label);
        if (!cur) {
            why = "missing " + label;
            return false;
        }
        if (cur->k_degree != k || cur->mult != m) {
            why = label + " has K=" + std::to_string(cur->k_degree) + " mult=" + std::to_string(cur->mult);
            return false;
        }
        ids.push_back(cur->id);
    }
    if (c.edges().size() + 1 != ids.size()) {
        why = "extra intersections";
        return false;
    }
    for (std::size_t i = 0; i + 1 < ids.size(); ++i)
        if (c.intersection(ids[i], ids[i + 1]) != 1) {
            why = "path broken at " + std::get<0>(expected[i]);
            return false;
        }
    return true;
}

} // namespace

int main() {
    std::cout << "acceptance\n";

    criterion(1, "base discrepancy of [4] is -1/2", 0.001, [] {
        auto a = discrepancies(TString::base());
        bool ok = a.size() == 1 && a.front() == make_rational(-1, 2);
        return Outcome{ok, ok ? "" : "got " + (a.empty() ? std::string("nothing") : to_string(a.front()))};
    });

    auto levels = enumerate_tstrings(12);
    std::size_t total = 0;
    for (const auto& level : levels) total += level.size();

    criterion(2, "Kawamata suite over all T-strings up to length 12", 10.0, [&] {
        std::size_t bad = 0, count = 0;
        for (const auto& level : levels)
            for (const auto& t : level) {
                ++count;
                auto a = discrepancies(t);
                bool ok = a.front() + a.back() == Rational(-1);
                for (const auto& x : a) ok = ok && x > -1 && x < 0;
                if (!ok) ++bad;
            }
        return Outcome{bad == 0 && count == 4095, std::to_string(count) + " strings, " + std::to_string(bad) + " failures"};
    });

    criterion(3, "checksum sum(b_j - 2) = l + 1", 0, [&] {
        std::size_t bad = 0;
        for (const auto& level : levels)
            for (const auto& t : level) {
                long long s = 0;
                for (int b : t.entries()) s += b - 2;
                if (s != static_cast<long long>(t.length()) + 1) ++bad;
            }
        return Outcome{bad == 0 && total == 4095, std::to_string(total) + " strings, " + std::to_string(bad) + " failures"};
    });

    criterion(4, "|det| = p^2 with (p,q) recovered and re-expanded", 0, [&] {
        std::size_t bad = 0;
        for (const auto& level : levels)
            for (const auto& t : level) {
                auto w = tstring_to_params(t);
                Integer det = intersection_matrix(t).determinant();
                if (det < 0) det = -det;
                if (det != w.p * w.p || hj_expand(w.p * w.p, w.p * w.q - 1) != t.entries()) ++bad;
            }
        return Outcome{bad == 0, std::to_string(total) + " strings, " + std::to_string(bad) + " failures"};
    });

    criterion(5, "blow-up pictures and blow-down of the crossing picture", 0, [] {
        std::string why;
        bool ok = picture_matches(one_point_blowup(), {{"E1", -1, 1}, {"E2", 0, 1}}, why) &&
                  picture_matches(two_point_blowup(SecondPoint::OnFirstOnly), {{"F1", -1, 1}, {"F2", 0, 1}, {"F3", 0, 1}},
                                  why) &&
                  picture_matches(two_point_blowup(SecondPoint::OnSecondOnly), {{"F2", -1, 1}, {"F3", 1, 1}, {"F1", -1, 1}},
                                  why) &&
                  picture_matches(two_point_blowup(SecondPoint::AtCrossing), {{"F2", 0, 1}, {"F1", -1, 2}, {"F3", 1, 1}},
                                  why);
        if (ok) {
            auto crossing = two_point_blowup(SecondPoint::AtCrossing);
            const Curve* f1 = by_label(crossing, "F1");
            ok = same_intersection_data(blow_down(crossing, f1->id), one_point_blowup());
            if (!ok) why = "blow-down differs from the one-point picture";
        }
        return Outcome{ok, why};
    });

    criterion(6, "1000 random blow-up sequences of depth <= 6", 0, [] {
        std::mt19937_64 rng(20261016);
        std::uniform_int_distribution<int> depth(0, 6);
        std::size_t bad = 0;
        for (int k = 0; k < 1000; ++k) {
            auto c = random_exceptional_curve(rng, depth(rng));
            Divisor e = tracked_divisor(c);
            // the strict transform of the starting curve is the one left at the end
            const VertexId final_curve = 0;
            bool ok = dot(c, e, e) == -1 && k_dot(c, e) == -1;
            for (VertexId id : c.ids()) ok = ok && dot(c, e, id) == (id == final_curve ? -1 : 0);
            ok = ok && contract_all(c).status == TraceStatus::ContractedToPoint;
            if (!ok) ++bad;
        }
        return Outcome{bad == 0, std::to_string(bad) + " failures"};
    });

    criterion(7, "iterated blow-down: equality on the -2 tail, inequality on all chains, n <= 8", 0, [] {
        std::size_t bad = 0, checked = 0;
        for (int n = 3; n <= 8; ++n) {
            std::vector<Degree> chain(static_cast<std::size_t>(n), -2);
            chain[0] = -n;
            chain[1] = -1;
            for (Degree ks = -1; ks <= 20; ++ks) {
                ++checked;
                if (iterated_blowdown_trace(n, 2, chain, ks).k_t != ks - 2 * (n - 1)) ++bad;
            }
        }
        for (const auto& seq : enumerate_exceptional_chains(8)) {
            const int n = static_cast<int>(seq.size());
            int i = static_cast<int>(std::find(seq.begin(), seq.end(), Degree{-1}) - seq.begin()) + 1;
            if (i < 2 || i > n - 1) continue;
            for (Degree ks = -1; ks <= 12; ++ks) {
                ++checked;
                if (iterated_blowdown_trace(n, i, seq, ks).k_t > ks - 2 * (n - 1)) ++bad;
            }
        }
        return Outcome{bad == 0, std::to_string(checked) + " traces, " + std::to_string(bad) + " failures"};
    });

    criterion(8, "forbidden patterns flagged for every T-string up to length 10", 0, [&] {
        std::size_t misses = 0, flagged = 0;
        for (std::size_t l = 1; l <= 10; ++l)
            for (const auto& t : levels[l - 1]) {
                for (std::size_t j = 0; j < l; ++j) {
                    std::vector<long long> v(l, 0);
                    v[j] = 1;
                    auto r = forbidden_patterns(t, v);
                    ++flagged;
                    if (!r.single_hit || !r.inequality_violated) ++misses;
                }
                if (l >= 2) {
                    std::vector<long long> v(l, 0);
                    v.front() = v.back() = 1;
                    auto r = forbidden_patterns(t, v);
                    ++flagged;
                    if (!r.endpoint_pair || !r.inequality_violated) ++misses;
                }
            }
        return Outcome{misses == 0, std::to_string(flagged) + " patterns, " + std::to_string(misses) + " misses"};
    });

    criterion(9, "case oracle up to length 6", 60.0, [] {
        auto rep = case_oracle(6);
        std::size_t bound_bad = 0, special = 0, single = 0, pairs = 0;
        for (const auto& r : rep.records) {
            if (r.verdict != Verdict::Survives) continue;
            const int l = static_cast<int>(r.t.length());
            if (r.classes.size() == 1) {
                ++single;
                if (2 * r.internal_count > l + 4) ++bound_bad;
            } else {
                ++pairs;
                if (2 * r.internal_count > l + 5) ++bound_bad;
            }
            // [2,..,2,l+3] and its reversal
            if (is_special_string(r.t)) ++special;
        }
        bool ok = bound_bad == 0 && special == 0 && rep.ok();
        return Outcome{ok, std::to_string(rep.examined) + " configurations, " + std::to_string(single) +
                               " single and " + std::to_string(pairs) + " pair survivors, " + std::to_string(bound_bad) +
                               " over bound, " + std::to_string(special) + " on special strings"};
    });

    criterion(10, "max index for K^2 = 5 and the Horikawa family up to n = 50", 0, [] {
        bool ok = max_p_B_p1(5) == 12;
        std::size_t bad = 0;
        for (long long n = 2; n <= 50; ++n) {
            auto r = surface_examples(SurfaceKind::Horikawa, n);
            long long ksq = r.ksq.convert_to<long long>();
            bool good = r.chain_length_checked && (ksq + 2) % 4 == 0 && r.ell == (ksq + 2) / 4 &&
                        r.ell <= 4 * ksq + 7 && r.ksq == 4 * n - 6;
            if (!good) ++bad;
        }
        return Outcome{ok && bad == 0, "max p = " + std::to_string(max_p_B_p1(5)) + ", " + std::to_string(bad) +
                                           " Horikawa failures"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
