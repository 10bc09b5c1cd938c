#include "wahl/badcurves.hpp"
#include "wahl/bounds.hpp"

#include <catch_amalgamated.hpp>

using namespace wahl;

namespace {

// Some admissible bad-curve count makes the chain consistent.
bool any_feasible(long long ksq, long long ell) {
    for (long long p = 0; p <= max_bad_curves(ell); ++p)
        if (inequality_chain(ksq, ell, p).feasible()) return true;
    return false;
}

} // namespace

TEST_CASE("general bound", "[bounds]") {
    CHECK(general_bound(5) == 27);
    CHECK(general_bound(1) == 11);
    CHECK(general_bound(6) == 31);
    CHECK_THROWS_AS(general_bound(0), DomainError);
    CHECK_THROWS_AS(general_bound(-3), DomainError);
}

TEST_CASE("special bound and largest index", "[bounds]") {
    CHECK(special_bound(5) == 11);
    CHECK(max_p_B_p1(5) == 12);
    CHECK(special_bound(1) == 3);
    CHECK(max_p_B_p1(1) == 4);
    CHECK_THROWS_AS(special_bound(0), DomainError);
    CHECK_THROWS_AS(max_p_B_p1(0), DomainError);
}

TEST_CASE("bounds increase strictly with K^2", "[bounds][property]") {
    for (long long k = 1; k < 500; ++k) {
        REQUIRE(general_bound(k + 1) > general_bound(k));
        REQUIRE(special_bound(k + 1) > special_bound(k));
        REQUIRE(special_bound(k) <= general_bound(k));
    }
}

TEST_CASE("inequality chain worked values", "[bounds]") {
    auto tight = inequality_chain(5, 27, 16);
    CHECK(tight.k_min == 22);
    CHECK(tight.rana_budget == 28);
    CHECK(tight.p_max == make_rational(16, 1));
    CHECK(tight.bound_general == 27);
    CHECK(tight.bound_special == 11);
    CHECK(tight.budget_ok);
    CHECK(tight.length_vs_bad_ok);
    CHECK(tight.bad_count_ok);
    CHECK(tight.feasible());
    CHECK(tight.general_ok);

    for (long long p = 0; p <= 16; ++p) {
        INFO("p = " << p);
        CHECK_FALSE(inequality_chain(5, 28, p).feasible());
    }

    CHECK(inequality_chain(5, 0, 0).feasible());
    CHECK_FALSE(inequality_chain(5, 10, 8).bad_count_ok);
    CHECK_THROWS_AS(inequality_chain(-1, 3, 0), DomainError);
}

TEST_CASE("feasibility is exactly the general bound", "[bounds][property]") {
    for (long long ksq = 1; ksq <= 30; ++ksq)
        for (long long ell = 0; ell <= 4 * ksq + 20; ++ell) {
            INFO("K^2 = " << ksq << " l = " << ell);
            REQUIRE(any_feasible(ksq, ell) == (ell <= general_bound(ksq)));
        }
}

TEST_CASE("every T-string up to length 12 fits once K^2 >= (l-7)/4", "[bounds][property]") {
    for (const auto& level : enumerate_tstrings(12)) {
        const long long ell = static_cast<long long>(level.front().length());
        for (long long ksq = 1; ksq <= 12; ++ksq) {
            if (4 * ksq < ell - 7) continue;
            REQUIRE(any_feasible(ksq, ell));
        }
    }
}

TEST_CASE("largest bad-curve count matches the type-bound cap", "[bounds][property]") {
    for (int ell = 1; ell <= 40; ++ell) REQUIRE(type_bounds(ell, {}).total_cap == max_bad_curves(ell));
}

TEST_CASE("surface invariants", "[bounds]") {
    auto quintic = surface_examples(SurfaceKind::DegreeDInP3, 5);
    CHECK(quintic.ksq == 5);
    CHECK(quintic.p_g == 4);
    auto sextic = surface_examples(SurfaceKind::DegreeDInP3, 6);
    CHECK(sextic.ksq == 24);
    CHECK(sextic.p_g == 10);
    CHECK_THROWS_AS(surface_examples(SurfaceKind::DegreeDInP3, 4), DomainError);

    auto h3 = surface_examples(SurfaceKind::Horikawa, 3);
    CHECK(h3.ksq == 6);
    CHECK(h3.b_plus == 5);
    CHECK(h3.ell == 2);
    CHECK(4 * h3.ell == h3.ksq + 2);
    CHECK(h3.chain_length_checked);

    auto h2 = surface_examples(SurfaceKind::Horikawa, 2);
    CHECK(h2.ksq == 2);
    CHECK(h2.ell == 1);
    CHECK(h2.ell <= general_bound(2));
    CHECK(general_bound(2) == 15);
    CHECK_THROWS_AS(surface_examples(SurfaceKind::Horikawa, 1), DomainError);
}

TEST_CASE("degree-d genus formula agrees with the binomial count", "[bounds][oracle]") {
    // p_g of a degree-d surface in P^3 is C(d-1, 3).
    for (long long d = 5; d <= 60; ++d) {
        Integer binom = Integer(d - 1) * (d - 2) * (d - 3) / 6;
        REQUIRE(surface_examples(SurfaceKind::DegreeDInP3, d).p_g == binom);
    }
}

TEST_CASE("Horikawa family stays far inside the bounds", "[bounds][property]") {
    for (long long n = 2; n <= 50; ++n) {
        auto r = surface_examples(SurfaceKind::Horikawa, n);
        REQUIRE(r.chain_length_checked);
        REQUIRE(4 * r.ell == r.ksq + 2);
        REQUIRE(r.within_general);
        REQUIRE(r.within_special);
    }
}
