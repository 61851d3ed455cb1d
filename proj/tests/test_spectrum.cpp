// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "disksplit/disk_spectrum.hpp"
#include "disksplit/validation.hpp"

using namespace disksplit;

TEST_CASE("enumeration of the lowest levels", "[spectrum]") {
    const auto one = enumerate_levels(1.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].omega == 0.0);
    CHECK(one[0].multiplicity == 1);
    CHECK_THAT(eval_mode(one[0].modes[0], {0.3, -0.1}),
               Catch::Matchers::WithinRel(0.5641895835477563, 1e-15));

    const auto two = enumerate_levels(2.0);
    REQUIRE(two.size() == 2);
    CHECK_THAT(two[1].omega, Catch::Matchers::WithinAbs(1.8411837813406593, 1e-10));
    CHECK(two[1].multiplicity == 2);

    const auto four = enumerate_levels(4.0);
    bool found_simple = false;
    for (const auto& l : four)
        if (l.modes[0].n == 0 && l.modes[0].k == 1) {
            found_simple = true;
            CHECK_THAT(l.omega, Catch::Matchers::WithinAbs(3.8317059702075123, 1e-10));
            CHECK(l.multiplicity == 1);
        }
    CHECK(found_simple);

    CHECK_THROWS_AS(enumerate_levels(250.0), std::domain_error);
    CHECK_THROWS_AS(enumerate_levels(0.0), std::domain_error);
}

TEST_CASE("levels are sorted, complete, and satisfy the boundary condition", "[spectrum]") {
    const double cap = 12.0;
    const auto levels = enumerate_levels(cap);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        CHECK(levels[i].omega > levels[i - 1].omega);
        CHECK(levels[i].index == static_cast<int>(i));
        for (const auto& m : levels[i].modes) {
            CHECK(m.omega == levels[i].omega);
            CHECK(std::abs(bessel_j_prime(m.n, m.omega)) <= 1e-11);
        }
    }
    // completeness: every root of J_n' below the cap appears
    for (int n = 0; n < static_cast<int>(cap); ++n) {
        for (double r : bessel_j_prime_roots_below(n, cap)) {
            bool present = false;
            for (const auto& l : levels)
                present = present || (l.modes[0].n == n && std::abs(l.omega - r) < 1e-12);
            CHECK(present);
        }
    }
}

TEST_CASE("closed-form normalization against 2D quadrature", "[spectrum]") {
    std::vector<double> rx, rw;
    validation_detail::gauss_legendre_01(200, rx, rw);
    for (auto [n, k] : {std::pair{0, 1}, {1, 1}, {2, 1}, {1, 2}, {4, 1}}) {
        const double c = mode_norm(n, k);
        const Mode mode{n, k, ModeParity::cosine, bessel_j_prime_root(n, k), c};
        const double g = validation_detail::disk_inner(mode, mode, rx, rw, 128);
        CHECK_THAT(g, Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
    // (0,1) in closed form: c = 1/(sqrt(pi) |J_0(omega)|)
    const double w = bessel_j_prime_root(0, 1);
    CHECK_THAT(mode_norm(0, 1),
               Catch::Matchers::WithinRel(1.0 / (std::sqrt(pi) * std::abs(bessel_j(0, w))), 1e-12));
    CHECK_THAT(mode_norm(0, 0), Catch::Matchers::WithinRel(1.0 / std::sqrt(pi), 1e-15));
    CHECK_THROWS_AS(mode_norm(1, 0), std::domain_error);
}

TEST_CASE("pointwise evaluation", "[spectrum]") {
    const auto levels = enumerate_levels(2.0);
    const EigenLevel& first = levels[1];
    const Mode& cosine = first.modes[0];
    const Mode& sine = first.modes[1];
    CHECK(eval_mode(sine, {0.5, 0.0}) == 0.0);  // nodal line of the sine mode
    const double expected = cosine.norm * bessel_j(1, 0.5 * first.omega);
    CHECK_THAT(eval_mode(cosine, {0.5, 0.0}), Catch::Matchers::WithinRel(expected, 1e-13));
    CHECK_NOTHROW(eval_mode(cosine, {1.0, 0.0}));
    CHECK_THROWS_AS(eval_mode(cosine, {1.1, 0.0}), std::domain_error);
    // center is regular
    CHECK(eval_mode(cosine, {0.0, 0.0}) == 0.0);
}

TEST_CASE("orthonormality, Neumann trace, Weyl growth", "[spectrum]") {
    CHECK(check_orthonormality().pass);
    CHECK(check_neumann_trace().pass);
    CHECK(check_weyl_count().pass);
}
