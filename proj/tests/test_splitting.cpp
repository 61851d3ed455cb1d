// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "disksplit/multipole.hpp"
#include "disksplit/splitting.hpp"
#include "disksplit/validation.hpp"

using namespace disksplit;

namespace {
const std::vector<EigenLevel>& spectrum200() {
    static const std::vector<EigenLevel> levels = enumerate_levels(200.0);
    return levels;
}
}  // namespace

TEST_CASE("resonant coupling", "[splitting]") {
    const auto& levels = spectrum200();

    // both modes of the first double level vanish at the center
    CHECK(level_coupling(levels[1], {0.0, 0.0}) == 0.0);

    // simple level: closed-form chain u(z)^2 / (2 w)
    const double w = levels[3].omega;
    const double u = mode_norm(0, 1) * bessel_j(0, 0.5 * w);
    CHECK_THAT(level_coupling(levels[3], {0.5, 0.0}),
               Catch::Matchers::WithinRel(u * u / (2.0 * w), 1e-10));

    // Green-identity shortcut and basis invariance
    CHECK(check_coupling_shortcut().pass);
    CHECK(check_basis_invariance().pass);

    // quadrature non-convergence propagates
    QuadratureOptions bad;
    bad.nodes = 8;
    bad.tol = 1e-12;
    CHECK_THROWS_AS(level_coupling(levels[1], {0.5, 0.0}, bad), ConvergenceError);
    CHECK_THROWS_AS(level_coupling(levels[0], {0.5, 0.0}), std::domain_error);
}

TEST_CASE("spectral background sum", "[splitting]") {
    const auto& levels = spectrum200();
    QuadratureOptions q;
    q.check = false;

    // constant-level contribution: (1/sqrt(pi)) D[1/sqrt(pi)](z) / w^2
    {
        const Point z{0.5, 0.0};
        const double w = levels[1].omega;
        const DoubleLayerEvaluator ev(w, z, CircleQuadrature{512});
        const double expected = eval_mode(levels[0].modes[0], z) * ev.apply(levels[0].modes[0]) /
                                (w * w);
        // closed form of the same term via the addition theorem
        const double closed = (1.0 / std::sqrt(pi)) * (w * pi / 2.0) * (1.0 / std::sqrt(pi)) *
                              bessel_j(0, w * 0.5) * bessel_y_prime(0, w) / (w * w);
        CHECK_THAT(expected, Catch::Matchers::WithinRel(closed, 1e-12));
    }

    // at the center only n = 0 levels contribute
    {
        const Point origin{0.0, 0.0};
        const auto full = spectral_background(levels, 1, origin, 30.0, q);
        const double w = levels[1].omega;
        const DoubleLayerEvaluator ev(w, origin, CircleQuadrature{512});
        double manual = 0.0;
        for (const auto& lvl : levels) {
            if (lvl.index == 1 || lvl.omega >= 30.0 || lvl.modes[0].n != 0) continue;
            manual += eval_mode(lvl.modes[0], origin) * ev.apply(lvl.modes[0]) /
                      (w * w - lvl.omega * lvl.omega) *
                      detail::truncation_window(lvl.omega / 30.0);
        }
        CHECK_THAT(full.background, Catch::Matchers::WithinRel(manual, 1e-12));
    }

    // self-convergence in the cutoff (tapered truncation)
    {
        const Point z{0.5, 0.0};
        const auto r40 = spectral_background(levels, 1, z, 40.0, q);
        const auto r80 = spectral_background(levels, 1, z, 80.0, q);
        const auto r200 = spectral_background(levels, 1, z, 200.0, q);
        CHECK(std::abs(r40.background - r80.background) / std::abs(r80.background) < 3e-4);
        CHECK(std::abs(r80.background - r200.background) / std::abs(r200.background) < 2e-4);
        CHECK(r200.converged);
        CHECK(r200.tail <= 1e-3 * std::abs(r200.background));
        CHECK_NOTHROW(spectral_background_checked(levels, 1, z, 90.0, q));
    }

    CHECK_THROWS_AS(spectral_background(levels, 1, {0.5, 0.0}, 5.0, q), std::invalid_argument);
    CHECK_THROWS_AS(spectral_background(enumerate_levels(20.0), 1, {0.5, 0.0}, 40.0, q),
                    std::invalid_argument);
}

TEST_CASE("leading shift formula", "[splitting]") {
    SplittingConstants c;
    c.capacity_coeff = 1.5;
    c.coupling = 0.0;
    c.background = 0.3;
    CHECK(leading_shift(c) == 0.0);  // nodal case, any capacity/background

    c.coupling = 0.12;
    CHECK_THAT(leading_shift(c), Catch::Matchers::WithinRel(0.12 / (1.0 / 1.5 - 0.3), 1e-15));

    c.background = 1.0 / c.capacity_coeff;  // degenerate denominator
    CHECK_THROWS_AS(leading_shift(c), DegenerateError);

    // log-order limit: shift -> -2 pi t / ln(eps)
    const auto& levels = spectrum200();
    QuadratureOptions q;
    q.check = false;
    const auto resp = spectral_background(levels, 1, {0.5, 0.0}, 60.0, q);
    const double eps = 1e-200;
    const double shift = leading_shift(make_constants(resp, levels[1], eps));
    CHECK_THAT(shift * std::abs(std::log(eps)) / (2.0 * pi * resp.coupling),
               Catch::Matchers::WithinAbs(1.0, 1e-2));
    CHECK(shift > 0.0);
}

TEST_CASE("power-sum inversion", "[splitting]") {
    CHECK(roots_from_power_sums({{0.05}, 1}) == std::vector<double>{0.05});
    const auto pair = roots_from_power_sums({{0.4, 0.1}, 2});
    CHECK_THAT(pair[0], Catch::Matchers::WithinAbs(0.1, 1e-14));
    CHECK_THAT(pair[1], Catch::Matchers::WithinAbs(0.3, 1e-14));
    const auto zero = roots_from_power_sums({{0.0, 0.0}, 2});
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    // discriminant within clamping tolerance
    CHECK_NOTHROW(roots_from_power_sums({{0.2, 0.5 * 0.04 - 1e-13}, 2}));
    CHECK_THROWS_AS(roots_from_power_sums({{0.2, 0.5 * 0.04 - 1e-10}, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(roots_from_power_sums({{0.1, 0.1, 0.1}, 3}), std::invalid_argument);
    CHECK(check_powersum_roundtrip().pass);
}

TEST_CASE("characteristic-equation shift against the concentric oracle", "[splitting]") {
    const auto& levels = spectrum200();
    QuadratureOptions q;
    q.check = false;
    const Point center{0.0, 0.0};
    const auto resp = spectral_background(levels, 3, center, 200.0, q);
    const double w = levels[3].omega;
    const double eps = 1e-3;

    const double refined = refined_shift(levels, 3, center, eps, resp);
    const double frozen = leading_shift(make_constants(resp, levels[3], eps));
    const auto oracle = concentric_roots(0, eps, w - 0.01, w + 0.6);
    REQUIRE(oracle.size() == 1);
    const double reference = oracle[0] - w;

    CHECK_THAT(refined, Catch::Matchers::WithinAbs(reference, 5e-7));
    // freezing every constant at the resonant frequency leaves a residual of
    // relative order shift^2; the live-frequency root removes it
    CHECK(std::abs(frozen - reference) > 30.0 * std::abs(refined - reference));
}

TEST_CASE("split prediction", "[splitting]") {
    const auto& levels = spectrum200();
    QuadratureOptions q;
    q.check = false;
    const Point z{0.5, 0.0};
    const auto resp = spectral_background(levels, 1, z, 200.0, q);

    const auto pred = predict_splitting(levels, 1, z, 1e-3, resp);
    REQUIRE(pred.shifts.size() == 2);
    CHECK(pred.shifts[0] == 0.0);
    CHECK(pred.shifts[1] > 0.0);
    CHECK(pred.remainder_order == 2);
    CHECK(pred.zero_branch_mode == 1);  // the sine mode's nodal line passes through z
    CHECK(pred.level.index == 1);

    const auto frozen = predict_splitting(levels, 1, z, 1e-3, resp, ShiftModel::frozen);
    CHECK_THAT(frozen.shifts[1],
               Catch::Matchers::WithinRel(leading_shift(make_constants(resp, levels[1], 1e-3)),
                                          1e-14));
    // the two models agree to the resummation order
    CHECK_THAT(pred.shifts[1], Catch::Matchers::WithinRel(frozen.shifts[1], 0.15));

    // nodal center: both branches unshifted, exactly
    const auto resp0 = spectral_background(levels, 1, {0.0, 0.0}, 60.0, q);
    const auto nodal = predict_splitting(levels, 1, {0.0, 0.0}, 1e-3, resp0);
    CHECK(nodal.shifts[0] == 0.0);
    CHECK(nodal.shifts[1] == 0.0);

    // simple level: single positive branch
    const auto resp3 = spectral_background(levels, 3, z, 60.0, q);
    const auto simple = predict_splitting(levels, 3, z, 1e-4, resp3);
    REQUIRE(simple.shifts.size() == 1);
    CHECK(simple.shifts[0] > 0.0);
}

TEST_CASE("classical logarithmic law", "[splitting]") {
    const auto& levels = spectrum200();
    CHECK(legacy_log_shift(levels[1], {0.0, 0.0}, 1e-3) == 0.0);  // nodal
    CHECK_THROWS_AS(legacy_log_shift(levels[1], {0.5, 0.0}, 1.5), std::domain_error);
    CHECK_THROWS_AS(legacy_log_shift(levels[0], {0.5, 0.0}, 1e-3), std::domain_error);

    CHECK(check_legacy_ratio().pass);

    // the ratio approaches one as eps shrinks
    QuadratureOptions q;
    q.check = false;
    const Point z{0.5, 0.0};
    const auto resp = spectral_background(levels, 1, z, 60.0, q);
    const auto ratio = [&](double eps) {
        return legacy_log_shift(levels[1], z, eps) /
               leading_shift(make_constants(resp, levels[1], eps));
    };
    CHECK(std::abs(ratio(1e-12) - 1.0) < std::abs(ratio(1e-4) - 1.0));
}
