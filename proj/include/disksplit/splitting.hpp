// SPDX-License-Identifier: Apache-2.0
//
// Asymptotic splitting of a Neumann eigenlevel of the unit disk caused by a
// small grounded disk inclusion at z: the resonant coupling constant, the
// off-resonant spectral background, the leading shift
//     shift = coupling / (1/capacity_coeff - background),
// power-sum inversion to per-branch shifts, and the classical 1/log(eps)
// leading-order formula.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "disksplit/disk_spectrum.hpp"
#include "disksplit/errors.hpp"
#include "disksplit/geometry.hpp"
#include "disksplit/layer_potential.hpp"

namespace disksplit {

struct QuadratureOptions {
    int nodes = 256;
    double tol = 1e-9;   // node-doubling acceptance
    bool check = true;   // verify against the doubled rule
};

// The eps-independent part of the shift formula for one (level, z) pair.
struct LevelResponse {
    double coupling = 0.0;     // resonant numerator, |U(z)|^2 / (2 w)
    double background = 0.0;   // truncated off-resonant sum
    double tail = 0.0;         // magnitude of the last frequency band included
    bool converged = true;     // tail <= 1e-3 |background|
    int level_index = 0;
    Point center;
    double cutoff = 0.0;
};

// Full constant set entering the shift formula at a given inclusion size.
struct SplittingConstants {
    double capacity_coeff = 0.0;
    double coupling = 0.0;
    double background = 0.0;
    int level_index = 0;
    Point center;
    double cutoff = 0.0;
    double tail = 0.0;
    bool converged = true;
};

struct PowerSums {
    std::vector<double> p;  // p_1 .. p_m
    int multiplicity = 1;
};

struct SplitPrediction {
    EigenLevel level;
    double eps = 0.0;
    Point center;
    std::vector<double> shifts;   // per-branch, sorted ascending
    int remainder_order = 2;      // the eps^1 coefficient vanishes
    int zero_branch_mode = -1;    // mode whose nodal line passes through z, if any
    SplittingConstants constants;
};

// Resonant numerator via the double layer at the level's own frequency,
// summed over the level's basis (basis-invariant).  By the Green identity
// this equals |U(z)|^2/(2 w); the quadrature route is kept as the primary
// path and the identity is an invariant of the test suite.
inline double level_coupling(const EigenLevel& level, Point z,
                             QuadratureOptions opts = QuadratureOptions{}) {
    if (level.omega <= 0.0)
        throw std::domain_error("level_coupling: the constant level does not split this way");
    const DoubleLayerEvaluator ev(level.omega, z, CircleQuadrature{opts.nodes});
    double s = 0.0;
    for (const Mode& m : level.modes) s += eval_mode(m, z) * ev.apply(m);
    double value = s / (2.0 * level.omega);
    if (opts.check) {
        const DoubleLayerEvaluator ev2(level.omega, z, CircleQuadrature{2 * opts.nodes});
        double s2 = 0.0;
        for (const Mode& m : level.modes) s2 += eval_mode(m, z) * ev2.apply(m);
        s2 /= 2.0 * level.omega;
        if (std::abs(s2 - value) > opts.tol * std::max(1.0, std::abs(s2)))
            throw ConvergenceError("level_coupling: quadrature not converged at " +
                                   std::to_string(opts.nodes) + " nodes");
        value = s2;
    }
    return value;
}

namespace detail {

// Truncation window: 1 up to half the cutoff, cos^2 rolloff to 0 at the
// cutoff.  A hard cut leaves an oscillatory O(1/W^2) truncation error (the
// terms behave like cos(w_j (1 +- |z|) + phase)/w_j^2); the smooth rolloff
// suppresses the oscillatory part by an extra two orders.
inline double truncation_window(double ratio) {
    if (ratio <= 0.5) return 1.0;
    if (ratio >= 1.0) return 0.0;
    const double c = std::cos(pi * (ratio - 0.5));
    return c * c;
}

}  // namespace detail

// Off-resonant sum over every other level below the frequency cutoff, all
// double layers evaluated at the resonant frequency.  Terms are weighted by
// the smooth truncation window; the tail estimate compares against the same
// sum restricted to 80% of the cutoff.
inline LevelResponse spectral_background(const std::vector<EigenLevel>& levels, int theta, Point z,
                                         double cutoff, QuadratureOptions opts = QuadratureOptions{}) {
    if (theta < 0 || theta >= static_cast<int>(levels.size()))
        throw std::invalid_argument("spectral_background: level index out of range");
    const double w = levels[theta].omega;
    if (w <= 0.0) throw std::domain_error("spectral_background: resonant level must have omega > 0");
    if (cutoff < 4.0 * w)
        throw std::invalid_argument("spectral_background: cutoff must be >= 4 * omega_theta");
    // level spacing shrinks with frequency, so a gap of several units below
    // the cutoff means the enumeration stopped short of it
    if (levels.back().omega < cutoff - 4.0)
        throw std::invalid_argument("spectral_background: enumerated levels stop below the cutoff");

    const DoubleLayerEvaluator coarse(w, z, CircleQuadrature{opts.nodes});
    const DoubleLayerEvaluator fine(w, z, CircleQuadrature{2 * opts.nodes});

    double sum_coarse = 0.0, sum_fine = 0.0, sum_inner = 0.0;
    for (const EigenLevel& lvl : levels) {
        if (lvl.index == theta || lvl.omega >= cutoff) continue;
        double tc = 0.0, tf = 0.0;
        for (const Mode& m : lvl.modes) {
            const double uz = eval_mode(m, z);
            if (uz == 0.0) continue;
            tc += uz * coarse.apply(m);
            tf += uz * fine.apply(m);
        }
        const double denom = w * w - lvl.omega * lvl.omega;
        tc /= denom;
        tf /= denom;
        const double window = detail::truncation_window(lvl.omega / cutoff);
        sum_coarse += tc * window;
        sum_fine += tf * window;
        sum_inner += tf * detail::truncation_window(lvl.omega / (0.8 * cutoff));
    }
    if (opts.check &&
        std::abs(sum_fine - sum_coarse) > opts.tol * std::max(1.0, std::abs(sum_fine)))
        throw ConvergenceError("spectral_background: quadrature not converged at " +
                               std::to_string(opts.nodes) + " nodes");

    LevelResponse r;
    r.background = sum_fine;
    r.tail = std::abs(sum_fine - sum_inner);
    r.converged = r.tail <= 1e-3 * std::abs(r.background);
    r.level_index = theta;
    r.center = z;
    r.cutoff = cutoff;
    r.coupling = level_coupling(levels[theta], z, opts);
    return r;
}

// Doubling check on the frequency cutoff itself; needs levels enumerated to
// 2 * cutoff.  Throws if the sum is not settled to 1e-4 relative.
inline LevelResponse spectral_background_checked(const std::vector<EigenLevel>& levels, int theta,
                                                 Point z, double cutoff,
                                                 QuadratureOptions opts = QuadratureOptions{}) {
    const LevelResponse a = spectral_background(levels, theta, z, cutoff, opts);
    const LevelResponse b = spectral_background(levels, theta, z, 2.0 * cutoff, opts);
    if (std::abs(b.background - a.background) > 1e-4 * std::abs(b.background))
        throw ConvergenceError("spectral_background_checked: doubling the cutoff moved the sum by " +
                               std::to_string(std::abs(b.background - a.background)));
    return b;
}

inline SplittingConstants make_constants(const LevelResponse& resp, const EigenLevel& level,
                                         double eps, double log_capacity = 0.0) {
    SplittingConstants c;
    c.capacity_coeff = capacity_coefficient(CapacityInput{level.omega, eps, log_capacity});
    c.coupling = resp.coupling;
    c.background = resp.background;
    c.level_index = resp.level_index;
    c.center = resp.center;
    c.cutoff = resp.cutoff;
    c.tail = resp.tail;
    c.converged = resp.converged;
    return c;
}

// Leading shift coupling / (1/cap - background); zero coupling short-circuits
// to zero (nodal case).
inline double leading_shift(const SplittingConstants& c) {
    if (c.coupling == 0.0) return 0.0;
    const double denom = 1.0 / c.capacity_coeff - c.background;
    if (std::abs(denom) < 1e-12)
        throw DegenerateError("leading_shift: 1/capacity_coeff - background is degenerate");
    return c.coupling / denom;
}

namespace detail {

// Right-hand side of the characteristic equation at a trial frequency: the
// resonant level's singular term plus the off-resonant background, both with
// the trial frequency live in the kernel and the denominators.
struct CharacteristicSum {
    double singular_num = 0.0;  // U(z) . D^w[U](z) / (w + w_theta)
    double background = 0.0;
};

inline CharacteristicSum characteristic_sum(const std::vector<EigenLevel>& levels, int theta,
                                            Point z, double omega, double cutoff, int nodes) {
    const double w_theta = levels[theta].omega;
    const DoubleLayerEvaluator ev(omega, z, CircleQuadrature{nodes});
    CharacteristicSum out;
    for (const EigenLevel& lvl : levels) {
        if (lvl.omega >= cutoff) continue;
        double s = 0.0;
        for (const Mode& m : lvl.modes) {
            const double uz = eval_mode(m, z);
            if (uz == 0.0) continue;
            s += uz * ev.apply(m);
        }
        if (lvl.index == theta) {
            out.singular_num = s / (omega + w_theta);
        } else {
            out.background +=
                s / (omega * omega - lvl.omega * lvl.omega) * truncation_window(lvl.omega / cutoff);
        }
    }
    return out;
}

}  // namespace detail

// Leading shift with the frequency dependence of every constant kept live:
// the perturbed frequency solves
//     -ln(eta0 w eps)/(2 pi) = t(w)/(w - w_theta) + r(w).
// Freezing everything at w_theta (the closed formula) leaves a residual of
// relative order shift^2, far above the eps^2 remainder; solving the
// characteristic equation resums those orders and leaves only the genuine
// eps^2 terms.  Bisection on a bracket seeded by the frozen-formula shift.
inline double refined_shift(const std::vector<EigenLevel>& levels, int theta, Point z, double eps,
                            const LevelResponse& resp, int nodes = 256) {
    const EigenLevel& level = levels.at(theta);
    if (resp.coupling == 0.0) return 0.0;
    SplittingConstants frozen = make_constants(resp, level, eps);
    const double x0 = leading_shift(frozen);
    if (!(x0 > 0.0)) return x0;  // outside the asymptotic regime, keep the closed form

    const double w_theta = level.omega;
    const auto residual = [&](double delta) {
        const double w = w_theta + delta;
        const auto sums = detail::characteristic_sum(levels, theta, z, w, resp.cutoff, nodes);
        const double lhs = -std::log(eta0() * w * eps) / (2.0 * pi);
        return lhs - sums.background - sums.singular_num / delta;
    };

    // residual -> -inf as delta -> 0+ and -> +inf approaching the next level
    // that couples at z (its background term has a pole there), so a root is
    // bracketed inside; widen toward whichever side has the wrong sign
    double hi_cap = resp.cutoff - w_theta;
    for (int j = theta + 1; j < static_cast<int>(levels.size()); ++j) {
        if (level_intensity(levels[j], z) > 1e-24) {
            hi_cap = 0.95 * (levels[j].omega - w_theta);
            break;
        }
    }
    double lo = 0.5 * std::min(x0, hi_cap), hi = std::min(1.5 * x0, hi_cap);
    double flo = residual(lo), fhi = residual(hi);
    for (int grow = 0; grow < 12 && (flo > 0.0) == (fhi > 0.0); ++grow) {
        if (flo > 0.0) {
            lo *= 0.5;
            flo = residual(lo);
        } else {
            hi = std::min(hi * 1.7, hi_cap);
            fhi = residual(hi);
        }
    }
    if ((flo > 0.0) == (fhi > 0.0))
        throw ConvergenceError("refined_shift: could not bracket the characteristic root");
    for (int it = 0; it < 80 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Invert p_1..p_m back to the m shifts (m <= 2 on the disk).
inline std::vector<double> roots_from_power_sums(const PowerSums& sums) {
    if (sums.multiplicity < 1 || sums.multiplicity > 2)
        throw std::invalid_argument("roots_from_power_sums: multiplicity must be 1 or 2");
    if (static_cast<int>(sums.p.size()) < sums.multiplicity)
        throw std::invalid_argument("roots_from_power_sums: missing power sums");
    if (sums.multiplicity == 1) return {sums.p[0]};
    const double p1 = sums.p[0], p2 = sums.p[1];
    double disc = 2.0 * p2 - p1 * p1;
    if (disc < -1e-12)
        throw std::invalid_argument("roots_from_power_sums: inconsistent power sums (2 p2 < p1^2)");
    disc = std::max(disc, 0.0);
    const double s = std::sqrt(disc);
    std::vector<double> roots{0.5 * (p1 - s), 0.5 * (p1 + s)};
    return roots;
}

// Variant taking a precomputed response; sweeps over eps reuse it.
// Which resummation the predicted shift uses: the closed formula with every
// constant frozen at the resonant frequency, or the characteristic-equation
// root with the frequency live (the O(eps^2)-accurate form).
enum class ShiftModel { frozen, characteristic };

inline SplitPrediction predict_splitting(const std::vector<EigenLevel>& levels, int theta, Point z,
                                         double eps, const LevelResponse& resp,
                                         ShiftModel model = ShiftModel::characteristic,
                                         int nodes = 256) {
    const EigenLevel& level = levels.at(theta);
    const int m = level.multiplicity;
    if (m < 1 || m > 2)
        throw std::invalid_argument("predict_splitting: level multiplicity must be 1 or 2");

    SplitPrediction pred;
    pred.level = level;
    pred.eps = eps;
    pred.center = z;
    pred.constants = make_constants(resp, level, eps);

    const double x = (model == ShiftModel::characteristic)
                         ? refined_shift(levels, theta, z, eps, resp, nodes)
                         : leading_shift(pred.constants);
    PowerSums sums;
    sums.multiplicity = m;
    for (int l = 1; l <= m; ++l) sums.p.push_back(std::pow(x, l));
    pred.shifts = roots_from_power_sums(sums);
    std::sort(pred.shifts.begin(), pred.shifts.end());
    pred.remainder_order = 2;

    if (m == 2) {
        // attribute the unshifted branch to a mode whose nodal line passes
        // through z, when one does
        for (std::size_t i = 0; i < level.modes.size(); ++i) {
            if (std::abs(eval_mode(level.modes[i], z)) <= 1e-12 * level.modes[i].norm) {
                pred.zero_branch_mode = static_cast<int>(i);
                break;
            }
        }
    }
    return pred;
}

inline SplitPrediction predict_splitting(const std::vector<EigenLevel>& levels, int theta, Point z,
                                         double eps, double cutoff,
                                         QuadratureOptions opts = QuadratureOptions{},
                                         ShiftModel model = ShiftModel::characteristic) {
    const LevelResponse resp = spectral_background(levels, theta, z, cutoff, opts);
    return predict_splitting(levels, theta, z, eps, resp, model, opts.nodes);
}

// Classical leading-order law -pi |U(z)|^2 / (w ln eps).
inline double legacy_log_shift(const EigenLevel& level, Point z, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("legacy_log_shift: eps in (0,1)");
    if (level.omega <= 0.0) throw std::domain_error("legacy_log_shift: needs omega > 0");
    return -pi * level_intensity(level, z) / (level.omega * std::log(eps));
}

}  // namespace disksplit
