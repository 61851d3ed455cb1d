// SPDX-License-Identifier: Apache-2.0
//
// Neumann eigenmodes of the unit disk: u_{n,k}(r,t) = c J_n(w r) cos/sin(n t)
// with w the k-th positive root of J_n', plus the constant mode at w = 0.
// Modes are L2-normalized on the disk via the closed-form radial integral
//   int_0^1 J_n(w r)^2 r dr = (1/2)(1 - n^2/w^2) J_n(w)^2   at roots of J_n'.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "disksplit/bessel.hpp"
#include "disksplit/geometry.hpp"

namespace disksplit {

enum class ModeParity { cosine, sine };

struct Mode {
    int n = 0;          // angular order
    int k = 0;          // radial index; k = 0 is the constant mode (n = 0 only)
    ModeParity parity = ModeParity::cosine;
    double omega = 0.0; // frequency; J_n'(omega) = 0 for k >= 1
    double norm = 0.0;  // c making the mode L2-unit on the disk
};

struct EigenLevel {
    double omega = 0.0;
    int multiplicity = 0;
    std::vector<Mode> modes;
    int index = 0;      // position in the sorted spectrum, 0 = constant level
};

// Normalization constant: c^-2 = a_n (1/2)(1 - n^2/w^2) J_n(w)^2,
// a_0 = 2 pi, a_n = pi otherwise.  The constant mode has c = 1/sqrt(pi).
inline double mode_norm(int n, int k) {
    if (n < 0 || k < 0) throw std::domain_error("mode_norm: need n >= 0, k >= 0");
    if (k == 0) {
        if (n != 0) throw std::domain_error("mode_norm: k = 0 only for the constant mode");
        return 1.0 / std::sqrt(pi);
    }
    const double w = bessel_j_prime_root(n, k);
    const double a = (n == 0) ? 2.0 * pi : pi;
    const double jw = bessel_j(n, w);
    const double c2inv = a * 0.5 * (1.0 - double(n) * n / (w * w)) * jw * jw;
    return 1.0 / std::sqrt(c2inv);
}

inline double eval_mode(const Mode& mode, Point p) {
    const double r = p.radius();
    if (r > 1.0 + 1e-12) throw std::domain_error("eval_mode: point outside the closed unit disk");
    if (mode.k == 0) return mode.norm;
    const double radial = bessel_j(mode.n, mode.omega * std::min(r, 1.0));
    if (mode.n == 0) return mode.norm * radial;
    const double t = p.angle();
    const double ang = (mode.parity == ModeParity::cosine) ? std::cos(mode.n * t) : std::sin(mode.n * t);
    return mode.norm * radial * ang;
}

// Value of the mode on the boundary circle is boundary_coefficient(mode) * cos/sin(n t).
inline double boundary_coefficient(const Mode& mode) {
    if (mode.k == 0) return mode.norm;
    return mode.norm * bessel_j(mode.n, mode.omega);
}

// Radial derivative at r = 1; vanishes for true Neumann modes.
inline double boundary_radial_derivative(const Mode& mode, double theta) {
    if (mode.k == 0) return 0.0;
    const double d = mode.norm * mode.omega * bessel_j_prime(mode.n, mode.omega);
    const double ang =
        (mode.parity == ModeParity::cosine) ? std::cos(mode.n * theta) : std::sin(mode.n * theta);
    return d * ang;
}

// Every eigenlevel with omega < omega_max, sorted increasing.  Level 0 is the
// constant mode; each J_n' root contributes multiplicity 1 (n = 0) or
// 2 (cos and sin) modes.
inline std::vector<EigenLevel> enumerate_levels(double omega_max) {
    if (!(omega_max > 0.0) || omega_max > 200.0)
        throw std::domain_error("enumerate_levels: need 0 < omega_max <= 200");
    std::vector<EigenLevel> levels;
    {
        EigenLevel constant;
        constant.omega = 0.0;
        constant.multiplicity = 1;
        constant.modes = {Mode{0, 0, ModeParity::cosine, 0.0, 1.0 / std::sqrt(pi)}};
        levels.push_back(std::move(constant));
    }
    for (int n = 0; n < static_cast<int>(omega_max) + 1; ++n) {
        if (static_cast<double>(n) >= omega_max) break;  // roots of J_n' exceed n
        const std::vector<double> roots = bessel_j_prime_roots_below(n, omega_max);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            EigenLevel lvl;
            lvl.omega = roots[k];
            const double c = mode_norm(n, static_cast<int>(k) + 1);
            lvl.modes.push_back(Mode{n, static_cast<int>(k) + 1, ModeParity::cosine, roots[k], c});
            if (n >= 1)
                lvl.modes.push_back(Mode{n, static_cast<int>(k) + 1, ModeParity::sine, roots[k], c});
            lvl.multiplicity = static_cast<int>(lvl.modes.size());
            levels.push_back(std::move(lvl));
        }
    }
    std::sort(levels.begin(), levels.end(),
              [](const EigenLevel& a, const EigenLevel& b) { return a.omega < b.omega; });
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i].index = static_cast<int>(i);
    return levels;
}

// Sum of squared mode values at z; basis-invariant within a level.
inline double level_intensity(const EigenLevel& level, Point z) {
    double s = 0.0;
    for (const Mode& m : level.modes) {
        const double v = eval_mode(m, z);
        s += v * v;
    }
    return s;
}

}  // namespace disksplit
