// SPDX-License-Identifier: Apache-2.0
//
// Integer-order Bessel functions J_n, Y_n, their derivatives, and the
// positive roots of J_n' that make up the Neumann spectrum of the unit disk.
//
// Evaluation scheme:
//   * small argument (x < 20): ascending power series, summed in compensated
//     double-double arithmetic and compressed once at startup into Chebyshev
//     tables in the variable u = x^2 (the series are entire in u, so ~60
//     coefficients reach the double rounding floor);
//   * large argument (x >= 20): Hankel asymptotic expansions for orders 0, 1
//     (their smallest term falls below 1e-18 only from x ~ 20 on);
//   * higher orders: forward recurrence below the turning point (n <= x),
//     Miller backward recurrence with even-order normalization above it.
// The two regimes agree at the x = 20 seam to well below 1e-13 relative.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "disksplit/errors.hpp"
#include "disksplit/geometry.hpp"

namespace disksplit {

// Euler-Mascheroni constant, 20 digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

// log(eta_n) = gamma - log 2 + H_n; eta_0 = e^gamma / 2 governs the
// small-argument logarithm of Y_0.
inline double log_eta(int n) {
    double h = 0.0;
    for (int j = 1; j <= n; ++j) h += 1.0 / j;
    return euler_gamma - 0.6931471805599453094 + h;
}

inline double eta0() { return std::exp(log_eta(0)); }

namespace detail {

// ---------------------------------------------------------------------------
// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Only what the series summation needs.

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd dd_add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd dd_mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd dd_div(dd a, double b) {
    const double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    const double q2 = ((a.hi - p.hi) + (a.lo - p.lo)) / b;
    return quick_two_sum(q1, q2);
}

// ---------------------------------------------------------------------------
// Reference power series in u = x^2, valid on [0, 400].  These are the
// generators for the Chebyshev tables below and are not on the hot path.

inline double j0_series(double u) {
    // J_0(x) = sum (-1)^m (u/4)^m / (m!)^2
    dd sum{1.0, 0.0};
    dd term{1.0, 0.0};
    for (int m = 1; m < 200; ++m) {
        term = dd_div(dd_mul(term, -0.25 * u), double(m) * double(m));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-34 * (std::abs(sum.hi) + 1e-300) && m > 8) break;
    }
    return sum.hi + sum.lo;
}

inline double j1t_series(double u) {
    // J_1(x)/x = (1/2) sum (-1)^m (u/4)^m / (m! (m+1)!)
    dd sum{0.5, 0.0};
    dd term{0.5, 0.0};
    for (int m = 1; m < 200; ++m) {
        term = dd_div(dd_mul(term, -0.25 * u), double(m) * double(m + 1));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-34 * (std::abs(sum.hi) + 1e-300) && m > 8) break;
    }
    return sum.hi + sum.lo;
}

inline double r0_series(double u) {
    // R_0(x) = Y_0 - (2/pi)(log(x/2)+gamma) J_0
    //        = (2/pi) sum_{m>=1} (-1)^{m+1} H_m (u/4)^m / (m!)^2
    dd sum{0.0, 0.0};
    dd c{1.0, 0.0};
    dd h{0.0, 0.0};
    double sign = 1.0;
    for (int m = 1; m < 200; ++m) {
        c = dd_div(dd_mul(c, 0.25 * u), double(m) * double(m));
        h = dd_add(h, dd_div(dd{1.0, 0.0}, double(m)));
        sum = dd_add(sum, dd_mul(dd_mul(c, h), sign));
        sign = -sign;
        if (std::abs(c.hi) * h.hi < 1e-34 * (std::abs(sum.hi) + 1e-300) && m > 8) break;
    }
    return (sum.hi + sum.lo) * (2.0 / pi);
}

inline double r1t_series(double u) {
    // R_1(x)/x where Y_1 = (2/pi)(log(x/2)+gamma) J_1 - 2/(pi x) + R_1(x),
    // R_1(x)/x = -(1/2pi) sum_{m>=0} (H_m + H_{m+1}) (-u/4)^m / (m! (m+1)!)
    dd a{1.0, 0.0};
    dd g{1.0, 0.0};  // H_0 + H_1
    dd sum = g;
    for (int m = 1; m < 200; ++m) {
        a = dd_div(dd_mul(a, -0.25 * u), double(m) * double(m + 1));
        g = dd_add(g, dd_add(dd_div(dd{1.0, 0.0}, double(m)), dd_div(dd{1.0, 0.0}, double(m + 1))));
        dd term = dd_mul(a, g);
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-34 * (std::abs(sum.hi) + 1e-300) && m > 8) break;
    }
    return -(sum.hi + sum.lo) / (2.0 * pi);
}

// ---------------------------------------------------------------------------
// Chebyshev compression of the series on u in [0, 400].

struct ChebTable {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> c;

    double operator()(double u) const {
        const double t = (2.0 * u - lo - hi) / (hi - lo);
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t i = c.size(); i-- > 1;) {
            const double b0 = c[i] + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        return c[0] + t * b1 - b2;
    }
};

template <class F>
inline ChebTable build_cheb(double lo, double hi, int n, F f) {
    std::vector<double> fv(n);
    for (int i = 0; i < n; ++i) {
        const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(pi * (i + 0.5) / n);
        fv[i] = f(u);
    }
    std::vector<double> c(n);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += fv[i] * std::cos(pi * k * (i + 0.5) / n);
        c[k] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    return {lo, hi, std::move(c)};
}

struct SmallArgTables {
    ChebTable j0, j1t, r0, r1t;
};

inline const SmallArgTables& tables() {
    static const SmallArgTables t = [] {
        SmallArgTables s;
        s.j0 = build_cheb(0.0, 400.0, 68, j0_series);
        s.j1t = build_cheb(0.0, 400.0, 68, j1t_series);
        s.r0 = build_cheb(0.0, 400.0, 68, r0_series);
        s.r1t = build_cheb(0.0, 400.0, 68, r1t_series);
        return s;
    }();
    return t;
}

// ---------------------------------------------------------------------------
// Hankel asymptotic expansion for orders 0, 1 (x >= 20).

struct PQ {
    double p, q;
};

inline PQ hankel_pq(int n, double x) {
    const double mu = 4.0 * n * n;
    double term = 1.0;
    double p = 1.0, q = 0.0;
    double prev = 1.0;
    for (int m = 1; m < 60; ++m) {
        const double f = 2.0 * m - 1.0;
        term *= (mu - f * f) / (8.0 * m * x);
        if (std::abs(term) >= prev) break;  // asymptotic tail started growing
        prev = std::abs(term);
        if (m % 2 == 1)
            q += (m % 4 == 1) ? term : -term;
        else
            p += (m % 4 == 2) ? -term : term;
        if (prev < 1e-18) break;
    }
    return {p, q};
}

inline double hankel_j(int n, double x) {
    const PQ s = hankel_pq(n, x);
    const double chi = x - (2 * n + 1) * (pi / 4.0);
    return std::sqrt(2.0 / (pi * x)) * (s.p * std::cos(chi) - s.q * std::sin(chi));
}

inline double hankel_y(int n, double x) {
    const PQ s = hankel_pq(n, x);
    const double chi = x - (2 * n + 1) * (pi / 4.0);
    return std::sqrt(2.0 / (pi * x)) * (s.p * std::sin(chi) + s.q * std::cos(chi));
}

inline double j0_impl(double x) { return x < 20.0 ? tables().j0(x * x) : hankel_j(0, x); }
inline double j1_impl(double x) { return x < 20.0 ? x * tables().j1t(x * x) : hankel_j(1, x); }

inline double y0_impl(double x) {
    if (x >= 20.0) return hankel_y(0, x);
    return (2.0 / pi) * (std::log(0.5 * x) + euler_gamma) * j0_impl(x) + tables().r0(x * x);
}

inline double y1_impl(double x) {
    if (x >= 20.0) return hankel_y(1, x);
    return (2.0 / pi) * (std::log(0.5 * x) + euler_gamma) * j1_impl(x) - 2.0 / (pi * x) +
           x * tables().r1t(x * x);
}

// ---------------------------------------------------------------------------
// Miller backward recurrence, normalized with J_0 + 2 sum_{m even} J_m = 1.

inline int miller_start(int n) {
    return n + static_cast<int>(std::ceil(std::sqrt(170.0 * (n + 2)))) + 12;
}

inline double miller_single(int n, double x) {
    const int start = miller_start(n);
    double above = 0.0;       // J_{m+1}, unnormalized
    double cur = 1e-280;      // J_m
    double norm = (start % 2 == 0) ? 2.0 * cur : 0.0;
    double value = 0.0;
    for (int m = start; m >= 1; --m) {
        const double below = (2.0 * m / x) * cur - above;
        above = cur;
        cur = below;
        const int ord = m - 1;
        if (ord == n) value = cur;
        if (ord >= 2 && ord % 2 == 0) norm += 2.0 * cur;
        if (std::abs(cur) > 1e280) {
            cur *= 1e-280;
            above *= 1e-280;
            norm *= 1e-280;
            value *= 1e-280;
        }
    }
    norm += cur;  // + J_0
    return value / norm;
}

inline std::vector<double> miller_seq(int nmax, double x) {
    const int start = miller_start(nmax);
    std::vector<double> out(nmax + 1, 0.0);
    double above = 0.0;
    double cur = 1e-280;
    double norm = (start % 2 == 0) ? 2.0 * cur : 0.0;
    for (int m = start; m >= 1; --m) {
        const double below = (2.0 * m / x) * cur - above;
        above = cur;
        cur = below;
        const int ord = m - 1;
        if (ord <= nmax) out[ord] = cur;
        if (ord >= 2 && ord % 2 == 0) norm += 2.0 * cur;
        if (std::abs(cur) > 1e280) {
            cur *= 1e-280;
            above *= 1e-280;
            norm *= 1e-280;
            for (double& v : out) v *= 1e-280;
        }
    }
    norm += cur;
    for (double& v : out) v /= norm;
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public surface.

inline double bessel_j(int n, double x) {
    if (!(x >= 0.0)) throw std::domain_error("bessel_j: requires x >= 0");
    double sign = 1.0;
    if (n < 0) {  // J_{-n} = (-1)^n J_n
        n = -n;
        if (n % 2 == 1) sign = -1.0;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    if (n == 0) return sign * detail::j0_impl(x);
    if (n == 1) return sign * detail::j1_impl(x);
    if (static_cast<double>(n) <= x) {
        double prev = detail::j0_impl(x);
        double cur = detail::j1_impl(x);
        for (int m = 1; m < n; ++m) {
            const double next = (2.0 * m / x) * cur - prev;
            prev = cur;
            cur = next;
        }
        return sign * cur;
    }
    return sign * detail::miller_single(n, x);
}

inline double bessel_y(int n, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_y: requires x > 0 (logarithmic singularity)");
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 == 1) sign = -1.0;
    }
    if (n == 0) return sign * detail::y0_impl(x);
    if (n == 1) return sign * detail::y1_impl(x);
    double prev = detail::y0_impl(x);
    double cur = detail::y1_impl(x);
    for (int m = 1; m < n; ++m) {
        const double next = (2.0 * m / x) * cur - prev;
        if (!std::isfinite(next)) return sign * std::copysign(HUGE_VAL, cur);
        prev = cur;
        cur = next;
    }
    return sign * cur;
}

// All orders 0..nmax in one pass; cheaper than nmax separate calls.
inline std::vector<double> bessel_j_seq(int nmax, double x) {
    if (nmax < 0) throw std::domain_error("bessel_j_seq: nmax >= 0");
    if (!(x >= 0.0)) throw std::domain_error("bessel_j_seq: requires x >= 0");
    std::vector<double> out(nmax + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (nmax == 0) {
        out[0] = detail::j0_impl(x);
        return out;
    }
    if (static_cast<double>(nmax) <= x) {
        out[0] = detail::j0_impl(x);
        out[1] = detail::j1_impl(x);
        for (int m = 1; m < nmax; ++m) out[m + 1] = (2.0 * m / x) * out[m] - out[m - 1];
        return out;
    }
    return detail::miller_seq(nmax, x);
}

inline std::vector<double> bessel_y_seq(int nmax, double x) {
    if (nmax < 0) throw std::domain_error("bessel_y_seq: nmax >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_y_seq: requires x > 0");
    std::vector<double> out(nmax + 1, 0.0);
    out[0] = detail::y0_impl(x);
    if (nmax == 0) return out;
    out[1] = detail::y1_impl(x);
    for (int m = 1; m < nmax; ++m) {
        const double next = (2.0 * m / x) * out[m] - out[m - 1];
        out[m + 1] = std::isfinite(next) ? next : std::copysign(HUGE_VAL, out[m]);
    }
    return out;
}

inline double bessel_j_prime(int n, double x) {
    if (n == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

inline double bessel_y_prime(int n, double x) {
    if (n == 0) return -bessel_y(1, x);
    return 0.5 * (bessel_y(n - 1, x) - bessel_y(n + 1, x));
}

// Indexes the k-th positive root of J_n'; these make up the disk spectrum.
struct RootIndex {
    int n = 0;
    int k = 1;
};

namespace detail {

inline double bisect_j_prime(int n, double a, double b, double fa) {
    for (int it = 0; it < 120 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = bessel_j_prime(n, mid);
        if (fa * fm <= 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// All positive roots of J_n' below omega_max, in increasing order.
inline std::vector<double> bessel_j_prime_roots_below(int n, double omega_max) {
    std::vector<double> roots;
    // J_n' > 0 on (0, first root) for n >= 1, and J_0' = -J_1 < 0 there,
    // so the scan can start just below the turning point.
    double a = (n == 0) ? 0.5 : std::max(0.5, n - 0.5);
    if (a >= omega_max) return roots;
    const double step = pi / 4.0;
    double fa = bessel_j_prime(n, a);
    while (a < omega_max) {
        const double b = std::min(a + step, omega_max);
        const double fb = bessel_j_prime(n, b);
        if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
            const double r = detail::bisect_j_prime(n, a, b, fa);
            if (r < omega_max) roots.push_back(r);
        }
        a = b;
        fa = fb;
    }
    return roots;
}

inline double bessel_j_prime_root(int n, int k, double scan_limit = 0.0) {
    if (n < 0 || k < 1) throw std::domain_error("bessel_j_prime_root: need n >= 0, k >= 1");
    const double limit = scan_limit > 0.0
                             ? scan_limit
                             : n + 20.0 + (k + 2) * pi + 8.0 * std::cbrt(n + 1.0) * std::sqrt(k + 1.0);
    const std::vector<double> roots = bessel_j_prime_roots_below(n, limit);
    if (static_cast<int>(roots.size()) < k)
        throw ConvergenceError("bessel_j_prime_root: scan up to " + std::to_string(limit) +
                               " found only " + std::to_string(roots.size()) + " roots of J_" +
                               std::to_string(n) + "'");
    return roots[k - 1];
}

inline double bessel_j_prime_root(RootIndex idx) { return bessel_j_prime_root(idx.n, idx.k); }

}  // namespace disksplit
