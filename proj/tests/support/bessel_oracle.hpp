// SPDX-License-Identifier: Apache-2.0
//
// Test-only high-precision Bessel reference built on boost::multiprecision.
// Ascending series for J (working precision absorbs the cancellation up to
// x = 200), the standard log/psi series for Y.  Independent of every
// evaluation path in the library under test.

#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<140>>;

inline mp bessel_j_mp(int n, const mp& x) {
    if (n < 0) {
        const mp v = bessel_j_mp(-n, x);
        return (-n) % 2 == 1 ? -v : v;
    }
    if (x == 0) return n == 0 ? mp(1) : mp(0);
    mp term = 1;
    for (int j = 1; j <= n; ++j) term *= x / (2 * j);
    mp sum = term;
    const mp x24 = x * x / 4;
    for (int m = 1; m < 4000; ++m) {
        term *= -x24 / (mp(m) * (n + m));
        sum += term;
        if (abs(term) < abs(sum) * mp(1e-135) && m > static_cast<int>(double(x))) break;
    }
    return sum;
}

inline mp bessel_y_mp(int n, const mp& x) {
    using boost::math::constants::euler;
    using boost::math::constants::pi;
    if (n < 0) {
        const mp v = bessel_y_mp(-n, x);
        return (-n) % 2 == 1 ? -v : v;
    }
    const mp logpart = 2 / pi<mp>() * (log(x / 2) + euler<mp>()) * bessel_j_mp(n, x);

    mp finite = 0;
    if (n > 0) {
        mp fact = 1;  // (n-k-1)!/k! at k = 0
        for (int j = 1; j <= n - 1; ++j) fact *= j;
        mp pw = pow(x / 2, -n);
        for (int k = 0; k <= n - 1; ++k) {
            finite += fact * pw;
            if (k < n - 1) {
                fact /= (n - k - 1);
                fact /= (k + 1);
                pw *= x * x / 4;
            }
        }
        finite /= -pi<mp>();
    }

    mp hk = 0, hnk = 0;
    for (int j = 1; j <= n; ++j) hnk += mp(1) / j;
    mp term = pow(x / 2, n);
    for (int j = 1; j <= n; ++j) term /= j;  // (x/2)^n / n!
    mp sum = (hk + hnk) * term;
    const mp x24 = x * x / 4;
    for (int k = 1; k < 4000; ++k) {
        term *= -x24 / (mp(k) * (n + k));
        hk += mp(1) / k;
        hnk += mp(1) / (n + k);
        const mp add = (hk + hnk) * term;
        sum += add;
        if (abs(add) < abs(sum) * mp(1e-135) && k > static_cast<int>(double(x))) break;
    }
    return logpart + finite - sum / pi<mp>();
}

inline double bessel_j(int n, double x) { return static_cast<double>(bessel_j_mp(n, mp(x))); }
inline double bessel_y(int n, double x) { return static_cast<double>(bessel_y_mp(n, mp(x))); }

inline double bessel_j_prime(int n, double x) {
    if (n == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

// Bracketed bisection on the oracle derivative; reference for root tests.
inline double j_prime_root(int n, int k, double lo, double hi, int scan = 400) {
    int found = 0;
    double a = lo, fa = bessel_j_prime(n, a);
    for (int i = 1; i <= scan; ++i) {
        const double b = lo + (hi - lo) * i / scan;
        const double fb = bessel_j_prime(n, b);
        if ((fa < 0) != (fb < 0)) {
            ++found;
            if (found == k) {
                double x0 = a, x1 = b, f0 = fa;
                for (int it = 0; it < 200 && (x1 - x0) > 1e-15 * x1; ++it) {
                    const double xm = 0.5 * (x0 + x1);
                    const double fm = bessel_j_prime(n, xm);
                    if ((f0 < 0) != (fm < 0))
                        x1 = xm;
                    else {
                        x0 = xm;
                        f0 = fm;
                    }
                }
                return 0.5 * (x0 + x1);
            }
        }
        a = b;
        fa = fb;
    }
    return -1.0;
}

}  // namespace oracle
