// SPDX-License-Identifier: Apache-2.0
//
// Free-space fundamental solution for the Helmholtz operator, double-layer
// evaluation at interior points of the unit disk by the periodic trapezoid
// rule, and the single-layer machinery on the unit circle (Fourier
// diagonalization, logarithmic capacity, generalized capacities).
//
// Interior-point boundary integrands here are smooth and 2pi-periodic, so the
// trapezoid rule converges spectrally; node doubling serves as the error
// estimate.  The dense collocation route uses the Kress product quadrature
// for the periodic log kernel and provides an independent cross-check of the
// Fourier closed forms.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "disksplit/bessel.hpp"
#include "disksplit/disk_spectrum.hpp"
#include "disksplit/errors.hpp"
#include "disksplit/geometry.hpp"

namespace disksplit {

// Gamma_omega: (1/2pi) ln|x-y| for omega = 0, (1/4) Y_0(omega |x-y|) otherwise.
// The two branches have different normalizations and do not match as
// omega -> 0; callers pick the branch explicitly.
inline double fundamental_solution(double omega, double dist) {
    if (!(dist > 0.0)) throw std::domain_error("fundamental_solution: requires |x-y| > 0");
    if (omega == 0.0) return std::log(dist) / (2.0 * pi);
    return 0.25 * bessel_y(0, omega * dist);
}

struct CircleQuadrature {
    int nodes = 256;  // equispaced, weight 2 pi / nodes each

    explicit CircleQuadrature(int m = 256) : nodes(m) {
        if (m < 4 || (m & (m - 1)) != 0)
            throw std::invalid_argument("CircleQuadrature: node count must be a power of two >= 4");
    }
    double node(int i) const { return 2.0 * pi * i / nodes; }
    double weight() const { return 2.0 * pi / nodes; }
};

// d/dnu(y) Gamma_omega(z, y) for y on the unit circle, outward normal.
inline double kernel_normal_derivative(double omega, Point z, double cy, double sy) {
    const Point y{cy, sy};
    const double dist = distance(y, z);
    // grad_y (1/4) Y_0(w|y-z|) . nu(y) = -(w/4) Y_1(w|y-z|) (1 - z.y)/|y-z|
    return -(omega / 4.0) * bessel_y(1, omega * dist) * (1.0 - dot(z, y)) / dist;
}

// Fixed (omega, z, rule): kernel weights are computed once, each mode costs
// one table lookup per node.  This is what makes the spectral-sum module
// affordable at large frequency cutoffs.
class DoubleLayerEvaluator {
  public:
    DoubleLayerEvaluator(double omega, Point z, CircleQuadrature quad)
        : omega_(omega), z_(z), m_(quad.nodes) {
        if (!(omega > 0.0))
            throw std::domain_error("DoubleLayerEvaluator: omega must be positive");
        if (z.radius() > 0.95 + 1e-12)
            throw std::domain_error("DoubleLayerEvaluator: interior evaluation needs |z| <= 0.95");
        cos_.resize(m_);
        sin_.resize(m_);
        wk_.resize(m_);
        const double w = quad.weight();
        for (int i = 0; i < m_; ++i) {
            const double t = quad.node(i);
            cos_[i] = std::cos(t);
            sin_[i] = std::sin(t);
            wk_[i] = w * kernel_normal_derivative(omega, z, cos_[i], sin_[i]);
        }
    }

    double omega() const { return omega_; }
    Point center() const { return z_; }
    int nodes() const { return m_; }

    // integral of the kernel against the boundary trace of the mode
    double apply(const Mode& mode) const {
        const double coeff = boundary_coefficient(mode);
        double s = 0.0;
        if (mode.k == 0 || mode.n == 0) {
            for (int i = 0; i < m_; ++i) s += wk_[i];
        } else if (mode.parity == ModeParity::cosine) {
            for (int i = 0; i < m_; ++i) s += wk_[i] * cos_[angle_index(mode.n, i)];
        } else {
            for (int i = 0; i < m_; ++i) s += wk_[i] * sin_[angle_index(mode.n, i)];
        }
        return coeff * s;
    }

    // generic trace, used by tests
    template <class F>
    double apply_trace(F&& trace) const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s += wk_[i] * trace(2.0 * pi * i / m_);
        return s;
    }

  private:
    int angle_index(int n, int i) const {
        // cos/sin(n * 2 pi i / m) lives at table slot (n * i) mod m
        return static_cast<int>((static_cast<long long>(n) * i) % m_);
    }

    double omega_ = 0.0;
    Point z_;
    int m_ = 0;
    std::vector<double> cos_, sin_, wk_;
};

inline double double_layer_at(double omega, const Mode& mode, Point z,
                              CircleQuadrature quad = CircleQuadrature{256}) {
    return DoubleLayerEvaluator(omega, z, quad).apply(mode);
}

// Node-doubling check; returns the refined value or throws ConvergenceError.
inline double double_layer_checked(double omega, const Mode& mode, Point z, int nodes = 256,
                                   double tol = 1e-9) {
    const double coarse = double_layer_at(omega, mode, z, CircleQuadrature{nodes});
    const double fine = double_layer_at(omega, mode, z, CircleQuadrature{2 * nodes});
    if (std::abs(fine - coarse) > tol * std::max(1.0, std::abs(fine)))
        throw ConvergenceError("double_layer_checked: node doubling moved the result by " +
                               std::to_string(std::abs(fine - coarse)));
    return fine;
}

// ---------------------------------------------------------------------------
// Single layer on the unit circle.

// Eigenvalue of S^0_{B1} on e^{i n t}: 0 for n = 0, -1/(2|n|) otherwise
// (pinned by the dense quadrature oracle; the kernel is even in n).
inline double single_layer_fourier_eigenvalue(int n) {
    if (n == 0) return 0.0;
    return -0.5 / std::abs(n);
}

struct CapacitySolution {
    double capacity = 1.0;
    double boundary_value = 0.0;  // the constant a with S^0[phi] = a on the circle
    double density = 0.0;         // phi, constant by rotational symmetry
};

// Equilibrium problem S^0[phi] = a, int phi = 1 on the unit circle, solved in
// the Fourier basis: invertibility of the nonzero modes kills them, the mass
// condition fixes phi_0, and a is the zero-mode image.
inline CapacitySolution solve_circle_capacity() {
    CapacitySolution s;
    s.density = 1.0 / (2.0 * pi);
    s.boundary_value = single_layer_fourier_eigenvalue(0) * (2.0 * pi * s.density);
    s.capacity = std::exp(2.0 * pi * s.boundary_value);
    return s;
}

inline double circle_capacity() { return solve_circle_capacity().capacity; }

// ---------------------------------------------------------------------------
// Generalized capacities of the unit-circle inclusion.

struct CapacityInput {
    double omega = 1.0;         // frequency entering the scaled log kernel
    double eps = 1e-2;          // inclusion scale
    double log_capacity = 0.0;  // ln cap of the inclusion boundary (0 for the circle)
};

// Leading capacity coefficient: -1 / (ln(eta0 w eps)/(2 pi) + ln cap).
// Positive in the asymptotic regime eta0 w eps < 1.
inline double capacity_coefficient(const CapacityInput& in) {
    if (!(in.eps > 0.0) || !(in.omega > 0.0))
        throw std::domain_error("capacity_coefficient: omega, eps must be positive");
    const double denom = std::log(eta0() * in.omega * in.eps) / (2.0 * pi) + in.log_capacity;
    if (std::abs(denom) < 1e-14)
        throw DegenerateError("capacity_coefficient: log term cancels the log-capacity");
    return -1.0 / denom;
}

namespace detail {

// Fourier coefficients of cos^a(t) sin^b(t); entry m + (a+b) holds the
// coefficient of e^{i m t}.  Wrong-parity slots stay exactly zero.
inline std::vector<std::complex<double>> circle_monomial_fourier(int a, int b) {
    std::vector<std::complex<double>> c{1.0};
    const auto mul_by = [&c](std::complex<double> plus, std::complex<double> minus) {
        std::vector<std::complex<double>> out(c.size() + 2, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            out[i + 2] += c[i] * plus;
            out[i] += c[i] * minus;
        }
        c = std::move(out);
    };
    for (int i = 0; i < a; ++i) mul_by(0.5, 0.5);
    for (int i = 0; i < b; ++i) mul_by(std::complex<double>(0.0, -0.5), std::complex<double>(0.0, 0.5));
    return c;
}

// S eigenvalue on e^{i m t} for the scaled kernel (1/2pi) ln(eta0 w eps |x-y|).
inline double scaled_single_layer_eigenvalue(int m, const CapacityInput& in) {
    if (m == 0) return std::log(eta0() * in.omega * in.eps) + 2.0 * pi * in.log_capacity;
    return single_layer_fourier_eigenvalue(m);
}

}  // namespace detail

// s_{alpha,beta} = (-1)^{|a|+|b|+1} int y^beta S^{-1}[x^alpha] dsigma on the
// unit circle, by expanding both monomials in finite Fourier series and
// inverting S diagonally.  Exactly zero whenever |alpha|+|beta| is odd.
inline double generalized_capacity(std::array<int, 2> alpha, std::array<int, 2> beta,
                                   const CapacityInput& in) {
    const int da = alpha[0] + alpha[1];
    const int db = beta[0] + beta[1];
    if (alpha[0] < 0 || alpha[1] < 0 || beta[0] < 0 || beta[1] < 0)
        throw std::domain_error("generalized_capacity: multi-indices must be non-negative");
    const auto ca = detail::circle_monomial_fourier(alpha[0], alpha[1]);
    const auto cb = detail::circle_monomial_fourier(beta[0], beta[1]);
    std::complex<double> sum = 0.0;
    for (int m = -da; m <= da; ++m) {
        if (std::abs(m) > db) continue;
        const std::complex<double> am = ca[m + da];
        const std::complex<double> bm = cb[-m + db];
        if (am == 0.0 || bm == 0.0) continue;
        const double mu = detail::scaled_single_layer_eigenvalue(m, in);
        if (std::abs(mu) < 1e-14)
            throw DegenerateError("generalized_capacity: S eigenvalue within 1e-14 of zero");
        sum += am * bm / mu;
    }
    const double sign = ((da + db) % 2 == 0) ? -1.0 : 1.0;  // (-1)^{|a|+|b|+1}
    return sign * 2.0 * pi * sum.real();
}

// ---------------------------------------------------------------------------
// Dense collocation route (independent of the Fourier closed forms).

// Nystrom matrix of S^0 on the unit circle, built from the Kress product
// quadrature for the periodic log kernel:
//   int_0^{2pi} ln(4 sin^2((t-s)/2)) f(s) ds ~ sum_j R_{(i-j) mod M} f(s_j),
//   R_l = -(2 pi / n) sum_{m=1}^{n-1} cos(m l h)/m - (pi/n^2) cos(n l h),
// with M = 2n nodes, h = 2 pi / M, and ln|x-y| = (1/2) ln(4 sin^2((t-s)/2)).
inline Eigen::MatrixXd single_layer_collocation(int nodes) {
    if (nodes < 4 || nodes % 2 != 0)
        throw std::invalid_argument("single_layer_collocation: need an even node count >= 4");
    const int n = nodes / 2;
    const double h = 2.0 * pi / nodes;
    std::vector<double> r(nodes);
    for (int l = 0; l < nodes; ++l) {
        double s = 0.0;
        for (int m = 1; m < n; ++m) s += std::cos(m * l * h) / m;
        r[l] = -(2.0 * pi / n) * s - (pi / double(n) / double(n)) * std::cos(n * l * h);
    }
    Eigen::MatrixXd a(nodes, nodes);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j) a(i, j) = r[(i - j + nodes) % nodes] / (4.0 * pi);
    return a;
}

// Dense application of S^0 to samples of e^{i n t}; oracle for the Fourier
// eigenvalues.
inline std::complex<double> single_layer_collocation_eigenvalue(int n, int nodes = 512) {
    const Eigen::MatrixXd a = single_layer_collocation(nodes);
    Eigen::VectorXd re(nodes), im(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = 2.0 * pi * i / nodes;
        re(i) = std::cos(n * t);
        im(i) = std::sin(n * t);
    }
    const Eigen::VectorXd sre = a * re, sim = a * im;
    // project back on the same harmonic
    std::complex<double> num = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double t = 2.0 * pi * i / nodes;
        const std::complex<double> basis(std::cos(n * t), std::sin(n * t));
        num += std::conj(basis) * std::complex<double>(sre(i), sim(i));
    }
    return num / double(nodes);
}

// Dense solve of the equilibrium system; oracle for circle_capacity().
inline CapacitySolution solve_circle_capacity_collocation(int nodes = 256) {
    const Eigen::MatrixXd s0 = single_layer_collocation(nodes);
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(nodes + 1, nodes + 1);
    sys.topLeftCorner(nodes, nodes) = s0;
    sys.col(nodes).head(nodes).setConstant(-1.0);
    sys.row(nodes).head(nodes).setConstant(2.0 * pi / nodes);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nodes + 1);
    rhs(nodes) = 1.0;
    const Eigen::VectorXd sol = sys.partialPivLu().solve(rhs);
    CapacitySolution out;
    out.boundary_value = sol(nodes);
    out.capacity = std::exp(2.0 * pi * out.boundary_value);
    out.density = sol.head(nodes).mean();
    return out;
}

// Dense-quadrature inversion of the scaled kernel; oracle for
// generalized_capacity.
inline double generalized_capacity_collocation(std::array<int, 2> alpha, std::array<int, 2> beta,
                                               const CapacityInput& in, int nodes = 512) {
    Eigen::MatrixXd a = single_layer_collocation(nodes);
    const double mu0 = std::log(eta0() * in.omega * in.eps) + 2.0 * pi * in.log_capacity;
    a.array() += mu0 / nodes;  // + (mu0 / 2 pi) * int . dsigma
    Eigen::VectorXd rhs(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = 2.0 * pi * i / nodes;
        rhs(i) = std::pow(std::cos(t), alpha[0]) * std::pow(std::sin(t), alpha[1]);
    }
    const Eigen::VectorXd g = a.partialPivLu().solve(rhs);
    double integral = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double t = 2.0 * pi * j / nodes;
        integral += std::pow(std::cos(t), beta[0]) * std::pow(std::sin(t), beta[1]) * g(j);
    }
    integral *= 2.0 * pi / nodes;
    const int deg = alpha[0] + alpha[1] + beta[0] + beta[1];
    return ((deg % 2 == 0) ? -1.0 : 1.0) * integral;
}

}  // namespace disksplit
