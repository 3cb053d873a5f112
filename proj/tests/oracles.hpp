// Independent oracles used across the test suites. Everything here computes
// reference values through paths disjoint from the library implementation:
// quadrature of the integral representation for Bessel K, asymptotic series,
// finite differences for derivatives, retracted tangential stencils for the
// surface operator, and Durand-Kerner polynomial roots for eigenvalues.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rbfmol/surface_ops.hpp"
#include "rbfmol/types.hpp"

namespace oracles {

using rbfmol::AmbientC2Function;
using rbfmol::EllipticProblem;
using rbfmol::Mat3;
using rbfmol::Surface;
using rbfmol::Vec3;

// ---------------------------------------------------------------------------
// Modified Bessel K via K_nu(r) = int_0^inf exp(-r cosh t) cosh(nu t) dt,
// composite 16-point Gauss-Legendre. Good to ~1e-13 relative for the tested
// range; independent of the series/continued-fraction implementation.
inline double bessel_k_quadrature(int nu, double r) {
    static const double gl_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                   0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                   0.9445750230732326, 0.9894009349916499};
    static const double gl_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                   0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                   0.0622535239386479, 0.0271524594117541};

    // Far end: r cosh(t) - nu t > ~760 means the integrand is below 1e-330.
    const double arg = (760.0 + 60.0 * nu) / r;
    const double t_max = std::acosh(std::max(arg, 2.0));
    const int panels = 256;
    const double hp = t_max / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * hp;
        double acc = 0.0;
        for (int g = 0; g < 8; ++g) {
            for (double sgn : {-1.0, 1.0}) {
                const double t = mid + sgn * 0.5 * hp * gl_x[g];
                const double expo = -r * std::cosh(t) + std::log(std::cosh(nu * t));
                acc += gl_w[g] * (expo < -745.0 ? 0.0 : std::exp(expo));
            }
        }
        total += 0.5 * hp * acc;
    }
    return total;
}

// Asymptotic expansion sqrt(pi/(2r)) e^{-r} sum_k a_k(nu) / (8r)^k truncated
// at the smallest term; accurate for large r.
inline double bessel_k_asymptotic(int nu, double r) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * r * k);
        if (std::abs(term) >= prev) break;  // divergence point reached
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::sqrt(3.14159265358979323846 / (2.0 * r)) * std::exp(-r) * sum;
}

// ---------------------------------------------------------------------------
// Finite differences.

inline Vec3 fd_gradient(const std::function<double(const Vec3&)>& f, const Vec3& x,
                        double h = 1e-5) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e(i) = h;
        g(i) = (f(x + e) - f(x - e)) / (2.0 * h);
    }
    return g;
}

// Hessian from central differences of an analytic gradient.
inline Mat3 fd_hessian(const std::function<Vec3(const Vec3&)>& grad, const Vec3& x,
                       double h = 1e-5) {
    Mat3 hess;
    for (int j = 0; j < 3; ++j) {
        Vec3 e = Vec3::Zero();
        e(j) = h;
        hess.col(j) = (grad(x + e) - grad(x - e)) / (2.0 * h);
    }
    return 0.5 * (hess + hess.transpose());
}

inline double fd_laplacian(const std::function<double(const Vec3&)>& f, const Vec3& x,
                           double h = 6e-4) {
    const auto lap = [&](double hh) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e(i) = hh;
            acc += (f(x + e) - 2.0 * f(x) + f(x - e)) / (hh * hh);
        }
        return acc;
    };
    // Richardson: kills the O(h^2) truncation term.
    return (4.0 * lap(0.5 * h) - lap(h)) / 3.0;
}

// ---------------------------------------------------------------------------
// Definitional tangential-stencil oracle for the divergence-form operator:
// L fn = -sum_a a . d/de [ (A P grad fn)(cp(x + e a)) ] + b fn over an
// orthonormal tangent basis {a}, with the curve points retracted back onto
// the surface. Independent of the normal-Jacobian product-rule path.
inline double elliptic_tangential_fd(const EllipticProblem& pb, const AmbientC2Function& fn,
                                     const Vec3& x, double t, double step = 1e-4) {
    const Surface& s = *pb.surface;
    const Vec3 n = s.unit_normal(x);
    Vec3 t1 = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    t1 = (t1 - n * n.dot(t1)).normalized();
    const Vec3 t2 = n.cross(t1);

    const auto g_field = [&](const Vec3& y) -> Vec3 {
        const Mat3 p = s.projection(y);
        const Mat3 a = pb.tensor.eval(y);
        return a * (p * fn.gradient(y, t));
    };

    const auto div_at = [&](double h) {
        double div = 0.0;
        for (const Vec3& a : {t1, t2}) {
            const Vec3 yp = s.closest_point(x + h * a);
            const Vec3 ym = s.closest_point(x - h * a);
            div += a.dot(g_field(yp) - g_field(ym)) / (2.0 * h);
        }
        return div;
    };
    // Richardson pair of the second-order stencil; removes its O(h^2) bias so
    // the comparison tolerance is spent on the production path, not on the
    // oracle.
    const double div = (4.0 * div_at(0.5 * step) - div_at(step)) / 3.0;
    return -div + pb.b * fn.value(x, t);
}

// ---------------------------------------------------------------------------
// Ambient function helpers.

inline AmbientC2Function ambient_linear(const Vec3& c) {
    AmbientC2Function f;
    f.value = [c](const Vec3& x, double) { return c.dot(x); };
    f.gradient = [c](const Vec3&, double) { return c; };
    f.hessian = [](const Vec3&, double) { return Mat3::Zero(); };
    f.time_derivative = [](const Vec3&, double) { return 0.0; };
    return f;
}

inline AmbientC2Function ambient_quadratic(const Mat3& m) {
    AmbientC2Function f;
    const Mat3 sym = m + m.transpose();
    f.value = [m](const Vec3& x, double) { return x.dot(m * x); };
    f.gradient = [sym](const Vec3& x, double) -> Vec3 { return sym * x; };
    f.hessian = [sym](const Vec3&, double) { return sym; };
    f.time_derivative = [](const Vec3&, double) { return 0.0; };
    return f;
}

inline AmbientC2Function ambient_constant(double c) {
    AmbientC2Function f;
    f.value = [c](const Vec3&, double) { return c; };
    f.gradient = [](const Vec3&, double) { return Vec3::Zero(); };
    f.hessian = [](const Vec3&, double) { return Mat3::Zero(); };
    f.time_derivative = [](const Vec3&, double) { return 0.0; };
    return f;
}

// fn * (1 + F^2): same restriction to {F = 0}, different ambient extension.
inline AmbientC2Function reextended(const AmbientC2Function& fn,
                                    std::shared_ptr<const Surface> s) {
    AmbientC2Function out;
    out.value = [fn, s](const Vec3& x, double t) {
        const double lf = s->level(x);
        return fn.value(x, t) * (1.0 + lf * lf);
    };
    out.gradient = [fn, s](const Vec3& x, double t) -> Vec3 {
        const double lf = s->level(x);
        return fn.gradient(x, t) * (1.0 + lf * lf) + fn.value(x, t) * 2.0 * lf * s->level_gradient(x);
    };
    out.hessian = [fn, s](const Vec3& x, double t) -> Mat3 {
        const double lf = s->level(x);
        const Vec3 gf = s->level_gradient(x);
        const Vec3 gw = 2.0 * lf * gf;  // grad of (1 + F^2)
        const Mat3 hw = 2.0 * (gf * gf.transpose() + lf * s->level_hessian(x));
        const Vec3 gfn = fn.gradient(x, t);
        return fn.hessian(x, t) * (1.0 + lf * lf) + gfn * gw.transpose() + gw * gfn.transpose() +
               fn.value(x, t) * hw;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Durand-Kerner roots of a monic polynomial given coefficients
// p(z) = z^n + c[0] z^{n-1} + ... + c[n-1].
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    using cplx = std::complex<double>;
    const int n = static_cast<int>(coeffs.size());
    std::vector<cplx> z(n);
    cplx seed(0.4, 0.9);
    cplx acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        z[i] = acc;
    }
    const auto eval = [&](cplx x) {
        cplx v(1.0, 0.0);
        for (int i = 0; i < n; ++i) v = v * x + coeffs[i];
        return v;
    };
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            const cplx delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier (small dims):
// p(z) = z^n + c[0] z^{n-1} + ... + c[n-1].
inline std::vector<double> characteristic_polynomial(const rbfmol::Matrix& a) {
    const int n = static_cast<int>(a.rows());
    rbfmol::Matrix m = a;
    std::vector<double> c(n);
    c[0] = -m.trace();
    for (int k = 2; k <= n; ++k) {
        m = a * (m + c[k - 2] * rbfmol::Matrix::Identity(n, n));
        c[k - 1] = -m.trace() / k;
    }
    return c;
}

}  // namespace oracles
