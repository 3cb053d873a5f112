#include "rbfmol/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace rbfmol {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kPi = 3.141592653589793238;

// Ascending series for K0, K1 on r <= 2 (all sums have positive terms, the
// only cancellation is against the log term).
void bessel_k01_series(double r, double& k0, double& k1) {
    const double x2 = 0.25 * r * r;
    const double lg = std::log(0.5 * r);

    // I0, I1 and the companion K sums share the term ladder (x2)^k / (k!)^2.
    double i0 = 1.0, i1_sum = 1.0;
    double k0_sum = 0.0, k1_sum = 1.0 - 2.0 * kEulerGamma;  // k = 0 term of the K1 sum
    double term = 1.0;                                      // (x2)^k / (k!)^2
    double hk = 0.0;                                        // harmonic number H_k
    for (int k = 1; k < 60; ++k) {
        term *= x2 / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term;
        k0_sum += hk * term;
        // I1 and K1 sums carry (x2)^k / (k! (k+1)!) = term / (k+1)
        const double t1 = term / (k + 1);
        i1_sum += t1;
        k1_sum += (2.0 * hk + 1.0 / (k + 1) - 2.0 * kEulerGamma) * t1;
        if (term < 1e-19 * i0) break;
    }
    const double i1 = 0.5 * r * i1_sum;
    k0 = -(lg + kEulerGamma) * i0 + k0_sum;
    k1 = 1.0 / r + lg * i1 - 0.25 * r * k1_sum;
}

// Temme-style continued fraction (CF2) for K0, K1 on r >= 2.
void bessel_k01_cf2(double r, double& k0, double& k1) {
    constexpr double eps = 1e-17;
    const double a1 = 0.25;  // 1/4 - mu^2 with mu = 0
    double b = 2.0 * (1.0 + r);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 30000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) <= eps) break;
    }
    h = a1 * h;
    k0 = std::sqrt(kPi / (2.0 * r)) * std::exp(-r) / s;
    k1 = k0 * (r + 0.5 - h) / r;
}

void bessel_k01(double r, double& k0, double& k1) {
    if (r < 2.0)
        bessel_k01_series(r, k0, k1);
    else
        bessel_k01_cf2(r, k0, k1);
}

}  // namespace

void bessel_k_sequence(int order, double r, double* k) {
    if (!(r > 0.0)) throw std::domain_error("bessel_k: requires r > 0");
    if (order < 0) throw std::domain_error("bessel_k: requires order >= 0");
    double k0, k1;
    bessel_k01(r, k0, k1);
    k[0] = k0;
    if (order >= 1) k[1] = k1;
    // Upward recurrence K_{n+1} = K_{n-1} + (2n/r) K_n; stable since K grows
    // with order.
    for (int n = 1; n < order; ++n) k[n + 1] = k[n - 1] + (2.0 * n / r) * k[n];
}

BesselK bessel_k_flagged(int order, double r) {
    if (!(r > 0.0)) throw std::domain_error("bessel_k: requires r > 0");
    if (r > 1500.0) return {0.0, true};  // exp(-r) underflowed long ago
    double buf[64];
    if (order < 64) {
        bessel_k_sequence(order, r, buf);
        const double v = buf[order];
        return {v, v == 0.0};
    }
    // Orders this high never occur in the kernel path; recur in a rolling pair.
    double k0, k1;
    bessel_k01(r, k0, k1);
    double km = k0, kc = k1;
    for (int n = 1; n < order; ++n) {
        const double kn = km + (2.0 * n / r) * kc;
        km = kc;
        kc = kn;
    }
    return {kc, kc == 0.0};
}

double bessel_k(int order, double r) { return bessel_k_flagged(order, r).value; }

}  // namespace rbfmol
