#include "rbfmol/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "rbfmol/bessel.hpp"

namespace rbfmol {

namespace {

// Radii below this are indistinguishable from 0 in Phi_nu for nu >= 1: the
// leading correction is O(r^2 log r).
constexpr double kCoincidentRadius = 1e-10;

double phi_zero_limit(int nu) {
    double g = 1.0;  // Gamma(nu) = (nu-1)!
    for (int k = 2; k < nu; ++k) g *= k;
    return std::ldexp(g, nu - 1);
}

}  // namespace

double matern_phi(int nu, double r) {
    if (nu < 1) throw std::domain_error("matern_phi: requires nu >= 1");
    if (r < 0.0) throw std::domain_error("matern_phi: requires r >= 0");
    if (r < kCoincidentRadius) return phi_zero_limit(nu);
    return std::pow(r, nu) * bessel_k(nu, r);
}

SobolevKernel::SobolevKernel(int m, int d) : m_(m), d_(d), nu_(m - 1) {
    if (d != 3) throw std::invalid_argument("SobolevKernel: only ambient dimension 3 is supported");
    if (m < 4) throw std::invalid_argument("SobolevKernel: smoothness order m >= 4 required");
    if (m > 30) throw std::invalid_argument("SobolevKernel: smoothness order m <= 30 required");
}

void SobolevKernel::phi_ladder(double r, double& p0, double& p1, double& p2) const {
    if (r < kCoincidentRadius) {
        p0 = phi_zero_limit(nu_);
        p1 = phi_zero_limit(nu_ - 1);
        p2 = phi_zero_limit(nu_ - 2);
        return;
    }
    double k[32];
    bessel_k_sequence(nu_, r, k);
    const double rp2 = std::pow(r, nu_ - 2);
    p2 = rp2 * k[nu_ - 2];
    p1 = rp2 * r * k[nu_ - 1];
    p0 = rp2 * r * r * k[nu_];
}

KernelJet SobolevKernel::eval_full(const Vec3& x, const Vec3& z) const {
    const Vec3 d = x - z;
    double p0, p1, p2;
    phi_ladder(d.norm(), p0, p1, p2);
    KernelJet jet;
    jet.value = p0;
    jet.gradient = -p1 * d;
    jet.hessian = p2 * (d * d.transpose()) - p1 * Mat3::Identity();
    return jet;
}

}  // namespace rbfmol
