#pragma once

#include "rbfmol/types.hpp"

namespace rbfmol {

/// Radial profile Phi_nu(r) = r^nu K_nu(r) with the analytic limit
/// Phi_nu(0) = 2^(nu-1) Gamma(nu). Strictly decreasing on [0, inf).
double matern_phi(int nu, double r);

struct KernelJet {
    double value = 0.0;
    Vec3 gradient = Vec3::Zero();
    Mat3 hessian = Mat3::Zero();
};

/// Whittle-Matern-Sobolev kernel Psi(x,z) = Phi_nu(||x-z||) with
/// nu = (m + 1/2) - d/2. Only d = 3 is supported, so nu = m - 1 is a
/// positive integer and first/second derivatives stay in integer Bessel
/// orders via the ladder d/dr[r^nu K_nu(r)] = -r^nu K_{nu-1}(r):
///
///   grad_x Psi = -Phi_{nu-1}(r) (x - z)
///   hess_x Psi =  Phi_{nu-2}(r) (x-z)(x-z)^T - Phi_{nu-1}(r) I
class SobolevKernel {
  public:
    SobolevKernel() : SobolevKernel(4, 3) {}
    // Throws std::invalid_argument unless m >= 4 and d == 3.
    SobolevKernel(int m, int d);
    explicit SobolevKernel(int m) : SobolevKernel(m, 3) {}

    int smoothness() const { return m_; }
    int ambient_dim() const { return d_; }
    int bessel_order() const { return nu_; }

    double value_r(double r) const { return matern_phi(nu_, r); }
    double operator()(const Vec3& x, const Vec3& z) const { return value_r((x - z).norm()); }

    KernelJet eval_full(const Vec3& x, const Vec3& z) const;

    // Phi_nu, Phi_{nu-1}, Phi_{nu-2} at the same radius in one Bessel sweep;
    // this is the assembly hot path.
    void phi_ladder(double r, double& p0, double& p1, double& p2) const;

  private:
    int m_ = 4;
    int d_ = 3;
    int nu_ = 3;
};

}  // namespace rbfmol
