#pragma once

#include <functional>
#include <memory>

#include "rbfmol/dense.hpp"
#include "rbfmol/kernel.hpp"
#include "rbfmol/point_cloud.hpp"
#include "rbfmol/surface_ops.hpp"
#include "rbfmol/types.hpp"

namespace rbfmol {

/// Collocation system for R lambda' = C lambda + Q^T f(X,t):
/// Psi_XZ[i][j] = Psi(x_i, z_j), LPsi_XZ[i][j] = (L_S Psi(., z_j))(x_i),
/// (Q, R) the reduced QR of Psi_XZ and C = -Q^T LPsi_XZ.
struct DiscreteSystem {
    PointCloud Z, X;
    SobolevKernel kernel;
    Matrix Psi_XZ, LPsi_XZ, Psi_ZZ;
    Matrix Q, R, C;
    bool mass_degenerate = false;  // R has numerically zero diagonal entries
    double r_floor = 0.0;          // diagonal floor used by degenerate solves
    std::vector<int> r_zero_diag;
    std::shared_ptr<const EllipticProblem> problem;

    // Forcing. Separable forcing reduces Q^T f(X,t) to two cached vectors.
    enum class ForcingMode { none, separable, generic };
    ForcingMode forcing_mode = ForcingMode::none;
    Vector f_u, f_w, f_qu, f_qw;             // separable caches
    std::function<double(double)> f_a, f_b;  // separable coefficients

    int nz() const { return static_cast<int>(Psi_XZ.cols()); }
    int nx() const { return static_cast<int>(Psi_XZ.rows()); }

    void forcing_at(double t, Vector& out) const;          // f(X, t)
    void reduced_forcing_at(double t, Vector& out) const;  // Q^T f(X, t)
};

/// Builds all matrices; ShapeError if n_X < n_Z. Entries parallelize over
/// collocation rows (geometry context computed once per row).
DiscreteSystem assemble(std::shared_ptr<const EllipticProblem> problem, const PointCloud& z,
                        const PointCloud& x, const SobolevKernel& kernel);

/// Kernel matrix Psi(X,Z) alone (condition-number studies).
Matrix kernel_matrix(const SobolevKernel& kernel, const PointCloud& x, const PointCloud& z);

/// M = R^{-1} C via triangular solves, the pseudoinverse ODE matrix
/// -Psi(X,Z)^dagger L_S Psi(X,Z) when Psi_XZ has full numerical rank.
/// Degenerate R falls back to the floored solve (flag on the system).
Matrix ode_matrix(const DiscreteSystem& sys);

/// Interpolant coefficients of g from the trial space: Psi_ZZ lambda = g(Z).
Vector interpolate_initial(const DiscreteSystem& sys, const std::function<double(const Vec3&)>& g);

/// Trial-space evaluation Psi(Y,Z) lambda.
Vector evaluate_solution(const DiscreteSystem& sys, const Vector& lambda,
                         const std::vector<Vec3>& y);

/// Psi(Y,Z) as a matrix, for reuse across many output times.
Matrix evaluation_matrix(const DiscreteSystem& sys, const std::vector<Vec3>& y);

}  // namespace rbfmol
