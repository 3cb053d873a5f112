#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "rbfmol/surface.hpp"
#include "rbfmol/types.hpp"

namespace rbfmol {

/// Time-independent diffusion tensor A(x) with per-coordinate Jacobian
/// dA[j] = dA/dx_j, SPD on the tangent space.
struct DiffusionTensor {
    enum class Kind { identity, anisotropic_custom };
    Kind kind = Kind::identity;
    std::function<Mat3(const Vec3&)> eval;
    std::function<std::array<Mat3, 3>(const Vec3&)> jacobian;

    static DiffusionTensor identity();
    /// A(x) = P(x) diag(1 + x1^2, 1, 1): tangentially SPD, x1-weighted.
    static DiffusionTensor tangential_x1_weighted(std::shared_ptr<const Surface> surface);
};

/// Scalar ambient function with analytic gradient/Hessian; carrier for
/// kernel columns and exact solutions. time_derivative is optional.
struct AmbientC2Function {
    std::function<double(const Vec3&, double)> value;
    std::function<Vec3(const Vec3&, double)> gradient;
    std::function<Mat3(const Vec3&, double)> hessian;
    std::function<double(const Vec3&, double)> time_derivative;  // may be null
};

/// Exact solution of product form u(x,t) = spatial(x) * time_factor(t);
/// every manufactured experiment here has this structure, and it lets the
/// forcing vector f(X,t) reduce to two precomputed fields.
struct SeparableExact {
    AmbientC2Function spatial;  // time argument ignored
    std::function<double(double)> time_factor;
    std::function<double(double)> time_factor_dt;

    AmbientC2Function as_ambient() const;
};

/// f(x,t) = a(t) u(x) + b(t) w(x); cached at collocation points by assembly.
struct SeparableForcing {
    std::function<double(double)> coef_a, coef_b;
    std::function<double(const Vec3&)> field_u, field_w;
};

struct EllipticProblem {
    std::shared_ptr<const Surface> surface;
    DiffusionTensor tensor = DiffusionTensor::identity();
    double b = 0.0;  // constant reaction coefficient
    std::function<double(const Vec3&, double)> forcing;  // f(x,t); may be null (== 0)
    std::function<double(const Vec3&)> initial;          // g(x); may be null (== 0)
    double t0 = 0.0;
    double t1 = 1.0;
    std::optional<SeparableForcing> separable_forcing;
};

/// Frozen geometry/tensor data at one on-surface point: everything
/// apply_elliptic needs besides the function jet. Reused across all kernel
/// columns of a collocation row.
struct OperatorContext {
    Vec3 n;
    Mat3 P;
    Mat3 Jn;
    Mat3 A;
    std::array<Mat3, 3> dA;
    double b = 0.0;
    bool identity_tensor = true;
};

OperatorContext make_operator_context(const EllipticProblem& problem, const Vec3& x);

/// L_S fn at the context point from the value/gradient/Hessian of any smooth
/// ambient extension:
///   L_S fn = -sum_{ij} P_ij d_j g_i + b fn,   g = A P grad fn,
/// expanded by the product rule with d_j(P grad fn)_k =
///   Hess_kj - Jn_kj (n . grad) - n_k (Jn^T grad + Hess n)_j.
/// Exact on the surface for any extension.
double apply_elliptic(const OperatorContext& ctx, double value, const Vec3& grad,
                      const Mat3& hess);

/// Tangential gradient P(x) grad fn(x,t).
Vec3 surface_gradient(const Surface& surface, const AmbientC2Function& fn, const Vec3& x,
                      double t);

double apply_elliptic_operator(const EllipticProblem& problem, const AmbientC2Function& fn,
                               const Vec3& x, double t);

/// f(x,t) = d/dt exact + L_S exact, for exact solutions with a time
/// derivative evaluator.
std::function<double(const Vec3&, double)> manufactured_forcing(const EllipticProblem& problem,
                                                                const AmbientC2Function& exact);

/// Wires a separable exact solution into the problem: sets forcing to the
/// manufactured source and attaches its separable decomposition
/// f = psi'(t) phi(x) + psi(t) (L_S phi)(x).
void attach_manufactured_solution(EllipticProblem& problem, const SeparableExact& exact);

/// Exact solution exp(x1 + 1/(1+t)) used by the sphere/cyclide accuracy runs.
SeparableExact exact_exp_x1();

}  // namespace rbfmol
