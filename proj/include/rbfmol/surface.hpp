#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "rbfmol/types.hpp"

namespace rbfmol {

/// Closed surface {F = 0} described by an implicit level function with
/// analytic gradient and Hessian, plus an axis-aligned bounding box.
class Surface {
  public:
    using ScalarFn = std::function<double(const Vec3&)>;
    using GradFn = std::function<Vec3(const Vec3&)>;
    using HessFn = std::function<Mat3(const Vec3&)>;

    Surface(std::string name, ScalarFn level, GradFn grad, HessFn hess, Vec3 box_lo, Vec3 box_hi);

    const std::string& name() const { return name_; }
    double level(const Vec3& p) const { return level_(p); }
    Vec3 level_gradient(const Vec3& p) const { return grad_(p); }
    Mat3 level_hessian(const Vec3& p) const { return hess_(p); }
    const Vec3& box_lo() const { return box_lo_; }
    const Vec3& box_hi() const { return box_hi_; }

    /// Unit outward normal n = grad F / |grad F|.
    /// Throws SingularGradientError when |grad F| < 1e-12.
    Vec3 unit_normal(const Vec3& x) const;

    /// n together with the tangent-space projector P = I - n n^T.
    std::pair<Vec3, Mat3> normal_and_projection(const Vec3& x) const;
    Mat3 projection(const Vec3& x) const { return normal_and_projection(x).second; }

    /// Jacobian of the normal field, Jn = P HessF / |grad F|; n^T Jn = 0.
    Mat3 normal_jacobian(const Vec3& x) const;

    /// Euclidean closest-point retraction. Damped Newton on the Lagrange
    /// conditions (x - y || grad F(x), F(x) = 0); converged iterate has
    /// |F| <= 1e-12 and tangential residual <= 1e-10.
    /// Throws RetractionFailure after 100 iterations without convergence.
    Vec3 closest_point(const Vec3& y) const;

    /// |y - cp(y)|.
    double distance(const Vec3& y) const { return (y - closest_point(y)).norm(); }

    // Catalog.
    static std::shared_ptr<const Surface> sphere();
    static std::shared_ptr<const Surface> torus();
    static std::shared_ptr<const Surface> orthocircle();
    static std::shared_ptr<const Surface> cyclide();
    static std::shared_ptr<const Surface> by_name(const std::string& name);  // ConfigError

  private:
    std::string name_;
    ScalarFn level_;
    GradFn grad_;
    HessFn hess_;
    Vec3 box_lo_, box_hi_;
};

/// Point on the standard torus parametrization
/// ((1 + cos(theta)/3) cos(phi), (1 + cos(theta)/3) sin(phi), sin(theta)/3).
Vec3 torus_point(double theta, double phi);

}  // namespace rbfmol
