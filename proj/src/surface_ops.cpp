#include "rbfmol/surface_ops.hpp"

#include <cmath>

namespace rbfmol {

DiffusionTensor DiffusionTensor::identity() {
    DiffusionTensor t;
    t.kind = Kind::identity;
    t.eval = [](const Vec3&) -> Mat3 { return Mat3::Identity(); };
    t.jacobian = [](const Vec3&) -> std::array<Mat3, 3> {
        return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    };
    return t;
}

DiffusionTensor DiffusionTensor::tangential_x1_weighted(std::shared_ptr<const Surface> surface) {
    DiffusionTensor t;
    t.kind = Kind::anisotropic_custom;
    t.eval = [surface](const Vec3& x) -> Mat3 {
        Mat3 d = Mat3::Identity();
        d(0, 0) = 1.0 + x.x() * x.x();
        return surface->projection(x) * d;
    };
    t.jacobian = [surface](const Vec3& x) -> std::array<Mat3, 3> {
        const auto [n, p] = surface->normal_and_projection(x);
        const Mat3 jn = surface->normal_jacobian(x);
        Mat3 d = Mat3::Identity();
        d(0, 0) = 1.0 + x.x() * x.x();
        std::array<Mat3, 3> out;
        for (int j = 0; j < 3; ++j) {
            const Vec3 jn_col = jn.col(j);
            // d_j P = -(Jn e_j) n^T - n (Jn e_j)^T
            const Mat3 dp = -(jn_col * n.transpose() + n * jn_col.transpose());
            out[j] = dp * d;
        }
        // d_1 diag(1+x1^2,1,1) contributes only through the (.,0) column.
        out[0].col(0) += 2.0 * x.x() * p.col(0);
        return out;
    };
    return t;
}

AmbientC2Function SeparableExact::as_ambient() const {
    AmbientC2Function f;
    const AmbientC2Function sp = spatial;
    const auto tf = time_factor;
    const auto tfd = time_factor_dt;
    f.value = [sp, tf](const Vec3& x, double t) { return sp.value(x, 0.0) * tf(t); };
    f.gradient = [sp, tf](const Vec3& x, double t) -> Vec3 { return sp.gradient(x, 0.0) * tf(t); };
    f.hessian = [sp, tf](const Vec3& x, double t) -> Mat3 { return sp.hessian(x, 0.0) * tf(t); };
    f.time_derivative = [sp, tfd](const Vec3& x, double t) { return sp.value(x, 0.0) * tfd(t); };
    return f;
}

OperatorContext make_operator_context(const EllipticProblem& problem, const Vec3& x) {
    OperatorContext ctx;
    const auto [n, p] = problem.surface->normal_and_projection(x);
    ctx.n = n;
    ctx.P = p;
    ctx.Jn = problem.surface->normal_jacobian(x);
    ctx.b = problem.b;
    ctx.identity_tensor = problem.tensor.kind == DiffusionTensor::Kind::identity;
    if (ctx.identity_tensor) {
        ctx.A = Mat3::Identity();
        ctx.dA = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    } else {
        ctx.A = problem.tensor.eval(x);
        ctx.dA = problem.tensor.jacobian(x);
    }
    return ctx;
}

double apply_elliptic(const OperatorContext& ctx, double value, const Vec3& grad,
                      const Mat3& hess) {
    const double n_dot_g = ctx.n.dot(grad);
    const Vec3 w = ctx.Jn.transpose() * grad + hess * ctx.n;
    const Mat3 t = hess - n_dot_g * ctx.Jn - ctx.n * w.transpose();

    double div = 0.0;
    if (ctx.identity_tensor) {
        div = ctx.P.cwiseProduct(t).sum();
    } else {
        div = ctx.P.cwiseProduct(ctx.A * t).sum();
        const Vec3 pg = ctx.P * grad;
        for (int j = 0; j < 3; ++j) div += ctx.P.col(j).dot(ctx.dA[j] * pg);
    }
    return -div + ctx.b * value;
}

Vec3 surface_gradient(const Surface& surface, const AmbientC2Function& fn, const Vec3& x,
                      double t) {
    return surface.projection(x) * fn.gradient(x, t);
}

double apply_elliptic_operator(const EllipticProblem& problem, const AmbientC2Function& fn,
                               const Vec3& x, double t) {
    const OperatorContext ctx = make_operator_context(problem, x);
    return apply_elliptic(ctx, fn.value(x, t), fn.gradient(x, t), fn.hessian(x, t));
}

std::function<double(const Vec3&, double)> manufactured_forcing(const EllipticProblem& problem,
                                                                const AmbientC2Function& exact) {
    EllipticProblem frozen = problem;  // snapshot; avoids self-reference once installed
    frozen.forcing = nullptr;
    frozen.separable_forcing.reset();
    return [frozen, exact](const Vec3& x, double t) {
        return exact.time_derivative(x, t) + apply_elliptic_operator(frozen, exact, x, t);
    };
}

void attach_manufactured_solution(EllipticProblem& problem, const SeparableExact& exact) {
    const AmbientC2Function ambient = exact.as_ambient();
    problem.forcing = manufactured_forcing(problem, ambient);
    problem.initial = [ambient, t0 = problem.t0](const Vec3& x) { return ambient.value(x, t0); };

    EllipticProblem frozen = problem;
    frozen.forcing = nullptr;
    frozen.separable_forcing.reset();
    SeparableForcing sf;
    sf.coef_a = exact.time_factor_dt;
    sf.coef_b = exact.time_factor;
    sf.field_u = [sp = exact.spatial](const Vec3& x) { return sp.value(x, 0.0); };
    sf.field_w = [frozen, sp = exact.spatial](const Vec3& x) {
        return apply_elliptic_operator(frozen, sp, x, 0.0);
    };
    problem.separable_forcing = sf;
}

SeparableExact exact_exp_x1() {
    SeparableExact e;
    e.spatial.value = [](const Vec3& x, double) { return std::exp(x.x()); };
    e.spatial.gradient = [](const Vec3& x, double) -> Vec3 {
        return {std::exp(x.x()), 0.0, 0.0};
    };
    e.spatial.hessian = [](const Vec3& x, double) -> Mat3 {
        Mat3 h = Mat3::Zero();
        h(0, 0) = std::exp(x.x());
        return h;
    };
    e.time_factor = [](double t) { return std::exp(1.0 / (1.0 + t)); };
    e.time_factor_dt = [](double t) {
        const double s = 1.0 + t;
        return -std::exp(1.0 / s) / (s * s);
    };
    return e;
}

}  // namespace rbfmol
