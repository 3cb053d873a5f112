#include "rbfmol/discrete_system.hpp"

#include <cmath>
#include <limits>

namespace rbfmol {

Matrix kernel_matrix(const SobolevKernel& kernel, const PointCloud& x, const PointCloud& z) {
    Matrix psi(x.size(), z.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < z.size(); ++j)
            psi(i, j) = kernel.value_r((x.points[i] - z.points[j]).norm());
    return psi;
}

DiscreteSystem assemble(std::shared_ptr<const EllipticProblem> problem, const PointCloud& z,
                        const PointCloud& x, const SobolevKernel& kernel) {
    const int n_z = z.size(), n_x = x.size();
    if (n_x < n_z) throw ShapeError("assemble: n_X >= n_Z required (oversampling ratio >= 1)");

    DiscreteSystem sys;
    sys.Z = z;
    sys.X = x;
    sys.kernel = kernel;
    sys.problem = problem;
    sys.Psi_XZ.resize(n_x, n_z);
    sys.LPsi_XZ.resize(n_x, n_z);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        const Vec3 xi = x.points[i];
        const OperatorContext ctx = make_operator_context(*problem, xi);
        double p0, p1, p2;
        for (int j = 0; j < n_z; ++j) {
            const Vec3 d = xi - z.points[j];
            kernel.phi_ladder(d.norm(), p0, p1, p2);
            const Vec3 grad = -p1 * d;
            const Mat3 hess = p2 * (d * d.transpose()) - p1 * Mat3::Identity();
            sys.Psi_XZ(i, j) = p0;
            sys.LPsi_XZ(i, j) = apply_elliptic(ctx, p0, grad, hess);
        }
    }

    sys.Psi_ZZ = kernel_matrix(kernel, z, z);
    sys.Psi_ZZ = 0.5 * (sys.Psi_ZZ + sys.Psi_ZZ.transpose());  // exact symmetry

    dense::ReducedQR qr = dense::reduced_qr(sys.Psi_XZ);
    sys.Q = std::move(qr.Q);
    sys.R = std::move(qr.R);
    sys.r_zero_diag = std::move(qr.zero_diagonal);
    sys.mass_degenerate = !sys.r_zero_diag.empty();
    sys.r_floor = 1e-14 * qr.diag_max;
    sys.C = -(sys.Q.transpose() * sys.LPsi_XZ);

    if (problem->separable_forcing.has_value()) {
        const SeparableForcing& sf = *problem->separable_forcing;
        sys.forcing_mode = DiscreteSystem::ForcingMode::separable;
        sys.f_u.resize(n_x);
        sys.f_w.resize(n_x);
        for (int i = 0; i < n_x; ++i) {
            sys.f_u(i) = sf.field_u(x.points[i]);
            sys.f_w(i) = sf.field_w(x.points[i]);
        }
        sys.f_qu = sys.Q.transpose() * sys.f_u;
        sys.f_qw = sys.Q.transpose() * sys.f_w;
        sys.f_a = sf.coef_a;
        sys.f_b = sf.coef_b;
    } else if (problem->forcing) {
        sys.forcing_mode = DiscreteSystem::ForcingMode::generic;
    } else {
        sys.forcing_mode = DiscreteSystem::ForcingMode::none;
    }
    return sys;
}

void DiscreteSystem::forcing_at(double t, Vector& out) const {
    switch (forcing_mode) {
        case ForcingMode::none:
            out = Vector::Zero(nx());
            break;
        case ForcingMode::separable:
            out = f_a(t) * f_u + f_b(t) * f_w;
            break;
        case ForcingMode::generic: {
            out.resize(nx());
            const auto& fx = problem->forcing;
            for (int i = 0; i < nx(); ++i) out(i) = fx(X.points[i], t);
            break;
        }
    }
}

void DiscreteSystem::reduced_forcing_at(double t, Vector& out) const {
    switch (forcing_mode) {
        case ForcingMode::none:
            out = Vector::Zero(nz());
            break;
        case ForcingMode::separable:
            out = f_a(t) * f_qu + f_b(t) * f_qw;
            break;
        case ForcingMode::generic: {
            Vector fx_vec;
            forcing_at(t, fx_vec);
            dense::gemv_t(Q, fx_vec, out);
            break;
        }
    }
}

Matrix ode_matrix(const DiscreteSystem& sys) {
    const int n = sys.nz();
    Matrix m(n, n);
    bool floored = false;
    for (int j = 0; j < n; ++j) {
        if (sys.mass_degenerate)
            m.col(j) = dense::solve_upper_triangular_floored(sys.R, sys.C.col(j), sys.r_floor,
                                                             &floored);
        else
            m.col(j) = dense::solve_upper_triangular(sys.R, sys.C.col(j));
    }
    return m;
}

Vector interpolate_initial(const DiscreteSystem& sys,
                           const std::function<double(const Vec3&)>& g) {
    Vector gz(sys.nz());
    for (int i = 0; i < sys.nz(); ++i) gz(i) = g ? g(sys.Z.points[i]) : 0.0;
    if (!g || gz.isZero(0.0)) return Vector::Zero(sys.nz());
    return dense::solve_spd(sys.Psi_ZZ, gz);
}

Matrix evaluation_matrix(const DiscreteSystem& sys, const std::vector<Vec3>& y) {
    Matrix psi(static_cast<int>(y.size()), sys.nz());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(y.size()); ++i)
        for (int j = 0; j < sys.nz(); ++j)
            psi(i, j) = sys.kernel.value_r((y[i] - sys.Z.points[j]).norm());
    return psi;
}

Vector evaluate_solution(const DiscreteSystem& sys, const Vector& lambda,
                         const std::vector<Vec3>& y) {
    if (lambda.size() != sys.nz()) throw ShapeError("evaluate_solution: coefficient length");
    Vector out(static_cast<int>(y.size()));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        double acc = 0.0;
        for (int j = 0; j < sys.nz(); ++j)
            acc += sys.kernel.value_r((y[i] - sys.Z.points[j]).norm()) * lambda(j);
        out(i) = acc;
    }
    return out;
}

}  // namespace rbfmol
