#include "rbfmol/surface.hpp"

#include <cmath>

namespace rbfmol {

Surface::Surface(std::string name, ScalarFn level, GradFn grad, HessFn hess, Vec3 box_lo,
                 Vec3 box_hi)
    : name_(std::move(name)),
      level_(std::move(level)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      box_lo_(box_lo),
      box_hi_(box_hi) {}

Vec3 Surface::unit_normal(const Vec3& x) const {
    const Vec3 g = grad_(x);
    const double gn = g.norm();
    if (gn < 1e-12)
        throw SingularGradientError("singular level-set gradient on surface '" + name_ + "'");
    return g / gn;
}

std::pair<Vec3, Mat3> Surface::normal_and_projection(const Vec3& x) const {
    const Vec3 n = unit_normal(x);
    return {n, Mat3::Identity() - n * n.transpose()};
}

Mat3 Surface::normal_jacobian(const Vec3& x) const {
    const Vec3 g = grad_(x);
    const double gn = g.norm();
    if (gn < 1e-12)
        throw SingularGradientError("singular level-set gradient on surface '" + name_ + "'");
    const Vec3 n = g / gn;
    const Mat3 p = Mat3::Identity() - n * n.transpose();
    return p * hess_(x) / gn;
}

Vec3 Surface::closest_point(const Vec3& y) const {
    Vec3 x = y;

    // A few plain level-set projections give Newton a good starting point.
    for (int i = 0; i < 5; ++i) {
        const Vec3 g = grad_(x);
        const double g2 = g.squaredNorm();
        if (g2 < 1e-24) break;
        x -= level_(x) / g2 * g;
    }

    const auto residual = [&](const Vec3& xx, double mu, Eigen::Vector4d& r) {
        const Vec3 g = grad_(xx);
        r.head<3>() = xx - y + mu * g;
        r(3) = level_(xx);
    };

    double mu = 0.0;
    {
        const Vec3 g = grad_(x);
        const double g2 = g.squaredNorm();
        if (g2 > 1e-24) mu = (y - x).dot(g) / g2;
    }

    Eigen::Vector4d res;
    residual(x, mu, res);
    double res_norm = res.norm();

    for (int it = 0; it < 100; ++it) {
        const Vec3 g = grad_(x);
        // Convergence check: on-level and (y - x) parallel to grad F.
        const double gn = g.norm();
        if (gn > 1e-12) {
            const Vec3 n = g / gn;
            const Vec3 d = y - x;
            const Vec3 tang = d - n * n.dot(d);
            if (std::abs(level_(x)) <= 1e-12 && tang.norm() <= 1e-10 * std::max(1.0, d.norm()))
                return x;
        }

        Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
        jac.topLeftCorner<3, 3>() = Mat3::Identity() + mu * hess_(x);
        jac.topRightCorner<3, 1>() = g;
        jac.bottomLeftCorner<1, 3>() = g.transpose();
        residual(x, mu, res);
        const Eigen::Vector4d step = jac.partialPivLu().solve(-res);
        if (!step.allFinite()) break;

        // Damped update: halve the step while the residual grows.
        double alpha = 1.0;
        Vec3 x_new = x + step.head<3>();
        double mu_new = mu + step(3);
        Eigen::Vector4d res_new;
        residual(x_new, mu_new, res_new);
        int halvings = 0;
        while (res_new.norm() > res_norm && halvings < 40) {
            alpha *= 0.5;
            x_new = x + alpha * step.head<3>();
            mu_new = mu + alpha * step(3);
            residual(x_new, mu_new, res_new);
            ++halvings;
        }
        x = x_new;
        mu = mu_new;
        res_norm = res_new.norm();
    }
    throw RetractionFailure("closest_point: no convergence retracting onto '" + name_ + "'");
}

Vec3 torus_point(double theta, double phi) {
    const double ring = 1.0 + std::cos(theta) / 3.0;
    return {ring * std::cos(phi), ring * std::sin(phi), std::sin(theta) / 3.0};
}

namespace {

std::shared_ptr<const Surface> make_sphere() {
    return std::make_shared<Surface>(
        "sphere", [](const Vec3& p) { return p.squaredNorm() - 1.0; },
        [](const Vec3& p) -> Vec3 { return 2.0 * p; },
        [](const Vec3&) -> Mat3 { return 2.0 * Mat3::Identity(); }, Vec3(-1.1, -1.1, -1.1),
        Vec3(1.1, 1.1, 1.1));
}

// (x^2 + y^2 + z^2 + 1 - 1/9)^2 - 4 (x^2 + y^2) = 0: ring of radius 1, tube 1/3.
std::shared_ptr<const Surface> make_torus() {
    const auto s_of = [](const Vec3& p) { return p.squaredNorm() + 1.0 - 1.0 / 9.0; };
    return std::make_shared<Surface>(
        "torus",
        [=](const Vec3& p) {
            const double s = s_of(p);
            return s * s - 4.0 * (p.x() * p.x() + p.y() * p.y());
        },
        [=](const Vec3& p) -> Vec3 {
            const double s = s_of(p);
            return 4.0 * s * p - 8.0 * Vec3(p.x(), p.y(), 0.0);
        },
        [=](const Vec3& p) -> Mat3 {
            const double s = s_of(p);
            Mat3 h = 4.0 * s * Mat3::Identity() + 8.0 * p * p.transpose();
            h(0, 0) -= 8.0;
            h(1, 1) -= 8.0;
            return h;
        },
        Vec3(-1.45, -1.45, -0.45), Vec3(1.45, 1.45, 0.45));
}

// [(x^2+y^2-1)^2+z^2][(y^2+z^2-1)^2+x^2][(x^2+z^2-1)^2+y^2]
//   - 0.075^2 [1 + 3(x^2+y^2+z^2)] = 0: three interlocked thickened circles.
struct OrthoFactors {
    double f[3];
    Vec3 g[3];
    Mat3 h[3];
};

OrthoFactors ortho_factors(const Vec3& p) {
    OrthoFactors o;
    const double x = p.x(), y = p.y(), z = p.z();
    // factor i pairs coordinates (a,b) on the ring and the remaining axis c:
    // f = (a^2 + b^2 - 1)^2 + c^2
    const int pairs[3][3] = {{0, 1, 2}, {1, 2, 0}, {0, 2, 1}};
    const double c[3] = {x, y, z};
    for (int i = 0; i < 3; ++i) {
        const int ia = pairs[i][0], ib = pairs[i][1], ic = pairs[i][2];
        const double ring = c[ia] * c[ia] + c[ib] * c[ib] - 1.0;
        o.f[i] = ring * ring + c[ic] * c[ic];
        Vec3 g = Vec3::Zero();
        g(ia) = 4.0 * c[ia] * ring;
        g(ib) = 4.0 * c[ib] * ring;
        g(ic) = 2.0 * c[ic];
        o.g[i] = g;
        Mat3 h = Mat3::Zero();
        h(ia, ia) = 4.0 * ring + 8.0 * c[ia] * c[ia];
        h(ib, ib) = 4.0 * ring + 8.0 * c[ib] * c[ib];
        h(ia, ib) = h(ib, ia) = 8.0 * c[ia] * c[ib];
        h(ic, ic) = 2.0;
        o.h[i] = h;
    }
    return o;
}

std::shared_ptr<const Surface> make_orthocircle() {
    constexpr double w = 0.075 * 0.075;
    return std::make_shared<Surface>(
        "orthocircle",
        [](const Vec3& p) {
            const OrthoFactors o = ortho_factors(p);
            return o.f[0] * o.f[1] * o.f[2] - w * (1.0 + 3.0 * p.squaredNorm());
        },
        [](const Vec3& p) -> Vec3 {
            const OrthoFactors o = ortho_factors(p);
            return o.f[1] * o.f[2] * o.g[0] + o.f[0] * o.f[2] * o.g[1] + o.f[0] * o.f[1] * o.g[2] -
                   6.0 * w * p;
        },
        [](const Vec3& p) -> Mat3 {
            const OrthoFactors o = ortho_factors(p);
            Mat3 h = o.f[1] * o.f[2] * o.h[0] + o.f[0] * o.f[2] * o.h[1] + o.f[0] * o.f[1] * o.h[2];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    const int k = 3 - i - j;
                    h += o.f[k] * (o.g[i] * o.g[j].transpose());
                }
            h -= 6.0 * w * Mat3::Identity();
            return h;
        },
        Vec3(-1.25, -1.25, -1.25), Vec3(1.25, 1.25, 1.25));
}

// Ring Dupin cyclide (x^2+y^2+z^2+b^2-d^2)^2 - 4(ax-cd)^2 - 4b^2y^2 = 0
// with a = 2, b = 1.9, c = sqrt(a^2-b^2), d = 1.
std::shared_ptr<const Surface> make_cyclide() {
    constexpr double a = 2.0, b = 1.9, d = 1.0;
    const double c = std::sqrt(a * a - b * b);
    const double bd = b * b - d * d;
    return std::make_shared<Surface>(
        "cyclide",
        [=](const Vec3& p) {
            const double s = p.squaredNorm() + bd;
            const double u = a * p.x() - c * d;
            return s * s - 4.0 * u * u - 4.0 * b * b * p.y() * p.y();
        },
        [=](const Vec3& p) -> Vec3 {
            const double s = p.squaredNorm() + bd;
            const double u = a * p.x() - c * d;
            return 4.0 * s * p - Vec3(8.0 * a * u, 8.0 * b * b * p.y(), 0.0);
        },
        [=](const Vec3& p) -> Mat3 {
            const double s = p.squaredNorm() + bd;
            Mat3 h = 4.0 * s * Mat3::Identity() + 8.0 * p * p.transpose();
            h(0, 0) -= 8.0 * a * a;
            h(1, 1) -= 8.0 * b * b;
            return h;
        },
        Vec3(-3.85, -3.1, -2.4), Vec3(2.6, 3.1, 2.4));
}

}  // namespace

std::shared_ptr<const Surface> Surface::sphere() {
    static const auto s = make_sphere();
    return s;
}
std::shared_ptr<const Surface> Surface::torus() {
    static const auto s = make_torus();
    return s;
}
std::shared_ptr<const Surface> Surface::orthocircle() {
    static const auto s = make_orthocircle();
    return s;
}
std::shared_ptr<const Surface> Surface::cyclide() {
    static const auto s = make_cyclide();
    return s;
}

std::shared_ptr<const Surface> Surface::by_name(const std::string& name) {
    if (name == "sphere") return sphere();
    if (name == "torus") return torus();
    if (name == "orthocircle") return orthocircle();
    if (name == "cyclide") return cyclide();
    throw ConfigError("unknown surface '" + name + "'");
}

}  // namespace rbfmol
