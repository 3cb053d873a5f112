#include "rbfmol/surface_ops.hpp"

#include <cmath>
#include <doctest.h>

#include "oracles.hpp"
#include "rbfmol/point_cloud.hpp"

using namespace rbfmol;

namespace {

EllipticProblem sphere_problem(double b) {
    EllipticProblem pb;
    pb.surface = Surface::sphere();
    pb.tensor = DiffusionTensor::identity();
    pb.b = b;
    return pb;
}

}  // namespace

TEST_CASE("surface gradient") {
    const auto sphere = Surface::sphere();
    const auto c = oracles::ambient_constant(4.2);
    CHECK(surface_gradient(*sphere, c, Vec3(0, 0, 1), 0.0).norm() == 0.0);

    const auto x1 = oracles::ambient_linear(Vec3(1, 0, 0));
    CHECK(surface_gradient(*sphere, x1, Vec3(1, 0, 0), 0.0).norm() <= 1e-14);
    CHECK((surface_gradient(*sphere, x1, Vec3(0, 1, 0), 0.0) - Vec3(1, 0, 0)).norm() <= 1e-14);

    // tangency on every catalog surface
    for (const auto& s : {Surface::torus(), Surface::orthocircle(), Surface::cyclide()}) {
        for (const Vec3& x : dense_surface_samples(*s, 10, 3)) {
            const Vec3 sg = surface_gradient(*s, x1, x, 0.0);
            CHECK(std::abs(sg.dot(s->unit_normal(x))) <= 1e-12);
        }
    }
}

TEST_CASE("elliptic operator on explicit sphere cases") {
    const auto pb3 = sphere_problem(3.0);
    const auto c = oracles::ambient_constant(2.5);
    CHECK(apply_elliptic_operator(pb3, c, Vec3(0, 0, 1), 0.0) ==
          doctest::Approx(7.5).epsilon(1e-13));

    const auto x1 = oracles::ambient_linear(Vec3(1, 0, 0));
    CHECK(apply_elliptic_operator(pb3, x1, Vec3(1, 0, 0), 0.0) ==
          doctest::Approx(5.0).epsilon(1e-13));

    const auto pb0 = sphere_problem(0.0);
    Mat3 m = Mat3::Zero();
    m(0, 1) = 1.0;  // x1 x2
    const auto x1x2 = oracles::ambient_quadratic(m);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(apply_elliptic_operator(pb0, x1x2, Vec3(inv_sqrt2, inv_sqrt2, 0), 0.0) ==
          doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("spherical harmonic eigenfunction identities") {
    const auto pb = sphere_problem(0.0);
    rbfmol::Rng rng(41);

    std::vector<std::pair<AmbientC2Function, int>> harmonics;
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e(i) = 1.0;
        harmonics.emplace_back(oracles::ambient_linear(e), 1);
    }
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        Mat3 m = Mat3::Zero();
        m(i, j) = 1.0;
        harmonics.emplace_back(oracles::ambient_quadratic(m), 2);
    }
    Mat3 diff = Mat3::Zero();
    diff(0, 0) = 1.0;
    diff(1, 1) = -1.0;  // x1^2 - x2^2
    harmonics.emplace_back(oracles::ambient_quadratic(diff), 2);

    for (int trial = 0; trial < 100; ++trial) {
        Vec3 x(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        while (x.norm() < 0.1) x = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        x.normalize();
        for (const auto& [fn, ell] : harmonics) {
            const double want = ell * (ell + 1) * fn.value(x, 0.0);
            CHECK(std::abs(apply_elliptic_operator(pb, fn, x, 0.0) - want) <= 1e-10);
        }
    }
}

TEST_CASE("extension independence") {
    rbfmol::Rng rng(43);
    for (const auto& s : {Surface::sphere(), Surface::torus()}) {
        EllipticProblem pb;
        pb.surface = s;
        pb.b = 1.0;
        Mat3 m;
        m << 0.3, 1.0, -0.2, 0.0, 0.5, 0.7, 0.1, 0.0, -0.4;
        const auto fn = oracles::ambient_quadratic(m);
        const auto fn2 = oracles::reextended(fn, s);
        for (const Vec3& x : dense_surface_samples(*s, 25, rng.next_u64())) {
            const double a = apply_elliptic_operator(pb, fn, x, 0.0);
            const double b = apply_elliptic_operator(pb, fn2, x, 0.0);
            CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("operator linearity") {
    const auto pb = sphere_problem(3.0);
    const auto f = oracles::ambient_linear(Vec3(0.2, -1.0, 0.4));
    Mat3 m;
    m << 1, 0.2, 0, 0.2, -0.7, 0.1, 0, 0.1, 0.3;
    const auto g = oracles::ambient_quadratic(m);

    AmbientC2Function combo;
    combo.value = [&](const Vec3& x, double t) { return 2.0 * f.value(x, t) - 3.0 * g.value(x, t); };
    combo.gradient = [&](const Vec3& x, double t) -> Vec3 {
        return 2.0 * f.gradient(x, t) - 3.0 * g.gradient(x, t);
    };
    combo.hessian = [&](const Vec3& x, double t) -> Mat3 {
        return 2.0 * f.hessian(x, t) - 3.0 * g.hessian(x, t);
    };

    for (const Vec3& x : dense_surface_samples(*Surface::sphere(), 20, 5)) {
        const double lhs = apply_elliptic_operator(pb, combo, x, 0.0);
        const double rhs = 2.0 * apply_elliptic_operator(pb, f, x, 0.0) -
                           3.0 * apply_elliptic_operator(pb, g, x, 0.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("manufactured forcing for the exponential solution") {
    EllipticProblem pb = sphere_problem(3.0);
    const SeparableExact exact = exact_exp_x1();
    const AmbientC2Function u = exact.as_ambient();
    const auto f = manufactured_forcing(pb, u);

    // d_t u = -e^2, -Lap_S u = 2 e^2, reaction 3 e^2 at (1,0,0), t = 0.
    const double e2 = std::exp(2.0);
    CHECK(f(Vec3(1, 0, 0), 0.0) == doctest::Approx(4.0 * e2).epsilon(1e-12));

    // constant exact solution: f = b c
    const auto c = oracles::ambient_constant(1.7);
    const auto fc = manufactured_forcing(pb, c);
    CHECK(fc(Vec3(0, 1, 0), 0.55) == doctest::Approx(3.0 * 1.7).epsilon(1e-13));

    // FD in t of exact + L exact vs manufactured value
    rbfmol::Rng rng(47);
    for (const Vec3& x : dense_surface_samples(*Surface::sphere(), 15, rng.next_u64())) {
        const double t = rng.uniform(0.0, 1.0);
        const double dt = 1e-6;
        const double dudt_fd = (u.value(x, t + dt) - u.value(x, t - dt)) / (2.0 * dt);
        const double want = dudt_fd + apply_elliptic_operator(pb, u, x, t);
        CHECK(std::abs(f(x, t) - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }

    // the separable wiring agrees with the generic forcing
    attach_manufactured_solution(pb, exact);
    REQUIRE(pb.separable_forcing.has_value());
    const auto& sf = *pb.separable_forcing;
    for (const Vec3& x : dense_surface_samples(*Surface::sphere(), 10, 51)) {
        for (double t : {0.0, 0.3, 0.9}) {
            const double split = sf.coef_a(t) * sf.field_u(x) + sf.coef_b(t) * sf.field_w(x);
            CHECK(pb.forcing(x, t) == doctest::Approx(split).epsilon(1e-12));
        }
    }
}

TEST_CASE("x1-weighted tangential tensor") {
    const auto cyclide = Surface::cyclide();
    const auto tensor = DiffusionTensor::tangential_x1_weighted(cyclide);

    rbfmol::Rng rng(53);
    const auto pts = dense_surface_samples(*cyclide, 40, rng.next_u64());
    for (const Vec3& x : pts) {
        const Mat3 a = tensor.eval(x);
        const Mat3 p = cyclide->projection(x);
        if (std::abs(x.x()) < 1e-8) CHECK((a - p).norm() <= 1e-12);

        // symmetry and positivity on the tangent space
        const Vec3 n = cyclide->unit_normal(x);
        Vec3 t1 = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
        t1 = (t1 - n * n.dot(t1)).normalized();
        const Vec3 t2 = n.cross(t1);
        CHECK(std::abs(t1.dot(a * t2) - t2.dot(a * t1)) <= 1e-12);
        CHECK(t1.dot(a * t1) > 0.0);
        CHECK(t2.dot(a * t2) > 0.0);

        // jacobian vs finite differences of the evaluator
        const auto da = tensor.jacobian(x);
        for (int j = 0; j < 3; ++j) {
            Vec3 e = Vec3::Zero();
            e(j) = 1e-5;
            const Mat3 fd = (tensor.eval(x + e) - tensor.eval(x - e)) / (2e-5);
            CHECK((da[j] - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
        }
    }
}

TEST_CASE("tangential stencil oracle on all surfaces and tensors") {
    rbfmol::Rng rng(59);
    Mat3 m;
    m << 0.5, 0.8, -0.1, 0.0, 0.4, 0.3, 0.2, 0.0, -0.6;
    const auto fn = oracles::ambient_quadratic(m);

    for (const auto& s :
         {Surface::sphere(), Surface::torus(), Surface::orthocircle(), Surface::cyclide()}) {
        for (bool anisotropic : {false, true}) {
            EllipticProblem pb;
            pb.surface = s;
            pb.b = 3.0;
            pb.tensor = anisotropic ? DiffusionTensor::tangential_x1_weighted(s)
                                    : DiffusionTensor::identity();
            for (const Vec3& x : dense_surface_samples(*s, 12, rng.next_u64())) {
                const double got = apply_elliptic_operator(pb, fn, x, 0.0);
                const double want = oracles::elliptic_tangential_fd(pb, fn, x, 0.0);
                CHECK(std::abs(got - want) <= 1e-5 * std::max(1.0, std::abs(want)));
            }
        }
    }
}
