#include "generators.hpp"

#include "scribe/lorentz.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace scribe;

namespace {

Vec v(std::initializer_list<double> xs) {
    Vec out(xs.size());
    int i = 0;
    for (double x : xs) out(i++) = x;
    return out;
}

// Normalizes a ray to x_0 = 1 for comparisons up to scale.
Vec at_height_one(const Vec& x) { return x / x(0); }

} // namespace

TEST_SUITE("lorentz") {

TEST_CASE("product on hand-checked vectors") {
    CHECK(lorentz_product(v({1, 0, 0, 0}), v({1, 0, 0, 0})) == -1);
    const double s2 = std::sqrt(2.0);
    CHECK(std::abs(lorentz_product(v({s2, 0, 1, 1}), v({s2, 0, 1, 1}))) < 1e-15);
    CHECK(lorentz_product(v({1, 1, 0, 0}), v({1, 0, 1, 0})) == -1);
}

TEST_CASE("product is bilinear and symmetric") {
    gen::Rng r(11);
    for (int t = 0; t < 200; ++t) {
        const int d = r.integer(1, 6);
        Vec x = r.gaussian(d + 1), y = r.gaussian(d + 1), z = r.gaussian(d + 1);
        const double a = r.normal(), b = r.normal();
        const double lhs = lorentz_product(Vec(a * x + b * y), z);
        const double rhs = a * lorentz_product(x, z) + b * lorentz_product(y, z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(lhs)));
        CHECK(lorentz_product(x, y) == doctest::Approx(lorentz_product(y, x)).epsilon(1e-14));
    }
}

TEST_CASE("exact product") {
    RVec x{Rational(1, 2), 3, Rational(-2, 3)}, y{2, Rational(1, 3), 6};
    CHECK(lorentz_product(x, y) == Rational(-1) + 1 - 4);
    RVec a{1, 2, 3}, b{4, 5, 6}, c{7, 8, 9};
    RVec ab{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    CHECK(lorentz_product(ab, c) == lorentz_product(a, c) + lorentz_product(b, c));
}

TEST_CASE("cone position") {
    auto p = cone_position(v({2, 1, 0, 0}));
    CHECK(p.region == ConeRegion::Interior);
    CHECK(p.time_sign == 1);
    p = cone_position(v({std::sqrt(3.0), std::sqrt(2.0), 0, 1}));
    CHECK(p.region == ConeRegion::Boundary);
    CHECK(p.time_sign == 1);
    p = cone_position(v({1, 2, 0, 0}));
    CHECK(p.region == ConeRegion::Exterior);
    CHECK(cone_position(v({-2, 1, 0, 0})).time_sign == -1);
    CHECK(cone_position(RVec{3, 4, 0}).region == ConeRegion::Exterior);
    CHECK(cone_position(RVec{5, 3, 4}).region == ConeRegion::Boundary);
}

TEST_CASE("polar of the 2-dimensional light cone") {
    auto polar = polar_cone({v({1, 1}), v({1, -1})});
    REQUIRE(polar.size() == 2);
    for (const Vec& g : polar) {
        CHECK(g(0) > 0);
        CHECK(std::abs(std::abs(at_height_one(g)(1)) - 1) < 1e-12);
    }
    CHECK(at_height_one(polar[0])(1) * at_height_one(polar[1])(1) < 0);
}

TEST_CASE("polar of a single ray is the half-space x_0 >= 0") {
    for (int d = 1; d <= 4; ++d) {
        Vec e = Vec::Zero(d + 1);
        e(0) = 1;
        auto polar = polar_cone({e});
        // {x : <x, e> <= 0} = {x_0 >= 0}: every generator there, and the
        // spatial axes appear with both signs.
        for (const Vec& g : polar) CHECK(g(0) >= -1e-12);
        for (int k = 1; k <= d; ++k) {
            bool plus = false, minus = false;
            for (const Vec& g : polar) {
                plus = plus || (g(k) > 1e-9 && std::abs(g(k)) > 0.5 * g.norm());
                minus = minus || (g(k) < -1e-9 && std::abs(g(k)) > 0.5 * g.norm());
            }
            CHECK(plus);
            CHECK(minus);
        }
    }
}

TEST_CASE("light cone is approximately self-polar") {
    const int N = 60;
    std::vector<Vec> gens;
    for (int k = 0; k < N; ++k) {
        const double t = 2 * std::numbers::pi * k / N;
        gens.push_back(v({1, std::cos(t), std::sin(t)}));
    }
    auto polar = polar_cone(gens);
    CHECK(polar.size() == static_cast<std::size_t>(N));
    for (const Vec& g : polar) {
        const double r = at_height_one(g).tail(2).norm();
        CHECK(r >= 1 - 1e-12);
        CHECK(r <= 1 / std::cos(std::numbers::pi / N) + 1e-12);
    }
}

TEST_CASE("polar cone is an involution on pointed cones") {
    gen::Rng r(5);
    for (int t = 0; t < 30; ++t) {
        const int d = r.integer(2, 3);
        std::vector<Vec> gens;
        for (int k = 0; k < d + 3; ++k) {
            Vec x(d + 1);
            x(0) = 1;
            x.tail(d) = r.in_ball(d, 0.9);
            gens.push_back(x);
        }
        auto once = polar_cone(gens);
        auto twice = polar_cone(once);
        // Every extreme ray of the double polar is an input ray and every
        // input ray lies in the double polar.
        for (const Vec& g : twice) {
            bool found = false;
            for (const Vec& h : gens) found = found || (at_height_one(g) - h).norm() < 1e-8;
            CHECK(found);
        }
        for (const Vec& h : gens)
            for (const Vec& p : once) CHECK(lorentz_product(h, p) <= 1e-9);
    }
}

TEST_CASE("homogenize and dehomogenize") {
    CHECK(homogenize(v({0, 0, 0})) == v({1, 0, 0, 0}));
    CHECK(homogenize(v({3, 0, 0})) == v({1, 3, 0, 0}));
    CHECK((dehomogenize(v({2, 2, 4, 6})) - v({1, 2, 3})).norm() < 1e-15);
    CHECK_THROWS_AS(dehomogenize(v({0, 1, 0})), GeometryError);
    CHECK_THROWS_AS(dehomogenize(v({-1, 1, 0})), GeometryError);
}

TEST_CASE("hyperbolic translation") {
    ProjMap I = hyperbolic_translation(Vec::Zero(3));
    CHECK((I.matrix - Mat::Identity(4, 4)).norm() < 1e-15);

    ProjMap T = hyperbolic_translation(v({0.5, 0, 0}));
    CHECK(T.apply_point(v({0.5, 0, 0})).norm() < 1e-12);
    CHECK((T.apply_point(v({1, 0, 0})) - v({1, 0, 0})).norm() < 1e-12);
    CHECK((T.apply_point(v({-1, 0, 0})) - v({-1, 0, 0})).norm() < 1e-12);
    CHECK(T.sphere_preserving());
    CHECK(T.orthochronous());

    gen::Rng r(7);
    for (int t = 0; t < 200; ++t) {
        const int d = r.integer(2, 5);
        Vec c = r.in_ball(d, 0.99);
        ProjMap M = hyperbolic_translation(c);
        CHECK(M.apply_point(c).norm() < 1e-9);
        Vec u = r.unit(d);
        CHECK(std::abs(M.apply_point(u).norm() - 1) < 1e-12);
    }
    CHECK_THROWS(hyperbolic_translation(v({1.5, 0})));
}

TEST_CASE("lorentz reflection") {
    ProjMap R = lorentz_reflection(v({0, 1, 0, 0}));
    CHECK((R.apply(v({3, 2, 5, 7})) - v({3, -2, 5, 7})).norm() < 1e-15);

    gen::Rng r(13);
    for (int t = 0; t < 200; ++t) {
        const int d = r.integer(2, 5);
        Vec e(d + 1);
        e(0) = r.uniform(-0.9, 0.9);
        e.tail(d) = r.unit(d);
        ProjMap M = lorentz_reflection(e);
        Vec x = r.gaussian(d + 1), y = r.gaussian(d + 1);
        CHECK((M.apply(M.apply(x)) - x).norm() < 1e-12 * (1 + x.norm()) * (1 + e.squaredNorm()));
        const double before = lorentz_product(x, y), after = lorentz_product(M.apply(x), M.apply(y));
        CHECK(std::abs(before - after) < 1e-12 * (1 + x.norm() * y.norm()) * (1 + e.squaredNorm()));
        // Time-like vectors in the future cone stay there.
        Vec f(d + 1);
        f(0) = 1;
        f.tail(d) = r.in_ball(d, 0.95);
        const Vec g = M.apply(f);
        CHECK(g(0) > 0);
        CHECK(cone_position(g).region == ConeRegion::Interior);
        CHECK(M.orthochronous());
    }
    CHECK_THROWS(lorentz_reflection(v({1, 0, 0})));
}

TEST_CASE("quadrics through seven cube vertices") {
    std::vector<Vec> cube;
    for (int k = 0; k < 8; ++k) cube.push_back(v({k & 1 ? 1.0 : -1.0, k & 2 ? 1.0 : -1.0, k & 4 ? 1.0 : -1.0}));
    for (int skip = 0; skip < 8; ++skip) {
        std::vector<Vec> seven;
        for (int k = 0; k < 8; ++k)
            if (k != skip) seven.push_back(cube[k]);
        QuadricSpace Q = quadric_space_through(seven);
        CHECK(Q.dimension() == 3);
        CHECK(Q.max_relative_residual(cube[skip]) < 1e-12);
    }
}

TEST_CASE("conic through five points and lines through three collinear points") {
    gen::Rng r(17);
    std::vector<Vec> five;
    for (int k = 0; k < 5; ++k) five.push_back(r.gaussian(2));
    CHECK(quadric_space_through(five).dimension() == 1);

    std::vector<Vec> line{v({0, 1}), v({1, 2}), v({2, 3})};
    QuadricSpace Q = quadric_space_through(line);
    CHECK(Q.dimension() == 3);
    CHECK(Q.max_relative_residual(v({-5, -4})) < 1e-12);
    CHECK(Q.max_relative_residual(v({7.5, 8.5})) < 1e-12);
}

TEST_CASE("cube quadric property under projective images") {
    gen::Rng r(19);
    for (int t = 0; t < 50; ++t) {
        const Mat M = gen::projective_matrix(r, 3);
        std::vector<Vec> img;
        for (int k = 0; k < 8; ++k) {
            Vec x = homogenize(v({k & 1 ? 1.0 : -1.0, k & 2 ? 1.0 : -1.0, k & 4 ? 1.0 : -1.0}));
            img.push_back(dehomogenize(Vec(M * x)));
        }
        std::vector<Vec> seven(img.begin(), img.begin() + 7);
        QuadricSpace Q = quadric_space_through(seven);
        CHECK(Q.dimension() == 3);
        CHECK(Q.max_relative_residual(img[7]) < 1e-8);
    }
}

} // TEST_SUITE
