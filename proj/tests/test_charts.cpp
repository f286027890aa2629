#include <doctest.h>

#include "nbody/charts.hpp"
#include "test_helpers.hpp"

using namespace nbody;
using namespace nbody::testing;

TEST_CASE("theta basics") {
    const CompactPoint origin = theta(Vec::Zero(3));
    CHECK(origin.coords(0) == doctest::Approx(1.0));
    CHECK(origin.coords.tail(3).norm() == doctest::Approx(0.0));

    const CompactPoint p = theta(vec2(1, 0));
    CHECK(p.coords(0) == doctest::Approx(0.70710678118654752));
    CHECK(p.coords(1) == doctest::Approx(0.70710678118654752));
    CHECK(p.coords(2) == doctest::Approx(0.0));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 4, 10.0);
        CHECK(std::abs(theta(x).coords.norm() - 1.0) < 1e-12);
    }

    Vec bad(2);
    bad << 1.0, std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(theta(bad), Error);
}

TEST_CASE("theta_inv branches and roundtrip") {
    Vec north(3);
    north << 1, 0, 0;
    const PointOrRay interior = theta_inv(CompactPoint::make(north));
    CHECK_FALSE(interior.is_ray);
    CHECK(interior.v.norm() == doctest::Approx(0.0));

    Vec bdry(3);
    bdry << 0, 0.6, 0.8;
    const PointOrRay ray = theta_inv(CompactPoint::make(bdry));
    CHECK(ray.is_ray);
    CHECK(ray.v(0) == doctest::Approx(0.6));
    CHECK(ray.v(1) == doctest::Approx(0.8));

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec x = random_vec(rng, 3, 5.0);
        const PointOrRay back = theta_inv(theta(x));
        REQUIRE_FALSE(back.is_ray);
        CHECK((back.v - x).norm() < 1e-12 * (1.0 + x.norm()));
    }
}

TEST_CASE("embedding compatibility of theta with coordinate subspaces") {
    std::mt19937_64 rng(8);
    const int p = 2, n = 5;
    for (int trial = 0; trial < 100; ++trial) {
        const Vec y = random_vec(rng, p, 3.0);
        Vec padded = Vec::Zero(n);
        padded.head(p) = y;

        const CompactPoint small = theta(y);
        const CompactPoint big = theta(padded);
        // pad the compactified point with zeros: same result coordinatewise
        for (int i = 0; i <= p; ++i) CHECK(std::abs(small.coords(i) - big.coords(i)) < 1e-12);
        for (int i = p + 1; i <= n; ++i) CHECK(std::abs(big.coords(i)) < 1e-12);
    }
}

TEST_CASE("affine_extend") {
    const Mat eye = Mat::Identity(2, 2);

    SUBCASE("translations fix boundary rays exactly") {
        Vec dir(2);
        dir << 0, 1;
        const CompactPoint ray = CompactPoint::ray(dir);
        const CompactPoint image = affine_extend(eye, vec2(5, 0), ray);
        CHECK(image.coords == ray.coords);
    }

    SUBCASE("interior definition chase") {
        const CompactPoint p = theta(vec2(1, 1));
        const CompactPoint image = affine_extend(2.0 * eye, vec2(1, 0), p);
        const CompactPoint expected = theta(vec2(3, 2));
        CHECK((image.coords - expected.coords).norm() < 1e-14);
    }

    SUBCASE("identity map is the identity") {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 50; ++trial) {
            const CompactPoint p = theta(random_vec(rng, 2, 4.0));
            const CompactPoint image = affine_extend(eye, Vec::Zero(2), p);
            CHECK((image.coords - p.coords).norm() < 1e-14);
        }
    }

    SUBCASE("group law on random triples") {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 100; ++trial) {
            Mat a = Mat::Identity(3, 3) + 0.5 * Mat::Random(3, 3);
            Mat a2 = Mat::Identity(3, 3) + 0.5 * Mat::Random(3, 3);
            const Vec v = random_vec(rng, 3);
            const Vec v2 = random_vec(rng, 3);
            const CompactPoint p = theta(random_vec(rng, 3, 2.0));

            const CompactPoint lhs = affine_extend(a, v, affine_extend(a2, v2, p));
            const CompactPoint rhs = affine_extend(a * a2, v + a * v2, p);
            CHECK((lhs.coords - rhs.coords).norm() < 1e-12);
        }
    }

    SUBCASE("singular linear part is rejected") {
        Mat sing = Mat::Zero(2, 2);
        sing(0, 0) = 1.0;
        CHECK_THROWS_AS(affine_extend(sing, Vec::Zero(2), theta(vec2(1, 1))), Error);
    }
}

TEST_CASE("onepoint_psi") {
    Vec e1(2);
    e1 << 1, 0;

    const Vec south = onepoint_psi(M_PI / 2.0, e1);
    CHECK(south(0) == doctest::Approx(-1.0));
    CHECK(south.tail(2).norm() < 1e-12);

    const Vec north = onepoint_psi(0.0, e1);
    CHECK(north(0) == doctest::Approx(1.0));

    const Vec equator = onepoint_psi(M_PI / 4.0, e1);
    CHECK(std::abs(equator(0)) < 1e-12);
    CHECK(equator(1) == doctest::Approx(1.0));
    CHECK(equator(2) == doctest::Approx(0.0));

    CHECK_THROWS_AS(onepoint_psi(2.0, e1), Error);
    CHECK_THROWS_AS(onepoint_psi(0.3, vec2(2, 0)), Error);
}

TEST_CASE("stereographic projection") {
    Vec p(3);
    p << 0, 1, 0;  // theta = pi/2, y = e1
    const Vec x = stereographic(p);
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == doctest::Approx(0.0));

    Vec north(3);
    north << 1, 0, 0;
    CHECK(stereographic(north).norm() == doctest::Approx(0.0));

    Vec south(3);
    south << -1, 0, 0;
    CHECK_THROWS_AS(stereographic(south), Error);

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec pt = random_vec(rng, 2, 3.0);
        CHECK((stereographic(stereographic_inv(pt)) - pt).norm() < 1e-12 * (1.0 + pt.norm()));
    }
}

TEST_CASE("one-point compactification commutes with the blow-down on interior points") {
    // sigma(psi(Theta_X-image of x)) = x: the angle alpha satisfies
    // tan(alpha) = |x|, the ray direction is x/|x|.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec x = random_vec(rng, 3, 2.0);
        if (x.norm() < 1e-8) continue;
        const double alpha = std::atan(x.norm());
        const Vec y = x / x.norm();
        const Vec on_sphere = onepoint_psi(alpha, y);
        CHECK((stereographic(on_sphere) - x).norm() < 1e-12 * (1.0 + x.norm()));
    }
}

TEST_CASE("boundary_depth") {
    ModelChartPoint corner;
    corner.k = 2;
    corner.coords = vec3(0, 0, 5);
    CHECK(boundary_depth(corner) == 2);

    ModelChartPoint inter;
    inter.k = 2;
    inter.coords = vec3(1, 2, -3);
    CHECK(boundary_depth(inter) == 0);

    ModelChartPoint face;
    face.k = 1;
    face.coords = vec3(0, 1, 7);
    CHECK(boundary_depth(face) == 1);

    ModelChartPoint bad;
    bad.k = 1;
    bad.coords = vec3(-1, 0, 0);
    CHECK_THROWS_AS(boundary_depth(bad), Error);
}
