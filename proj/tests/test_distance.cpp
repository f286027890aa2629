#include <functional>
#include "nbody/potential.hpp"
#include <doctest.h>

#include "nbody/distance.hpp"
#include "test_helpers.hpp"

using namespace nbody;
using namespace nbody::testing;

namespace {

Semilattice chain_r2() {
    const AmbientSpace r2{2};
    return closure(r2, {make_subspace(r2, {vec2(1, 0)}, false, "Y")});
}

Semilattice test_lattice_r3() {
    const AmbientSpace r3{3};
    return closure(r3, {make_subspace(r3, {vec3(1, 0, 0)}, false, "L"),
                        make_subspace(r3, {vec3(0, 1, 0), vec3(0, 0, 1)}, false, "P")});
}

}  // namespace

TEST_CASE("phi0 profile") {
    CHECK(phi0(0.25) == doctest::Approx(0.25));
    CHECK(phi0(2.0) == doctest::Approx(1.0));
    CHECK(phi0(0.5) == doctest::Approx(0.5));
    CHECK(phi0(1.0) == doctest::Approx(1.0));

    const double mid = phi0(0.75);
    CHECK(mid > 0.75);
    CHECK(mid < 1.0);
    CHECK(mid > phi0(0.74));
    CHECK(mid < phi0(0.76));

    CHECK_THROWS_AS(phi0(-0.1), Error);
}

TEST_CASE("phi0 monotone and bracketed on a dense grid") {
    double prev = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double t = 1.5 * i / 10000.0;
        const double v = phi0(t);
        CHECK(v >= prev - 1e-15);
        if (t >= 0.5 && t <= 1.0) {
            CHECK(v >= t - 1e-15);
            CHECK(v <= 1.0 + 1e-15);
        }
        prev = v;
    }
}

TEST_CASE("smoothed_r") {
    const AmbientSpace r2{2};
    const Subspace xaxis = make_subspace(r2, {vec2(1, 0)});
    CHECK(smoothed_r(xaxis, vec2(3, 4)) == doctest::Approx(1.0));
    CHECK(smoothed_r(xaxis, vec2(0, 0.1)) == doctest::Approx(0.1));

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 2, 2.0);
        CHECK(smoothed_r(xaxis, x) == doctest::Approx(phi0(dist_to(xaxis, x))));
    }
}

TEST_CASE("rho_system on the chain lattice") {
    const Semilattice lat = chain_r2();
    const int zero = 0;
    const int y = lat.find_name("Y");

    SUBCASE("near the member") {
        const RhoSystemEval sys = rho_system(lat, vec2(0, 0.1));
        CHECK(sys.factors[static_cast<std::size_t>(zero)] == doctest::Approx(0.1));
        CHECK(sys.factors[static_cast<std::size_t>(y)] == doctest::Approx(1.0));
        CHECK(sys.rho == doctest::Approx(0.1));
    }

    SUBCASE("far along the member") {
        const RhoSystemEval sys = rho_system(lat, vec2(10, 0.2));
        CHECK(sys.factors[static_cast<std::size_t>(zero)] == doctest::Approx(1.0));
        CHECK(sys.factors[static_cast<std::size_t>(y)] == doctest::Approx(0.2));
        CHECK(sys.rho == doctest::Approx(0.2));
    }

    SUBCASE("chain telescoping is exact") {
        std::mt19937_64 rng(15);
        const Subspace yspace = lat.member(y);
        for (int trial = 0; trial < 300; ++trial) {
            const Vec x = random_vec(rng, 2, 5.0);
            if (delta_F(lat, x) == 0.0) continue;
            CHECK(rho_system(lat, x).rho == doctest::Approx(phi0(dist_to(yspace, x))).epsilon(1e-14));
        }
    }

    CHECK_THROWS_AS(rho_system(lat, vec2(3, 0)), Error);
    CHECK(rho_F(lat, vec2(3, 0)) == 0.0);
}

TEST_CASE("rho factor table is independent of the evaluation order") {
    // On-demand recursion oracle: resolve each factor from the inclusion
    // order alone, visiting members in an arbitrary (here reversed) order.
    const auto [lat6, pot6] = nbody_coulomb(2, {1.0, 1.0}, {{0.0, 1.0}});
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec x = random_vec(rng, 6, 3.0);
        if (delta_F(*lat6, x) == 0.0) continue;
        const RhoSystemEval sys = rho_system(*lat6, x);

        std::vector<double> memo(static_cast<std::size_t>(lat6->size()), -1.0);
        std::function<double(int)> factor = [&](int i) -> double {
            if (memo[static_cast<std::size_t>(i)] >= 0.0) return memo[static_cast<std::size_t>(i)];
            double denom = 1.0;
            for (int j = 0; j < lat6->size(); ++j)
                if (j != i && lat6->member_contains(i, j)) denom *= factor(j);
            const double t = phi0(dist_to(lat6->member(i), x)) / denom;
            memo[static_cast<std::size_t>(i)] = t;
            return t;
        };
        for (int i = lat6->size() - 1; i >= 0; --i) factor(i);
        for (int i = 0; i < lat6->size(); ++i)
            CHECK(sys.factors[static_cast<std::size_t>(i)] ==
                  doctest::Approx(memo[static_cast<std::size_t>(i)]).epsilon(1e-14));
    }
}

TEST_CASE("rho factors positive and order-independent") {
    // The closed form only uses inclusion, so evaluating the factors for a
    // three-level lattice must agree with the telescoped products.
    const AmbientSpace r3{3};
    const Subspace line = make_subspace(r3, {vec3(1, 0, 0)}, false, "L");
    const Subspace plane = make_subspace(r3, {vec3(1, 0, 0), vec3(0, 1, 0)}, false, "P");
    const Semilattice lat = closure(r3, {line, plane});
    REQUIRE(lat.size() == 3);

    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec x = random_vec(rng, 3, 3.0);
        if (delta_F(lat, x) == 0.0) continue;
        const RhoSystemEval sys = rho_system(lat, x);
        for (double t : sys.factors) CHECK(t > 0.0);
        // chain lattice: rho telescopes to the top member factor
        CHECK(sys.rho == doctest::Approx(phi0(dist_to(plane, x))).epsilon(1e-14));
    }
}

TEST_CASE("equivalence_scan on the chain lattice stays inside [1, 2]") {
    const Semilattice lat = chain_r2();
    ScanSpec spec;
    spec.samples = 20000;
    spec.seed = 99;
    const RatioStats stats = equivalence_scan(lat, spec);
    CHECK(stats.counted > 15000);
    CHECK(stats.min_ratio >= 1.0 - 1e-9);
    CHECK(stats.max_ratio <= 2.0 + 1e-9);
}

TEST_CASE("equivalence_scan stable under doubling on the R^3 lattice") {
    const Semilattice lat = test_lattice_r3();
    ScanSpec spec;
    spec.samples = 40000;
    spec.seed = 7;
    const RatioStats a = equivalence_scan(lat, spec);
    spec.samples = 80000;
    const RatioStats b = equivalence_scan(lat, spec);

    CHECK(a.min_ratio >= 1e-2);
    CHECK(a.max_ratio <= 1e2);
    CHECK(std::abs(b.min_ratio - a.min_ratio) / a.min_ratio < 0.05);
    CHECK(std::abs(b.max_ratio - a.max_ratio) / a.max_ratio < 0.05);
}

TEST_CASE("equivalence_scan is deterministic for a fixed seed") {
    const Semilattice lat = test_lattice_r3();
    ScanSpec spec;
    spec.samples = 5000;
    spec.seed = 1234;
    const RatioStats a = equivalence_scan(lat, spec);
    const RatioStats b = equivalence_scan(lat, spec);
    CHECK(a.min_ratio == b.min_ratio);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.histogram == b.histogram);
}

TEST_CASE("ratio_probe approaches 1 on the chain lattice") {
    const Semilattice lat = chain_r2();
    const int y = lat.find_name("Y");

    ProbePath path;
    path.foot = vec2(10, 0);
    path.direction = vec2(0, 1);
    for (int k = 0; k < 24; ++k) path.offsets.push_back(std::pow(0.5, k));

    const ProbeResult res = ratio_probe(lat, y, path);
    CHECK(res.values.back() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.sup < 1.0 + 1e-9);

    SUBCASE("approach inside the half-distance region is exactly 1") {
        ProbePath close;
        close.foot = vec2(0.1, 0);
        close.direction = vec2(0, 1);
        for (int k = 4; k < 20; ++k) close.offsets.push_back(std::pow(0.5, k));
        const ProbeResult r2 = ratio_probe(lat, y, close);
        for (double v : r2.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r2.max_second_difference < 1e-12);
    }

    SUBCASE("far-field path stays bounded") {
        ProbePath far;
        far.foot = vec2(0, 0);
        far.direction = vec2(1, 0.3).normalized();
        for (int k = 0; k < 20; ++k) far.offsets.push_back(std::pow(2.0, k));
        const ProbeResult r3 = ratio_probe(lat, lat.find_name("Y"), far);
        CHECK(r3.sup < 10.0);
    }

    ProbePath touching;
    touching.foot = vec2(1, 0);
    touching.direction = vec2(0, 1);
    touching.offsets = {1.0, 0.0};
    CHECK_THROWS_AS(ratio_probe(lat, y, touching), Error);
}

TEST_CASE("gz profile and distance") {
    CHECK(gz_profile(0.5) == doctest::Approx(0.5));
    CHECK(gz_profile(0.0) == doctest::Approx(0.0));
    CHECK(gz_profile(1.0) == doctest::Approx(1.0));
    CHECK(gz_profile(1e9) == doctest::Approx(2.0).epsilon(1e-8));

    PointOrRay ray{true, vec2(1, 0)};
    CHECK(gz_distance(ray) == 2.0);
    PointOrRay pt{false, vec2(0.3, 0.4)};
    CHECK(gz_distance(pt) == doctest::Approx(0.5));

    SUBCASE("strictly increasing on a grid and above min(r,1)") {
        double prev = -1.0;
        for (int i = 0; i <= 4000; ++i) {
            const double r = 4.0 * i / 4000.0;
            const double v = gz_profile(r);
            CHECK(v > prev);
            CHECK(v >= std::min(r, 1.0) - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("metric_inequality_check reports zero violation") {
    const ViolationReport a = metric_inequality_check(chain_r2(), 5000, 3);
    CHECK(a.max_violation <= 0.0);
    const ViolationReport b = metric_inequality_check(test_lattice_r3(), 5000, 4);
    CHECK(b.max_violation <= 0.0);
}
