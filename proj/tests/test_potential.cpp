#include <doctest.h>

#include "nbody/potential.hpp"
#include "test_helpers.hpp"

using namespace nbody;
using namespace nbody::testing;

namespace {

std::shared_ptr<const Semilattice> origin_r3() {
    return std::make_shared<Semilattice>(closure(AmbientSpace{3}, {}));
}

}  // namespace

TEST_CASE("make_inverse_square and evaluation") {
    auto lat = origin_r3();

    SUBCASE("radial family coefficients at gamma = 0.3") {
        std::vector<PotentialTerm> terms(1);
        terms[0].member = 0;
        terms[0].a.constant = -0.39;
        terms[0].b.constant = 2.6;
        const InverseSquarePotential v = make_inverse_square(lat, std::move(terms));
        CHECK(v(vec3(2, 0, 0)) == doctest::Approx(-0.39 / 4.0 + 2.6 / 2.0));
        CHECK(v(vec3(2, 0, 0)) == doctest::Approx(1.2025));
    }

    SUBCASE("zero potential evaluates anywhere") {
        std::vector<PotentialTerm> terms(1);
        terms[0].member = 0;
        const InverseSquarePotential v = make_inverse_square(lat, std::move(terms));
        CHECK(v(vec3(0, 0, 0)) == 0.0);
        CHECK(v(vec3(1, 2, 3)) == 0.0);
    }

    SUBCASE("hydrogen potential value") {
        std::vector<PotentialTerm> terms(1);
        terms[0].member = 0;
        terms[0].b.constant = 2.0;
        const InverseSquarePotential v = make_inverse_square(lat, std::move(terms));
        CHECK(v(vec3(1, 0, 0)) == doctest::Approx(2.0));
        CHECK_THROWS_AS(v(vec3(0, 0, 0)), Error);
    }

    SUBCASE("unknown member is rejected") {
        std::vector<PotentialTerm> terms(1);
        terms[0].member = 5;
        CHECK_THROWS_AS(make_inverse_square(lat, std::move(terms)), Error);
    }

    SUBCASE("callback coefficients need a declared bound") {
        std::vector<PotentialTerm> terms(1);
        terms[0].member = 0;
        terms[0].b.callback = [](const Vec& x) { return 1.0 / (1.0 + x.squaredNorm()); };
        CHECK_THROWS_AS(make_inverse_square(lat, terms), Error);
        terms[0].b.declared_bound = 1.0;
        const InverseSquarePotential v = make_inverse_square(lat, terms);
        CHECK(v(vec3(1, 0, 0)) == doctest::Approx(0.5));
    }
}

TEST_CASE("potential linearity") {
    auto lat = origin_r3();
    std::vector<PotentialTerm> t1(1), t2(1);
    t1[0].member = 0;
    t1[0].a.constant = -0.39;
    t1[0].b.constant = 2.6;
    t2[0].member = 0;
    t2[0].b.constant = 2.0;
    Coefficient c1;
    c1.constant = 0.5;
    const InverseSquarePotential v1 = make_inverse_square(lat, std::move(t1), c1);
    const InverseSquarePotential v2 = make_inverse_square(lat, std::move(t2));
    const InverseSquarePotential sum = v1 + v2;

    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 3, 2.0);
        if (x.norm() == 0.0) continue;
        CHECK(sum(x) == doctest::Approx(v1(x) + v2(x)).epsilon(1e-12));
    }
}

TEST_CASE("hydrogen eigenpair") {
    const Eigenpair pair = hydrogen_pair();

    CHECK(residual(pair, vec3(1, 0, 0)) < 1e-10);
    CHECK(pair.l2_norm_squared == doctest::Approx(M_PI));

    // chain-rule oracle: d/dx1 e^{-r} = -(x1/r) e^{-r}
    MultiIndex d1{1, 0, 0};
    CHECK(pair.partial(vec3(1, 0, 0), d1) == doctest::Approx(-std::exp(-1.0)));
    CHECK(pair.partial(vec3(1, 0, 0), d1) == doctest::Approx(-0.3678794411714423));

    SUBCASE("residual vanishes along random radii") {
        std::mt19937_64 rng(34);
        for (int trial = 0; trial < 100; ++trial) {
            Vec x = random_vec(rng, 3);
            x *= (0.1 + 9.9 * (static_cast<double>(rng() % 1000) / 1000.0)) / x.norm();
            CHECK(residual(pair, x) < 1e-9);
        }
    }
}

TEST_CASE("radial inverse-square eigenpair") {
    const Eigenpair pair = radial_invsq_pair(0.3);

    CHECK(residual(pair, vec3(1, 0, 0)) < 1e-10);

    // the potential carries the derived coefficients
    REQUIRE(pair.potential.terms().size() == 1);
    CHECK(pair.potential.terms()[0].a.constant == doctest::Approx(-0.39));
    CHECK(pair.potential.terms()[0].b.constant == doctest::Approx(2.6));

    // u(0+) -> 0 for gamma > 0
    CHECK(pair.u(vec3(1e-12, 0, 0)) < 1e-3);

    SUBCASE("residual along random radii") {
        std::mt19937_64 rng(35);
        for (int trial = 0; trial < 100; ++trial) {
            Vec x = random_vec(rng, 3);
            x *= (0.1 + 9.9 * (static_cast<double>(rng() % 1000) / 1000.0)) / x.norm();
            CHECK(residual(pair, x) < 1e-9);
        }
    }

    CHECK_THROWS_AS(radial_invsq_pair(0.0), Error);
    CHECK_THROWS_AS(radial_invsq_pair(1.0), Error);
    CHECK_THROWS_AS(radial_invsq_pair(-0.5), Error);
}

TEST_CASE("analytic radial partials are symmetric and match finite differences") {
    const Eigenpair pair = hydrogen_pair();
    const Vec x = vec3(0.8, -0.4, 1.1);

    MultiIndex d12{1, 1, 0}, d21{1, 1, 0};
    CHECK(pair.partial(x, d12) == doctest::Approx(pair.partial(x, d21)));

    // central-difference oracle at a safe distance from the origin
    auto u = pair.u;
    const double h = 1e-5;
    MultiIndex d1{1, 0, 0};
    double fd = (u(x + h * vec3(1, 0, 0)) - u(x - h * vec3(1, 0, 0))) / (2.0 * h);
    CHECK(pair.partial(x, d1) == doctest::Approx(fd).epsilon(1e-8));

    MultiIndex d11{2, 0, 0};
    fd = (u(x + h * vec3(1, 0, 0)) - 2.0 * u(x) + u(x - h * vec3(1, 0, 0))) / (h * h);
    CHECK(pair.partial(x, d11) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("eigenpair admission rejects a non-eigenpair") {
    Eigenpair fake;
    fake.name = "gaussian";
    fake.lattice = origin_r3();
    fake.lambda = 1.0;
    fake.potential = make_inverse_square(fake.lattice, {});
    fake.u = [](const Vec& x) { return std::exp(-x.squaredNorm()); };
    fake.partial = [](const Vec& x, const MultiIndex& alpha) {
        // enough analytic structure for the residual probe: second partials
        const double u = std::exp(-x.squaredNorm());
        if (order_of(alpha) == 0) return u;
        int i = -1, j = -1;
        for (int k = 0; k < static_cast<int>(alpha.size()); ++k)
            for (int rep = 0; rep < alpha[static_cast<std::size_t>(k)]; ++rep) (i < 0 ? i : j) = k;
        if (order_of(alpha) == 1) return -2.0 * x(i) * u;
        return (4.0 * x(i) * x(j) - (i == j ? 2.0 : 0.0)) * u;
    };
    CHECK_THROWS_AS(admit_eigenpair(fake), Error);
}

TEST_CASE("nbody_coulomb builds the collision lattice and potential") {
    const auto [lattice, potential] = nbody_coulomb(2, {1.0, 1.0}, {{0.0, 1.0}});

    CHECK(lattice->ambient_dim() == 6);
    CHECK(lattice->size() == 4);  // {0} plus three codim-3 planes
    int dim0 = 0, dim3 = 0;
    for (const auto& m : lattice->members()) {
        if (m.dim() == 0) ++dim0;
        if (m.dim() == 3) ++dim3;
    }
    CHECK(dim0 == 1);
    CHECK(dim3 == 3);

    // evaluation oracle: V = 1/|x1| + 1/|x2| + 1/|x1-x2|
    Vec x(6);
    x << 1, 0, 0, 0, 1, 0;
    CHECK(potential(x) == doctest::Approx(1.0 + 1.0 + 1.0 / std::sqrt(2.0)));
    CHECK(potential(x) == doctest::Approx(2.7071067811865475));

    SUBCASE("zero coefficients on the same lattice") {
        const auto [lat0, v0] = nbody_coulomb(2, {0.0, 0.0}, {{0.0, 0.0}});
        CHECK(lat0->size() == 4);
        CHECK(v0(x) == 0.0);
    }

    SUBCASE("single particle reduces to the origin lattice") {
        const auto [lat1, v1] = nbody_coulomb(1, {2.0}, {});
        CHECK(lat1->ambient_dim() == 3);
        CHECK(lat1->size() == 1);
        CHECK(v1(vec3(1, 0, 0)) == doctest::Approx(2.0));
    }
}

TEST_CASE("rho2V bound scan") {
    const Eigenpair hyd = hydrogen_pair();
    const BoundScanReport rep = rho2V_bound_scan(hyd.potential, 20000, 17);

    // maximization oracle: rho^2 V = 2 phi0(r)^2 / r, maximized on a fine grid
    // (the cutoff sits above r inside [1/2, 1], so the sup exceeds 2)
    double analytic_sup = 0.0;
    for (int i = 1; i <= 2000000; ++i) {
        const double r = 2.0 * i / 2000000.0;
        analytic_sup = std::max(analytic_sup, 2.0 * phi0(r) * phi0(r) / r);
    }
    CHECK(rep.sup <= analytic_sup + 1e-6);
    CHECK(rep.sup > 0.95 * analytic_sup);  // the scan finds the near-1 peak
    CHECK(rep.stable);

    std::vector<PotentialTerm> none;
    const InverseSquarePotential zero = make_inverse_square(hyd.lattice, std::move(none));
    const BoundScanReport rep0 = rho2V_bound_scan(zero, 5000, 17);
    CHECK(rep0.sup == 0.0);

    const Eigenpair inv = radial_invsq_pair(0.3);
    const BoundScanReport repg = rho2V_bound_scan(inv.potential, 20000, 18);
    CHECK(repg.sup < 10.0);
    CHECK(repg.stable);
}
