#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "nbody/config.hpp"
#include "test_helpers.hpp"

using namespace nbody;
using namespace nbody::testing;

namespace {

const char* kChainConfig = R"({
  "ambient_dim": 2,
  "subspaces": [{"name": "Y", "basis": [[1.0, 0.0]]}],
  "auto_close": true,
  "potential": {"terms": [{"member": "Y", "b": 1.5}], "c": 0.25}
})";

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents, const std::string& name) {
        path = std::string("/tmp/nbodygeom_test_") + name;
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("lattice config parsing and building") {
    const LatticeConfig cfg = parse_lattice_config(kChainConfig);
    CHECK(cfg.ambient.dim == 2);
    REQUIRE(cfg.subspaces.size() == 1);
    CHECK(cfg.subspaces[0].name() == "Y");
    CHECK(cfg.auto_close);
    REQUIRE(cfg.has_potential);

    const auto lattice = build_lattice(cfg);
    CHECK(lattice->size() == 2);

    const InverseSquarePotential v = build_potential(cfg, lattice);
    // V = 1.5 / d_Y + 0.25 at (0, 2): d_Y = 2
    CHECK(v(vec2(0, 2)) == doctest::Approx(0.75 + 0.25));

    CHECK_THROWS_AS(parse_lattice_config("{"), Error);
    CHECK_THROWS_AS(parse_lattice_config("{}"), Error);
}

TEST_CASE("lattice JSON roundtrips through the config schema") {
    const LatticeConfig cfg = parse_lattice_config(kChainConfig);
    const auto lattice = build_lattice(cfg);
    const std::string dumped = lattice_to_json(*lattice);

    // re-read the dumped members as a (closed) config
    LatticeConfig cfg2;
    cfg2 = parse_lattice_config(dumped);
    cfg2.auto_close = false;
    const auto again = build_lattice(cfg2);
    REQUIRE(again->size() == lattice->size());
    for (int i = 0; i < again->size(); ++i)
        CHECK(same_span(again->member(i), lattice->member(i)));
}

TEST_CASE("order files") {
    const LatticeConfig cfg = parse_lattice_config(kChainConfig);
    const auto lattice = build_lattice(cfg);

    TempFile good("EMPTY\n0\nY\n", "order_good.txt");
    const OrderedTuple order = load_order_file(good.path, *lattice);
    REQUIRE(order.entries.size() == 3);
    CHECK(order.entries[0] == OrderedTuple::kEmptyEntry);
    CHECK(is_admissible(*lattice, order).admissible);

    const std::string text = order_to_text(order, *lattice);
    CHECK(text == "EMPTY\n0\nY\n");

    TempFile bad("Y\n0\n", "order_bad.txt");
    const OrderedTuple rev = load_order_file(bad.path, *lattice);
    CHECK_FALSE(is_admissible(*lattice, rev).admissible);

    TempFile unknown("Q\n", "order_unknown.txt");
    CHECK_THROWS_AS(load_order_file(unknown.path, *lattice), Error);
}

TEST_CASE("eigenpair specs") {
    CHECK(load_eigenpair("hydrogen").name == "hydrogen");
    CHECK(load_eigenpair("invsq:0.3").potential.terms()[0].b.constant == doctest::Approx(2.6));

    TempFile spec(R"({"family": "invsq", "gamma": 0.45})", "pair.json");
    const Eigenpair pair = load_eigenpair(spec.path);
    CHECK(pair.potential.terms()[0].a.constant == doctest::Approx(-0.45 * 1.45));

    CHECK_THROWS_AS(load_eigenpair("unknown"), Error);
}

TEST_CASE("report JSON roundtrip loses no fields") {
    const Eigenpair pair = hydrogen_pair();
    QuadratureOptions quad;
    quad.seed = 11;
    const NormReport report =
        regularity_report(pair, 1, WeightKind::Delta, {1e-1, 1e-2, 1e-3, 1e-4}, quad);

    const std::string dumped = report_to_json(report);
    const NormReport back = report_from_json(dumped);
    CHECK(report_to_json(back) == dumped);
    CHECK(back.case_name == report.case_name);
    CHECK(back.entries.size() == report.entries.size());
    CHECK(back.seed == report.seed);
}

TEST_CASE("point and ladder parsing") {
    const Vec p = parse_point("1.5, -2, 3e-4");
    REQUIRE(p.size() == 3);
    CHECK(p(0) == doctest::Approx(1.5));
    CHECK(p(2) == doctest::Approx(3e-4));

    const Vec q = parse_point("1 2");
    CHECK(q.size() == 2);

    CHECK_THROWS_AS(parse_point(""), Error);
    CHECK_THROWS_AS(parse_point("1,abc"), Error);

    const std::vector<double> ladder = parse_ladder("1e-1,1e-2,1e-3,1e-4");
    CHECK(ladder.size() == 4);
    CHECK(ladder[3] == doctest::Approx(1e-4));
}
