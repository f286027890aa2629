#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbody/blowup.hpp"
#include "nbody/config.hpp"
#include "nbody/verify.hpp"

using nlohmann::json;
using namespace nbody;

namespace {

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

WeightKind parse_weight(const std::string& s) {
    if (s == "delta") return WeightKind::Delta;
    if (s == "rho") return WeightKind::Rho;
    if (s == "none") return WeightKind::None;
    fail(ErrorCode::ParseError, "unknown weight kind: " + s);
}

json gv_point_to_json(const Semilattice& lattice, const GVPoint& p) {
    json comps = json::array();
    for (int i = 0; i < lattice.size(); ++i) {
        const CompactPoint& cp = p.components[static_cast<std::size_t>(i)];
        json jc;
        jc["member"] = lattice.member(i).name();
        const PointOrRay pr = theta_inv(cp);
        if (pr.is_ray) {
            jc["tag"] = "ray";
            jc["direction"] = std::vector<double>(pr.v.data(), pr.v.data() + pr.v.size());
        } else {
            jc["tag"] = "interior";
            jc["point"] = std::vector<double>(pr.v.data(), pr.v.data() + pr.v.size());
        }
        comps.push_back(jc);
    }
    return comps;
}

int run(int argc, char** argv) {
    CLI::App app{"Collision-plane lattices, compactification charts, and weighted-Sobolev checks"};
    app.require_subcommand(1);

    std::string config_path, out_path, point_text;
    std::uint64_t seed = 0;

    auto* cmd_lattice = app.add_subcommand("lattice", "build or validate a lattice");
    bool check_only = false;
    cmd_lattice->add_option("--config", config_path, "lattice config JSON")->required();
    cmd_lattice->add_flag("--check", check_only, "only report diagnostics");
    cmd_lattice->add_option("--out", out_path, "output path");

    auto* cmd_order = app.add_subcommand("order", "generate or validate blow-up orders");
    std::string prefer_name, validate_path;
    bool generate = false;
    cmd_order->add_option("--config", config_path, "lattice config JSON")->required();
    cmd_order->add_flag("--generate", generate, "emit an admissible order");
    cmd_order->add_option("--prefer", prefer_name, "member listed after its subsets");
    cmd_order->add_option("--validate", validate_path, "order file to check");
    cmd_order->add_option("--out", out_path, "output path");

    auto* cmd_chart = app.add_subcommand("chart", "chart diagnostics");
    auto* cmd_chart_rt = cmd_chart->add_subcommand("roundtrip", "max roundtrip errors");
    int dim = 3;
    long samples = 1000;
    cmd_chart_rt->add_option("--dim", dim, "ambient dimension")->required();
    cmd_chart_rt->add_option("--samples", samples, "sample count");
    cmd_chart_rt->add_option("--seed", seed, "random seed");
    cmd_chart_rt->add_option("--out", out_path, "output path");

    auto* cmd_embed = app.add_subcommand("embed", "graph blow-up embedding");
    cmd_embed->add_option("--config", config_path, "lattice config JSON");
    cmd_embed->add_option("--point", point_text, "interior point");
    cmd_embed->add_option("--out", out_path, "output path");
    auto* cmd_embed_ray = cmd_embed->add_subcommand("ray", "limit along a ray");
    std::string base_text, dir_text, ray_config;
    cmd_embed_ray->add_option("--config", ray_config, "lattice config JSON");
    cmd_embed_ray->add_option("--base", base_text, "base point")->required();
    cmd_embed_ray->add_option("--dir", dir_text, "direction")->required();
    cmd_embed_ray->add_option("--out", out_path, "output path");

    auto* cmd_distance = app.add_subcommand("distance", "distances and smoothed factors");
    cmd_distance->add_option("--config", config_path, "lattice config JSON")->required();
    cmd_distance->add_option("--point", point_text, "evaluation point")->required();
    cmd_distance->add_option("--out", out_path, "output path");

    auto* cmd_equiv = app.add_subcommand("equivalence", "rho/delta ratio scan");
    cmd_equiv->add_option("--config", config_path, "lattice config JSON")->required();
    cmd_equiv->add_option("--samples", samples, "sample count");
    cmd_equiv->add_option("--seed", seed, "random seed");
    cmd_equiv->add_option("--out", out_path, "output path");

    auto* cmd_clean = app.add_subcommand("clean-check", "clean-intersection reports");
    cmd_clean->add_option("--dim", dim, "ambient dimension")->required();
    cmd_clean->add_option("--samples", samples, "random subspace pairs");
    cmd_clean->add_option("--seed", seed, "random seed");
    cmd_clean->add_option("--out", out_path, "output path");

    auto* cmd_pot = app.add_subcommand("potential", "evaluate a potential");
    std::string eigen_spec;
    cmd_pot->add_option("--config", config_path, "lattice config JSON with a potential block");
    cmd_pot->add_option("--eigenpair", eigen_spec, "built-in pair: hydrogen | invsq:g");
    cmd_pot->add_option("--point", point_text, "evaluation point")->required();
    cmd_pot->add_option("--out", out_path, "output path");

    auto* cmd_verify = app.add_subcommand("verify", "weighted-Sobolev regularity report");
    std::string weight_name = "delta", eps_text = "1e-1,1e-2,1e-3,1e-4";
    int max_order = 2;
    double radius = 40.0;
    cmd_verify->add_option("--config", config_path, "lattice config JSON (optional)");
    cmd_verify->add_option("--eigenpair", eigen_spec, "hydrogen | invsq:g | spec.json")->required();
    cmd_verify->add_option("--max-order", max_order, "max |alpha|");
    cmd_verify->add_option("--weight", weight_name, "delta | rho | none");
    cmd_verify->add_option("--eps", eps_text, "decreasing exclusion ladder");
    cmd_verify->add_option("--seed", seed, "random seed");
    cmd_verify->add_option("--radius", radius, "far-field truncation");
    cmd_verify->add_option("--out", out_path, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_lattice->parsed()) {
        const LatticeConfig cfg = load_lattice_config(config_path);
        if (check_only) {
            const LatticeDiagnostics diag = validate(cfg.ambient, cfg.subspaces);
            json j;
            j["schema_version"] = 1;
            j["valid"] = diag.ok();
            json items = json::array();
            for (const auto& item : diag.items)
                items.push_back({{"kind", item.kind}, {"detail", item.detail}});
            j["diagnostics"] = items;
            emit(j, out_path);
            return diag.ok() ? 0 : 1;
        }
        const auto lattice = build_lattice(cfg);
        emit_text(lattice_to_json(*lattice) + "\n", out_path);
        return 0;
    }

    if (cmd_order->parsed()) {
        const LatticeConfig cfg = load_lattice_config(config_path);
        const auto lattice = build_lattice(cfg);
        if (!validate_path.empty()) {
            const OrderedTuple order = load_order_file(validate_path, *lattice);
            const AdmissibilityResult res = is_admissible(*lattice, order);
            json j;
            j["schema_version"] = 1;
            j["admissible"] = res.admissible;
            if (!res.admissible) j["first_violation_index"] = res.violation_index;
            emit(j, out_path);
            return res.admissible ? 0 : 1;
        }
        std::optional<int> prefer;
        if (!prefer_name.empty()) {
            const int idx = lattice->find_name(prefer_name);
            if (idx < 0) fail(ErrorCode::UnknownMember, "unknown member " + prefer_name);
            prefer = idx;
        }
        const OrderedTuple order = generate_admissible_order(*lattice, prefer);
        emit_text(order_to_text(order, *lattice), out_path);
        return 0;
    }

    if (cmd_chart_rt->parsed()) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double max_theta = 0.0, max_stereo = 0.0;
        for (long i = 0; i < samples; ++i) {
            Vec x(dim);
            for (int d = 0; d < dim; ++d) x(d) = gauss(rng);
            x *= std::pow(10.0, 3.0 * (unif(rng) - 0.5));
            const PointOrRay back = theta_inv(theta(x));
            max_theta = std::max(max_theta, (back.v - x).norm() / (1.0 + x.norm()));
            const Vec s = stereographic(stereographic_inv(x));
            max_stereo = std::max(max_stereo, (s - x).norm() / (1.0 + x.norm()));
        }
        json j;
        j["schema_version"] = 1;
        j["dim"] = dim;
        j["samples"] = samples;
        j["seed"] = seed;
        j["max_theta_roundtrip"] = max_theta;
        j["max_stereographic_roundtrip"] = max_stereo;
        emit(j, out_path);
        return 0;
    }

    if (cmd_embed->parsed()) {
        if (cmd_embed_ray->parsed()) {
            const LatticeConfig cfg =
                load_lattice_config(ray_config.empty() ? config_path : ray_config);
            const auto lattice = build_lattice(cfg);
            const GVPoint p = ray_limit(*lattice, parse_point(base_text), parse_point(dir_text));
            json j;
            j["schema_version"] = 1;
            j["components"] = gv_point_to_json(*lattice, p);
            emit(j, out_path);
            return 0;
        }
        if (config_path.empty() || point_text.empty())
            fail(ErrorCode::ParseError, "embed needs --config and --point");
        const LatticeConfig cfg = load_lattice_config(config_path);
        const auto lattice = build_lattice(cfg);
        const GVPoint p = gv_embed(*lattice, parse_point(point_text));
        json j;
        j["schema_version"] = 1;
        j["components"] = gv_point_to_json(*lattice, p);
        emit(j, out_path);
        return 0;
    }

    if (cmd_distance->parsed()) {
        const LatticeConfig cfg = load_lattice_config(config_path);
        const auto lattice = build_lattice(cfg);
        const Vec x = parse_point(point_text);
        json j;
        j["schema_version"] = 1;
        json dists = json::object();
        const std::vector<double> d = member_distances(*lattice, x);
        for (int i = 0; i < lattice->size(); ++i)
            dists[lattice->member(i).name()] = d[static_cast<std::size_t>(i)];
        j["d"] = dists;
        const double delta = delta_F(*lattice, x);
        j["delta_F"] = delta;
        if (delta > 0.0) {
            const RhoSystemEval sys = rho_system(*lattice, x);
            json factors = json::object();
            for (int i = 0; i < lattice->size(); ++i)
                factors[lattice->member(i).name()] = sys.factors[static_cast<std::size_t>(i)];
            j["t"] = factors;
            j["rho_F"] = sys.rho;
        } else {
            j["rho_F"] = 0.0;
        }
        emit(j, out_path);
        return 0;
    }

    if (cmd_equiv->parsed()) {
        const LatticeConfig cfg = load_lattice_config(config_path);
        const auto lattice = build_lattice(cfg);
        ScanSpec spec;
        spec.samples = samples;
        spec.seed = seed;
        const RatioStats stats = equivalence_scan(*lattice, spec);
        json j;
        j["schema_version"] = 1;
        j["samples"] = samples;
        j["seed"] = seed;
        j["min_ratio"] = stats.min_ratio;
        j["max_ratio"] = stats.max_ratio;
        j["skipped"] = stats.skipped;
        j["histogram"] = stats.histogram;
        emit(j, out_path);
        return 0;
    }

    if (cmd_clean->parsed()) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        auto random_subspace = [&](int max_dim) {
            std::uniform_int_distribution<int> pick_dim(1, max_dim);
            const int d = pick_dim(rng);
            std::vector<Vec> gens;
            for (int i = 0; i < d; ++i) {
                Vec v(dim);
                for (int c = 0; c < dim; ++c) v(c) = gauss(rng);
                gens.push_back(v);
            }
            return make_subspace(AmbientSpace{dim}, gens);
        };
        long clean_count = 0, vacuous = 0, total = 0;
        for (long i = 0; i < samples; ++i) {
            const Subspace y = random_subspace(dim - 1);
            const Subspace z = random_subspace(dim - 1);
            for (StratumKind pk : {StratumKind::Closure, StratumKind::Sphere}) {
                for (StratumKind qk : {StratumKind::Closure, StratumKind::Sphere}) {
                    ++total;
                    try {
                        const CleanReport rep = clean_check({y, pk}, {z, qk});
                        if (rep.clean) ++clean_count;
                    } catch (const Error& e) {
                        if (e.code() == ErrorCode::EmptyIntersection) {
                            ++vacuous;
                            ++clean_count;  // empty intersections are trivially clean
                        } else {
                            throw;
                        }
                    }
                }
            }
        }
        json j;
        j["schema_version"] = 1;
        j["dim"] = dim;
        j["pairs"] = samples;
        j["seed"] = seed;
        j["checks"] = total;
        j["clean"] = clean_count;
        j["vacuously_clean"] = vacuous;
        emit(j, out_path);
        return clean_count == total ? 0 : 1;
    }

    if (cmd_pot->parsed()) {
        const Vec x = parse_point(point_text);
        json j;
        j["schema_version"] = 1;
        if (eigen_spec.rfind("nbody:", 0) == 0) {
            // Coulomb builder with unit coefficients.
            const int particles = std::stoi(eigen_spec.substr(6));
            std::vector<double> b(static_cast<std::size_t>(particles), 1.0);
            std::vector<std::vector<double>> c(
                static_cast<std::size_t>(particles),
                std::vector<double>(static_cast<std::size_t>(particles), 1.0));
            const auto [lattice, v] = nbody_coulomb(particles, b, c);
            j["case"] = eigen_spec;
            j["members"] = lattice->size();
            j["V"] = v(x);
            emit(j, out_path);
            return 0;
        }
        if (!eigen_spec.empty()) {
            const Eigenpair pair = load_eigenpair(eigen_spec);
            j["case"] = pair.name;
            j["V"] = pair.potential(x);
            j["u"] = pair.u(x);
            j["residual"] = residual(pair, x);
        } else {
            if (config_path.empty())
                fail(ErrorCode::ParseError, "potential needs --config or --eigenpair");
            const LatticeConfig cfg = load_lattice_config(config_path);
            const auto lattice = build_lattice(cfg);
            const InverseSquarePotential v = build_potential(cfg, lattice);
            j["V"] = v(x);
        }
        emit(j, out_path);
        return 0;
    }

    if (cmd_verify->parsed()) {
        const Eigenpair pair = load_eigenpair(eigen_spec);
        if (!config_path.empty()) {
            const LatticeConfig cfg = load_lattice_config(config_path);
            const auto lattice = build_lattice(cfg);
            if (lattice->size() != pair.lattice->size() ||
                lattice->ambient_dim() != pair.lattice->ambient_dim())
                fail(ErrorCode::DomainError, "config lattice does not match the eigenpair lattice");
        }
        QuadratureOptions quad;
        quad.seed = seed;
        quad.radius = radius;
        const NormReport report = regularity_report(pair, max_order, parse_weight(weight_name),
                                                    parse_ladder(eps_text), quad);
        emit_text(report_to_json(report) + "\n", out_path);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;  // validation failure; usage errors exit 2 from the parser
    }
}
