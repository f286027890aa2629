#include "nbody/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nbody {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WeightKind weight_from_string(const std::string& s) {
    if (s == "delta") return WeightKind::Delta;
    if (s == "rho") return WeightKind::Rho;
    if (s == "none") return WeightKind::None;
    fail(ErrorCode::ParseError, "unknown weight kind: " + s);
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "finite") return Verdict::Finite;
    if (s == "divergent") return Verdict::Divergent;
    if (s == "inconclusive") return Verdict::Inconclusive;
    fail(ErrorCode::ParseError, "unknown verdict: " + s);
}

}  // namespace

LatticeConfig parse_lattice_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid lattice config: ") + e.what());
    }

    LatticeConfig cfg;
    if (!j.contains("ambient_dim")) fail(ErrorCode::ParseError, "config needs ambient_dim");
    cfg.ambient.dim = j.at("ambient_dim").get<int>();
    cfg.auto_close = j.value("auto_close", true);

    int unnamed = 0;
    for (const auto& js : j.value("subspaces", json::array())) {
        const auto rows = js.at("basis").get<std::vector<std::vector<double>>>();
        std::vector<Vec> gens;
        for (const auto& row : rows) {
            Vec v(static_cast<Eigen::Index>(row.size()));
            for (std::size_t i = 0; i < row.size(); ++i) v(static_cast<Eigen::Index>(i)) = row[i];
            gens.push_back(std::move(v));
        }
        std::string name = js.value("name", std::string{});
        if (name.empty()) name = "S" + std::to_string(unnamed++);
        cfg.subspaces.push_back(make_subspace(cfg.ambient, gens, false, std::move(name)));
    }

    if (j.contains("potential")) {
        cfg.has_potential = true;
        const auto& jp = j.at("potential");
        cfg.potential_c = jp.value("c", 0.0);
        for (const auto& jt : jp.value("terms", json::array())) {
            cfg.potential_term_names.push_back(jt.at("member").get<std::string>());
            cfg.potential_term_coeffs.emplace_back(jt.value("a", 0.0), jt.value("b", 0.0));
        }
    }
    return cfg;
}

LatticeConfig load_lattice_config(const std::string& path) {
    return parse_lattice_config(read_file(path));
}

std::shared_ptr<const Semilattice> build_lattice(const LatticeConfig& config) {
    if (config.auto_close)
        return std::make_shared<Semilattice>(closure(config.ambient, config.subspaces));
    LatticeDiagnostics diag = validate(config.ambient, config.subspaces);
    if (!diag.ok())
        fail(ErrorCode::DomainError,
             "family is not a valid semilattice (" + diag.items.front().kind + ")");
    std::vector<Subspace> members = config.subspaces;
    return std::make_shared<Semilattice>(config.ambient, std::move(members));
}

InverseSquarePotential build_potential(const LatticeConfig& config,
                                       std::shared_ptr<const Semilattice> lattice) {
    std::vector<PotentialTerm> terms;
    for (std::size_t i = 0; i < config.potential_term_names.size(); ++i) {
        PotentialTerm t;
        t.member = lattice->find_name(config.potential_term_names[i]);
        if (t.member < 0)
            fail(ErrorCode::UnknownMember,
                 "potential term names unknown member " + config.potential_term_names[i]);
        t.a.constant = config.potential_term_coeffs[i].first;
        t.b.constant = config.potential_term_coeffs[i].second;
        terms.push_back(t);
    }
    Coefficient c;
    c.constant = config.potential_c;
    return make_inverse_square(std::move(lattice), std::move(terms), c);
}

std::string lattice_to_json(const Semilattice& lattice) {
    json j;
    j["ambient_dim"] = lattice.ambient_dim();
    json subs = json::array();
    for (const auto& m : lattice.members()) {
        json js;
        js["name"] = m.name();
        json basis = json::array();
        for (Eigen::Index c = 0; c < m.basis().cols(); ++c) {
            json row = json::array();
            for (Eigen::Index r = 0; r < m.basis().rows(); ++r) row.push_back(m.basis()(r, c));
            basis.push_back(row);
        }
        js["basis"] = basis;
        js["dim"] = m.dim();
        subs.push_back(js);
    }
    j["subspaces"] = subs;
    json edges = json::array();
    for (const auto& [sub, super] : lattice.hasse_edges())
        edges.push_back(json::array({sub, super}));
    j["hasse_edges"] = edges;
    return j.dump(2);
}

OrderedTuple load_order_file(const std::string& path, const Semilattice& lattice) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
    OrderedTuple order;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (line.empty() || line[0] == '#') continue;
        if (line == "EMPTY") {
            order.entries.push_back(OrderedTuple::kEmptyEntry);
            continue;
        }
        const int idx = lattice.find_name(line);
        if (idx < 0) fail(ErrorCode::UnknownMember, "order file names unknown member " + line);
        order.entries.push_back(idx);
    }
    return order;
}

std::string order_to_text(const OrderedTuple& order, const Semilattice& lattice) {
    std::ostringstream out;
    for (int e : order.entries) {
        if (e == OrderedTuple::kEmptyEntry)
            out << "EMPTY\n";
        else
            out << (lattice.member(e).name().empty() ? "member" + std::to_string(e)
                                                     : lattice.member(e).name())
                << "\n";
    }
    return out.str();
}

Eigenpair load_eigenpair(const std::string& spec) {
    if (spec == "hydrogen") return hydrogen_pair();
    if (spec.rfind("invsq:", 0) == 0) {
        const double gamma = std::stod(spec.substr(6));
        return radial_invsq_pair(gamma);
    }
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        json j;
        try {
            j = json::parse(read_file(spec));
        } catch (const json::exception& e) {
            fail(ErrorCode::ParseError, std::string("invalid eigenpair spec: ") + e.what());
        }
        const std::string family = j.at("family").get<std::string>();
        if (family == "hydrogen") return hydrogen_pair();
        if (family == "invsq") return radial_invsq_pair(j.at("gamma").get<double>());
        fail(ErrorCode::ParseError, "unknown eigenpair family " + family);
    }
    fail(ErrorCode::ParseError, "unknown eigenpair spec " + spec);
}

namespace {

json study_to_json(const RefinementStudy& s) {
    json j;
    j["weight"] = weight_kind_name(s.weight);
    j["eps"] = s.eps_ladder;
    json est = json::array();
    for (const auto& e : s.estimates) {
        est.push_back({{"value", e.value},
                       {"error", e.error_bar},
                       {"evaluations", e.evaluations},
                       {"inconclusive", e.inconclusive}});
    }
    j["estimates"] = est;
    j["exponent"] = s.exponent;
    j["verdict"] = verdict_name(s.verdict);
    return j;
}

RefinementStudy study_from_json(const json& j) {
    RefinementStudy s;
    s.weight = weight_from_string(j.at("weight").get<std::string>());
    s.eps_ladder = j.at("eps").get<std::vector<double>>();
    for (const auto& je : j.at("estimates")) {
        NormEstimate e;
        e.value = je.at("value").get<double>();
        e.error_bar = je.at("error").get<double>();
        e.evaluations = je.at("evaluations").get<long>();
        e.inconclusive = je.at("inconclusive").get<bool>();
        s.estimates.push_back(e);
    }
    s.exponent = j.at("exponent").get<double>();
    s.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    return s;
}

}  // namespace

std::string report_to_json(const NormReport& report) {
    json j;
    j["schema_version"] = 1;
    j["case"] = report.case_name;
    j["weight"] = weight_kind_name(report.weight);
    j["kmax"] = report.kmax;
    j["seed"] = report.seed;
    j["eps"] = report.eps_ladder;
    j["all_weighted_finite"] = report.all_weighted_finite;
    json entries = json::array();
    for (const auto& e : report.entries) {
        json je;
        je["alpha"] = e.alpha;
        if (report.weight != WeightKind::None) je["weighted"] = study_to_json(e.weighted);
        je["unweighted"] = study_to_json(e.unweighted);
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j.dump(2);
}

NormReport report_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid report: ") + e.what());
    }
    NormReport report;
    report.case_name = j.at("case").get<std::string>();
    report.weight = weight_from_string(j.at("weight").get<std::string>());
    report.kmax = j.at("kmax").get<int>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.eps_ladder = j.at("eps").get<std::vector<double>>();
    report.all_weighted_finite = j.at("all_weighted_finite").get<bool>();
    for (const auto& je : j.at("entries")) {
        ReportEntry e;
        e.alpha = je.at("alpha").get<MultiIndex>();
        if (je.contains("weighted")) e.weighted = study_from_json(je.at("weighted"));
        e.unweighted = study_from_json(je.at("unweighted"));
        report.entries.push_back(std::move(e));
    }
    return report;
}

Vec parse_point(const std::string& text) {
    std::vector<double> vals;
    std::string token;
    for (char ch : text + ",") {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!token.empty()) {
                try {
                    vals.push_back(std::stod(token));
                } catch (const std::exception&) {
                    fail(ErrorCode::ParseError, "invalid number in point: " + token);
                }
                token.clear();
            }
        } else {
            token.push_back(ch);
        }
    }
    if (vals.empty()) fail(ErrorCode::ParseError, "empty point");
    Vec v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

std::vector<double> parse_ladder(const std::string& text) {
    const Vec v = parse_point(text);
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
    return out;
}

}  // namespace nbody
