#pragma once

#include <memory>
#include <string>

#include "nbody/lattice.hpp"
#include "nbody/potential.hpp"
#include "nbody/verify.hpp"

namespace nbody {

struct LatticeConfig {
    AmbientSpace ambient{1};
    std::vector<Subspace> subspaces;
    bool auto_close = true;
    std::vector<PotentialTerm> potential_terms;  // member indices resolved after closing
    std::vector<std::string> potential_term_names;
    std::vector<std::pair<double, double>> potential_term_coeffs;  // (a, b) per term
    double potential_c = 0.0;
    bool has_potential = false;
};

LatticeConfig load_lattice_config(const std::string& path);
LatticeConfig parse_lattice_config(const std::string& json_text);

/// Builds the semilattice from the config; closes it when auto_close is set,
/// otherwise requires the family to already be valid.
std::shared_ptr<const Semilattice> build_lattice(const LatticeConfig& config);

/// Potential assembled from the config terms over the built lattice.
InverseSquarePotential build_potential(const LatticeConfig& config,
                                       std::shared_ptr<const Semilattice> lattice);

std::string lattice_to_json(const Semilattice& lattice);

/// Order file: one member name per line, "EMPTY" for the empty set.
OrderedTuple load_order_file(const std::string& path, const Semilattice& lattice);
std::string order_to_text(const OrderedTuple& order, const Semilattice& lattice);

/// Built-in eigenpairs: "hydrogen", "invsq:<gamma>", or a JSON file selecting
/// {"family": "hydrogen"|"invsq", "gamma": ...}.
Eigenpair load_eigenpair(const std::string& spec);

std::string report_to_json(const NormReport& report);
NormReport report_from_json(const std::string& json_text);

/// Parses "a,b,c" or "a b c" into a vector.
Vec parse_point(const std::string& text);
std::vector<double> parse_ladder(const std::string& text);

}  // namespace nbody
