#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nbody/distance.hpp"
#include "nbody/lattice.hpp"

namespace nbody {

/// Coefficient of a potential term: a constant, or a smooth callback with a
/// declared global bound.
struct Coefficient {
    double constant = 0.0;
    std::function<double(const Vec&)> callback;  // optional
    double declared_bound = 0.0;                 // required with a callback

    double operator()(const Vec& x) const { return callback ? callback(x) : constant; }
    bool is_zero() const { return !callback && constant == 0.0; }
};

struct PotentialTerm {
    int member = -1;  // lattice member index
    Coefficient a;    // 1/d^2 slot
    Coefficient b;    // 1/d slot
};

/// V(x) = sum over terms of a_Y/d_Y^2 + b_Y/d_Y, plus the regular part.
class InverseSquarePotential {
public:
    InverseSquarePotential() = default;
    InverseSquarePotential(std::shared_ptr<const Semilattice> lattice,
                           std::vector<PotentialTerm> terms, Coefficient c);

    const Semilattice& lattice() const { return *lattice_; }
    std::shared_ptr<const Semilattice> lattice_ptr() const { return lattice_; }
    const std::vector<PotentialTerm>& terms() const { return terms_; }
    const Coefficient& regular_part() const { return c_; }

    double operator()(const Vec& x) const;

private:
    std::shared_ptr<const Semilattice> lattice_;
    std::vector<PotentialTerm> terms_;
    Coefficient c_;
};

InverseSquarePotential make_inverse_square(std::shared_ptr<const Semilattice> lattice,
                                           std::vector<PotentialTerm> terms,
                                           Coefficient c = {});

double eval_potential(const InverseSquarePotential& v, const Vec& x);

/// Sum of two potentials over the same lattice.
InverseSquarePotential operator+(const InverseSquarePotential& v1,
                                 const InverseSquarePotential& v2);

struct BoundScanReport {
    double sup = 0.0;
    double sup_half_budget = 0.0;
    bool stable = false;  // < 5% change when the sample count doubles
    long samples = 0;
};

/// sup |rho_F^2 V| over strata-concentrated samples.
BoundScanReport rho2V_bound_scan(const InverseSquarePotential& v, long samples,
                                 std::uint64_t seed);

using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& alpha) {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

/// Closed-form eigenfunction with analytic partial derivatives, its
/// potential, and its eigenvalue: (Delta + V) u = lambda u off the lattice.
struct Eigenpair {
    std::string name;
    std::shared_ptr<const Semilattice> lattice;
    InverseSquarePotential potential;
    double lambda = 0.0;
    std::function<double(const Vec&)> u;
    /// Analytic partials up to order 4.
    std::function<double(const Vec&, const MultiIndex&)> partial;
    /// Squared L2 norm when known in closed form (signalled by >= 0).
    double l2_norm_squared = -1.0;
};

/// |(Delta + V) u - lambda u|(x) via analytic second partials.
double residual(const Eigenpair& pair, const Vec& x);

/// Validates the eigenpair equation at 100 log-spaced probe radii; rejects
/// the pair when the residual exceeds 1e-8.
void admit_eigenpair(const Eigenpair& pair);

/// u = e^{-r} on R^3 with V = 2/r and lambda = 1, F = {0}.
Eigenpair hydrogen_pair();

/// u = r^gamma e^{-r} on R^3 with V = -gamma(gamma+1)/r^2 + 2(gamma+1)/r,
/// lambda = 1, F = {0}; gamma in (0,1).
Eigenpair radial_invsq_pair(double gamma);

/// Collision-plane lattice in R^{3N} with per-particle terms b_j/|x_j| and
/// pair terms c_ij/|x_i - x_j|.
std::pair<std::shared_ptr<const Semilattice>, InverseSquarePotential> nbody_coulomb(
    int n_particles, const std::vector<double>& b,
    const std::vector<std::vector<double>>& c);

}  // namespace nbody
