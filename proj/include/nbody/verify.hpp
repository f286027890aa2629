#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nbody/distance.hpp"
#include "nbody/potential.hpp"

namespace nbody {

enum class WeightKind { Delta, Rho, None };
enum class Verdict { Finite, Divergent, Inconclusive };

const char* weight_kind_name(WeightKind w);
const char* verdict_name(Verdict v);

struct QuadratureOptions {
    // Far-field truncation. Both shipped eigenpairs decay like e^{-r}, so at
    // the default radius the neglected tail of r^k e^{-2r} integrands
    // (k <= 10) is below 1e-20 of the total.
    double radius = 40.0;
    std::uint64_t seed = 0;
    int radial_points = 8;      // Gauss points per radial panel
    int polar_points = 12;      // cos-theta Gauss nodes (3d)
    int azimuth_points = 24;    // uniform azimuth nodes (2d/3d)
    double cell_base = 1.0;     // base cell size of the adaptive grid
    long cell_budget = 2'000'000;
    long mc_samples = 200'000;
};

struct WeightedNormSpec {
    MultiIndex alpha;
    WeightKind weight = WeightKind::Delta;
    double extra_exponent = 0.0;  // w: the weight enters as weight^(2|alpha| + 2w)
    double eps = 1e-3;            // exclusion radius around the singular set
    QuadratureOptions quad;
};

/// Evaluator of the partial derivative d^alpha u at a point.
using DerivFn = std::function<double(const Vec&, const MultiIndex&)>;

struct NormEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    long evaluations = 0;
    bool inconclusive = false;
};

/// Quadrature of weight^(2|alpha|+2w) |d^alpha u|^2 over
/// {delta_F > eps, |x| < R}. Product spherical grids handle origin-only
/// lattices in dimension <= 3, dyadically refined tensor cells the general
/// low-dimensional case, and seeded importance sampling the rest.
NormEstimate weighted_seminorm(const DerivFn& du, const Semilattice& lattice,
                               const WeightedNormSpec& spec);

/// Central-difference estimate of d^alpha u; with a lattice supplied, the
/// stencil must stay |alpha| h away from the singular set.
double fd_partial(const std::function<double(const Vec&)>& u, const Vec& x,
                  const MultiIndex& alpha, double h, const Semilattice* lattice = nullptr);

/// Derivative evaluator backed by fd_partial with the pinned step rule
/// h = min(1e-4, delta_F(x) / (4 |alpha|)).
DerivFn fd_derivatives(std::function<double(const Vec&)> u, const Semilattice& lattice);

struct RefinementStudy {
    MultiIndex alpha;
    WeightKind weight = WeightKind::None;
    std::vector<double> eps_ladder;
    std::vector<NormEstimate> estimates;
    double exponent = 0.0;  // least-squares slope of log(value) vs log(eps)
    Verdict verdict = Verdict::Inconclusive;
};

RefinementStudy refinement_study(const DerivFn& du, const Semilattice& lattice,
                                 const MultiIndex& alpha, WeightKind weight,
                                 const std::vector<double>& eps_ladder,
                                 const QuadratureOptions& quad, double extra_exponent = 0.0);

struct ReportEntry {
    MultiIndex alpha;
    RefinementStudy weighted;    // for the requested weight (empty when None)
    RefinementStudy unweighted;  // weight = None companion
};

struct NormReport {
    std::string case_name;
    WeightKind weight = WeightKind::Delta;
    int kmax = 0;
    std::uint64_t seed = 0;
    std::vector<double> eps_ladder;
    std::vector<ReportEntry> entries;
    bool all_weighted_finite = false;
};

/// Runs refinement studies for every |alpha| <= kmax with the requested
/// weight and the unweighted companion, and checks that every weighted
/// verdict is finite.
NormReport regularity_report(const Eigenpair& pair, int kmax, WeightKind weight,
                             const std::vector<double>& eps_ladder,
                             const QuadratureOptions& quad);

/// All multi-indices over dim variables with order <= kmax, ordered by
/// total order then lexicographically.
std::vector<MultiIndex> multi_indices(int dim, int kmax);

}  // namespace nbody
