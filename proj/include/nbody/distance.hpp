#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nbody/charts.hpp"
#include "nbody/lattice.hpp"

namespace nbody {

/// Smooth cutoff with phi0(t) = t on [0, 1/2], phi0(t) = 1 on [1, inf),
/// monotone bump blend in between, flat at both junctions.
double phi0(double t);

/// phi0(dist(x, Y)).
double smoothed_r(const Subspace& y, const Vec& x);

/// Factor table of the recursive smoothed distance to the family:
/// t_Y = phi0(d_Y) / prod over strictly smaller members of their factors,
/// evaluated in increasing-dimension order; rho_F is the product of all
/// factors. The closed form depends only on the inclusion order.
struct RhoSystemEval {
    std::vector<double> factors;  // per member, in member order
    double rho = 0.0;
};

RhoSystemEval rho_system(const Semilattice& lattice, const Vec& x);

/// Continuous extension of the product: 0 on the union of members.
double rho_F(const Semilattice& lattice, const Vec& x);

struct ScanSpec {
    long samples = 10000;
    std::uint64_t seed = 0;
    double far_field_max = 1e6;
    int min_scale_exponent = 8;  // strata offsets down to 10^-8
};

struct RatioStats {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    long skipped = 0;
    long counted = 0;
    std::vector<long> histogram;  // log10-ratio bins over [-4, 4), 32 bins
};

/// Statistics of rho_F / delta_F over strata-concentrated samples.
RatioStats equivalence_scan(const Semilattice& lattice, const ScanSpec& spec);

struct ProbePath {
    Vec foot;             // point of the target member
    Vec direction;        // unit offset direction (normal to the member)
    std::vector<double> offsets;  // decreasing distances, all positive
};

struct ProbeResult {
    std::vector<double> values;  // rho_F / d_Y along the path
    double sup = 0.0;
    double max_second_difference = 0.0;  // smoothness proxy
};

ProbeResult ratio_probe(const Semilattice& lattice, int member, const ProbePath& path);

/// Radial profile of the bounded true metric: r on [0,1], increasing to 2 at
/// infinity, C^1 at the junction.
double gz_profile(double r);

/// gz distance of a quotient point: profile of its norm, 2 for boundary rays.
double gz_distance(const PointOrRay& z);

struct ViolationReport {
    double max_violation = 0.0;
    long samples = 0;
};

/// Checks gz(d_Z(x)) >= min(1, d_Z(x)) over random samples and all members;
/// analytically the violation is zero.
ViolationReport metric_inequality_check(const Semilattice& lattice, long samples,
                                        std::uint64_t seed);

/// Strata-concentrated sample generator shared by the scanners: tubular
/// samples at distances 10^-k around random members plus far-field points.
class StrataSampler {
public:
    StrataSampler(const Semilattice& lattice, double far_field_max, int min_scale_exponent);

    Vec sample(std::mt19937_64& rng) const;

private:
    const Semilattice* lattice_;
    double far_max_;
    int min_exp_;
};

}  // namespace nbody
