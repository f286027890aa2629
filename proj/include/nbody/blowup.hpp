#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nbody/charts.hpp"
#include "nbody/lattice.hpp"
#include "nbody/subspace.hpp"

namespace nbody {

/// Image of a point under the splitting of the blow-up of the sphere at
/// infinity of Y: a compactified-quotient part (coordinates in the canonical
/// orthonormal basis of the orthogonal complement of Y) and a compactified
/// fiber part (coordinates in the basis of Y).
struct SplitPoint {
    CompactPoint quotient_part;
    CompactPoint fiber_part;
};

SplitPoint split_point(const Subspace& y, const Vec& x);

/// Blow-down of the split model: interior (z, y) -> z + sqrt(1+<z,z>) y,
/// boundary fiber points map to their ray. z must lie in the orthogonal
/// complement of y's subspace; both vectors are in ambient coordinates.
PointOrRay blowdown_xi(const Subspace& y, const Vec& z, const PointOrRay& fiber);

/// Composition Xi_Y(Psi_Y(x)); identity on X up to roundoff.
Vec split_roundtrip(const Subspace& y, const Vec& x);

/// Sphere blow-up normal form: (eta, mu) on the unit sphere of the product
/// model, eta != 0, maps to (eta/|eta|, (|eta|, mu)).
struct SphereSplit {
    Vec direction;  // eta/|eta|
    Vec polar;      // (|eta|, mu)
};

SphereSplit sphere_blowup_map(const Vec& eta, const Vec& mu);
std::pair<Vec, Vec> sphere_blowup_inv(const SphereSplit& s);

/// Point of the graph blow-up: one compactified-quotient component per
/// lattice member, each in the member's complement basis (the zero member
/// contributes the compactification of the whole space).
struct GVPoint {
    std::vector<CompactPoint> components;
};

GVPoint gv_embed(const Semilattice& lattice, const Vec& x);

/// Componentwise limit of gv_embed(base + t dir) as t -> infinity.
GVPoint ray_limit(const Semilattice& lattice, const Vec& base, const Vec& dir);

/// Reconstructs the interior point from the zero-member component.
Vec gv_reconstruct(const Semilattice& lattice, const GVPoint& p);

/// Max distance between each interior component and the one recomputed from
/// the reconstructed point; boundary components must match directions.
double gv_consistency_error(const Semilattice& lattice, const GVPoint& p);

struct PolarTriple {
    Vec foot;       // projection onto the member
    Vec direction;  // unit normal direction toward x
    double radius;  // distance to the member
};

struct XFPoint {
    GVPoint gv;
    std::vector<PolarTriple> polar;  // one triple per member
};

XFPoint xf_coords(const Semilattice& lattice, const Vec& x);

enum class StratumKind { Closure, Sphere };

struct StratumDescriptor {
    Subspace space;
    StratumKind kind = StratumKind::Closure;
};

struct CleanReport {
    std::string point_desc;
    int dim_tangent_of_intersection = 0;
    int dim_intersection_of_tangents = 0;
    bool clean = false;
};

/// Compares the tangent space of the intersection stratum with the
/// intersection of tangent spaces at a common point (auto-selected as the ray
/// through a unit vector of the subspace intersection when nonzero).
CleanReport clean_check(const StratumDescriptor& p, const StratumDescriptor& q,
                        std::optional<Vec> test_direction = std::nullopt);

}  // namespace nbody
