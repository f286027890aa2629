#include "nbody/blowup.hpp"

#include <cmath>

namespace nbody {

namespace {

double on_set_tolerance(const Vec& x) { return 1e-13 * (1.0 + x.norm()); }

}  // namespace

SplitPoint split_point(const Subspace& y, const Vec& x) {
    if (y.is_zero() || y.is_full())
        fail(ErrorCode::DegenerateSubspace, "splitting needs a proper nonzero subspace");
    if (x.size() != y.ambient_dim()) fail(ErrorCode::AmbientMismatch, "point has wrong length");
    if (!x.allFinite()) fail(ErrorCode::NonFinite, "point must be finite");

    const Subspace yperp = orthogonal_complement(y);
    const Vec vy = y.basis().transpose() * x;        // coordinates in Y
    const Vec vperp = yperp.basis().transpose() * x; // coordinates in Y-perp

    SplitPoint out{theta(vperp), theta(vy / std::sqrt(1.0 + vperp.squaredNorm()))};
    return out;
}

PointOrRay blowdown_xi(const Subspace& y, const Vec& z, const PointOrRay& fiber) {
    if (z.size() != y.ambient_dim() || fiber.v.size() != y.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "inputs have wrong length");
    if (!z.allFinite()) fail(ErrorCode::NonFinite, "z must be finite");
    if (project(y, z).norm() > kRankTol * (1.0 + z.norm()))
        fail(ErrorCode::DomainError, "z must lie in the orthogonal complement");

    PointOrRay out;
    if (fiber.is_ray) {
        out.is_ray = true;
        out.v = fiber.v / fiber.v.norm();
        return out;
    }
    out.is_ray = false;
    out.v = z + std::sqrt(1.0 + z.squaredNorm()) * fiber.v;
    return out;
}

Vec split_roundtrip(const Subspace& y, const Vec& x) {
    const SplitPoint s = split_point(y, x);
    const Subspace yperp = orthogonal_complement(y);

    const PointOrRay q = theta_inv(s.quotient_part);
    const PointOrRay f = theta_inv(s.fiber_part);
    PointOrRay fiber_ambient{f.is_ray, y.basis() * f.v};
    const Vec z = yperp.basis() * q.v;

    const PointOrRay back = blowdown_xi(y, z, fiber_ambient);
    return back.v;
}

SphereSplit sphere_blowup_map(const Vec& eta, const Vec& mu) {
    const double ne = eta.norm();
    if (std::abs(eta.squaredNorm() + mu.squaredNorm() - 1.0) > 1e-9)
        fail(ErrorCode::DomainError, "(eta, mu) must lie on the unit sphere of the product model");
    if (ne == 0.0) fail(ErrorCode::OnBlownCenter, "the map is undefined on the blown-up center");

    SphereSplit out;
    out.direction = eta / ne;
    out.polar.resize(mu.size() + 1);
    out.polar(0) = ne;
    out.polar.tail(mu.size()) = mu;
    return out;
}

std::pair<Vec, Vec> sphere_blowup_inv(const SphereSplit& s) {
    if (s.polar.size() < 1 || s.polar(0) < 0.0)
        fail(ErrorCode::DomainError, "polar part must start with a nonnegative radius");
    Vec eta = s.polar(0) * s.direction;
    Vec mu = s.polar.tail(s.polar.size() - 1);
    return {std::move(eta), std::move(mu)};
}

GVPoint gv_embed(const Semilattice& lattice, const Vec& x) {
    if (x.size() != lattice.ambient_dim()) fail(ErrorCode::AmbientMismatch, "point has wrong length");
    if (!x.allFinite()) fail(ErrorCode::NonFinite, "point must be finite");
    GVPoint out;
    out.components.reserve(static_cast<std::size_t>(lattice.size()));
    for (const auto& m : lattice.members()) {
        const Subspace mperp = orthogonal_complement(m);
        out.components.push_back(theta(mperp.basis().transpose() * x));
    }
    return out;
}

GVPoint ray_limit(const Semilattice& lattice, const Vec& base, const Vec& dir) {
    if (base.size() != lattice.ambient_dim() || dir.size() != lattice.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "inputs have wrong length");
    if (!(dir.norm() > 0.0)) fail(ErrorCode::DegenerateDirection, "direction must be nonzero");

    GVPoint out;
    out.components.reserve(static_cast<std::size_t>(lattice.size()));
    for (const auto& m : lattice.members()) {
        const Subspace mperp = orthogonal_complement(m);
        const Vec w = mperp.basis().transpose() * dir;
        if (w.norm() > kRankTol * dir.norm()) {
            out.components.push_back(CompactPoint::ray(w));
        } else {
            out.components.push_back(theta(mperp.basis().transpose() * base));
        }
    }
    return out;
}

Vec gv_reconstruct(const Semilattice& lattice, const GVPoint& p) {
    if (p.components.empty()) fail(ErrorCode::DomainError, "empty graph-blow-up point");
    // The zero subspace sorts first, so component 0 is the compactified point itself.
    if (!lattice.member(0).is_zero())
        fail(ErrorCode::DomainError, "lattice does not contain the zero subspace");
    const PointOrRay p0 = theta_inv(p.components.front());
    if (p0.is_ray) fail(ErrorCode::DomainError, "cannot reconstruct from a boundary point");
    return p0.v;
}

double gv_consistency_error(const Semilattice& lattice, const GVPoint& p) {
    const Vec x = gv_reconstruct(lattice, p);
    const GVPoint again = gv_embed(lattice, x);
    double err = 0.0;
    for (std::size_t i = 0; i < p.components.size(); ++i)
        err = std::max(err, (p.components[i].coords - again.components[i].coords).norm());
    return err;
}

XFPoint xf_coords(const Semilattice& lattice, const Vec& x) {
    XFPoint out;
    const double tol = on_set_tolerance(x);
    for (const auto& m : lattice.members()) {
        const Vec foot = project(m, x);
        const Vec normal = x - foot;
        const double radius = normal.norm();
        if (radius <= tol)
            fail(ErrorCode::OnSingularSet, "point lies on a lattice member");
        out.polar.push_back({foot, normal / radius, radius});
    }
    out.gv = gv_embed(lattice, x);
    return out;
}

namespace {

/// Tangent space of a stratum at a chosen point, as a subspace of R^(n+1):
/// at the boundary ray through e, the closure contributes the radial
/// direction e0 plus (0, v) for v in the stratum subspace orthogonal to e;
/// the sphere at infinity omits e0. At the origin the closure contributes
/// (0, v) for v in the subspace.
Subspace stratum_tangent(const StratumDescriptor& s, const std::optional<Vec>& ray_dir) {
    const int n = s.space.ambient_dim();
    std::vector<Vec> gens;
    if (ray_dir) {
        if (!contains(s.space, make_subspace(s.space.ambient(), {*ray_dir})))
            fail(ErrorCode::DomainError, "test direction does not lie in the stratum subspace");
        if (s.kind == StratumKind::Closure) {
            Vec e0 = Vec::Zero(n + 1);
            e0(0) = 1.0;
            gens.push_back(e0);
        }
        const Subspace ray = make_subspace(s.space.ambient(), {*ray_dir});
        const Subspace tangential = intersect(s.space, orthogonal_complement(ray));
        for (Eigen::Index j = 0; j < tangential.basis().cols(); ++j) {
            Vec g = Vec::Zero(n + 1);
            g.tail(n) = tangential.basis().col(j);
            gens.push_back(g);
        }
    } else {
        if (s.kind == StratumKind::Sphere)
            fail(ErrorCode::DomainError, "sphere strata do not pass through the origin");
        for (Eigen::Index j = 0; j < s.space.basis().cols(); ++j) {
            Vec g = Vec::Zero(n + 1);
            g.tail(n) = s.space.basis().col(j);
            gens.push_back(g);
        }
    }
    return make_subspace(AmbientSpace{n + 1}, gens);
}

}  // namespace

CleanReport clean_check(const StratumDescriptor& p, const StratumDescriptor& q,
                        std::optional<Vec> test_direction) {
    if (p.space.ambient_dim() != q.space.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "strata live in different ambient spaces");

    const Subspace meet = intersect(p.space, q.space);
    StratumDescriptor inter{meet, (p.kind == StratumKind::Sphere || q.kind == StratumKind::Sphere)
                                      ? StratumKind::Sphere
                                      : StratumKind::Closure};

    CleanReport report;
    std::optional<Vec> ray_dir;
    if (test_direction) {
        if (!contains(meet, make_subspace(meet.ambient(), {*test_direction})))
            fail(ErrorCode::DomainError, "test direction must lie in both strata");
        ray_dir = *test_direction / test_direction->norm();
        report.point_desc = "supplied boundary ray";
    } else if (meet.dim() >= 1) {
        // Appendix-style auto-selection: the ray through the first adapted
        // basis vector, a unit vector of the subspace intersection.
        ray_dir = adapted_basis(p.space, q.space).vectors.col(0);
        report.point_desc = "auto ray through a unit vector of the intersection";
    } else if (inter.kind == StratumKind::Closure) {
        report.point_desc = "origin";
    } else {
        fail(ErrorCode::EmptyIntersection, "strata intersect only in the empty set");
    }

    const Subspace tp = stratum_tangent(p, ray_dir);
    const Subspace tq = stratum_tangent(q, ray_dir);
    const Subspace ti = stratum_tangent(inter, ray_dir);

    report.dim_tangent_of_intersection = ti.dim();
    report.dim_intersection_of_tangents = intersect(tp, tq).dim();
    report.clean = report.dim_tangent_of_intersection == report.dim_intersection_of_tangents;
    return report;
}

}  // namespace nbody
