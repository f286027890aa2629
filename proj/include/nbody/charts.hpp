#pragma once

#include <string>

#include "nbody/types.hpp"

namespace nbody {

/// Point of the spherical compactification of R^n, stored as a unit vector
/// (y0, y1, ..., yn) with y0 >= 0. y0 == 0 encodes a boundary ray.
struct CompactPoint {
    Vec coords;  // n+1 entries

    int space_dim() const { return static_cast<int>(coords.size()) - 1; }
    bool is_boundary() const { return coords(0) == 0.0; }

    static CompactPoint make(Vec coords);
    /// Boundary ray through the (nonzero) direction v.
    static CompactPoint ray(const Vec& v);
};

/// Finite point of R^n or a boundary ray (unit direction).
struct PointOrRay {
    bool is_ray = false;
    Vec v;
};

/// Point of the corner model [0,inf)^k x R^(n-k).
struct ModelChartPoint {
    int k = 0;
    Vec coords;
};

/// (1, x) / sqrt(1 + |x|^2).
CompactPoint theta(const Vec& x);

/// Interior points map back to x = (y1..yn)/y0; boundary points to the ray
/// direction (y1..yn).
PointOrRay theta_inv(const CompactPoint& p);

/// Extension of x -> Ax + V to the compactification:
/// (y0, y') -> (y0, A y' + y0 V) normalized.
CompactPoint affine_extend(const Mat& a, const Vec& v, const CompactPoint& p);

/// psi((cos a - 1, sin a * y)) = (cos 2a, sin 2a * y) on the half-sphere
/// parametrization; returns the point of the sphere in R x X.
Vec onepoint_psi(double alpha, const Vec& y);

/// sigma((cos t, sin t * y)) = tan(t/2) * y, undefined at the south pole.
Vec stereographic(const Vec& p);
Vec stereographic_inv(const Vec& x);

/// Number of vanishing corner coordinates.
int boundary_depth(const ModelChartPoint& p);

}  // namespace nbody
