#include "nbody/charts.hpp"

#include <cmath>

namespace nbody {

CompactPoint CompactPoint::make(Vec coords) {
    if (coords.size() < 2) fail(ErrorCode::DomainError, "compact point needs at least 2 coordinates");
    if (!coords.allFinite()) fail(ErrorCode::NonFinite, "compact point has non-finite coordinates");
    if (coords(0) < 0.0) fail(ErrorCode::DomainError, "compact point has y0 < 0");
    if (std::abs(coords.norm() - 1.0) > 1e-12)
        fail(ErrorCode::DomainError, "compact point is not unit to 1e-12");
    return CompactPoint{std::move(coords)};
}

CompactPoint CompactPoint::ray(const Vec& v) {
    const double nv = v.norm();
    if (!(nv > 0.0)) fail(ErrorCode::DegenerateDirection, "ray direction must be nonzero");
    Vec c(v.size() + 1);
    c(0) = 0.0;
    c.tail(v.size()) = v / nv;
    return CompactPoint{std::move(c)};
}

CompactPoint theta(const Vec& x) {
    if (!x.allFinite()) fail(ErrorCode::NonFinite, "theta needs a finite point");
    Vec c(x.size() + 1);
    c(0) = 1.0;
    c.tail(x.size()) = x;
    c /= c.stableNorm();  // overflow-safe for very large inputs
    return CompactPoint{std::move(c)};
}

PointOrRay theta_inv(const CompactPoint& p) {
    PointOrRay out;
    if (p.is_boundary()) {
        out.is_ray = true;
        out.v = p.coords.tail(p.space_dim());
        out.v /= out.v.norm();
    } else {
        out.is_ray = false;
        out.v = p.coords.tail(p.space_dim()) / p.coords(0);
    }
    return out;
}

CompactPoint affine_extend(const Mat& a, const Vec& v, const CompactPoint& p) {
    const int n = p.space_dim();
    if (a.rows() != n || a.cols() != n || v.size() != n)
        fail(ErrorCode::AmbientMismatch, "map dimensions do not match the point");
    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible()) fail(ErrorCode::SingularMap, "linear part is singular");

    Vec image(n + 1);
    image(0) = p.coords(0);
    image.tail(n) = a * p.coords.tail(n) + p.coords(0) * v;
    // Boundary rays see only the linear part; when that fixes the direction
    // (translations in particular), the point is returned unchanged.
    if (p.coords(0) == 0.0 && image.tail(n) == p.coords.tail(n)) return p;
    image /= image.norm();
    return CompactPoint{std::move(image)};
}

Vec onepoint_psi(double alpha, const Vec& y) {
    if (!(alpha >= 0.0 && alpha <= M_PI / 2.0))
        fail(ErrorCode::DomainError, "alpha must lie in [0, pi/2]");
    if (std::abs(y.norm() - 1.0) > 1e-9) fail(ErrorCode::DomainError, "y must be a unit vector");
    Vec out(y.size() + 1);
    out(0) = std::cos(2.0 * alpha);
    out.tail(y.size()) = std::sin(2.0 * alpha) * y;
    return out;
}

Vec stereographic(const Vec& p) {
    if (p.size() < 2) fail(ErrorCode::DomainError, "point needs at least 2 coordinates");
    if (std::abs(p.norm() - 1.0) > 1e-9) fail(ErrorCode::DomainError, "point must be unit");
    const int n = static_cast<int>(p.size()) - 1;
    const double sin_t = p.tail(n).norm();
    if (1.0 + p(0) < 1e-14 && sin_t < 1e-14)
        fail(ErrorCode::PoleError, "stereographic projection is undefined at the south pole");
    if (sin_t == 0.0) return Vec::Zero(n);  // north pole -> origin
    const double t = std::atan2(sin_t, p(0));
    return (std::tan(t / 2.0) / sin_t) * p.tail(n);
}

Vec stereographic_inv(const Vec& x) {
    if (!x.allFinite()) fail(ErrorCode::NonFinite, "point must be finite");
    const int n = static_cast<int>(x.size());
    Vec out(n + 1);
    const double nx = x.norm();
    const double t = 2.0 * std::atan(nx);
    out(0) = std::cos(t);
    if (nx == 0.0)
        out.tail(n).setZero();
    else
        out.tail(n) = (std::sin(t) / nx) * x;
    return out;
}

int boundary_depth(const ModelChartPoint& p) {
    if (p.k < 0 || p.k > p.coords.size())
        fail(ErrorCode::DomainError, "corner codimension out of range");
    int depth = 0;
    for (int i = 0; i < p.k; ++i) {
        const double c = p.coords(i);
        if (c < -1e-14) fail(ErrorCode::DomainError, "corner coordinate is negative");
        if (std::abs(c) <= 1e-14) ++depth;
    }
    return depth;
}

}  // namespace nbody
