#include "nbody/subspace.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace nbody {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::ContainsAmbient: return "ContainsAmbient";
        case ErrorCode::UnknownMember: return "UnknownMember";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::SingularMap: return "SingularMap";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::PoleError: return "PoleError";
        case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
        case ErrorCode::OnBlownCenter: return "OnBlownCenter";
        case ErrorCode::DegenerateDirection: return "DegenerateDirection";
        case ErrorCode::OnSingularSet: return "OnSingularSet";
        case ErrorCode::EmptyIntersection: return "EmptyIntersection";
        case ErrorCode::StencilTooWide: return "StencilTooWide";
        case ErrorCode::InvalidEigenpair: return "InvalidEigenpair";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Error";
}

namespace detail {

Mat gram_schmidt_extend(const Mat& base, const Mat& candidates, double tol) {
    const Eigen::Index n = base.rows() > 0 ? base.rows() : candidates.rows();
    Mat out(n, base.cols() + candidates.cols());
    Eigen::Index k = base.cols();
    if (k > 0) out.leftCols(k) = base;

    for (Eigen::Index j = 0; j < candidates.cols(); ++j) {
        Vec v = candidates.col(j);
        // two passes of orthogonalization keep the result orthonormal to ~1e-15
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < k; ++i) {
                v -= out.col(i).dot(v) * out.col(i);
            }
        }
        const double nv = v.norm();
        if (nv > tol) {
            out.col(k) = v / nv;
            ++k;
        }
    }
    return out.leftCols(k);
}

}  // namespace detail

Subspace::Subspace(AmbientSpace ambient, Mat basis, std::string name)
    : ambient_(ambient), basis_(std::move(basis)), name_(std::move(name)) {
    if (ambient_.dim < 1) fail(ErrorCode::DomainError, "ambient dimension must be >= 1");
    if (basis_.size() > 0 && basis_.rows() != ambient_.dim)
        fail(ErrorCode::AmbientMismatch, "basis rows do not match ambient dimension");
    if (basis_.size() == 0) basis_ = Mat(ambient_.dim, 0);
}

Subspace Subspace::zero(AmbientSpace ambient) {
    return Subspace(ambient, Mat(ambient.dim, 0), "0");
}

Subspace Subspace::full(AmbientSpace ambient) {
    return Subspace(ambient, Mat::Identity(ambient.dim, ambient.dim), "X");
}

Subspace make_subspace(AmbientSpace ambient, const std::vector<Vec>& generators,
                       bool require_nonzero, std::string name) {
    Mat cand(ambient.dim, static_cast<Eigen::Index>(generators.size()));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        if (generators[j].size() != ambient.dim)
            fail(ErrorCode::AmbientMismatch, "generator has wrong length");
        if (!generators[j].allFinite()) fail(ErrorCode::NonFinite, "generator has non-finite entries");
        cand.col(static_cast<Eigen::Index>(j)) = generators[j];
    }
    Mat basis = detail::gram_schmidt_extend(Mat(ambient.dim, 0), cand);
    if (require_nonzero && !generators.empty() && basis.cols() == 0)
        fail(ErrorCode::DegenerateInput, "generators span only the zero subspace");
    return Subspace(ambient, std::move(basis), std::move(name));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    const int n = a.ambient_dim();
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient());

    // x ∈ A ∩ B  ⇔  (I - P_A)x = 0 and (I - P_B)x = 0.
    Mat stacked(2 * n, n);
    stacked.topRows(n) = Mat::Identity(n, n) - a.basis() * a.basis().transpose();
    stacked.bottomRows(n) = Mat::Identity(n, n) - b.basis() * b.basis().transpose();

    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (Eigen::Index i = sv.size(); i-- > 0;) {
        if (sv(i) < kRankTol)
            ++null_dim;
        else
            break;
    }
    Mat basis = svd.matrixV().rightCols(null_dim);
    return Subspace(a.ambient(), std::move(basis));
}

bool contains(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    if (b.dim() > a.dim()) return false;
    for (Eigen::Index j = 0; j < b.basis().cols(); ++j) {
        const Vec v = b.basis().col(j);
        const Vec r = v - a.basis() * (a.basis().transpose() * v);
        if (r.norm() > kRankTol) return false;
    }
    return true;
}

bool same_span(const Subspace& a, const Subspace& b) {
    return a.dim() == b.dim() && contains(a, b) && contains(b, a);
}

Vec project(const Subspace& a, const Vec& x) {
    if (x.size() != a.ambient_dim()) fail(ErrorCode::AmbientMismatch, "point has wrong length");
    if (a.is_zero()) return Vec::Zero(a.ambient_dim());
    return a.basis() * (a.basis().transpose() * x);
}

double dist_to(const Subspace& a, const Vec& x) {
    return (x - project(a, x)).norm();
}

Subspace orthogonal_complement(const Subspace& a) {
    const int n = a.ambient_dim();
    if (a.is_zero()) return Subspace::full(a.ambient());
    if (a.is_full()) return Subspace::zero(a.ambient());
    Mat ext = detail::gram_schmidt_extend(a.basis(), Mat::Identity(n, n));
    return Subspace(a.ambient(), ext.rightCols(n - a.dim()));
}

Subspace span_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    Mat basis = detail::gram_schmidt_extend(a.basis(), b.basis());
    return Subspace(a.ambient(), std::move(basis));
}

AdaptedBasis adapted_basis(const Subspace& y, const Subspace& z) {
    if (y.ambient_dim() != z.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "subspaces live in different ambient spaces");
    const int n = y.ambient_dim();

    AdaptedBasis out;
    const Subspace meet = intersect(y, z);
    out.m = meet.dim();
    out.k = y.dim();
    out.l = z.dim();

    // Blocks: [Y∩Z | completion of Y | completion of Z | completion of X].
    Mat ybl = detail::gram_schmidt_extend(meet.basis(), y.basis());       // n x k
    Mat zext = detail::gram_schmidt_extend(meet.basis(), z.basis());      // n x l
    Mat zbl = zext.rightCols(out.l - out.m);

    Mat vectors(n, n);
    Eigen::Index c = 0;
    vectors.middleCols(c, out.m) = ybl.leftCols(out.m);
    c += out.m;
    vectors.middleCols(c, out.k - out.m) = ybl.rightCols(out.k - out.m);
    c += out.k - out.m;
    vectors.middleCols(c, out.l - out.m) = zbl;
    c += out.l - out.m;

    // Complete to a basis of R^n: new vectors orthonormal to the span so far.
    if (c < n) {
        Mat chosen_span = detail::gram_schmidt_extend(Mat(n, 0), vectors.leftCols(c));
        Mat completion = detail::gram_schmidt_extend(chosen_span, Mat::Identity(n, n));
        vectors.rightCols(n - c) = completion.rightCols(n - c);
    }
    out.vectors = std::move(vectors);
    return out;
}

}  // namespace nbody
