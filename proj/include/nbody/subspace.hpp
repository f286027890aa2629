#pragma once

#include <string>
#include <vector>

#include "nbody/types.hpp"

namespace nbody {

struct AmbientSpace {
    int dim = 1;
};

/// A linear subspace of R^n, stored as an orthonormal basis (n x k matrix,
/// one basis vector per column). The zero subspace has an empty basis,
/// the full space the identity-sized one.
class Subspace {
public:
    Subspace() = default;
    Subspace(AmbientSpace ambient, Mat basis, std::string name = {});

    static Subspace zero(AmbientSpace ambient);
    static Subspace full(AmbientSpace ambient);

    int ambient_dim() const { return ambient_.dim; }
    AmbientSpace ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Mat& basis() const { return basis_; }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_.dim; }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

private:
    AmbientSpace ambient_{1};
    Mat basis_;  // n x k, orthonormal columns
    std::string name_;
};

/// Orthonormalized span of the generators. Rank deficiency is reduced
/// silently; an all-zero nonempty generator list is rejected when
/// require_nonzero is set.
Subspace make_subspace(AmbientSpace ambient, const std::vector<Vec>& generators,
                       bool require_nonzero = false, std::string name = {});

Subspace intersect(const Subspace& a, const Subspace& b);

/// True iff b is contained in a.
bool contains(const Subspace& a, const Subspace& b);

bool same_span(const Subspace& a, const Subspace& b);

Vec project(const Subspace& a, const Vec& x);

double dist_to(const Subspace& a, const Vec& x);

Subspace orthogonal_complement(const Subspace& a);

/// Sum of subspaces (used by the intersection-dimension checks).
Subspace span_sum(const Subspace& a, const Subspace& b);

/// Basis of R^n adapted to the pair (Y, Z):
///   vectors 0..m-1           span Y ∩ Z,
///   vectors 0..k-1           span Y,
///   vectors 0..m-1, k..l+k-m-1  span Z.
/// Each block is orthonormal within itself and every vector lies exactly in
/// the stated subspace; the Y-completion and Z-completion blocks are not
/// orthogonal to each other unless Y and Z are orthogonally positioned.
struct AdaptedBasis {
    Mat vectors;  // n x n, full rank
    int m = 0;    // dim(Y ∩ Z)
    int k = 0;    // dim(Y)
    int l = 0;    // dim(Z)
};

AdaptedBasis adapted_basis(const Subspace& y, const Subspace& z);

namespace detail {
/// Modified Gram-Schmidt with one re-orthogonalization pass. Appends the
/// orthonormalized directions of `candidates` that are independent of the
/// columns of `base` (and of each other) to a copy of `base`.
Mat gram_schmidt_extend(const Mat& base, const Mat& candidates, double tol = kRankTol);
}  // namespace detail

}  // namespace nbody
