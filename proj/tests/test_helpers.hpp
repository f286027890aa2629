#pragma once

#include <random>
#include <vector>

#include "nbody/subspace.hpp"

namespace nbody::testing {

inline Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

inline Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

inline Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * gauss(rng);
    return v;
}

inline Subspace random_subspace(std::mt19937_64& rng, int ambient, int dim) {
    std::vector<Vec> gens;
    for (int i = 0; i < dim; ++i) gens.push_back(random_vec(rng, ambient));
    return make_subspace(AmbientSpace{ambient}, gens);
}

/// Independent rank oracle: classical Gram-Schmidt with column counting,
/// no reuse of the library's orthonormalization entry points.
inline int gram_schmidt_rank(std::vector<Vec> columns, double tol = 1e-10) {
    std::vector<Vec> basis;
    for (Vec v : columns) {
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) v -= b.dot(v) * b;
        if (v.norm() > tol) basis.push_back(v / v.norm());
    }
    return static_cast<int>(basis.size());
}

inline std::vector<Vec> basis_columns(const Subspace& s) {
    std::vector<Vec> cols;
    for (Eigen::Index j = 0; j < s.basis().cols(); ++j) cols.push_back(s.basis().col(j));
    return cols;
}

}  // namespace nbody::testing
