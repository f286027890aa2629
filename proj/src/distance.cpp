#include "nbody/distance.hpp"

#include <algorithm>
#include <cmath>

namespace nbody {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

/// Partition-of-unity weight: 1 at t=1/2, 0 at t=1, flat at both ends.
double blend_h(double t) {
    const double b1 = bump(2.0 * (1.0 - t));
    const double b2 = bump(2.0 * t - 1.0);
    return b1 / (b1 + b2);
}

}  // namespace

double phi0(double t) {
    if (t < 0.0) fail(ErrorCode::DomainError, "phi0 needs t >= 0");
    if (t <= 0.5) return t;
    if (t >= 1.0) return 1.0;
    const double h = blend_h(t);
    return t * h + (1.0 - h);
}

double smoothed_r(const Subspace& y, const Vec& x) { return phi0(dist_to(y, x)); }

RhoSystemEval rho_system(const Semilattice& lattice, const Vec& x) {
    RhoSystemEval out;
    const int k = lattice.size();
    out.factors.assign(static_cast<std::size_t>(k), 0.0);

    const std::vector<double> d = member_distances(lattice, x);
    for (int i = 0; i < k; ++i)
        if (d[static_cast<std::size_t>(i)] == 0.0)
            fail(ErrorCode::OnSingularSet, "point lies on a lattice member");

    // Members are stored in increasing-dimension order, so every strictly
    // smaller member precedes its containers.
    double rho = 1.0;
    for (int i = 0; i < k; ++i) {
        double denom = 1.0;
        for (int j = 0; j < i; ++j)
            if (lattice.member_contains(i, j)) denom *= out.factors[static_cast<std::size_t>(j)];
        const double t = phi0(d[static_cast<std::size_t>(i)]) / denom;
        out.factors[static_cast<std::size_t>(i)] = t;
        rho *= t;
    }
    out.rho = rho;
    return out;
}

double rho_F(const Semilattice& lattice, const Vec& x) {
    for (const auto& m : lattice.members())
        if (dist_to(m, x) == 0.0) return 0.0;
    return rho_system(lattice, x).rho;
}

StrataSampler::StrataSampler(const Semilattice& lattice, double far_field_max,
                             int min_scale_exponent)
    : lattice_(&lattice), far_max_(far_field_max), min_exp_(min_scale_exponent) {}

Vec StrataSampler::sample(std::mt19937_64& rng) const {
    const int n = lattice_->ambient_dim();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto unit_vector = [&](int dim) {
        Vec v(dim);
        double nv = 0.0;
        do {
            for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
            nv = v.norm();
        } while (nv == 0.0);
        return Vec(v / nv);
    };

    if (unif(rng) < 0.25 || lattice_->size() <= 1) {
        // Far/global field: log-uniform radius around the origin.
        const double r = std::pow(10.0, -min_exp_ + (std::log10(far_max_) + min_exp_) * unif(rng));
        return r * unit_vector(n);
    }

    // Tubular sample around a random nonzero member at scale 10^-k.
    std::uniform_int_distribution<int> pick(1, lattice_->size() - 1);
    const Subspace& y = lattice_->member(pick(rng));
    std::uniform_int_distribution<int> scale(1, min_exp_);
    const double dist = std::pow(10.0, -scale(rng) + 0.3 * (unif(rng) - 0.5));

    Vec x = Vec::Zero(n);
    if (y.dim() > 0) {
        const double foot_radius = std::pow(10.0, -1.0 + (std::log10(far_max_) + 1.0) * unif(rng));
        x += y.basis() * (foot_radius * unit_vector(y.dim()));
    }
    const Subspace yperp = orthogonal_complement(y);
    x += yperp.basis() * (dist * unit_vector(yperp.dim()));
    return x;
}

RatioStats equivalence_scan(const Semilattice& lattice, const ScanSpec& spec) {
    RatioStats stats;
    stats.histogram.assign(32, 0);
    stats.min_ratio = std::numeric_limits<double>::infinity();
    stats.max_ratio = 0.0;

    std::mt19937_64 rng(spec.seed);
    StrataSampler sampler(lattice, spec.far_field_max, spec.min_scale_exponent);

    for (long i = 0; i < spec.samples; ++i) {
        const Vec x = sampler.sample(rng);
        const double delta = delta_F(lattice, x);
        if (delta == 0.0) {
            ++stats.skipped;
            continue;
        }
        const double rho = rho_F(lattice, x);
        const double ratio = rho / delta;
        stats.min_ratio = std::min(stats.min_ratio, ratio);
        stats.max_ratio = std::max(stats.max_ratio, ratio);
        const double lg = std::log10(ratio);
        const int bin = std::clamp(static_cast<int>(std::floor((lg + 4.0) * 4.0)), 0, 31);
        ++stats.histogram[static_cast<std::size_t>(bin)];
        ++stats.counted;
    }
    return stats;
}

ProbeResult ratio_probe(const Semilattice& lattice, int member, const ProbePath& path) {
    if (member < 0 || member >= lattice.size())
        fail(ErrorCode::UnknownMember, "member index out of range");
    const Subspace& y = lattice.member(member);

    ProbeResult out;
    out.values.reserve(path.offsets.size());
    for (double t : path.offsets) {
        if (!(t > 0.0)) fail(ErrorCode::OnSingularSet, "path touches the member");
        const Vec x = path.foot + t * path.direction;
        const double dy = dist_to(y, x);
        if (dy == 0.0 || delta_F(lattice, x) == 0.0)
            fail(ErrorCode::OnSingularSet, "path touches the singular set");
        out.values.push_back(rho_F(lattice, x) / dy);
    }
    for (double v : out.values) out.sup = std::max(out.sup, v);
    for (std::size_t i = 1; i + 1 < out.values.size(); ++i) {
        const double dd = out.values[i + 1] - 2.0 * out.values[i] + out.values[i - 1];
        out.max_second_difference = std::max(out.max_second_difference, std::abs(dd));
    }
    return out;
}

double gz_profile(double r) {
    if (r < 0.0) fail(ErrorCode::DomainError, "profile needs r >= 0");
    if (r <= 1.0) return r;
    const double far = 2.0 - 1.0 / r;
    if (r >= 2.0) return far;
    // Both branches agree to first order at r = 1; the bump mix keeps the
    // junction flat at r = 2 as well.
    const double h = blend_h(0.5 + (r - 1.0) / 2.0);
    return h * r + (1.0 - h) * far;
}

double gz_distance(const PointOrRay& z) {
    if (z.is_ray) return 2.0;
    return gz_profile(z.v.norm());
}

ViolationReport metric_inequality_check(const Semilattice& lattice, long samples,
                                        std::uint64_t seed) {
    ViolationReport out;
    std::mt19937_64 rng(seed);
    StrataSampler sampler(lattice, 1e6, 8);
    for (long i = 0; i < samples; ++i) {
        const Vec x = sampler.sample(rng);
        for (const auto& m : lattice.members()) {
            const double d = dist_to(m, x);
            const double lhs = gz_profile(d);
            const double rhs = std::min(1.0, d);
            out.max_violation = std::max(out.max_violation, rhs - lhs);
        }
        ++out.samples;
    }
    return out;
}

}  // namespace nbody
