#include "nbody/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace nbody {

const char* weight_kind_name(WeightKind w) {
    switch (w) {
        case WeightKind::Delta: return "delta";
        case WeightKind::Rho: return "rho";
        case WeightKind::None: return "none";
    }
    return "none";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Finite: return "finite";
        case Verdict::Divergent: return "divergent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

/// Neumaier compensated accumulator; the reduction order is fixed by the
/// caller, so sums are bit-reproducible for a fixed seed.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence.
const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                rule.nodes[static_cast<std::size_t>(i)] = x;
                rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
                break;
            }
        }
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double weight_value(WeightKind kind, const Semilattice& lattice, const Vec& x) {
    switch (kind) {
        case WeightKind::Delta: return delta_F(lattice, x);
        case WeightKind::Rho: return rho_F(lattice, x);
        case WeightKind::None: return 1.0;
    }
    return 1.0;
}

struct Integrand {
    const DerivFn* du;
    const Semilattice* lattice;
    const MultiIndex* alpha;
    WeightKind weight;
    double weight_power;  // 2|alpha| + 2w
    double eps;
    double radius;
    mutable long evaluations = 0;

    /// Value with the exclusion-and-truncation indicator applied.
    double operator()(const Vec& x) const {
        if (x.norm() >= radius) return 0.0;
        if (delta_F(*lattice, x) <= eps) return 0.0;
        ++evaluations;
        const double d = (*du)(x, *alpha);
        double w = 1.0;
        if (weight != WeightKind::None && weight_power != 0.0)
            w = std::pow(weight_value(weight, *lattice, x), weight_power);
        return w * d * d;
    }
};

/// Geometric panels from eps to 1, then uniform panels of width <= 1 out to
/// the truncation radius.
std::vector<double> radial_breakpoints(double eps, double radius) {
    std::vector<double> pts;
    pts.push_back(eps);
    double r = eps;
    const double mid = std::min(1.0, radius);
    while (r < mid) {
        r = std::min(r * 2.0, mid);
        pts.push_back(r);
    }
    if (radius > pts.back()) {
        const double lo = pts.back();
        const int panels = static_cast<int>(std::ceil(radius - lo));
        for (int i = 1; i <= panels; ++i) pts.push_back(lo + (radius - lo) * i / panels);
    }
    return pts;
}

/// Product spherical grid for lattices whose only member is the origin.
NormEstimate spherical_estimate(const Integrand& f, int n, double eps,
                                const QuadratureOptions& quad) {
    const std::vector<double> breaks = radial_breakpoints(eps, quad.radius);

    // Angular nodes: exact for the polynomial angular dependence of
    // derivatives of radial-type functions.
    std::vector<Vec> dirs;
    std::vector<double> dir_weights;
    if (n == 1) {
        for (double s : {-1.0, 1.0}) {
            Vec v(1);
            v(0) = s;
            dirs.push_back(v);
            dir_weights.push_back(1.0);
        }
    } else if (n == 2) {
        const int m = quad.azimuth_points;
        for (int j = 0; j < m; ++j) {
            const double phi = 2.0 * M_PI * j / m;
            Vec v(2);
            v << std::cos(phi), std::sin(phi);
            dirs.push_back(v);
            dir_weights.push_back(2.0 * M_PI / m);
        }
    } else {
        const GaussRule& gtheta = gauss_legendre(quad.polar_points);
        const int m = quad.azimuth_points;
        for (std::size_t t = 0; t < gtheta.nodes.size(); ++t) {
            const double cu = gtheta.nodes[t];
            const double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
            for (int j = 0; j < m; ++j) {
                const double phi = 2.0 * M_PI * j / m;
                Vec v(3);
                v << su * std::cos(phi), su * std::sin(phi), cu;
                dirs.push_back(v);
                dir_weights.push_back(gtheta.weights[t] * 2.0 * M_PI / m);
            }
        }
    }

    auto integrate = [&](int radial_points) {
        const GaussRule& gr = gauss_legendre(radial_points);
        CompensatedSum total;
        for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            const double a = breaks[p], b = breaks[p + 1];
            for (std::size_t q = 0; q < gr.nodes.size(); ++q) {
                const double r = 0.5 * (a + b) + 0.5 * (b - a) * gr.nodes[q];
                const double wr = 0.5 * (b - a) * gr.weights[q];
                CompensatedSum shell;
                for (std::size_t d = 0; d < dirs.size(); ++d)
                    shell.add(dir_weights[d] * f(r * dirs[d]));
                total.add(wr * std::pow(r, n - 1) * shell.value());
            }
        }
        return total.value();
    };

    NormEstimate est;
    const double fine = integrate(quad.radial_points);
    const double coarse = integrate(std::max(2, quad.radial_points / 2));
    est.value = fine;
    est.error_bar = std::abs(fine - coarse);
    est.evaluations = f.evaluations;
    return est;
}

/// Dyadically refined tensor cells for general low-dimensional lattices.
NormEstimate adaptive_cell_estimate(const Integrand& f, const Semilattice& lattice, int n,
                                    double eps, const QuadratureOptions& quad) {
    struct Cell {
        Vec center;
        double half = 0.0;
    };

    auto dist_to_union = [&lattice](const Vec& x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : lattice.members()) best = std::min(best, dist_to(m, x));
        return best;
    };

    const double R = quad.radius;
    const double base = quad.cell_base;
    const int cells_per_axis = std::max(2, static_cast<int>(std::ceil(2.0 * R / base)));
    const double h0 = R / cells_per_axis * 1.0;

    std::deque<Cell> work;
    std::vector<int> index(static_cast<std::size_t>(n), 0);
    for (long flat = 0; flat < static_cast<long>(std::pow(cells_per_axis, n)); ++flat) {
        long rem = flat;
        Vec c(n);
        for (int d = 0; d < n; ++d) {
            const int id = static_cast<int>(rem % cells_per_axis);
            rem /= cells_per_axis;
            c(d) = -R + (2.0 * id + 1.0) * h0;
        }
        work.push_back({c, h0});
    }

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::vector<Cell> leaves;
    long budget = quad.cell_budget;
    bool exhausted = false;
    while (!work.empty()) {
        Cell cell = work.front();
        work.pop_front();
        const double diam = 2.0 * cell.half * sqrt_n;
        const double dist = dist_to_union(cell.center);
        // Skip cells fully inside the excluded ball around the singular set.
        if (dist + diam / 2.0 <= eps) continue;
        const bool near_set = dist < 1.5 * diam && cell.half > eps / 4.0;
        const bool coarse = cell.half > 0.75;
        if ((near_set || coarse) && static_cast<long>(leaves.size() + work.size()) < budget) {
            for (int corner = 0; corner < (1 << n); ++corner) {
                Vec c = cell.center;
                for (int d = 0; d < n; ++d)
                    c(d) += ((corner >> d) & 1 ? 0.5 : -0.5) * cell.half;
                work.push_back({c, cell.half / 2.0});
            }
        } else {
            if (static_cast<long>(leaves.size()) >= budget) {
                exhausted = true;
                break;
            }
            leaves.push_back(cell);
        }
    }

    auto integrate = [&](int points_per_axis) {
        const GaussRule& g = gauss_legendre(points_per_axis);
        CompensatedSum total;
        std::vector<int> digit(static_cast<std::size_t>(n), 0);
        for (const Cell& cell : leaves) {
            const long combos = static_cast<long>(std::pow(points_per_axis, n));
            CompensatedSum local;
            for (long flat = 0; flat < combos; ++flat) {
                long rem = flat;
                Vec x = cell.center;
                double w = 1.0;
                for (int d = 0; d < n; ++d) {
                    const int id = static_cast<int>(rem % points_per_axis);
                    rem /= points_per_axis;
                    x(d) += cell.half * g.nodes[static_cast<std::size_t>(id)];
                    w *= cell.half * g.weights[static_cast<std::size_t>(id)];
                }
                local.add(w * f(x));
            }
            total.add(local.value());
        }
        return total.value();
    };

    NormEstimate est;
    const double fine = integrate(3);
    const double coarse = integrate(2);
    est.value = fine;
    est.error_bar = std::abs(fine - coarse);
    est.evaluations = f.evaluations;
    est.inconclusive = exhausted;
    return est;
}

/// Halton sequence with a seeded Cranley-Patterson rotation; coordinates are
/// kept strictly inside (0,1) so inverse transforms stay finite.
class HaltonSequence {
public:
    HaltonSequence(int dims, std::uint64_t seed) {
        static const int first_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
        if (dims > 20) fail(ErrorCode::DomainError, "halton driver supports up to 20 dimensions");
        primes_.assign(first_primes, first_primes + dims);
        std::uint64_t state = seed;
        auto splitmix = [&state]() {
            state += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = state;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        for (int d = 0; d < dims; ++d)
            shifts_.push_back(static_cast<double>(splitmix() >> 11) * 0x1.0p-53);
    }

    double coordinate(long index, int dim) const {
        const int base = primes_[static_cast<std::size_t>(dim)];
        double inv = 1.0 / base, value = 0.0;
        for (long i = index + 1; i > 0; i /= base) {
            value += (i % base) * inv;
            inv /= base;
        }
        value += shifts_[static_cast<std::size_t>(dim)];
        value -= std::floor(value);
        return std::min(std::max(value, 1e-12), 1.0 - 1e-12);
    }

private:
    std::vector<int> primes_;
    std::vector<double> shifts_;
};

/// Seeded low-discrepancy importance sampling for higher-dimensional
/// lattices: a global uniform-ball mixture component plus tube components
/// around each member at decade scales, all with exactly computable
/// densities. Each draw consumes a fixed block of Halton coordinates.
NormEstimate mc_estimate(const Integrand& f, const Semilattice& lattice, int n, double eps,
                         const QuadratureOptions& quad) {
    const double R = quad.radius;

    auto sphere_area = [](int dim) {  // area of S^{dim-1}
        return 2.0 * std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0);
    };
    const double ball_volume = std::pow(R, n) * std::pow(M_PI, n / 2.0) /
                               std::tgamma(n / 2.0 + 1.0);

    struct TubeComponent {
        int member = 0;
        double lo = 0.0, hi = 0.0;  // distance band
        double weight = 0.0;
    };
    const int decades = std::max(2, static_cast<int>(std::ceil(-std::log10(eps))) + 1);
    std::vector<TubeComponent> tubes;
    for (int m = 0; m < lattice.size(); ++m) {
        for (int k = 0; k < decades; ++k) {
            TubeComponent t;
            t.member = m;
            t.hi = std::pow(10.0, -k + 0.5);
            t.lo = std::pow(10.0, -k - 0.5);
            tubes.push_back(t);
        }
    }
    const double w_global = 0.3;
    for (auto& t : tubes) t.weight = (1.0 - w_global) / static_cast<double>(tubes.size());

    const double foot_sigma = R / 3.0;

    auto tube_density = [&](const TubeComponent& t, const Vec& x) {
        const Subspace& y = lattice.member(t.member);
        const int codim = n - y.dim();
        const double rho = dist_to(y, x);
        if (rho < t.lo || rho > t.hi || rho == 0.0) return 0.0;
        double density = 1.0 / (rho * std::log(t.hi / t.lo));          // log-uniform radius
        density /= sphere_area(codim) * std::pow(rho, codim - 1);      // tube Jacobian
        if (y.dim() > 0) {
            const Vec foot = y.basis().transpose() * x;
            density *= std::exp(-foot.squaredNorm() / (2.0 * foot_sigma * foot_sigma)) /
                       std::pow(2.0 * M_PI * foot_sigma * foot_sigma, y.dim() / 2.0);
        }
        return density;
    };

    auto density = [&](const Vec& x) {
        double q = x.norm() < R ? w_global / ball_volume : 0.0;
        for (const auto& t : tubes) q += t.weight * tube_density(t, x);
        return q;
    };

    // fixed coordinate layout per draw: component pick, one radius, and two
    // Box-Muller-pair blocks of Gaussians (normal direction and foot)
    const int gauss_block = 2 * ((n + 1) / 2);
    const int dims = 2 + 2 * gauss_block;
    const HaltonSequence halton(dims, quad.seed);

    auto gaussians = [&](long index, int offset, int count, Vec& out) {
        for (int j = 0; j < count; j += 2) {
            const double u = halton.coordinate(index, offset + j);
            const double v = halton.coordinate(index, offset + j + 1);
            const double radius = std::sqrt(-2.0 * std::log(u));
            out(j) = radius * std::cos(2.0 * M_PI * v);
            if (j + 1 < count) out(j + 1) = radius * std::sin(2.0 * M_PI * v);
        }
    };

    auto draw = [&](long index) {
        const double pick = halton.coordinate(index, 0);
        Vec normal(gauss_block);
        gaussians(index, 2, gauss_block, normal);
        if (pick < w_global) {
            const double r = R * std::pow(halton.coordinate(index, 1), 1.0 / n);
            Vec dir = normal.head(n);
            return Vec(r * dir / dir.norm());
        }
        const std::size_t ti = std::min(tubes.size() - 1,
                                        static_cast<std::size_t>((pick - w_global) /
                                                                 (1.0 - w_global) * tubes.size()));
        const TubeComponent& t = tubes[ti];
        const Subspace& y = lattice.member(t.member);
        const Subspace yperp = orthogonal_complement(y);
        const double rho = t.lo * std::pow(t.hi / t.lo, halton.coordinate(index, 1));
        Vec dir = normal.head(yperp.dim());
        Vec x = yperp.basis() * (rho * dir / dir.norm());
        if (y.dim() > 0) {
            Vec foot(gauss_block);
            gaussians(index, 2 + gauss_block, gauss_block, foot);
            x += y.basis() * (foot_sigma * foot.head(y.dim()));
        }
        return x;
    };

    CompensatedSum mean, sq;
    const long N = quad.mc_samples;
    for (long i = 0; i < N; ++i) {
        const Vec x = draw(i);
        const double q = density(x);
        const double v = q > 0.0 ? f(x) / q : 0.0;
        mean.add(v);
        sq.add(v * v);
    }

    NormEstimate est;
    est.value = mean.value() / static_cast<double>(N);
    const double var = std::max(0.0, sq.value() / N - est.value * est.value);
    est.error_bar = std::sqrt(var / static_cast<double>(N));
    est.evaluations = f.evaluations;
    return est;
}

bool origin_only(const Semilattice& lattice) {
    return lattice.size() == 1 && lattice.member(0).is_zero();
}

}  // namespace

NormEstimate weighted_seminorm(const DerivFn& du, const Semilattice& lattice,
                               const WeightedNormSpec& spec) {
    if (!(spec.eps > 0.0)) fail(ErrorCode::DomainError, "exclusion radius must be positive");
    if (order_of(spec.alpha) > 4) fail(ErrorCode::DomainError, "|alpha| must be <= 4");
    if (static_cast<int>(spec.alpha.size()) != lattice.ambient_dim())
        fail(ErrorCode::AmbientMismatch, "multi-index length must match the dimension");

    Integrand f;
    f.du = &du;
    f.lattice = &lattice;
    f.alpha = &spec.alpha;
    f.weight = spec.weight;
    f.weight_power = 2.0 * order_of(spec.alpha) + 2.0 * spec.extra_exponent;
    f.eps = spec.eps;
    f.radius = spec.quad.radius;

    const int n = lattice.ambient_dim();
    if (n <= 3 && origin_only(lattice)) return spherical_estimate(f, n, spec.eps, spec.quad);
    if (n <= 3) return adaptive_cell_estimate(f, lattice, n, spec.eps, spec.quad);
    return mc_estimate(f, lattice, n, spec.eps, spec.quad);
}

namespace {

struct StencilTap {
    int offset;
    double coeff;
};

const std::vector<StencilTap>& central_stencil(int order) {
    static const std::vector<std::vector<StencilTap>> stencils = {
        {{0, 1.0}},
        {{-1, -0.5}, {1, 0.5}},
        {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
        {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
        {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}},
    };
    return stencils[static_cast<std::size_t>(order)];
}

double fd_recurse(const std::function<double(const Vec&)>& u, Vec& x, const MultiIndex& alpha,
                  int axis, double h) {
    while (axis < static_cast<int>(alpha.size()) && alpha[static_cast<std::size_t>(axis)] == 0)
        ++axis;
    if (axis == static_cast<int>(alpha.size())) return u(x);

    const int order = alpha[static_cast<std::size_t>(axis)];
    const auto& taps = central_stencil(order);
    double sum = 0.0;
    const double x0 = x(axis);
    for (const auto& tap : taps) {
        x(axis) = x0 + tap.offset * h;
        sum += tap.coeff * fd_recurse(u, x, alpha, axis + 1, h);
    }
    x(axis) = x0;
    return sum / std::pow(h, order);
}

}  // namespace

double fd_partial(const std::function<double(const Vec&)>& u, const Vec& x,
                  const MultiIndex& alpha, double h, const Semilattice* lattice) {
    if (!(h > 0.0)) fail(ErrorCode::DomainError, "step must be positive");
    if (static_cast<int>(alpha.size()) != x.size())
        fail(ErrorCode::AmbientMismatch, "multi-index length must match the point");
    for (int a : alpha)
        if (a < 0 || a > 4) fail(ErrorCode::DomainError, "per-axis derivative order must be in [0,4]");
    const int order = order_of(alpha);
    if (lattice && order > 0 && delta_F(*lattice, x) <= order * h)
        fail(ErrorCode::StencilTooWide, "stencil would cross the singular set");

    Vec probe = x;
    return fd_recurse(u, probe, alpha, 0, h);
}

DerivFn fd_derivatives(std::function<double(const Vec&)> u, const Semilattice& lattice) {
    return [u = std::move(u), &lattice](const Vec& x, const MultiIndex& alpha) {
        const int order = order_of(alpha);
        if (order == 0) return u(x);
        const double h = std::min(1e-4, delta_F(lattice, x) / (4.0 * order));
        return fd_partial(u, x, alpha, h);
    };
}

RefinementStudy refinement_study(const DerivFn& du, const Semilattice& lattice,
                                 const MultiIndex& alpha, WeightKind weight,
                                 const std::vector<double>& eps_ladder,
                                 const QuadratureOptions& quad, double extra_exponent) {
    if (eps_ladder.size() < 4) fail(ErrorCode::DomainError, "need at least 4 ladder rungs");
    for (std::size_t i = 1; i < eps_ladder.size(); ++i)
        if (!(eps_ladder[i] < eps_ladder[i - 1]))
            fail(ErrorCode::DomainError, "ladder must be strictly decreasing");

    RefinementStudy study;
    study.alpha = alpha;
    study.weight = weight;
    study.eps_ladder = eps_ladder;

    for (double eps : eps_ladder) {
        WeightedNormSpec spec;
        spec.alpha = alpha;
        spec.weight = weight;
        spec.extra_exponent = extra_exponent;
        spec.eps = eps;
        spec.quad = quad;
        study.estimates.push_back(weighted_seminorm(du, lattice, spec));
    }

    // Least-squares slope of log(value) against log(eps).
    const std::size_t k = study.estimates.size();
    bool any_zero = false;
    for (const auto& e : study.estimates)
        if (!(e.value > 1e-300)) any_zero = true;

    if (any_zero) {
        study.exponent = 0.0;
    } else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double lx = std::log(study.eps_ladder[i]);
            const double ly = std::log(study.estimates[i].value);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        study.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }

    bool inconclusive = false;
    for (const auto& e : study.estimates)
        if (e.inconclusive) inconclusive = true;

    const double last = study.estimates[k - 1].value;
    const double prev = study.estimates[k - 2].value;
    const double rel_change = std::abs(last - prev) / std::max(std::abs(prev), 1e-300);

    bool monotone_growth = true;
    for (std::size_t i = 1; i < k; ++i)
        if (study.estimates[i].value < study.estimates[i - 1].value * (1.0 - 1e-9))
            monotone_growth = false;

    if (inconclusive)
        study.verdict = Verdict::Inconclusive;
    else if (any_zero || (std::abs(study.exponent) < 0.1 && rel_change < 0.02))
        study.verdict = Verdict::Finite;
    else if (study.exponent < -0.2 && monotone_growth)
        study.verdict = Verdict::Divergent;
    else
        study.verdict = Verdict::Inconclusive;
    return study;
}

std::vector<MultiIndex> multi_indices(int dim, int kmax) {
    std::vector<MultiIndex> out;
    MultiIndex current(static_cast<std::size_t>(dim), 0);
    for (int total = 0; total <= kmax; ++total) {
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos == dim - 1) {
                current[static_cast<std::size_t>(pos)] = remaining;
                out.push_back(current);
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                current[static_cast<std::size_t>(pos)] = v;
                rec(pos + 1, remaining - v);
            }
        };
        rec(0, total);
    }
    return out;
}

NormReport regularity_report(const Eigenpair& pair, int kmax, WeightKind weight,
                             const std::vector<double>& eps_ladder,
                             const QuadratureOptions& quad) {
    if (kmax < 0 || kmax > 4) fail(ErrorCode::DomainError, "kmax must lie in [0, 4]");

    NormReport report;
    report.case_name = pair.name;
    report.weight = weight;
    report.kmax = kmax;
    report.seed = quad.seed;
    report.eps_ladder = eps_ladder;

    const Semilattice& lattice = *pair.lattice;
    bool all_finite = true;
    for (const MultiIndex& alpha : multi_indices(lattice.ambient_dim(), kmax)) {
        ReportEntry entry;
        entry.alpha = alpha;
        entry.unweighted =
            refinement_study(pair.partial, lattice, alpha, WeightKind::None, eps_ladder, quad);
        if (weight != WeightKind::None) {
            entry.weighted =
                refinement_study(pair.partial, lattice, alpha, weight, eps_ladder, quad);
            if (entry.weighted.verdict != Verdict::Finite) all_finite = false;
        } else if (entry.unweighted.verdict != Verdict::Finite) {
            all_finite = false;
        }
        report.entries.push_back(std::move(entry));
    }
    report.all_weighted_finite = all_finite;
    return report;
}

}  // namespace nbody
