#include "nbody/potential.hpp"

#include <array>
#include <cmath>

namespace nbody {

InverseSquarePotential::InverseSquarePotential(std::shared_ptr<const Semilattice> lattice,
                                               std::vector<PotentialTerm> terms, Coefficient c)
    : lattice_(std::move(lattice)), terms_(std::move(terms)), c_(std::move(c)) {}

InverseSquarePotential make_inverse_square(std::shared_ptr<const Semilattice> lattice,
                                           std::vector<PotentialTerm> terms, Coefficient c) {
    if (!lattice) fail(ErrorCode::DomainError, "potential needs a lattice");
    for (const auto& t : terms) {
        if (t.member < 0 || t.member >= lattice->size())
            fail(ErrorCode::UnknownMember, "potential term names a non-member");
        if ((t.a.callback && t.a.declared_bound <= 0.0) || (t.b.callback && t.b.declared_bound <= 0.0))
            fail(ErrorCode::DomainError, "callback coefficients must declare a positive bound");
    }
    return InverseSquarePotential(std::move(lattice), std::move(terms), std::move(c));
}

double InverseSquarePotential::operator()(const Vec& x) const {
    double value = c_.callback || c_.constant != 0.0 ? c_(x) : 0.0;
    for (const auto& t : terms_) {
        const double d = dist_to(lattice_->member(t.member), x);
        if (d == 0.0) {
            if (!t.a.is_zero() || !t.b.is_zero())
                fail(ErrorCode::OnSingularSet, "potential is singular at the point");
            continue;
        }
        if (!t.a.is_zero()) value += t.a(x) / (d * d);
        if (!t.b.is_zero()) value += t.b(x) / d;
    }
    return value;
}

double eval_potential(const InverseSquarePotential& v, const Vec& x) { return v(x); }

namespace {

Coefficient add_coefficients(const Coefficient& a, const Coefficient& b) {
    if (!a.callback && !b.callback) return Coefficient{a.constant + b.constant, nullptr, 0.0};
    Coefficient out;
    out.callback = [a, b](const Vec& x) { return a(x) + b(x); };
    out.declared_bound = (a.callback ? a.declared_bound : std::abs(a.constant)) +
                         (b.callback ? b.declared_bound : std::abs(b.constant));
    return out;
}

}  // namespace

InverseSquarePotential operator+(const InverseSquarePotential& v1,
                                 const InverseSquarePotential& v2) {
    const auto& f1 = v1.lattice();
    const auto& f2 = v2.lattice();
    if (f1.size() != f2.size()) fail(ErrorCode::AmbientMismatch, "potentials use different lattices");
    for (int i = 0; i < f1.size(); ++i)
        if (!same_span(f1.member(i), f2.member(i)))
            fail(ErrorCode::AmbientMismatch, "potentials use different lattices");

    std::vector<PotentialTerm> merged = v1.terms();
    for (const auto& t : v2.terms()) {
        bool found = false;
        for (auto& m : merged) {
            if (m.member == t.member) {
                m.a = add_coefficients(m.a, t.a);
                m.b = add_coefficients(m.b, t.b);
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(t);
    }
    return InverseSquarePotential(v1.lattice_ptr(), std::move(merged),
                                  add_coefficients(v1.regular_part(), v2.regular_part()));
}

BoundScanReport rho2V_bound_scan(const InverseSquarePotential& v, long samples,
                                 std::uint64_t seed) {
    BoundScanReport out;
    std::mt19937_64 rng(seed);
    StrataSampler sampler(v.lattice(), 1e6, 8);
    for (long i = 0; i < samples; ++i) {
        const Vec x = sampler.sample(rng);
        if (delta_F(v.lattice(), x) == 0.0) continue;
        const double rho = rho_F(v.lattice(), x);
        out.sup = std::max(out.sup, std::abs(rho * rho * v(x)));
        if (i + 1 == samples / 2) out.sup_half_budget = out.sup;
        ++out.samples;
    }
    const double ref = std::max(out.sup, 1e-300);
    out.stable = (out.sup - out.sup_half_budget) / ref < 0.05;
    return out;
}

namespace {

// Derivatives of a radial function u(x) = g(|x|) up to fourth order, from the
// jet (g, g', g'', g''', g'''') at r = |x|. Writing n_i = x_i / r and
// Q_ij = delta_ij - n_i n_j:
//   du_i       = g' n_i
//   du_ij      = g'' n_i n_j + (g'/r) Q_ij
//   du_ijk     = g''' n_i n_j n_k + c2 S_ijk,   c2 = g''/r - g'/r^2,
//                S_ijk = Q_ij n_k + Q_ik n_j + Q_jk n_i
//   du_ijkl    = g'''' n_i n_j n_k n_l
//              + (g'''/r)(Q_il n_j n_k + Q_jl n_i n_k + Q_kl n_i n_j)
//              + c2' n_l S_ijk + c2 dS_ijk/dx_l,
//                c2' = g'''/r - 2 g''/r^2 + 2 g'/r^3,
//                dQ_ij/dx_l = -(Q_il n_j + n_i Q_jl)/r.
class RadialDerivatives {
public:
    using Jet = std::array<double, 5>;

    explicit RadialDerivatives(std::function<Jet(double)> jet) : jet_(std::move(jet)) {}

    double partial(const Vec& x, const MultiIndex& alpha) const {
        const int order = order_of(alpha);
        if (order > 4) fail(ErrorCode::DomainError, "analytic partials available up to order 4");
        const double r = x.norm();
        if (r == 0.0) fail(ErrorCode::OnSingularSet, "radial derivative at the origin");
        const Jet g = jet_(r);
        if (order == 0) return g[0];

        std::array<int, 4> idx{};
        int c = 0;
        for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
            for (int rep = 0; rep < alpha[static_cast<std::size_t>(i)]; ++rep) idx[static_cast<std::size_t>(c++)] = i;

        const Vec n = x / r;
        auto Q = [&](int i, int j) { return (i == j ? 1.0 : 0.0) - n(i) * n(j); };

        const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        switch (order) {
            case 1:
                return g[1] * n(i);
            case 2:
                return g[2] * n(i) * n(j) + g[1] / r * Q(i, j);
            case 3: {
                const double c2 = g[2] / r - g[1] / (r * r);
                const double s = Q(i, j) * n(k) + Q(i, k) * n(j) + Q(j, k) * n(i);
                return g[3] * n(i) * n(j) * n(k) + c2 * s;
            }
            case 4: {
                const double c2 = g[2] / r - g[1] / (r * r);
                const double c2p = g[3] / r - 2.0 * g[2] / (r * r) + 2.0 * g[1] / (r * r * r);
                const double s = Q(i, j) * n(k) + Q(i, k) * n(j) + Q(j, k) * n(i);
                auto dQ = [&](int a, int b, int d) { return -(Q(a, d) * n(b) + n(a) * Q(b, d)) / r; };
                const double ds = dQ(i, j, l) * n(k) + Q(i, j) * Q(k, l) / r +
                                  dQ(i, k, l) * n(j) + Q(i, k) * Q(j, l) / r +
                                  dQ(j, k, l) * n(i) + Q(j, k) * Q(i, l) / r;
                return g[4] * n(i) * n(j) * n(k) * n(l) +
                       g[3] / r * (Q(i, l) * n(j) * n(k) + Q(j, l) * n(i) * n(k) + Q(k, l) * n(i) * n(j)) +
                       c2p * n(l) * s + c2 * ds;
            }
        }
        return 0.0;
    }

private:
    std::function<Jet(double)> jet_;
};

std::shared_ptr<const Semilattice> origin_lattice(int dim) {
    auto lat = std::make_shared<Semilattice>(closure(AmbientSpace{dim}, {}));
    return lat;
}

}  // namespace

double residual(const Eigenpair& pair, const Vec& x) {
    const int n = static_cast<int>(x.size());
    double lap = 0.0;
    for (int i = 0; i < n; ++i) {
        MultiIndex alpha(static_cast<std::size_t>(n), 0);
        alpha[static_cast<std::size_t>(i)] = 2;
        lap += pair.partial(x, alpha);
    }
    return std::abs(lap + pair.potential(x) * pair.u(x) - pair.lambda * pair.u(x));
}

void admit_eigenpair(const Eigenpair& pair) {
    const int n = pair.lattice->ambient_dim();
    Vec dir(n);
    for (int i = 0; i < n; ++i) dir(i) = 1.0 + 0.1 * i;
    dir /= dir.norm();

    const double r0 = 0.05, r1 = 20.0;
    for (int i = 0; i < 100; ++i) {
        const double r = r0 * std::pow(r1 / r0, i / 99.0);
        const Vec x = r * dir;
        if (delta_F(*pair.lattice, x) == 0.0) continue;
        if (residual(pair, x) > 1e-8)
            fail(ErrorCode::InvalidEigenpair,
                 "eigen-equation residual exceeds 1e-8 at probe radius " + std::to_string(r));
    }
}

Eigenpair hydrogen_pair() {
    Eigenpair pair;
    pair.name = "hydrogen";
    pair.lattice = origin_lattice(3);
    pair.lambda = 1.0;
    pair.l2_norm_squared = M_PI;  // 4 pi * int r^2 e^{-2r} dr

    std::vector<PotentialTerm> terms(1);
    terms[0].member = 0;
    terms[0].b.constant = 2.0;
    pair.potential = make_inverse_square(pair.lattice, std::move(terms));

    pair.u = [](const Vec& x) { return std::exp(-x.norm()); };
    RadialDerivatives deriv([](double r) {
        const double e = std::exp(-r);
        return RadialDerivatives::Jet{e, -e, e, -e, e};
    });
    pair.partial = [deriv](const Vec& x, const MultiIndex& a) { return deriv.partial(x, a); };

    admit_eigenpair(pair);
    return pair;
}

Eigenpair radial_invsq_pair(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        fail(ErrorCode::DomainError, "gamma must lie in (0, 1)");

    Eigenpair pair;
    pair.name = "invsq:" + std::to_string(gamma);
    pair.lattice = origin_lattice(3);
    pair.lambda = 1.0;

    std::vector<PotentialTerm> terms(1);
    terms[0].member = 0;
    terms[0].a.constant = -gamma * (gamma + 1.0);
    terms[0].b.constant = 2.0 * (gamma + 1.0);
    pair.potential = make_inverse_square(pair.lattice, std::move(terms));

    pair.u = [gamma](const Vec& x) {
        const double r = x.norm();
        return std::pow(r, gamma) * std::exp(-r);
    };
    // g(r) = r^gamma e^{-r}; product-rule jet with falling factorials of gamma.
    RadialDerivatives deriv([gamma](double r) {
        const double e = std::exp(-r);
        std::array<double, 5> fall{1.0, gamma, gamma * (gamma - 1.0),
                                   gamma * (gamma - 1.0) * (gamma - 2.0),
                                   gamma * (gamma - 1.0) * (gamma - 2.0) * (gamma - 3.0)};
        RadialDerivatives::Jet jet{};
        for (int k = 0; k <= 4; ++k) {
            double sum = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                if (j > 0) binom = binom * (k - j + 1) / j;
                const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
                sum += binom * fall[static_cast<std::size_t>(j)] * std::pow(r, gamma - j) * sign;
            }
            jet[static_cast<std::size_t>(k)] = sum * e;
        }
        return jet;
    });
    pair.partial = [deriv](const Vec& x, const MultiIndex& a) { return deriv.partial(x, a); };

    admit_eigenpair(pair);
    return pair;
}

std::pair<std::shared_ptr<const Semilattice>, InverseSquarePotential> nbody_coulomb(
    int n_particles, const std::vector<double>& b, const std::vector<std::vector<double>>& c) {
    if (n_particles < 1) fail(ErrorCode::DomainError, "need at least one particle");
    const int n = 3 * n_particles;
    const AmbientSpace ambient{n};

    auto block_axis = [n](int particle, int axis) {
        Vec v = Vec::Zero(n);
        v(3 * particle + axis) = 1.0;
        return v;
    };

    std::vector<Subspace> planes;
    for (int j = 0; j < n_particles; ++j) {
        std::vector<Vec> gens;
        for (int p = 0; p < n_particles; ++p) {
            if (p == j) continue;
            for (int a = 0; a < 3; ++a) gens.push_back(block_axis(p, a));
        }
        planes.push_back(make_subspace(ambient, gens, false, "x" + std::to_string(j + 1) + "=0"));
    }
    for (int i = 0; i < n_particles; ++i) {
        for (int j = i + 1; j < n_particles; ++j) {
            std::vector<Vec> gens;
            for (int a = 0; a < 3; ++a)
                gens.push_back((block_axis(i, a) + block_axis(j, a)) / std::sqrt(2.0));
            for (int p = 0; p < n_particles; ++p) {
                if (p == i || p == j) continue;
                for (int a = 0; a < 3; ++a) gens.push_back(block_axis(p, a));
            }
            planes.push_back(make_subspace(ambient, gens, false,
                                           "x" + std::to_string(i + 1) + "=x" + std::to_string(j + 1)));
        }
    }

    auto lattice = std::make_shared<Semilattice>(closure(ambient, planes));

    std::vector<PotentialTerm> terms;
    for (int j = 0; j < n_particles; ++j) {
        const double bj = j < static_cast<int>(b.size()) ? b[static_cast<std::size_t>(j)] : 0.0;
        if (bj == 0.0) continue;
        PotentialTerm t;
        t.member = lattice->find_name("x" + std::to_string(j + 1) + "=0");
        t.b.constant = bj;
        terms.push_back(t);
    }
    for (int i = 0; i < n_particles; ++i) {
        for (int j = i + 1; j < n_particles; ++j) {
            double cij = 0.0;
            if (i < static_cast<int>(c.size()) && j < static_cast<int>(c[static_cast<std::size_t>(i)].size()))
                cij = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (cij == 0.0) continue;
            PotentialTerm t;
            t.member = lattice->find_name("x" + std::to_string(i + 1) + "=x" + std::to_string(j + 1));
            // dist(x, {x_i = x_j}) = |x_i - x_j| / sqrt(2)
            t.b.constant = cij / std::sqrt(2.0);
            terms.push_back(t);
        }
    }
    auto potential = make_inverse_square(lattice, std::move(terms));
    return {lattice, std::move(potential)};
}

}  // namespace nbody
