#include "nbody/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace nbody {

std::vector<double> member_fingerprint(const Subspace& s) {
    const Mat proj = s.basis() * s.basis().transpose();
    std::vector<double> fp;
    fp.reserve(static_cast<std::size_t>(proj.size()) + 1);
    fp.push_back(static_cast<double>(s.dim()));
    for (Eigen::Index i = 0; i < proj.rows(); ++i)
        for (Eigen::Index j = 0; j < proj.cols(); ++j)
            fp.push_back(std::round(proj(i, j) * 1e9) / 1e9);
    return fp;
}

namespace {

bool fingerprint_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Subspace> sorted_members(std::vector<Subspace> members) {
    std::vector<std::pair<std::vector<double>, std::size_t>> keys;
    keys.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        keys.emplace_back(member_fingerprint(members[i]), i);
    std::sort(keys.begin(), keys.end(),
              [](const auto& a, const auto& b) { return fingerprint_less(a.first, b.first); });
    std::vector<Subspace> out;
    out.reserve(members.size());
    for (const auto& [fp, idx] : keys) out.push_back(std::move(members[idx]));
    return out;
}

void append_unique(std::vector<Subspace>& members, Subspace s) {
    for (const auto& m : members)
        if (same_span(m, s)) return;
    members.push_back(std::move(s));
}

}  // namespace

Semilattice::Semilattice(AmbientSpace ambient, std::vector<Subspace> members)
    : ambient_(ambient), members_(sorted_members(std::move(members))) {
    const std::size_t k = members_.size();
    containment_.assign(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            containment_[i][j] = contains(members_[i], members_[j]) ? 1 : 0;

    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            if (i == j || !containment_[j][i]) continue;  // need member i ⊊ member j
            if (members_[i].dim() == members_[j].dim()) continue;
            bool covering = true;
            for (std::size_t mid = 0; mid < k && covering; ++mid) {
                if (mid == i || mid == j) continue;
                if (containment_[j][mid] && containment_[mid][i] &&
                    members_[mid].dim() > members_[i].dim() &&
                    members_[mid].dim() < members_[j].dim())
                    covering = false;
            }
            if (covering) hasse_.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
}

int Semilattice::find(const Subspace& s) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (same_span(members_[i], s)) return static_cast<int>(i);
    return -1;
}

int Semilattice::find_name(const std::string& name) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].name() == name) return static_cast<int>(i);
    return -1;
}

Semilattice closure(AmbientSpace ambient, const std::vector<Subspace>& subspaces) {
    std::vector<Subspace> members;
    for (const auto& s : subspaces) {
        if (s.ambient_dim() != ambient.dim)
            fail(ErrorCode::AmbientMismatch, "subspace ambient does not match lattice ambient");
        if (s.is_full())
            fail(ErrorCode::ContainsAmbient, "the full space cannot be a lattice member");
        append_unique(members, s);
    }
    append_unique(members, Subspace::zero(ambient));

    // Pairwise-intersection fixpoint.
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t k = members.size();
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                Subspace meet = intersect(members[i], members[j]);
                bool known = false;
                for (const auto& m : members)
                    if (same_span(m, meet)) {
                        known = true;
                        break;
                    }
                if (!known) {
                    if (!members[i].name().empty() && !members[j].name().empty())
                        meet.set_name(members[i].name() + "&" + members[j].name());
                    members.push_back(std::move(meet));
                    grew = true;
                }
            }
        }
    }
    return Semilattice(ambient, std::move(members));
}

LatticeDiagnostics validate(AmbientSpace ambient, const std::vector<Subspace>& members) {
    LatticeDiagnostics diag;
    bool has_zero = false;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].ambient_dim() != ambient.dim) {
            diag.items.push_back({"ambient-mismatch",
                                  "member " + std::to_string(i) + " lives in dimension " +
                                      std::to_string(members[i].ambient_dim())});
            continue;
        }
        if (members[i].is_zero()) has_zero = true;
        if (members[i].is_full())
            diag.items.push_back({"contains-ambient", "member " + std::to_string(i) + " is the full space"});
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (same_span(members[i], members[j]))
                diag.items.push_back({"duplicate", "members " + std::to_string(i) + " and " +
                                                       std::to_string(j) + " have the same span"});
        }
    }
    if (!has_zero) diag.items.push_back({"missing-zero", "the zero subspace is not a member"});
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            Subspace meet = intersect(members[i], members[j]);
            bool found = false;
            for (const auto& m : members)
                if (same_span(m, meet)) {
                    found = true;
                    break;
                }
            if (!found)
                diag.items.push_back({"missing-intersection",
                                      "intersection of members " + std::to_string(i) + " and " +
                                          std::to_string(j) + " is not a member"});
        }
    }
    return diag;
}

LatticeDiagnostics validate(const Semilattice& lattice) {
    return validate(lattice.ambient(), lattice.members());
}

std::vector<double> member_distances(const Semilattice& lattice, const Vec& x) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(lattice.size()));
    for (const auto& m : lattice.members()) d.push_back(dist_to(m, x));
    return d;
}

double delta_F(const Semilattice& lattice, const Vec& x) {
    double best = 1.0;
    for (const auto& m : lattice.members()) best = std::min(best, dist_to(m, x));
    return best;
}

OrderedTuple generate_admissible_order(const Semilattice& lattice, std::optional<int> prefer) {
    if (prefer && (*prefer < 0 || *prefer >= lattice.size()))
        fail(ErrorCode::UnknownMember, "preferred member index out of range");

    OrderedTuple order;
    order.entries.push_back(OrderedTuple::kEmptyEntry);
    std::vector<char> used(static_cast<std::size_t>(lattice.size()), 0);
    bool prefer_pending = prefer.has_value();

    for (int step = 0; step < lattice.size(); ++step) {
        int chosen = -1;
        for (int i = 0; i < lattice.size(); ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            // While the preferred member is unlisted, only members inside it
            // qualify; anything strictly below a qualifying member is inside
            // it too, so minimality over all remaining members is unchanged.
            if (prefer_pending && !lattice.member_contains(*prefer, i)) continue;
            bool minimal = true;
            for (int j = 0; j < lattice.size() && minimal; ++j) {
                if (j == i || used[static_cast<std::size_t>(j)]) continue;
                if (lattice.member_contains(i, j)) minimal = false;  // j ⊊ i still remaining
            }
            if (minimal) {
                chosen = i;
                break;  // members are in canonical order; first minimal wins
            }
        }
        if (chosen == -1) fail(ErrorCode::DegenerateInput, "lattice has duplicate members");
        order.entries.push_back(chosen);
        used[static_cast<std::size_t>(chosen)] = 1;
        if (prefer_pending && chosen == *prefer) prefer_pending = false;
    }
    return order;
}

AdmissibilityResult is_admissible(const Semilattice& lattice, const OrderedTuple& order) {
    for (int e : order.entries)
        if (e != OrderedTuple::kEmptyEntry && (e < 0 || e >= lattice.size()))
            fail(ErrorCode::UnknownMember, "tuple entry is not a lattice member");

    // alive[i]: the combinatorial lift of entry i, or ∅ once it has been
    // swallowed by an earlier blow-up. Containment between live lifts agrees
    // with containment between the original members.
    std::vector<int> alive = order.entries;
    const int k = static_cast<int>(alive.size());
    for (int i = 0; i < k; ++i) {
        const int head = alive[static_cast<std::size_t>(i)];
        if (head == OrderedTuple::kEmptyEntry) continue;
        for (int j = i + 1; j < k; ++j) {
            const int q = alive[static_cast<std::size_t>(j)];
            if (q == OrderedTuple::kEmptyEntry || q == head) continue;
            if (lattice.member_contains(head, q)) return {false, j};
        }
        for (int j = i + 1; j < k; ++j) {
            const int q = alive[static_cast<std::size_t>(j)];
            if (q == OrderedTuple::kEmptyEntry) continue;
            if (lattice.member_contains(head, q)) alive[static_cast<std::size_t>(j)] = OrderedTuple::kEmptyEntry;
        }
    }
    return {true, -1};
}

OrderedTuple reduce_tuple(const OrderedTuple& t) {
    OrderedTuple out;
    for (int e : t.entries) {
        bool seen = false;
        for (int prev : out.entries)
            if (prev == e) {
                seen = true;
                break;
            }
        if (!seen) out.entries.push_back(e);
    }
    return out;
}

PulledTuple tuple_pullback(const OrderedTuple& t, const TupleOracle& oracle) {
    PulledTuple out;
    if (t.entries.empty()) return out;
    const int head = t.entries.front();
    for (std::size_t i = 1; i < t.entries.size(); ++i) {
        const int q = t.entries[i];
        if (q == OrderedTuple::kEmptyEntry || head == OrderedTuple::kEmptyEntry) {
            out.tuple.entries.push_back(q);
            continue;
        }
        if (q == head || oracle.contains(head, q)) {
            out.tuple.entries.push_back(OrderedTuple::kEmptyEntry);
        } else if (oracle.lift) {
            out.tuple.entries.push_back(oracle.lift(q, head));
        } else {
            out.tuple.entries.push_back(q);
        }
    }
    return out;
}

PulledTuple tuple_pullback(const OrderedTuple& t, const Semilattice& lattice) {
    TupleOracle oracle;
    oracle.contains = [&lattice](int outer, int inner) {
        return lattice.member_contains(outer, inner);
    };
    PulledTuple out = tuple_pullback(t, oracle);
    if (t.entries.empty() || t.entries.front() == OrderedTuple::kEmptyEntry) return out;

    const int head = t.entries.front();
    const auto& entries = out.tuple.entries;
    for (std::size_t a = 0; a < entries.size(); ++a) {
        for (std::size_t b = a + 1; b < entries.size(); ++b) {
            const int qa = entries[a];
            const int qb = entries[b];
            if (qa == OrderedTuple::kEmptyEntry || qb == OrderedTuple::kEmptyEntry || qa == qb)
                continue;
            const Subspace meet = intersect(lattice.member(qa), lattice.member(qb));
            if (contains(lattice.member(head), meet))
                out.disjoint_pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return out;
}

}  // namespace nbody
