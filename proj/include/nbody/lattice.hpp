#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nbody/subspace.hpp"

namespace nbody {

/// Intersection-closed family of proper subspaces with {0} as a member,
/// ordered deterministically by (dimension, projector fingerprint).
class Semilattice {
public:
    Semilattice() = default;
    Semilattice(AmbientSpace ambient, std::vector<Subspace> members);

    AmbientSpace ambient() const { return ambient_; }
    int ambient_dim() const { return ambient_.dim; }
    const std::vector<Subspace>& members() const { return members_; }
    const Subspace& member(int i) const { return members_.at(static_cast<std::size_t>(i)); }
    int size() const { return static_cast<int>(members_.size()); }

    /// Index of the member with the given span, or -1.
    int find(const Subspace& s) const;
    /// Index of the member with the given name, or -1.
    int find_name(const std::string& name) const;

    bool member_contains(int outer, int inner) const { return contains_(outer, inner); }

    /// Hasse edges of the inclusion order: (sub, super) covering pairs.
    const std::vector<std::pair<int, int>>& hasse_edges() const { return hasse_; }

private:
    AmbientSpace ambient_{1};
    std::vector<Subspace> members_;
    std::vector<std::vector<char>> containment_;  // containment_[i][j]: member j ⊆ member i
    std::vector<std::pair<int, int>> hasse_;

    bool contains_(int outer, int inner) const {
        return containment_[static_cast<std::size_t>(outer)][static_cast<std::size_t>(inner)] != 0;
    }
};

/// Ordered tuple of blow-up centers. Entries reference lattice members by
/// index; kEmptyEntry marks the empty set.
struct OrderedTuple {
    static constexpr int kEmptyEntry = -1;
    std::vector<int> entries;

    bool operator==(const OrderedTuple&) const = default;
};

struct LatticeDiagnostics {
    struct Item {
        std::string kind;  // "missing-zero", "contains-ambient", "missing-intersection", "duplicate"
        std::string detail;
    };
    std::vector<Item> items;
    bool ok() const { return items.empty(); }
};

/// Smallest intersection-closed family containing the inputs and {0}.
Semilattice closure(AmbientSpace ambient, const std::vector<Subspace>& subspaces);

/// Reports every violated semilattice invariant of the raw family; an empty
/// report means the family is a valid input for closure-free construction.
LatticeDiagnostics validate(AmbientSpace ambient, const std::vector<Subspace>& members);
LatticeDiagnostics validate(const Semilattice& lattice);

/// min{dist(x, ∪F), 1}.
double delta_F(const Semilattice& lattice, const Vec& x);

/// Distances to every member, in member order.
std::vector<double> member_distances(const Semilattice& lattice, const Vec& x);

/// (∅, P1, ..., Pk): repeatedly pick an inclusion-minimal remaining member.
/// With prefer set, members contained in it are exhausted before it is listed.
OrderedTuple generate_admissible_order(const Semilattice& lattice,
                                       std::optional<int> prefer = std::nullopt);

struct AdmissibilityResult {
    bool admissible = true;
    int violation_index = -1;  // index of the offending later entry
};

AdmissibilityResult is_admissible(const Semilattice& lattice, const OrderedTuple& order);

/// Removes repeated entries keeping the first occurrence.
OrderedTuple reduce_tuple(const OrderedTuple& t);

/// Containment oracle for tuple pull-backs over abstract entries. Entries are
/// nonnegative symbols; contains(a, b) answers b ⊆ a. The lift hook may remap
/// an entry when the head is blown up (defaults to the identity).
struct TupleOracle {
    std::function<bool(int, int)> contains;
    std::function<int(int, int)> lift;  // lift(entry, head) -> entry
};

struct PulledTuple {
    OrderedTuple tuple;
    /// Pairs of surviving entry positions whose lifts became disjoint because
    /// their intersection sat inside the blown-up head.
    std::vector<std::pair<int, int>> disjoint_pairs;
};

/// Drops the head; each remaining entry maps to ∅ if contained in the head,
/// otherwise to its lift.
PulledTuple tuple_pullback(const OrderedTuple& t, const TupleOracle& oracle);

/// Lattice-aware pull-back: containment and intersections come from members.
PulledTuple tuple_pullback(const OrderedTuple& t, const Semilattice& lattice);

/// Deterministic comparison key used to order members: dimension first, then
/// the entries of the basis-independent projector, quantized.
std::vector<double> member_fingerprint(const Subspace& s);

}  // namespace nbody
