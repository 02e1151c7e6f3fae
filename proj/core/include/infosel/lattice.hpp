#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace infosel {

// An antichain over non-empty subsets of {1..n}: member subsets are stored
// as bitmasks (bit i-1 stands for feature i), ascending and pairwise
// incomparable under set inclusion.
struct Antichain {
    std::vector<std::uint32_t> collections;

    bool operator==(const Antichain&) const = default;
};

// Bitmask of a collection given 1-based feature indices.
std::uint32_t collection_mask(const std::vector<std::size_t>& features);

// Partial order of the redundancy structure: A <= B when every collection in
// B contains some collection of A as a subset.  The bottom element is the
// antichain of all singletons, the top is {the full set}.
bool lattice_leq(const Antichain& a, const Antichain& b);

// Every antichain over the non-empty subsets of {1..n} except the empty one,
// in deterministic order.  Sizes grow as 1, 4, 18, 166, 7579 for n = 1..5
// (two less than the Dedekind numbers); n = 5 sits behind allow_large, and
// larger n are refused outright.
std::vector<Antichain> enumerate_lattice(std::size_t n_features, bool allow_large = false);

// Positions (into the enumerated lattice) of every atom at or below the node
// {collection}: the atoms whose information is contained in the mutual
// information carried by that collection of features.  Ascending order.
std::vector<std::size_t> atoms_covered_by_mi(std::uint32_t collection,
                                             const std::vector<Antichain>& lattice);

// Atom coverage of the chain of conditional terms for features taken in
// index order -- first feature alone, each later one given all earlier ones
// -- compared with the coverage of the plain per-feature terms.
struct PartitionReport {
    std::size_t n_features = 0;
    std::size_t atom_count = 0;
    std::vector<std::size_t> cmi_cover_sizes;  // per chain term
    bool cmi_pairwise_disjoint = false;
    bool cmi_covers_everything = false;
    std::vector<std::size_t> mi_cover_sizes;  // per single-feature term
    std::size_t mi_union_size = 0;
    bool mi_chain_overlaps = false;  // some pair of MI terms shares an atom
    bool mi_covers_top = false;      // whether any MI term reaches {1..n}
};

PartitionReport verify_cmi_partition(std::size_t n_features, bool allow_large = false);

}  // namespace infosel
