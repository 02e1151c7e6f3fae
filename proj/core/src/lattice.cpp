#include "infosel/lattice.hpp"

#include <algorithm>
#include <string>

#include "infosel/errors.hpp"

namespace infosel {
namespace {

bool comparable(std::uint32_t a, std::uint32_t b) {
    return (a & b) == a || (a & b) == b;
}

std::uint32_t lattice_universe(const std::vector<Antichain>& lattice) {
    std::uint32_t all = 0;
    for (const Antichain& atom : lattice) {
        for (std::uint32_t c : atom.collections) all |= c;
    }
    return all;
}

}  // namespace

std::uint32_t collection_mask(const std::vector<std::size_t>& features) {
    std::uint32_t mask = 0;
    for (std::size_t f : features) {
        if (f == 0 || f > 32) throw ConfigError("collection_mask: feature indices are 1-based");
        mask |= 1u << (f - 1);
    }
    return mask;
}

bool lattice_leq(const Antichain& a, const Antichain& b) {
    for (std::uint32_t coll : b.collections) {
        bool dominated = false;
        for (std::uint32_t sub : a.collections) {
            if ((sub & coll) == sub) {
                dominated = true;
                break;
            }
        }
        if (!dominated) return false;
    }
    return true;
}

std::vector<Antichain> enumerate_lattice(std::size_t n_features, bool allow_large) {
    if (n_features == 0) throw ConfigError("enumerate_lattice: needs at least one feature");
    const std::size_t cap = allow_large ? 5 : 4;
    if (n_features > cap) {
        throw ConfigError("enumerate_lattice: " + std::to_string(n_features) +
                          " features exceed the enumeration budget" +
                          (allow_large ? "" : " (pass allow_large for n = 5)"));
    }

    const std::uint32_t full = (1u << n_features) - 1;
    std::vector<Antichain> out;
    std::vector<std::uint32_t> chosen;
    // Masks are added in ascending order, so every antichain appears exactly
    // once, as the sorted list of its members.
    auto walk = [&](auto&& self, std::uint32_t from) -> void {
        if (!chosen.empty()) out.push_back(Antichain{chosen});
        for (std::uint32_t m = from; m <= full; ++m) {
            bool ok = true;
            for (std::uint32_t c : chosen) {
                if (comparable(c, m)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chosen.push_back(m);
                self(self, m + 1);
                chosen.pop_back();
            }
        }
    };
    walk(walk, 1);
    return out;
}

std::vector<std::size_t> atoms_covered_by_mi(std::uint32_t collection,
                                             const std::vector<Antichain>& lattice) {
    if (collection == 0) throw ConfigError("atoms_covered_by_mi: empty collection");
    if (lattice.empty()) throw ConfigError("atoms_covered_by_mi: empty lattice");
    if ((collection & lattice_universe(lattice)) != collection) {
        throw ConfigError("atoms_covered_by_mi: collection outside the lattice's features");
    }

    // An atom lies below {collection} exactly when one of its member
    // collections is a subset of it.
    std::vector<std::size_t> covered;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        for (std::uint32_t c : lattice[i].collections) {
            if ((c & collection) == c) {
                covered.push_back(i);
                break;
            }
        }
    }
    return covered;
}

PartitionReport verify_cmi_partition(std::size_t n_features, bool allow_large) {
    const std::vector<Antichain> lattice = enumerate_lattice(n_features, allow_large);
    PartitionReport report;
    report.n_features = n_features;
    report.atom_count = lattice.size();

    const std::uint32_t full = (1u << n_features) - 1;
    std::vector<char> seen(lattice.size(), 0);
    report.cmi_pairwise_disjoint = true;
    for (std::size_t i = 1; i <= n_features; ++i) {
        const std::uint32_t prefix = (1u << i) - 1;
        const std::uint32_t before = (1u << (i - 1)) - 1;
        std::size_t fresh = 0;
        for (std::size_t atom : atoms_covered_by_mi(prefix, lattice)) {
            // Conditioning on the earlier features removes their coverage,
            // so the term's atoms are the newly reached ones.
            bool already = false;
            if (before != 0) {
                for (std::uint32_t c : lattice[atom].collections) {
                    if ((c & before) == c) {
                        already = true;
                        break;
                    }
                }
            }
            if (already) continue;
            ++fresh;
            if (seen[atom]) report.cmi_pairwise_disjoint = false;
            seen[atom] = 1;
        }
        report.cmi_cover_sizes.push_back(fresh);
    }
    report.cmi_covers_everything =
        std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });

    std::vector<char> mi_seen(lattice.size(), 0);
    std::vector<std::vector<std::size_t>> mi_covers;
    for (std::size_t i = 1; i <= n_features; ++i) {
        mi_covers.push_back(atoms_covered_by_mi(1u << (i - 1), lattice));
        report.mi_cover_sizes.push_back(mi_covers.back().size());
        for (std::size_t atom : mi_covers.back()) {
            if (mi_seen[atom]) report.mi_chain_overlaps = true;
            mi_seen[atom] = 1;
        }
    }
    report.mi_union_size =
        static_cast<std::size_t>(std::count(mi_seen.begin(), mi_seen.end(), 1));

    const Antichain top{{full}};
    for (const auto& cover : mi_covers) {
        for (std::size_t atom : cover) {
            if (lattice[atom] == top) report.mi_covers_top = true;
        }
    }
    return report;
}

}  // namespace infosel
