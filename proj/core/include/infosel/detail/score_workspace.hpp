#pragma once

#include <cstdint>
#include <vector>

#include "infosel/estimators.hpp"

namespace infosel::detail {

// Repeated-scoring engine for one selection round: target and conditioning
// set stay fixed while many candidate columns (and their surrogates) are
// scored.  Distances involving only the fixed part are precomputed, which is
// what makes surrogate testing affordable.  Columns are borrowed by pointer
// and must outlive the workspace; callers pass pre-noised data (see
// add_subnoise).  score() is const and takes per-caller scratch, so rounds
// can run on several threads against one workspace.
class KsgScoreWorkspace {
public:
    struct Scratch {
        std::vector<double> dx;   // candidate-coordinate distances
        std::vector<double> dy;   // target distances (direct mode)
        std::vector<double> dz;   // conditioning distances (oversize mode)
        std::vector<double> dyz;  // target+conditioning distances (oversize mode)
        std::vector<double> kth;  // k smallest joint distances so far
        std::vector<double> column;  // staging area for permuted candidates
    };

    KsgScoreWorkspace(const std::vector<double>* y, int k);

    // Fixes the conditioning set for the next scores.  An empty set scores
    // plain MI(X;Y).  Pairwise distance matrices are built when they fit,
    // otherwise scoring recomputes conditioning distances per call.
    void set_conditioning(std::vector<const std::vector<double>*> z);

    // I(X;Y | Z) (or MI for an empty set) in nats, Kraskov algorithm 1.
    double score(const std::vector<double>& x, Scratch& s) const;

    std::size_t n_samples() const { return n_; }
    bool matrix_mode() const { return matrix_mode_; }

private:
    double score_direct(const std::vector<double>& x, Scratch& s) const;
    double score_matrix(const std::vector<double>& x, Scratch& s) const;
    double score_oversize(const std::vector<double>& x, Scratch& s) const;

    const std::vector<double>* y_;
    std::size_t n_;
    int k_;
    std::vector<const std::vector<double>*> z_;
    bool matrix_mode_ = false;
    // Row-major n*n distances over the conditioning set and over (y, z).
    std::vector<double> dz_, dyz_;
    // The same rows sorted ascending, for counting by binary search.
    std::vector<double> dz_sorted_, dyz_sorted_;
    std::vector<double> psi_;  // digamma(m) for m = 1 .. n+1
};

// Plug-in counterpart: the conditioning set is folded into one product code
// per round so each score is a single counting pass.  Bit-identical to
// cmi_plugin on the same codes.
class PluginScoreWorkspace {
public:
    struct Scratch {
        std::vector<std::int64_t> nxyz, nxz, nyz, nz;
        std::vector<std::size_t> txyz, txz, tyz, tz;  // touched table cells
        std::vector<double> terms;
        std::vector<int> column;  // staging area for permuted candidates
    };

    PluginScoreWorkspace(const std::vector<int>* y, std::size_t y_alphabet);

    void set_conditioning(const std::vector<const std::vector<int>*>& z);

    // I(X;Y | Z) (or MI for an empty set) in bits.
    double score(const std::vector<int>& x, std::size_t x_alphabet, Scratch& s) const;

    std::size_t n_samples() const { return y_->size(); }

private:
    const std::vector<int>* y_;
    std::size_t ya_;
    std::vector<int> zid_;
    std::size_t za_ = 1;
};

}  // namespace infosel::detail
