#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace infosel {

// Joint distribution of a target and two inputs as a dense 3-D probability
// table indexed (y, x1, x2).
struct TripleDistribution {
    std::size_t ny = 0, nx1 = 0, nx2 = 0;
    std::vector<double> p;

    TripleDistribution() = default;
    TripleDistribution(std::size_t ny_, std::size_t nx1_, std::size_t nx2_)
        : ny(ny_), nx1(nx1_), nx2(nx2_), p(ny_ * nx1_ * nx2_, 0.0) {}

    double& at(std::size_t y, std::size_t x1, std::size_t x2) {
        return p[(y * nx1 + x1) * nx2 + x2];
    }
    double at(std::size_t y, std::size_t x1, std::size_t x2) const {
        return p[(y * nx1 + x1) * nx2 + x2];
    }

    // Entries must be non-negative and sum to 1 within 1e-9.
    void validate() const;
};

// The four decomposition atoms, in bits: information about the target held
// uniquely by each input, shared between them, and only in their combination.
struct PidAtoms {
    double unq_x1 = 0.0;
    double unq_x2 = 0.0;
    double shd = 0.0;
    double syn = 0.0;
};

// Information content of a TripleDistribution, plug-in on the exact table,
// in bits.
struct TripleInformation {
    double mi_x1 = 0.0;        // I(Y;X1)
    double mi_x2 = 0.0;        // I(Y;X2)
    double mi_joint = 0.0;     // I(Y;X1,X2)
    double cmi_x1_x2 = 0.0;    // I(Y;X1|X2)
    double cmi_x2_x1 = 0.0;    // I(Y;X2|X1)
};

TripleInformation triple_information(const TripleDistribution& p);

// Relative-frequency table of three discrete code vectors.  The multicolumn
// overload folds x2 into one composite variable over the product alphabet of
// its observed combinations, which is how a feature is decomposed against an
// entire selected set.
TripleDistribution empirical_triple(const std::vector<int>& y, const std::vector<int>& x1,
                                    const std::vector<int>& x2);
TripleDistribution empirical_triple(const std::vector<int>& y, const std::vector<int>& x1,
                                    const std::vector<std::vector<int>>& x2_columns);

// Raised when the unique-information solver exhausts its iteration budget;
// carries the best point reached and the duality gap still open there.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& message, TripleDistribution best, double gap_bits)
        : std::runtime_error(message), best_(std::move(best)), gap_(gap_bits) {}

    const TripleDistribution& best_iterate() const { return best_; }
    double gap() const { return gap_; }

private:
    TripleDistribution best_;
    double gap_;
};

struct BrojaResult {
    TripleDistribution q_opt;  // minimizer within the fixed-marginal polytope
    double unq_x1 = 0.0;       // I_q(Y;X1|X2) at q_opt, bits
    double gap = 0.0;          // certified optimality gap, bits
    std::size_t iterations = 0;
};

// Unique information of X1 about Y: minimizes I_q(Y;X1|X2) over all q with
// the same (Y,X1) and (Y,X2) marginals as p.  Multiplicative gradient
// updates projected back onto the marginals; optimality is certified through
// the Lagrange dual of the marginal constraints, whose value lower-bounds
// the minimum, and the search stops once the certified gap drops below tol
// (bits).
BrojaResult broja_unique(const TripleDistribution& p, double tol = 1e-4);

// Full decomposition: unq_x1 from broja_unique, the remaining atoms from the
// linear identities against the plug-in MI/CMI terms of p.  unq_x1 is
// clamped into the interval those identities allow, so all atoms come out
// non-negative and the identities hold exactly.
PidAtoms pid_decompose(const TripleDistribution& p, double tol = 1e-4);

// Verification oracle: exhaustive minimum over a grid of double-difference
// coefficients with the given spacing.  Only viable for small alphabets;
// throws BudgetError beyond ~1e8 grid points.
double brute_force_unique(const TripleDistribution& p, double grid_step);

}  // namespace infosel
