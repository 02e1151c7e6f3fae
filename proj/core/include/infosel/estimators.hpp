#pragma once

#include <cstdint>
#include <vector>

#include "infosel/rng.hpp"

namespace infosel {

// Dense empirical joint-frequency table over one or more discrete columns.
struct JointCounts {
    std::vector<std::size_t> dims;
    std::vector<std::int64_t> counts;  // row-major over dims
    std::int64_t total = 0;

    static JointCounts from_columns(const std::vector<const std::vector<int>*>& columns,
                                    const std::vector<std::size_t>& alphabets);
    std::int64_t& at(const std::vector<std::size_t>& idx);
};

// Configuration for the nearest-neighbor estimators.  The metric is the
// max-norm (Chebyshev distance).  `noise_seed` drives the deterministic
// sub-noise of amplitude 1e-10 * (column range) added to every column before
// neighbor searches so that duplicate points (e.g. discrete-valued columns)
// do not break the neighbor counting.
struct KnnConfig {
    int k = 4;
    Seed noise_seed = 0;
};

// Digamma function, accurate to ~1e-12 over the positive reals.
double digamma(double x);

// Plug-in estimates from empirical frequencies; results in bits.
// entropy_plugin: H(X) = -sum p log2 p with 0 log 0 := 0.
double entropy_plugin(const std::vector<int>& x);

// mi_plugin is exactly symmetric in its arguments and never negative.
double mi_plugin(const std::vector<int>& x, const std::vector<int>& y);

// Conditional MI given a (possibly empty, possibly multicolumn) discrete
// conditioning set; the columns are combined into a product alphabet over the
// observed combinations.  An empty set reduces exactly to mi_plugin.
double cmi_plugin(const std::vector<int>& x, const std::vector<int>& y,
                  const std::vector<std::vector<int>>& z);

// Column-major continuous data: each entry is one column of equal length.
using Columns = std::vector<std::vector<double>>;

// Kraskov-Stoegbauer-Grassberger estimator (algorithm 1); result in nats.
// For each sample, eps is the distance to the k-th nearest neighbor in the
// joint space under the max-norm, and marginal neighbors strictly closer
// than eps are counted.  Finite-sample results may be slightly negative.
double mi_knn(const Columns& x, const Columns& y, const KnnConfig& cfg);

// Conditional variant; with zero conditioning columns delegates to mi_knn.
double cmi_knn(const Columns& x, const Columns& y, const Columns& z, const KnnConfig& cfg);

// Convenience single-column overloads.
double mi_knn(const std::vector<double>& x, const std::vector<double>& y, const KnnConfig& cfg);
double cmi_knn(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& z, const KnnConfig& cfg);

namespace detail {

// Adds the deterministic sub-noise used by the KSG estimators.  Column keys
// identify the noise stream; estimator entry points use the column position
// within the call, the selection engine uses dataset variable indices.
std::vector<double> add_subnoise(const std::vector<double>& column, Seed noise_seed,
                                 std::uint64_t column_key);

// Plug-in CMI on precoded columns (dense codes, known alphabet sizes).
// zid must hold dense product-alphabet codes of the conditioning set; pass
// z_alphabet = 1 and an all-zero zid for an empty set.  Bit-identical to
// cmi_plugin on the same coding.
double cmi_plugin_coded(const std::vector<int>& x, std::size_t xa, const std::vector<int>& y,
                        std::size_t ya, const std::vector<int>& zid, std::size_t za);

// Dense product-alphabet codes over the observed combinations of several
// discrete columns; returns the codes and the number of distinct combos.
std::pair<std::vector<int>, std::size_t> product_codes(
    const std::vector<const std::vector<int>*>& columns);

// Compensated summation over the sorted terms; the result depends only on
// the multiset of terms, never on their construction order.
double neumaier_sorted_sum(std::vector<double>& terms);

}  // namespace detail

}  // namespace infosel
