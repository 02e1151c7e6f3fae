#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "infosel/dataset.hpp"
#include "infosel/rng.hpp"
#include "infosel/selection.hpp"

namespace infosel {

// Mean of the k nearest training targets under Euclidean distance on the
// chosen columns; equal distances resolve toward the lower training row.
std::vector<double> knn_predict(const Dataset& train, const Dataset& test,
                                const std::vector<std::size_t>& feature_subset, std::size_t k);

// Mean absolute deviation between two equally long vectors.
double mae(const std::vector<double>& predictions, const std::vector<double>& truth);

// Sample Pearson correlation; both vectors need non-zero spread.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

// Copies of a train/test pair with every continuous input column shifted and
// scaled by the training mean and standard deviation.  A column without
// spread is only centered; targets and discrete columns pass through.
std::pair<Dataset, Dataset> standardize_split(const Dataset& train, const Dataset& test);

struct SubsetScore {
    std::vector<std::size_t> subset;  // variable indices, ascending
    double mae = 0.0;
};

// kNN error of every non-empty input subset (optionally capped in size) on
// one shared train/test split, ordered by (size, error, subset).  More than
// 20 inputs require max_set_size to keep the sweep bounded.
std::vector<SubsetScore> powerset_evaluation(const Dataset& data, std::size_t k,
                                             double test_fraction,
                                             std::optional<std::size_t> max_set_size, Seed seed,
                                             bool standardize = false);

// Selection quality against a known relevant set, averaged over runs and
// expressed in percent.  A side without ground-truth members (no positives,
// or no negatives) is reported as absent rather than as a made-up rate.
struct ConfusionCounts {
    std::optional<double> tp, fn;  // relevant side: tp + fn = 100
    std::optional<double> tn, fp;  // irrelevant side: tn + fp = 100
};

// `ground_truth` and each result's selected set index into the same pool of
// n_candidates candidate variables.
ConfusionCounts confusion_counts(const std::vector<SelectionResult>& results,
                                 const std::vector<std::size_t>& ground_truth,
                                 std::size_t n_candidates);

}  // namespace infosel
