#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infosel/dataset.hpp"
#include "infosel/estimators.hpp"
#include "infosel/rng.hpp"

namespace infosel {

enum class Criterion { Cmi, Mi };
enum class EstimatorKind { Plugin, Ksg };

Criterion parse_criterion(const std::string& text);
EstimatorKind parse_estimator(const std::string& text);
std::string to_string(Criterion c);
std::string to_string(EstimatorKind e);

// Settings for the selection pipeline.  All randomness (surrogate
// permutations and the knn sub-noise) derives from `seed`; the value in
// knn.noise_seed is ignored here.  The plug-in estimator requires every
// participating variable to be discrete.
struct SelectionConfig {
    Criterion criterion = Criterion::Cmi;
    double alpha = 0.05;
    int n_perm = 200;
    EstimatorKind estimator = EstimatorKind::Ksg;
    KnnConfig knn;
    std::optional<std::size_t> max_features;
    Seed seed = 0;
    int jobs = 1;
};

// One tested round.  Forward rounds test the maximum candidate score against
// surrogate maxima; pruning rounds test the minimum against surrogate minima.
struct SelectionStep {
    std::vector<std::size_t> candidates;  // variable indices scored this round
    std::vector<double> scores;           // aligned with candidates
    std::size_t winner = 0;               // extreme candidate (ties: lowest index)
    double observed = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

enum class Termination { NoSignificantCandidate, MaxFeatures, Exhausted };
std::string to_string(Termination t);

struct SelectionResult {
    std::vector<std::size_t> selected;  // in inclusion order
    std::vector<SelectionStep> steps;   // forward rounds
    std::vector<std::size_t> pruned;    // removed during backward elimination
    std::vector<SelectionStep> pruning_steps;
    Termination termination = Termination::Exhausted;
};

// Criterion value of every remaining candidate against the target given the
// selected set: I(X;Y|S) for CMI (plain MI when S is empty), I(X;Y) for MI.
std::vector<std::pair<std::size_t, double>> score_candidates(
    const Dataset& data, const std::vector<std::size_t>& selected,
    const std::vector<std::size_t>& remaining, const SelectionConfig& cfg);

struct SurrogateVerdict {
    double p_value = 1.0;
    bool significant = false;
    std::vector<double> null_statistics;  // one extreme value per permutation round
};

// Permutation test of the winning candidate: each permutation round permutes
// every remaining variable independently, scores it, and records the maximum
// across variables; p = (1 + #{max >= observed}) / (1 + n_perm).  Surrogate
// streams are keyed by (round = |selected|, variable, permutation), so the
// verdict matches what forward_select computes at the same stage.
SurrogateVerdict max_statistic_test(const Dataset& data, const std::vector<std::size_t>& selected,
                                    const std::vector<std::size_t>& remaining, std::size_t winner,
                                    double observed, const SelectionConfig& cfg);

// Greedy inclusion: score remaining candidates, take the argmax (ties broken
// toward the lowest variable index), accept it if the max-statistic test is
// significant, repeat.  Stops at the first non-significant winner, at
// max_features, or when no candidates remain.
SelectionResult forward_select(const Dataset& data, const SelectionConfig& cfg);

// Iterative pruning of a selected set: the weakest feature (smallest
// I(F;Y|S\F), always conditional regardless of cfg.criterion) is removed
// while non-significant under the minimum-statistic analogue, one feature at
// a time.  In the returned result, termination is Exhausted when everything
// was pruned and NoSignificantCandidate otherwise.
SelectionResult backward_eliminate(const Dataset& data, const std::vector<std::size_t>& selected,
                                   const SelectionConfig& cfg);

// Full pipeline: forward_select, then backward_eliminate, records merged.
SelectionResult select_features(const Dataset& data, const SelectionConfig& cfg);

}  // namespace infosel
