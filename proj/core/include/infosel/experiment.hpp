#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infosel/dataset.hpp"
#include "infosel/rng.hpp"
#include "infosel/selection.hpp"

namespace infosel {

// Fully resolved settings for one reproducible experiment batch.  Optionals
// left empty fall back to the per-experiment defaults that
// default_experiment_config fills in; run_experiment resolves them the same
// way, so a config echoed from a report replays bit-for-bit.
struct ExperimentConfig {
    std::string experiment;
    std::size_t n_runs = 20;
    std::size_t n_samples = 1000;
    Seed base_seed = 1;
    int jobs = 1;
    SelectionConfig selection;
    std::size_t n_bins = 5;
    BinStrategy bin_strategy = BinStrategy::EqualFrequency;

    // Swept parameter values; their meaning depends on the experiment
    // (noise weight for the noise models, weight_alpha for the statistical
    // models, sample sizes for the regression scaling study).
    std::vector<double> sweep;

    std::optional<double> sigma;        // generator noise scale
    std::optional<double> label_noise;  // spheres target jitter
    std::optional<double> a, b, c;      // coupling strengths where applicable
    std::optional<std::string> stat_kind;  // additive | multiplicative | both
    std::optional<std::string> stat_dist;
    std::optional<std::size_t> n_vars;         // regression problem width
    std::optional<std::size_t> n_informative;  // relevant variable count

    double test_fraction = 0.3;
    std::size_t knn_k = 5;
    std::optional<bool> standardize;  // scale features before kNN scoring
    std::string out_dir = "runs";
};

// The known experiment ids.
const std::vector<std::string>& experiment_ids();

// A config pre-filled with the defaults of the given experiment.
ExperimentConfig default_experiment_config(const std::string& experiment);

// JSON round-trip of a config; parse starts from the experiment's defaults
// and overrides the keys present in the document.  Unknown keys are errors.
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_json(const ExperimentConfig& cfg);

// Config-token helpers for the binning strategy.
BinStrategy parse_bin_strategy(const std::string& text);
std::string to_string(BinStrategy strategy);

struct ExperimentOutcome {
    int exit_code = 0;  // 0 all runs finished, 2 some runs failed
    std::string report_json;
    std::vector<std::pair<std::string, std::string>> tables;  // name -> csv text
};

// Runs the full batch: per run generate, select, estimate, decompose, and
// evaluate as the experiment demands; failed runs are recorded with their
// stage and the batch continues.  The report embeds the resolved config and
// every seed, and all randomness derives from base_seed + run index.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// Rebuilds the flat CSV tables from a finished report document.
std::vector<std::pair<std::string, std::string>> report_tables(const std::string& report_json);

// Writes config.json, report.json, and tables/*.csv under `dir`.
void write_outcome(const ExperimentOutcome& outcome, const std::string& dir);

}  // namespace infosel
