#include "infosel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "infosel/errors.hpp"

namespace infosel {
namespace {

std::vector<std::vector<double>> subset_columns(const Dataset& data,
                                                const std::vector<std::size_t>& subset) {
    std::vector<std::vector<double>> cols;
    cols.reserve(subset.size());
    for (std::size_t idx : subset) {
        if (idx >= data.n_variables()) {
            throw ConfigError("knn_predict: variable index " + std::to_string(idx) +
                              " out of range");
        }
        if (idx == data.target_index) {
            throw ConfigError("knn_predict: the target cannot be a feature");
        }
        cols.push_back(data.variables[idx].numeric_column());
    }
    return cols;
}

// Core kNN sweep over pre-extracted columns, shared by the public entry
// point and the powerset evaluation.
std::vector<double> knn_on_columns(const std::vector<std::vector<double>>& train_cols,
                                   const std::vector<double>& train_y,
                                   const std::vector<std::vector<double>>& test_cols,
                                   std::size_t k) {
    const std::size_t n_train = train_y.size();
    const std::size_t n_test = test_cols.front().size();
    std::vector<double> predictions(n_test, 0.0);
    std::vector<std::pair<double, std::size_t>> dist(n_train);

    for (std::size_t t = 0; t < n_test; ++t) {
        for (std::size_t i = 0; i < n_train; ++i) {
            double d2 = 0.0;
            for (std::size_t f = 0; f < train_cols.size(); ++f) {
                const double diff = train_cols[f][i] - test_cols[f][t];
                d2 += diff * diff;
            }
            dist[i] = {d2, i};
        }
        std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         dist.end());
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) sum += train_y[dist[j].second];
        predictions[t] = sum / static_cast<double>(k);
    }
    return predictions;
}

}  // namespace

std::vector<double> knn_predict(const Dataset& train, const Dataset& test,
                                const std::vector<std::size_t>& feature_subset, std::size_t k) {
    if (feature_subset.empty()) throw ConfigError("knn_predict: empty feature subset");
    if (k == 0) throw ConfigError("knn_predict: k must be positive");
    if (k > train.n_samples) {
        throw ConfigError("knn_predict: k exceeds the training sample count");
    }
    const auto train_cols = subset_columns(train, feature_subset);
    const auto test_cols = subset_columns(test, feature_subset);
    return knn_on_columns(train_cols, train.target().numeric_column(), test_cols, k);
}

double mae(const std::vector<double>& predictions, const std::vector<double>& truth) {
    if (predictions.size() != truth.size()) {
        throw ConfigError("mae: prediction and truth lengths differ");
    }
    if (predictions.empty()) throw ConfigError("mae: empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        sum += std::fabs(predictions[i] - truth[i]);
    }
    return sum / static_cast<double>(predictions.size());
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("pearson_correlation: lengths differ");
    if (x.size() < 2) throw ConfigError("pearson_correlation: needs at least two samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw ConfigError("pearson_correlation: a vector has zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::pair<Dataset, Dataset> standardize_split(const Dataset& train, const Dataset& test) {
    Dataset train_out = train;
    Dataset test_out = test;
    for (std::size_t j = 0; j < train.n_variables(); ++j) {
        if (j == train.target_index) continue;
        if (train.variables[j].kind != VarKind::Continuous) continue;
        const std::vector<double>& col = train.variables[j].reals;
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= static_cast<double>(col.size());
        double var = 0.0;
        for (double v : col) var += (v - mean) * (v - mean);
        var /= static_cast<double>(col.size());
        const double scale = var > 0.0 ? std::sqrt(var) : 1.0;
        for (double& v : train_out.variables[j].reals) v = (v - mean) / scale;
        for (double& v : test_out.variables[j].reals) v = (v - mean) / scale;
    }
    return {std::move(train_out), std::move(test_out)};
}

std::vector<SubsetScore> powerset_evaluation(const Dataset& data, std::size_t k,
                                             double test_fraction,
                                             std::optional<std::size_t> max_set_size, Seed seed,
                                             bool standardize) {
    const std::vector<std::size_t> inputs = data.input_indices();
    if (inputs.empty()) throw ConfigError("powerset_evaluation: no input variables");
    if (!max_set_size && inputs.size() > 20) {
        throw BudgetError(
            "powerset_evaluation: more than 20 inputs enumerate too many subsets; "
            "restrict the sweep with max_set_size");
    }
    const std::size_t cap = max_set_size ? std::min(*max_set_size, inputs.size()) : inputs.size();
    if (cap == 0) throw ConfigError("powerset_evaluation: max_set_size must be positive");

    auto [train, test] = train_test_split(data, test_fraction, seed);
    if (k == 0 || k > train.n_samples) {
        throw ConfigError("powerset_evaluation: k outside 1..train size");
    }
    if (standardize) {
        auto scaled = standardize_split(train, test);
        train = std::move(scaled.first);
        test = std::move(scaled.second);
    }

    std::vector<std::vector<double>> train_cols(inputs.size()), test_cols(inputs.size());
    for (std::size_t f = 0; f < inputs.size(); ++f) {
        train_cols[f] = train.variables[inputs[f]].numeric_column();
        test_cols[f] = test.variables[inputs[f]].numeric_column();
    }
    const std::vector<double> train_y = train.target().numeric_column();
    const std::vector<double> test_y = test.target().numeric_column();

    std::vector<SubsetScore> out;
    std::vector<std::size_t> members;  // positions into `inputs`
    std::vector<std::vector<double>> sub_train, sub_test;

    // Depth-first enumeration in ascending position order; every prefix is
    // itself a subset, so each non-empty combination is visited once.
    auto walk = [&](auto&& self, std::size_t from) -> void {
        if (!members.empty()) {
            sub_train.clear();
            sub_test.clear();
            std::vector<std::size_t> subset;
            for (std::size_t pos : members) {
                sub_train.push_back(train_cols[pos]);
                sub_test.push_back(test_cols[pos]);
                subset.push_back(inputs[pos]);
            }
            const std::vector<double> pred = knn_on_columns(sub_train, train_y, sub_test, k);
            out.push_back({std::move(subset), mae(pred, test_y)});
        }
        if (members.size() == cap) return;
        for (std::size_t pos = from; pos < inputs.size(); ++pos) {
            members.push_back(pos);
            self(self, pos + 1);
            members.pop_back();
        }
    };
    walk(walk, 0);

    std::sort(out.begin(), out.end(), [](const SubsetScore& a, const SubsetScore& b) {
        if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
        if (a.mae != b.mae) return a.mae < b.mae;
        return a.subset < b.subset;
    });
    return out;
}

ConfusionCounts confusion_counts(const std::vector<SelectionResult>& results,
                                 const std::vector<std::size_t>& ground_truth,
                                 std::size_t n_candidates) {
    if (results.empty()) throw ConfigError("confusion_counts: no selection results");
    const std::set<std::size_t> truth(ground_truth.begin(), ground_truth.end());
    if (truth.size() > n_candidates) {
        throw ConfigError("confusion_counts: ground truth larger than the candidate pool");
    }
    const std::size_t n_pos = truth.size();
    const std::size_t n_neg = n_candidates - n_pos;

    double tp_sum = 0.0, fp_sum = 0.0;
    for (const SelectionResult& r : results) {
        std::size_t hits = 0, misses = 0;
        const std::set<std::size_t> picked(r.selected.begin(), r.selected.end());
        for (std::size_t idx : picked) {
            if (truth.count(idx)) {
                ++hits;
            } else {
                ++misses;
            }
        }
        if (n_pos > 0) tp_sum += 100.0 * static_cast<double>(hits) / static_cast<double>(n_pos);
        if (n_neg > 0) fp_sum += 100.0 * static_cast<double>(misses) / static_cast<double>(n_neg);
    }

    const double runs = static_cast<double>(results.size());
    ConfusionCounts counts;
    if (n_pos > 0) {
        counts.tp = tp_sum / runs;
        counts.fn = 100.0 - *counts.tp;
    }
    if (n_neg > 0) {
        counts.fp = fp_sum / runs;
        counts.tn = 100.0 - *counts.fp;
    }
    return counts;
}

}  // namespace infosel
