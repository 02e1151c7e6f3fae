#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "infosel/rng.hpp"

namespace infosel {

enum class VarKind { Continuous, Discrete };

// One named column.  Continuous columns store raw values in `reals`.
// Discrete columns store dense symbol codes 0..alphabet-1 in `symbols`,
// and `levels[code]` keeps the numeric value each code stands for, so the
// original representation survives CSV round trips and can feed the
// continuous estimators when needed.
struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    std::vector<double> reals;
    std::vector<int> symbols;
    std::vector<double> levels;

    std::size_t size() const {
        return kind == VarKind::Continuous ? reals.size() : symbols.size();
    }
    std::size_t alphabet_size() const { return levels.size(); }
    double numeric(std::size_t row) const {
        return kind == VarKind::Continuous ? reals[row]
                                           : levels[static_cast<std::size_t>(symbols[row])];
    }
    std::vector<double> numeric_column() const;

    static Variable continuous(std::string name, std::vector<double> values);
    // Builds dense codes from arbitrary integer-valued labels.
    static Variable discrete_from_values(std::string name, const std::vector<double>& values);
    // Wraps already-dense codes; levels default to the identity mapping.
    static Variable discrete_from_codes(std::string name, std::vector<int> codes,
                                        std::size_t alphabet, std::vector<double> levels = {});
};

// Column table of named variables with one designated target.
struct Dataset {
    std::vector<Variable> variables;
    std::size_t n_samples = 0;
    std::size_t target_index = 0;

    Dataset() = default;
    Dataset(std::vector<Variable> vars, std::size_t target);

    const Variable& target() const { return variables[target_index]; }
    std::size_t n_variables() const { return variables.size(); }
    std::vector<std::size_t> input_indices() const;
    std::size_t index_of(const std::string& name) const;

    // Enforces equal column lengths, unique names, and dense discrete codes.
    void validate() const;
};

// Parses a CSV file.  A column is classified discrete when every cell is an
// integer literal.  `target_name` must match a header name when `header` is
// true, otherwise it is parsed as a 0-based column index.
Dataset load_csv(const std::string& path, const std::string& target_name, bool header = true);

// Writes a Dataset back to CSV; parsing the output reproduces the Dataset.
void save_csv(const Dataset& data, const std::string& path, bool header = true);

// Maps values into `n_bins` symbols.  Equal-width splits [min, max] into
// equal intervals with the maximum assigned to the top bin; equal-frequency
// assigns by rank quantiles with ties broken by original index order.
enum class BinStrategy { EqualWidth, EqualFrequency };
std::vector<int> discretize(const std::vector<double>& values, std::size_t n_bins,
                            BinStrategy strategy = BinStrategy::EqualWidth);

// Returns a Dataset whose continuous columns are replaced by binned copies.
Dataset discretize_dataset(const Dataset& data, std::size_t n_bins,
                           BinStrategy strategy = BinStrategy::EqualWidth);

// Uniformly random reordering of `values` under the seeded stream.
template <typename T>
std::vector<T> permute_variable(std::vector<T> values, Seed seed) {
    Rng rng(seed);
    shuffle_in_place(values, rng);
    return values;
}

// Row-disjoint partition; the test part receives floor(fraction * n) rows,
// at least one.  Assignment is by seeded shuffle of row indices.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                             Seed seed);

}  // namespace infosel
