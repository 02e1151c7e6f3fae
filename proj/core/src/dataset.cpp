#include "infosel/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "infosel/errors.hpp"

namespace infosel {

namespace {

bool is_integer_literal(const std::string& cell) {
    std::size_t i = 0;
    if (i < cell.size() && (cell[i] == '+' || cell[i] == '-')) ++i;
    if (i == cell.size()) return false;
    for (; i < cell.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(cell[i]))) return false;
    }
    return true;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> Variable::numeric_column() const {
    if (kind == VarKind::Continuous) return reals;
    std::vector<double> out(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out[i] = levels[static_cast<std::size_t>(symbols[i])];
    }
    return out;
}

Variable Variable::continuous(std::string name, std::vector<double> values) {
    Variable v;
    v.name = std::move(name);
    v.kind = VarKind::Continuous;
    v.reals = std::move(values);
    return v;
}

Variable Variable::discrete_from_values(std::string name, const std::vector<double>& values) {
    std::map<double, int> code_of;
    for (double x : values) code_of.emplace(x, 0);
    int next = 0;
    for (auto& [value, code] : code_of) code = next++;

    Variable v;
    v.name = std::move(name);
    v.kind = VarKind::Discrete;
    v.symbols.reserve(values.size());
    for (double x : values) v.symbols.push_back(code_of.at(x));
    v.levels.resize(code_of.size());
    for (const auto& [value, code] : code_of) v.levels[static_cast<std::size_t>(code)] = value;
    return v;
}

Variable Variable::discrete_from_codes(std::string name, std::vector<int> codes,
                                       std::size_t alphabet, std::vector<double> levels) {
    Variable v;
    v.name = std::move(name);
    v.kind = VarKind::Discrete;
    v.symbols = std::move(codes);
    if (levels.empty()) {
        levels.resize(alphabet);
        std::iota(levels.begin(), levels.end(), 0.0);
    }
    v.levels = std::move(levels);
    return v;
}

Dataset::Dataset(std::vector<Variable> vars, std::size_t target)
    : variables(std::move(vars)), target_index(target) {
    n_samples = variables.empty() ? 0 : variables.front().size();
    validate();
}

std::vector<std::size_t> Dataset::input_indices() const {
    std::vector<std::size_t> out;
    out.reserve(variables.size() - 1);
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (i != target_index) out.push_back(i);
    }
    return out;
}

std::size_t Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return i;
    }
    throw ConfigError("unknown variable name: '" + name + "'");
}

void Dataset::validate() const {
    if (variables.empty()) throw ConfigError("dataset has no variables");
    if (target_index >= variables.size()) throw ConfigError("target index out of range");
    std::set<std::string> names;
    for (const auto& v : variables) {
        if (v.size() != n_samples) {
            throw ConfigError("variable '" + v.name + "' has " + std::to_string(v.size()) +
                              " samples, expected " + std::to_string(n_samples));
        }
        if (!names.insert(v.name).second) {
            throw ConfigError("duplicate variable name: '" + v.name + "'");
        }
        if (v.kind == VarKind::Discrete) {
            if (v.levels.empty()) throw ConfigError("variable '" + v.name + "' has empty alphabet");
            for (int code : v.symbols) {
                if (code < 0 || static_cast<std::size_t>(code) >= v.levels.size()) {
                    throw ConfigError("variable '" + v.name + "' has symbol code out of range");
                }
            }
        }
    }
}

Dataset load_csv(const std::string& path, const std::string& target_name, bool header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    std::vector<std::string> names;
    std::size_t row_number = 0;

    if (header) {
        if (!std::getline(in, line)) throw DataError(path + ": empty file");
        ++row_number;
        names = split_row(line);
    }

    std::vector<std::vector<std::string>> columns;
    std::size_t n_cols = names.size();
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto cells = split_row(line);
        if (columns.empty()) {
            if (n_cols == 0) n_cols = cells.size();
            columns.resize(n_cols);
        }
        if (cells.size() != n_cols) {
            throw DataError(path + ": row " + std::to_string(row_number) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(n_cols));
        }
        for (std::size_t c = 0; c < n_cols; ++c) columns[c].push_back(std::move(cells[c]));
    }
    if (columns.empty() || columns.front().empty()) throw DataError(path + ": no data rows");

    if (!header) {
        names.resize(n_cols);
        for (std::size_t c = 0; c < n_cols; ++c) names[c] = "v" + std::to_string(c);
    }
    if (names.size() != n_cols) throw DataError(path + ": header/body column count mismatch");

    std::vector<Variable> vars;
    vars.reserve(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        bool all_integer = true;
        std::vector<double> values;
        values.reserve(columns[c].size());
        for (std::size_t r = 0; r < columns[c].size(); ++r) {
            const std::string& cell = columns[c][r];
            double parsed = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            auto res = std::from_chars(first, last, parsed);
            if (res.ec != std::errc() || res.ptr != last) {
                const std::size_t file_row = r + (header ? 2 : 1);
                throw DataError(path + ": non-numeric cell '" + cell + "' at row " +
                                std::to_string(file_row) + ", column '" + names[c] + "'");
            }
            all_integer = all_integer && is_integer_literal(cell);
            values.push_back(parsed);
        }
        vars.push_back(all_integer ? Variable::discrete_from_values(names[c], values)
                                   : Variable::continuous(names[c], std::move(values)));
    }

    std::size_t target_index = 0;
    if (header) {
        bool found = false;
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (names[c] == target_name) {
                target_index = c;
                found = true;
                break;
            }
        }
        if (!found) throw DataError(path + ": no column named '" + target_name + "'");
    } else {
        std::size_t idx = 0;
        auto res = std::from_chars(target_name.data(), target_name.data() + target_name.size(), idx);
        if (res.ec != std::errc() || res.ptr != target_name.data() + target_name.size() ||
            idx >= n_cols) {
            throw DataError(path + ": target '" + target_name +
                            "' is not a valid column index for a headerless file");
        }
        target_index = idx;
    }

    return Dataset(std::move(vars), target_index);
}

void save_csv(const Dataset& data, const std::string& path, bool header) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open file for writing: " + path);
    if (header) {
        for (std::size_t c = 0; c < data.variables.size(); ++c) {
            out << (c ? "," : "") << data.variables[c].name;
        }
        out << '\n';
    }
    for (std::size_t r = 0; r < data.n_samples; ++r) {
        for (std::size_t c = 0; c < data.variables.size(); ++c) {
            out << (c ? "," : "") << format_value(data.variables[c].numeric(r));
        }
        out << '\n';
    }
}

std::vector<int> discretize(const std::vector<double>& values, std::size_t n_bins,
                            BinStrategy strategy) {
    if (n_bins < 1) throw ConfigError("discretize: n_bins must be >= 1");
    if (values.empty()) throw ConfigError("discretize: empty input");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DataError("discretize: non-finite value at index " + std::to_string(i));
        }
    }
    const std::size_t n = values.size();
    std::vector<int> bins(n, 0);
    if (n_bins == 1) return bins;

    if (strategy == BinStrategy::EqualWidth) {
        const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        const double lo = *lo_it, hi = *hi_it;
        if (lo == hi) return bins;
        const double width = (hi - lo) / static_cast<double>(n_bins);
        for (std::size_t i = 0; i < n; ++i) {
            auto b = static_cast<long>((values[i] - lo) / width);
            if (b < 0) b = 0;
            if (b >= static_cast<long>(n_bins)) b = static_cast<long>(n_bins) - 1;
            bins[i] = static_cast<int>(b);
        }
        return bins;
    }

    // Equal frequency: rank by (value, original index), then cut ranks into
    // quantile blocks.  Equal values all inherit the bin of their first
    // occurrence so that a constant input lands entirely in bin 0.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    });
    std::vector<int> rank_bin(n);
    for (std::size_t r = 0; r < n; ++r) {
        rank_bin[r] = static_cast<int>((r * n_bins) / n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t first = r;
        while (first > 0 && values[order[first - 1]] == values[order[r]]) --first;
        bins[order[r]] = rank_bin[first];
    }
    return bins;
}

Dataset discretize_dataset(const Dataset& data, std::size_t n_bins, BinStrategy strategy) {
    std::vector<Variable> vars;
    vars.reserve(data.variables.size());
    for (const auto& v : data.variables) {
        if (v.kind == VarKind::Discrete) {
            vars.push_back(v);
            continue;
        }
        auto codes = discretize(v.reals, n_bins, strategy);
        vars.push_back(Variable::discrete_from_codes(v.name, std::move(codes), n_bins));
    }
    return Dataset(std::move(vars), data.target_index);
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction, Seed seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ConfigError("train_test_split: test_fraction must lie in (0, 1)");
    }
    if (data.n_samples < 2) throw ConfigError("train_test_split: need at least 2 samples");

    std::size_t n_test =
        static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(data.n_samples)));
    n_test = std::max<std::size_t>(n_test, 1);

    std::vector<std::size_t> rows(data.n_samples);
    std::iota(rows.begin(), rows.end(), 0);
    Rng rng(seed);
    shuffle_in_place(rows, rng);

    auto take = [&](std::size_t begin, std::size_t count) {
        std::vector<Variable> vars;
        vars.reserve(data.variables.size());
        for (const auto& v : data.variables) {
            Variable part;
            part.name = v.name;
            part.kind = v.kind;
            part.levels = v.levels;
            for (std::size_t i = begin; i < begin + count; ++i) {
                const std::size_t r = rows[i];
                if (v.kind == VarKind::Continuous) {
                    part.reals.push_back(v.reals[r]);
                } else {
                    part.symbols.push_back(v.symbols[r]);
                }
            }
            vars.push_back(std::move(part));
        }
        return Dataset(std::move(vars), data.target_index);
    };

    const std::size_t n_train = data.n_samples - n_test;
    return {take(0, n_train), take(n_train, n_test)};
}

}  // namespace infosel
