#pragma once

#include <stdexcept>
#include <string>

namespace infosel {

// Malformed or unreadable input data (CSV parsing, bad cells, ragged rows).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or argument values.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A combinatorial sweep or grid search would exceed its evaluation budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace infosel
