#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "infosel/dataset.hpp"
#include "infosel/errors.hpp"

using namespace infosel;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "infosel-test-dataset";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("csv loads with header, types, and target resolution") {
    const auto path = temp_file("basic.csv");
    write_file(path, "a,b,Y\n1,0.5,3\n2,1.5,4\n1,2.5,3\n");
    const Dataset data = load_csv(path.string(), "Y");

    CHECK(data.n_samples == 3);
    CHECK(data.n_variables() == 3);
    CHECK(data.target_index == 2);
    CHECK(data.variables[0].kind == VarKind::Discrete);
    CHECK(data.variables[1].kind == VarKind::Continuous);
    CHECK(data.variables[2].kind == VarKind::Discrete);

    CHECK(data.variables[0].symbols == std::vector<int>{0, 1, 0});
    CHECK(data.variables[0].levels == std::vector<double>{1.0, 2.0});
    CHECK(data.variables[1].reals == std::vector<double>{0.5, 1.5, 2.5});
    CHECK(data.input_indices() == std::vector<std::size_t>{0, 1});
    CHECK(data.index_of("b") == 1);
    CHECK_THROWS_AS((void)data.index_of("missing"), ConfigError);
}

TEST_CASE("headerless csv names columns by position and takes an index target") {
    const auto path = temp_file("noheader.csv");
    write_file(path, "1,2.5\n0,3.5\n");
    const Dataset data = load_csv(path.string(), "0", /*header=*/false);
    CHECK(data.variables[0].name == "v0");
    CHECK(data.variables[1].name == "v1");
    CHECK(data.target_index == 0);

    CHECK_THROWS_AS((void)load_csv(path.string(), "2", false), DataError);
    CHECK_THROWS_AS((void)load_csv(path.string(), "Y", false), DataError);
}

TEST_CASE("csv rejects malformed input with located errors") {
    const auto ragged = temp_file("ragged.csv");
    write_file(ragged, "a,b\n1,2\n3\n");
    CHECK_THROWS_AS((void)load_csv(ragged.string(), "a"), DataError);

    const auto bad_cell = temp_file("badcell.csv");
    write_file(bad_cell, "a,b\n1,x\n");
    CHECK_THROWS_WITH_AS((void)load_csv(bad_cell.string(), "a"),
                         doctest::Contains("non-numeric cell 'x'"), DataError);

    const auto empty = temp_file("empty.csv");
    write_file(empty, "a,b\n");
    CHECK_THROWS_AS((void)load_csv(empty.string(), "a"), DataError);

    const auto missing_target = temp_file("target.csv");
    write_file(missing_target, "a,b\n1,2\n");
    CHECK_THROWS_AS((void)load_csv(missing_target.string(), "Y"), DataError);

    CHECK_THROWS_AS((void)load_csv("/nonexistent/nowhere.csv", "Y"), DataError);
}

TEST_CASE("save and reload reproduces the dataset") {
    std::vector<Variable> vars;
    vars.push_back(Variable::discrete_from_values("label", {3, 5, 3, 5}));
    vars.push_back(Variable::continuous("x", {0.125, -1.75, 2.0, 1e-3}));
    vars.push_back(Variable::continuous("Y", {1.5, 2.5, 3.5, 4.5}));
    const Dataset data(std::move(vars), 2);

    const auto path = temp_file("roundtrip.csv");
    save_csv(data, path.string());
    const Dataset back = load_csv(path.string(), "Y");

    CHECK(back.n_samples == data.n_samples);
    CHECK(back.variables[0].kind == VarKind::Discrete);
    CHECK(back.variables[0].symbols == data.variables[0].symbols);
    CHECK(back.variables[0].levels == data.variables[0].levels);
    CHECK(back.variables[1].reals == data.variables[1].reals);
    CHECK(back.variables[2].reals == data.variables[2].reals);
}

TEST_CASE("dataset validation rejects inconsistent shapes") {
    std::vector<Variable> ragged;
    ragged.push_back(Variable::continuous("a", {1.0, 2.0}));
    ragged.push_back(Variable::continuous("b", {1.0}));
    CHECK_THROWS_AS(Dataset(std::move(ragged), 0), ConfigError);

    std::vector<Variable> dup;
    dup.push_back(Variable::continuous("a", {1.0}));
    dup.push_back(Variable::continuous("a", {2.0}));
    CHECK_THROWS_AS(Dataset(std::move(dup), 0), ConfigError);

    std::vector<Variable> bad_target;
    bad_target.push_back(Variable::continuous("a", {1.0}));
    CHECK_THROWS_AS(Dataset(std::move(bad_target), 3), ConfigError);

    std::vector<Variable> bad_code;
    bad_code.push_back(Variable::discrete_from_codes("c", {0, 5}, 2));
    CHECK_THROWS_AS(Dataset(std::move(bad_code), 0), ConfigError);
}

TEST_CASE("equal width binning splits the range and owns the maximum") {
    const std::vector<int> bins = discretize({0.0, 1.0, 2.0, 3.0}, 2, BinStrategy::EqualWidth);
    CHECK(bins == std::vector<int>{0, 0, 1, 1});

    const std::vector<int> top = discretize({0.0, 10.0}, 5, BinStrategy::EqualWidth);
    CHECK(top == std::vector<int>{0, 4});

    const std::vector<int> flat = discretize({2.0, 2.0, 2.0}, 3, BinStrategy::EqualWidth);
    CHECK(flat == std::vector<int>{0, 0, 0});
}

TEST_CASE("equal frequency binning balances counts and keeps ties together") {
    const std::vector<int> bins =
        discretize({10.0, 20.0, 30.0, 40.0, 50.0, 60.0}, 3, BinStrategy::EqualFrequency);
    CHECK(bins == std::vector<int>{0, 0, 1, 1, 2, 2});

    // All equal values inherit the bin of the first-ranked occurrence.
    const std::vector<int> tied =
        discretize({5.0, 5.0, 5.0, 5.0, 9.0, 9.0}, 3, BinStrategy::EqualFrequency);
    CHECK(tied == std::vector<int>{0, 0, 0, 0, 2, 2});
}

TEST_CASE("binning rejects degenerate configurations") {
    CHECK_THROWS_AS((void)discretize({}, 3), ConfigError);
    CHECK_THROWS_AS((void)discretize({1.0}, 0), ConfigError);
    CHECK_THROWS_AS((void)discretize({1.0, std::nan("")}, 2), DataError);
}

TEST_CASE("dataset binning replaces continuous columns only") {
    std::vector<Variable> vars;
    vars.push_back(Variable::continuous("x", {0.0, 0.5, 1.0, 1.5}));
    vars.push_back(Variable::discrete_from_values("d", {7, 8, 7, 8}));
    vars.push_back(Variable::continuous("Y", {1.0, 2.0, 3.0, 4.0}));
    const Dataset data(std::move(vars), 2);

    const Dataset binned = discretize_dataset(data, 2, BinStrategy::EqualWidth);
    CHECK(binned.variables[0].kind == VarKind::Discrete);
    CHECK(binned.variables[0].symbols == std::vector<int>{0, 0, 1, 1});
    CHECK(binned.variables[1].symbols == data.variables[1].symbols);
    CHECK(binned.variables[2].kind == VarKind::Discrete);
    CHECK(binned.target_index == 2);
}

TEST_CASE("permutation keeps the multiset and follows the seed") {
    const std::vector<int> values{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<int> once = permute_variable(values, 5);
    const std::vector<int> again = permute_variable(values, 5);
    CHECK(once == again);

    std::vector<int> sorted = once;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == values);
}

TEST_CASE("train test split partitions rows deterministically") {
    std::vector<Variable> vars;
    std::vector<double> x(10), y(10);
    for (int i = 0; i < 10; ++i) {
        x[i] = i;
        y[i] = 10 + i;
    }
    vars.push_back(Variable::continuous("x", x));
    vars.push_back(Variable::continuous("Y", y));
    const Dataset data(std::move(vars), 1);

    const auto [train, test] = train_test_split(data, 0.3, 77);
    CHECK(train.n_samples == 7);
    CHECK(test.n_samples == 3);
    CHECK(train.target_index == 1);

    std::set<double> rows;
    for (double v : train.variables[0].reals) rows.insert(v);
    for (double v : test.variables[0].reals) rows.insert(v);
    CHECK(rows.size() == 10);

    // Row pairing survives the shuffle.
    for (std::size_t i = 0; i < train.n_samples; ++i) {
        CHECK(train.variables[1].reals[i] == train.variables[0].reals[i] + 10.0);
    }

    const auto [train2, test2] = train_test_split(data, 0.3, 77);
    CHECK(train2.variables[0].reals == train.variables[0].reals);
    CHECK(test2.variables[0].reals == test.variables[0].reals);

    CHECK_THROWS_AS((void)train_test_split(data, 0.0, 1), ConfigError);
    CHECK_THROWS_AS((void)train_test_split(data, 1.0, 1), ConfigError);
}

TEST_CASE("the test part never comes out empty") {
    std::vector<Variable> vars;
    vars.push_back(Variable::continuous("x", {1.0, 2.0, 3.0}));
    vars.push_back(Variable::continuous("Y", {4.0, 5.0, 6.0}));
    const Dataset data(std::move(vars), 1);
    const auto [train, test] = train_test_split(data, 0.05, 3);
    CHECK(test.n_samples == 1);
    CHECK(train.n_samples == 2);
}
