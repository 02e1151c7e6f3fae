#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "infosel/errors.hpp"
#include "infosel/estimators.hpp"
#include "infosel/rng.hpp"

using namespace infosel;

namespace {

// Correlated standard normal pair with the requested coefficient.
void gaussian_pair(double rho, std::size_t n, Seed seed, std::vector<double>& x,
                   std::vector<double>& y) {
    Rng rng(seed);
    x.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g1 = rng.next_normal();
        const double g2 = rng.next_normal();
        x[i] = g1;
        y[i] = rho * g1 + std::sqrt(1.0 - rho * rho) * g2;
    }
}

}  // namespace

TEST_CASE("digamma matches reference values and its recurrence") {
    CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
    CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-12));
    for (double x : {0.3, 1.7, 4.2, 25.0}) {
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-10));
    }
}

TEST_CASE("plug-in entropy counts bits of a fair alphabet") {
    CHECK(entropy_plugin({0, 1, 0, 1}) == doctest::Approx(1.0));
    CHECK(entropy_plugin({0, 1, 2, 3}) == doctest::Approx(2.0));
    CHECK(entropy_plugin({2, 2, 2, 2}) == doctest::Approx(0.0));
    CHECK(entropy_plugin({0, 0, 0, 1}) ==
          doctest::Approx(-0.75 * std::log2(0.75) - 0.25 * std::log2(0.25)));
}

TEST_CASE("plug-in mutual information is symmetric and sign-safe") {
    const std::vector<int> x{0, 1, 0, 1, 0, 1, 0, 1};
    const std::vector<int> copy = x;
    const std::vector<int> indep{0, 0, 1, 1, 0, 0, 1, 1};
    CHECK(mi_plugin(x, copy) == doctest::Approx(1.0));
    CHECK(mi_plugin(x, indep) == doctest::Approx(0.0));
    CHECK(mi_plugin(x, indep) == mi_plugin(indep, x));
    CHECK(mi_plugin(x, indep) >= 0.0);
}

TEST_CASE("conditional plug-in information exposes the parity structure") {
    // y = x1 xor x2 over the full truth table: pairwise blind, jointly exact.
    const std::vector<int> x1{0, 0, 1, 1};
    const std::vector<int> x2{0, 1, 0, 1};
    const std::vector<int> y{0, 1, 1, 0};
    CHECK(mi_plugin(x1, y) == doctest::Approx(0.0));
    CHECK(cmi_plugin(x1, y, {x2}) == doctest::Approx(1.0));
    CHECK(cmi_plugin(x1, y, {}) == doctest::Approx(mi_plugin(x1, y)));
}

TEST_CASE("joint counts index the dense table row-major") {
    const std::vector<int> a{0, 1, 1, 0};
    const std::vector<int> b{0, 0, 1, 0};
    auto counts = JointCounts::from_columns({&a, &b}, {2, 2});
    CHECK(counts.total == 4);
    CHECK(counts.at({0, 0}) == 2);
    CHECK(counts.at({1, 0}) == 1);
    CHECK(counts.at({1, 1}) == 1);
    CHECK(counts.at({0, 1}) == 0);
}

TEST_CASE("product codes enumerate observed combinations densely") {
    const std::vector<int> a{0, 0, 1, 1, 0};
    const std::vector<int> b{0, 1, 0, 1, 0};
    const auto [codes, alphabet] = detail::product_codes({&a, &b});
    CHECK(alphabet == 4);
    CHECK(codes.size() == 5);
    CHECK(codes[0] == codes[4]);
    CHECK(codes[0] != codes[1]);
    CHECK(codes[1] != codes[2]);
    CHECK(codes[2] != codes[3]);
    for (int c : codes) {
        CHECK(c >= 0);
        CHECK(static_cast<std::size_t>(c) < alphabet);
    }
}

TEST_CASE("compensated summation ignores construction order") {
    std::vector<double> forward;
    for (int i = 1; i <= 1000; ++i) forward.push_back(1.0 / i);
    std::vector<double> backward(forward.rbegin(), forward.rend());
    const double a = detail::neumaier_sorted_sum(forward);
    const double b = detail::neumaier_sorted_sum(backward);
    CHECK(a == b);
}

TEST_CASE("neighbor estimator is deterministic under one noise seed") {
    std::vector<double> x, y;
    gaussian_pair(0.6, 400, 11, x, y);
    KnnConfig cfg;
    cfg.k = 4;
    cfg.noise_seed = 3;
    const double first = mi_knn(x, y, cfg);
    const double second = mi_knn(x, y, cfg);
    CHECK(first == second);
}

TEST_CASE("neighbor estimator tracks the Gaussian curve") {
    KnnConfig cfg;
    cfg.k = 4;
    cfg.noise_seed = 5;

    std::vector<double> x, y;
    gaussian_pair(0.0, 1000, 21, x, y);
    CHECK(std::abs(mi_knn(x, y, cfg)) < 0.05);

    gaussian_pair(0.9, 1500, 22, x, y);
    const double expected = -0.5 * std::log(1.0 - 0.81);
    CHECK(mi_knn(x, y, cfg) == doctest::Approx(expected).epsilon(0.12));
}

TEST_CASE("conditional neighbor estimator reduces to the marginal form") {
    std::vector<double> x, y;
    gaussian_pair(0.6, 300, 31, x, y);
    KnnConfig cfg;
    cfg.k = 4;
    cfg.noise_seed = 7;
    const Columns cx{x}, cy{y};
    CHECK(cmi_knn(cx, cy, {}, cfg) == mi_knn(cx, cy, cfg));
    CHECK(mi_knn(x, y, cfg) == mi_knn(cx, cy, cfg));
}

TEST_CASE("conditioning strips away an explained relationship") {
    // y depends on x only through z, so I(x;y|z) should collapse while
    // I(x;y) stays visibly positive.
    const std::size_t n = 1200;
    Rng rng(41);
    std::vector<double> x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.next_normal();
        z[i] = x[i] + 0.2 * rng.next_normal();
        y[i] = z[i] + 0.2 * rng.next_normal();
    }
    KnnConfig cfg;
    cfg.k = 4;
    cfg.noise_seed = 9;
    const double marginal = mi_knn(x, y, cfg);
    const double conditional = cmi_knn(x, y, z, cfg);
    CHECK(marginal > 0.5);
    CHECK(conditional < 0.2 * marginal);
}

TEST_CASE("sub-noise leaves values essentially untouched") {
    const std::vector<double> column{0.0, 1.0, 2.0, 3.0};
    const auto jittered = detail::add_subnoise(column, 13, 0);
    REQUIRE(jittered.size() == column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        CHECK(std::abs(jittered[i] - column[i]) <= 1e-9);
    }
    const auto again = detail::add_subnoise(column, 13, 0);
    CHECK(jittered == again);
    const auto other_key = detail::add_subnoise(column, 13, 1);
    CHECK(jittered != other_key);
}

TEST_CASE("estimators reject mismatched column lengths") {
    CHECK_THROWS_AS((void)mi_plugin({0, 1}, {0}), ConfigError);
    KnnConfig cfg;
    CHECK_THROWS_AS((void)mi_knn(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0}, cfg),
                    ConfigError);
}
