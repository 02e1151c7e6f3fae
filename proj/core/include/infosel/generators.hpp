#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infosel/dataset.hpp"
#include "infosel/rng.hpp"

namespace infosel {

enum class StatModelKind { Additive, Multiplicative };
enum class StatModelDist { Uniform, Binomial, Poisson, Exponential };
enum class NoiseModelKind { Mackay, Haufe };

StatModelKind parse_stat_kind(const std::string& text);
StatModelDist parse_stat_dist(const std::string& text);
NoiseModelKind parse_noise_kind(const std::string& text);
std::string to_string(StatModelKind kind);
std::string to_string(StatModelDist dist);
std::string to_string(NoiseModelKind kind);

// Every generator is a pure function of its arguments; equal seeds give
// byte-identical datasets.  Each variable draws from its own per-column,
// per-row substream (derivation chains in docs/prng.md), so adding a column
// or reordering the assembly never shifts another column's values.

// Two nested spheres (radius 1 and 2), classes alternating by row, points
// uniform on each surface; the label gets additive Gaussian noise so that
// continuous estimators apply.  Columns X1..X3, target Y.
Dataset gen_spheres(std::size_t n, double label_noise_sigma, Seed seed);

// Y = a X1 + (1-a) X2 + sigma N(0,1), or Y = X1^a X2^(1-a) + sigma N(0,1),
// with X1, X2 i.i.d. from `dist`.  The weight is named `weight_alpha` to
// keep it apart from the significance level alpha.  Distribution parameters
// are fixed: uniform on [1,2]; binomial n=20, p=0.5; poisson lambda 4 for X1
// and 10 for X2; exponential lambda 1.5.
Dataset gen_statistical_model(StatModelKind kind, double weight_alpha, double sigma,
                              StatModelDist dist, std::size_t n, Seed seed);

// Friedman regression problems.
//   model 1: Y = 10 sin(pi X1 X2) + 20 (X3-0.5)^2 + 10 X4 + 5 X5 + sigma N(0,1),
//            X1..X5 uniform on [0,1].
//   model 2: Y = sqrt(X1^2 + (X2 X3 - 1/(X2 X4))^2) + sigma N(0,1).
//   model 3: Y = atan((X2 X3 - 1/(X2 X4)) / X1) + sigma N(0,1).
// Models 2-3 draw X1 in [0,100], X2 in [40pi,560pi], X3 in [0,1], X4 in
// [1,11].  `nuisance` additional uniform [0,1] columns Z1.. are appended,
// independent of Y; the conventional counts are 5 for model 1 and 6 for
// models 2-3 (see default_nuisance).
Dataset gen_friedman(int model, std::size_t n, double sigma, std::size_t nuisance, Seed seed);
std::size_t default_nuisance(int model);

// Coupled time series
//   Y_{t+1}  = c (W1 + W2 + W3 + W4)_{t-1} + b (Z1 Z2 Z3)_{t-1} + sigma N(0,1)
//   X1_t     = a (W1 + W3)_{t-1} + N(0,1)
//   X2_t     = a (W2 + W4)_{t-1} + N(0,1)
// with W, Z i.i.d. standard normal.  Each emitted row pairs Y_{t+1} with
// Z and W at t-1 and X at t; the two leading time steps have no complete
// regressor set and are discarded, so T raw steps give T-2 rows.  Columns
// Z1..Z3, W1..W4, X1..X2, target Y.
Dataset gen_runge(std::size_t T, double a, double b, double c, double sigma, Seed seed);

// Measurement-noise toys on a common signal S and distractor D, both
// standard normal, with f(S) = sin(S) + sigma N(0,1):
//   mackay: X1 = S,       X2 = D,  Y = f(S) + a D
//   haufe:  X1 = S + a D, X2 = D,  Y = f(S)
Dataset gen_noise_model(NoiseModelKind kind, double a, double sigma, std::size_t n, Seed seed);

// Two-class mixtures of 2-D Gaussians with shared covariance; the target is
// the class label, classes alternate by row.  The five parameter sets:
//   1: mu (-1,-1) / (1,1),       cov [[1,0],[0,1]]
//   2: mu (-1,-1) / (1,1),       cov [[1,0],[0,2]]
//   3: mu (0,0) / (0,0),         cov [[1,1],[1,1]]   (X2 = X1 exactly)
//   4: mu (-0.5,0.5) / (0.5,0.5), cov [[0.1,0.4],[0.4,2]]
//   5: mu (-0.5,0) / (0.5,0),    cov [[0.1,-0.4],[-0.4,2]]
Dataset gen_gaussian_classes(int example, std::size_t n, Seed seed);

struct LinearRegressionProblem {
    Dataset data;
    std::vector<std::size_t> informative;  // sorted variable indices driving Y
};

// Y = sum of w_i X_i over a seeded random subset of `n_informative` columns,
// weights uniform on [1,100], inputs i.i.d. standard normal, plus
// N(0, noise^2) observation noise.
LinearRegressionProblem gen_linear_regression(std::size_t n_vars, std::size_t n_informative,
                                              std::size_t n, double noise, Seed seed);

// The walk-through system: Y = sin(xi1) + 0.1 eta_Y with observed inputs
// X1 = xi1 + 0.1 eta, X2 = 0.8 xi1 + 0.2 xi2 + 0.01 eta, and the noise
// source eta itself as a third candidate input.  Columns X1, X2, eta,
// target Y.
Dataset gen_toy_system(std::size_t n, Seed seed);

}  // namespace infosel
