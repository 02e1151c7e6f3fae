#include "infosel/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "infosel/errors.hpp"

namespace infosel {
namespace {

Rng cell(Seed seed, std::uint64_t column, std::uint64_t row) {
    return Rng(seed).stream(streams::kGenerator, column, row);
}

void require_samples(std::size_t n, std::size_t least, const char* who) {
    if (n < least) {
        throw ConfigError(std::string(who) + ": needs at least " + std::to_string(least) +
                          " samples");
    }
}

void require_scale(double value, const char* who, const char* what) {
    if (!(value >= 0.0)) {
        throw ConfigError(std::string(who) + ": " + what + " must be non-negative");
    }
}

std::vector<Variable> name_inputs(const std::vector<std::vector<double>>& columns,
                                  const char* prefix) {
    std::vector<Variable> vars;
    vars.reserve(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        vars.push_back(
            Variable::continuous(prefix + std::to_string(j + 1), columns[j]));
    }
    return vars;
}

}  // namespace

StatModelKind parse_stat_kind(const std::string& text) {
    if (text == "additive") return StatModelKind::Additive;
    if (text == "multiplicative") return StatModelKind::Multiplicative;
    throw ConfigError("unknown statistical model kind '" + text + "'");
}

StatModelDist parse_stat_dist(const std::string& text) {
    if (text == "uniform") return StatModelDist::Uniform;
    if (text == "binomial") return StatModelDist::Binomial;
    if (text == "poisson") return StatModelDist::Poisson;
    if (text == "exponential") return StatModelDist::Exponential;
    throw ConfigError("unknown input distribution '" + text + "'");
}

NoiseModelKind parse_noise_kind(const std::string& text) {
    if (text == "mackay") return NoiseModelKind::Mackay;
    if (text == "haufe") return NoiseModelKind::Haufe;
    throw ConfigError("unknown noise model kind '" + text + "'");
}

std::string to_string(StatModelKind kind) {
    return kind == StatModelKind::Additive ? "additive" : "multiplicative";
}

std::string to_string(StatModelDist dist) {
    switch (dist) {
        case StatModelDist::Uniform: return "uniform";
        case StatModelDist::Binomial: return "binomial";
        case StatModelDist::Poisson: return "poisson";
        default: return "exponential";
    }
}

std::string to_string(NoiseModelKind kind) {
    return kind == NoiseModelKind::Mackay ? "mackay" : "haufe";
}

Dataset gen_spheres(std::size_t n, double label_noise_sigma, Seed seed) {
    require_samples(n, 2, "gen_spheres");
    require_scale(label_noise_sigma, "gen_spheres", "label_noise_sigma");

    std::vector<std::vector<double>> x(3, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int cls = static_cast<int>(i % 2);
        const double radius = cls == 0 ? 1.0 : 2.0;
        Rng c0 = cell(seed, 0, i);
        Rng c1 = cell(seed, 1, i);
        Rng c2 = cell(seed, 2, i);
        double g0 = 0.0, g1 = 0.0, g2 = 0.0, norm = 0.0;
        do {
            g0 = c0.next_normal();
            g1 = c1.next_normal();
            g2 = c2.next_normal();
            norm = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2);
        } while (norm < 1e-12);
        x[0][i] = radius * g0 / norm;
        x[1][i] = radius * g1 / norm;
        x[2][i] = radius * g2 / norm;
        y[i] = cls + label_noise_sigma * cell(seed, 3, i).next_normal();
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), 3);
}

namespace {

// Table-fixed input laws for the statistical models.  `which` is 0 for X1
// and 1 for X2; only the Poisson rate differs between the two.
double stat_draw(StatModelDist dist, int which, Rng& rng) {
    switch (dist) {
        case StatModelDist::Uniform:
            return 1.0 + rng.next_unit();
        case StatModelDist::Binomial: {
            int k = 0;
            for (int trial = 0; trial < 20; ++trial) k += rng.next_unit() < 0.5 ? 1 : 0;
            return k;
        }
        case StatModelDist::Poisson: {
            const double lambda = which == 0 ? 4.0 : 10.0;
            const double floor = std::exp(-lambda);
            int k = 0;
            double prod = rng.next_unit();
            while (prod > floor) {
                ++k;
                prod *= rng.next_unit();
            }
            return k;
        }
        default:
            return -std::log(rng.next_unit_open()) / 1.5;
    }
}

}  // namespace

Dataset gen_statistical_model(StatModelKind kind, double weight_alpha, double sigma,
                              StatModelDist dist, std::size_t n, Seed seed) {
    require_samples(n, 1, "gen_statistical_model");
    require_scale(sigma, "gen_statistical_model", "sigma");
    if (!(weight_alpha >= 0.0 && weight_alpha <= 2.0)) {
        throw ConfigError("gen_statistical_model: weight_alpha must lie in [0, 2]");
    }

    std::vector<std::vector<double>> x(2, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng c0 = cell(seed, 0, i);
        Rng c1 = cell(seed, 1, i);
        double x1 = stat_draw(dist, 0, c0);
        double x2 = stat_draw(dist, 1, c1);
        double value = 0.0;
        if (kind == StatModelKind::Additive) {
            value = weight_alpha * x1 + (1.0 - weight_alpha) * x2;
        } else {
            // A zero base under a negative exponent has no finite power;
            // redraw it from the same cell so the row stays usable.
            while (weight_alpha > 1.0 && x2 == 0.0) x2 = stat_draw(dist, 1, c1);
            value = std::pow(x1, weight_alpha) * std::pow(x2, 1.0 - weight_alpha);
        }
        x[0][i] = x1;
        x[1][i] = x2;
        y[i] = value + sigma * cell(seed, 2, i).next_normal();
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), 2);
}

std::size_t default_nuisance(int model) { return model == 1 ? 5 : 6; }

Dataset gen_friedman(int model, std::size_t n, double sigma, std::size_t nuisance, Seed seed) {
    if (model < 1 || model > 3) throw ConfigError("gen_friedman: model must be 1, 2, or 3");
    require_samples(n, 1, "gen_friedman");
    require_scale(sigma, "gen_friedman", "sigma");

    const std::size_t k = model == 1 ? 5 : 4;
    std::vector<std::vector<double>> x(k, std::vector<double>(n));
    std::vector<std::vector<double>> z(nuisance, std::vector<double>(n));
    std::vector<double> y(n);
    constexpr double pi = std::numbers::pi;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double u = cell(seed, j, i).next_unit();
            if (model == 1) {
                x[j][i] = u;
            } else {
                switch (j) {
                    case 0: x[j][i] = 100.0 * u; break;
                    case 1: x[j][i] = (40.0 + 520.0 * u) * pi; break;
                    case 2: x[j][i] = u; break;
                    default: x[j][i] = 1.0 + 10.0 * u; break;
                }
            }
        }
        for (std::size_t j = 0; j < nuisance; ++j) {
            z[j][i] = cell(seed, k + j, i).next_unit();
        }
        double value = 0.0;
        if (model == 1) {
            value = 10.0 * std::sin(pi * x[0][i] * x[1][i]) +
                    20.0 * (x[2][i] - 0.5) * (x[2][i] - 0.5) + 10.0 * x[3][i] + 5.0 * x[4][i];
        } else {
            const double arm = x[1][i] * x[2][i] - 1.0 / (x[1][i] * x[3][i]);
            value = model == 2 ? std::sqrt(x[0][i] * x[0][i] + arm * arm)
                               : std::atan(arm / x[0][i]);
        }
        y[i] = value + sigma * cell(seed, k + nuisance, i).next_normal();
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    for (std::size_t j = 0; j < nuisance; ++j) {
        vars.push_back(Variable::continuous("Z" + std::to_string(j + 1), std::move(z[j])));
    }
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), k + nuisance);
}

Dataset gen_runge(std::size_t T, double a, double b, double c, double sigma, Seed seed) {
    if (T < 3) throw ConfigError("gen_runge: needs at least 3 time steps");
    require_scale(sigma, "gen_runge", "sigma");

    std::vector<std::vector<double>> z(3, std::vector<double>(T));
    std::vector<std::vector<double>> w(4, std::vector<double>(T));
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t j = 0; j < 3; ++j) z[j][t] = cell(seed, j, t).next_normal();
        for (std::size_t j = 0; j < 4; ++j) w[j][t] = cell(seed, 3 + j, t).next_normal();
    }
    std::vector<std::vector<double>> xs(2, std::vector<double>(T, 0.0));
    for (std::size_t t = 1; t < T; ++t) {
        xs[0][t] = a * (w[0][t - 1] + w[2][t - 1]) + cell(seed, 7, t).next_normal();
        xs[1][t] = a * (w[1][t - 1] + w[3][t - 1]) + cell(seed, 8, t).next_normal();
    }

    const std::size_t rows = T - 2;
    std::vector<std::vector<double>> out(9, std::vector<double>(rows));
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t tau = r + 2;  // time index of the target value
        for (std::size_t j = 0; j < 3; ++j) out[j][r] = z[j][tau - 2];
        for (std::size_t j = 0; j < 4; ++j) out[3 + j][r] = w[j][tau - 2];
        out[7][r] = xs[0][tau - 1];
        out[8][r] = xs[1][tau - 1];
        y[r] = c * (w[0][tau - 2] + w[1][tau - 2] + w[2][tau - 2] + w[3][tau - 2]) +
               b * z[0][tau - 2] * z[1][tau - 2] * z[2][tau - 2] +
               sigma * cell(seed, 9, tau).next_normal();
    }

    std::vector<Variable> vars;
    vars.reserve(10);
    for (std::size_t j = 0; j < 3; ++j) {
        vars.push_back(Variable::continuous("Z" + std::to_string(j + 1), std::move(out[j])));
    }
    for (std::size_t j = 0; j < 4; ++j) {
        vars.push_back(Variable::continuous("W" + std::to_string(j + 1), std::move(out[3 + j])));
    }
    vars.push_back(Variable::continuous("X1", std::move(out[7])));
    vars.push_back(Variable::continuous("X2", std::move(out[8])));
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), 9);
}

Dataset gen_noise_model(NoiseModelKind kind, double a, double sigma, std::size_t n, Seed seed) {
    require_samples(n, 1, "gen_noise_model");
    require_scale(sigma, "gen_noise_model", "sigma");
    if (!(a >= 0.0 && a <= 4.0)) {
        throw ConfigError("gen_noise_model: distortion weight must lie in [0, 4]");
    }

    std::vector<std::vector<double>> x(2, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = cell(seed, 0, i).next_normal();
        const double d = cell(seed, 1, i).next_normal();
        const double f = std::sin(s) + sigma * cell(seed, 2, i).next_normal();
        if (kind == NoiseModelKind::Mackay) {
            x[0][i] = s;
            y[i] = f + a * d;
        } else {
            x[0][i] = s + a * d;
            y[i] = f;
        }
        x[1][i] = d;
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), 2);
}

Dataset gen_gaussian_classes(int example, std::size_t n, Seed seed) {
    if (example < 1 || example > 5) {
        throw ConfigError("gen_gaussian_classes: example must lie in 1..5");
    }
    require_samples(n, 2, "gen_gaussian_classes");

    static constexpr double kMeans[5][2][2] = {
        {{-1.0, -1.0}, {1.0, 1.0}},   {{-1.0, -1.0}, {1.0, 1.0}}, {{0.0, 0.0}, {0.0, 0.0}},
        {{-0.5, 0.5}, {0.5, 0.5}},    {{-0.5, 0.0}, {0.5, 0.0}},
    };
    static constexpr double kCovs[5][3] = {
        // s11, s12, s22
        {1.0, 0.0, 1.0}, {1.0, 0.0, 2.0}, {1.0, 1.0, 1.0}, {0.1, 0.4, 2.0}, {0.1, -0.4, 2.0},
    };

    const double* cov = kCovs[example - 1];
    if (!(cov[0] > 0.0)) throw ConfigError("gen_gaussian_classes: covariance not positive");
    const double l11 = std::sqrt(cov[0]);
    const double l21 = cov[1] / l11;
    const double rest = cov[2] - l21 * l21;
    if (rest < -1e-12) {
        throw ConfigError("gen_gaussian_classes: covariance not positive semidefinite");
    }
    const double l22 = std::sqrt(std::max(0.0, rest));

    std::vector<std::vector<double>> x(2, std::vector<double>(n));
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int cls = static_cast<int>(i % 2);
        const double g1 = cell(seed, 0, i).next_normal();
        const double g2 = cell(seed, 1, i).next_normal();
        x[0][i] = kMeans[example - 1][cls][0] + l11 * g1;
        x[1][i] = kMeans[example - 1][cls][1] + l21 * g1 + l22 * g2;
        labels[i] = cls;
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    vars.push_back(Variable::discrete_from_codes("Y", std::move(labels), 2));
    return Dataset(std::move(vars), 2);
}

LinearRegressionProblem gen_linear_regression(std::size_t n_vars, std::size_t n_informative,
                                              std::size_t n, double noise, Seed seed) {
    if (n_vars == 0) throw ConfigError("gen_linear_regression: needs at least one variable");
    if (n_informative > n_vars) {
        throw ConfigError("gen_linear_regression: more informative variables than variables");
    }
    require_samples(n, 1, "gen_linear_regression");
    require_scale(noise, "gen_linear_regression", "noise");

    // Structural draws live past the per-(column, row) grid: key n_vars is
    // the observation noise column, n_vars + 1 holds subset and weights.
    std::vector<std::size_t> order(n_vars);
    for (std::size_t j = 0; j < n_vars; ++j) order[j] = j;
    Rng subset_rng = cell(seed, n_vars + 1, 0);
    shuffle_in_place(order, subset_rng);
    std::vector<std::size_t> informative(order.begin(),
                                         order.begin() + static_cast<std::ptrdiff_t>(n_informative));
    std::sort(informative.begin(), informative.end());

    Rng weight_rng = cell(seed, n_vars + 1, 1);
    std::vector<double> weights(n_informative);
    for (double& wv : weights) wv = 1.0 + 99.0 * weight_rng.next_unit();

    std::vector<std::vector<double>> x(n_vars, std::vector<double>(n));
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n_vars; ++j) x[j][i] = cell(seed, j, i).next_normal();
        double value = 0.0;
        for (std::size_t j = 0; j < n_informative; ++j) {
            value += weights[j] * x[informative[j]][i];
        }
        y[i] = value + noise * cell(seed, n_vars, i).next_normal();
    }

    std::vector<Variable> vars = name_inputs(x, "X");
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return {Dataset(std::move(vars), n_vars), std::move(informative)};
}

Dataset gen_toy_system(std::size_t n, Seed seed) {
    require_samples(n, 1, "gen_toy_system");

    std::vector<double> x1(n), x2(n), eta(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi1 = cell(seed, 0, i).next_normal();
        const double xi2 = cell(seed, 1, i).next_normal();
        const double e = cell(seed, 2, i).next_normal();
        const double ey = cell(seed, 3, i).next_normal();
        x1[i] = xi1 + 0.1 * e;
        x2[i] = 0.8 * xi1 + 0.2 * xi2 + 0.01 * e;
        eta[i] = e;
        y[i] = std::sin(xi1) + 0.1 * ey;
    }

    std::vector<Variable> vars;
    vars.push_back(Variable::continuous("X1", std::move(x1)));
    vars.push_back(Variable::continuous("X2", std::move(x2)));
    vars.push_back(Variable::continuous("eta", std::move(eta)));
    vars.push_back(Variable::continuous("Y", std::move(y)));
    return Dataset(std::move(vars), 3);
}

}  // namespace infosel
