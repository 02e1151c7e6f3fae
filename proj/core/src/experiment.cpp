#include "infosel/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "infosel/errors.hpp"
#include "infosel/estimators.hpp"
#include "infosel/evaluation.hpp"
#include "infosel/generators.hpp"
#include "infosel/parallel.hpp"
#include "infosel/pid.hpp"

namespace infosel {
namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return buffer;
}

struct MeanSem {
    double mean = 0.0;
    double sem = 0.0;
};

MeanSem mean_sem(const std::vector<double>& xs) {
    MeanSem out;
    if (xs.empty()) return out;
    for (double x : xs) out.mean += x;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sem = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
              std::sqrt(static_cast<double>(xs.size()));
    return out;
}

Json mean_sem_json(const std::vector<double>& xs) {
    const MeanSem ms = mean_sem(xs);
    return Json{{"mean", ms.mean}, {"sem", ms.sem}, {"n", xs.size()}};
}

Json confusion_json(const ConfusionCounts& counts) {
    auto cell = [](const std::optional<double>& v) {
        return v ? Json(*v) : Json(nullptr);
    };
    return Json{{"tp", cell(counts.tp)},
                {"tn", cell(counts.tn)},
                {"fp", cell(counts.fp)},
                {"fn", cell(counts.fn)}};
}

// ---------------------------------------------------------------------------
// Experiment catalogue and configuration plumbing.

const std::vector<std::string> kIds = {
    "toy-3.3.3",    "spheres",    "statmodels", "friedman1",  "friedman2",
    "friedman3",    "runge",      "noise-mackay", "noise-haufe", "gaussian-1",
    "gaussian-2",   "gaussian-3", "gaussian-4", "gaussian-5", "appendix-c",
};

bool starts_with(const std::string& text, const std::string& prefix) {
    return text.rfind(prefix, 0) == 0;
}

int gaussian_example(const std::string& id) {
    return id.back() - '0';
}

int friedman_model(const std::string& id) {
    return id.back() - '0';
}

}  // namespace

const std::vector<std::string>& experiment_ids() { return kIds; }

BinStrategy parse_bin_strategy(const std::string& text) {
    if (text == "equal-width") return BinStrategy::EqualWidth;
    if (text == "equal-frequency") return BinStrategy::EqualFrequency;
    throw ConfigError("unknown bin strategy '" + text + "'");
}

std::string to_string(BinStrategy strategy) {
    return strategy == BinStrategy::EqualWidth ? "equal-width" : "equal-frequency";
}

ExperimentConfig default_experiment_config(const std::string& experiment) {
    if (std::find(kIds.begin(), kIds.end(), experiment) == kIds.end()) {
        throw ConfigError("unknown experiment '" + experiment + "'");
    }
    ExperimentConfig cfg;
    cfg.experiment = experiment;

    if (experiment == "spheres") {
        cfg.label_noise = 0.1;
    } else if (experiment == "statmodels") {
        cfg.sigma = 0.1;
        cfg.stat_kind = "both";
        cfg.stat_dist = "uniform";
        cfg.sweep = {0.0, 0.25, 0.5, 0.75, 1.0};
    } else if (starts_with(experiment, "friedman")) {
        cfg.sigma = 1.0;
        cfg.standardize = friedman_model(experiment) > 1;
    } else if (experiment == "runge") {
        cfg.sigma = 0.5;
        cfg.a = 0.4;
        cfg.b = 2.0;
        cfg.c = 0.4;
    } else if (starts_with(experiment, "noise-")) {
        cfg.sigma = 0.1;
        cfg.sweep = {0.0, 0.5, 1.0, 2.0, 4.0};
    } else if (experiment == "appendix-c") {
        cfg.sigma = 0.0;
        cfg.n_vars = 50;
        cfg.n_informative = 10;
        cfg.sweep = {100.0, 1000.0, 10000.0};
        cfg.n_runs = 10;
        cfg.selection.estimator = EstimatorKind::Plugin;
    }
    return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("experiment")) {
        throw ConfigError("config must be a JSON object with an 'experiment' key");
    }

    ExperimentConfig cfg;
    try {
        cfg = default_experiment_config(doc.at("experiment").get<std::string>());
        static const std::set<std::string> known = {
            "experiment", "n_runs",     "n_samples",     "base_seed",    "jobs",
            "selection",  "bins",       "bin_strategy",  "sweep",        "sigma",
            "label_noise", "a",         "b",             "c",            "stat_kind",
            "stat_dist",  "n_vars",     "n_informative", "test_fraction", "knn_k",
            "standardize", "out_dir",
        };
        for (const auto& item : doc.items()) {
            if (!known.count(item.key())) {
                throw ConfigError("unknown config key '" + item.key() + "'");
            }
        }
        if (doc.contains("n_runs")) cfg.n_runs = doc.at("n_runs").get<std::size_t>();
        if (doc.contains("n_samples")) cfg.n_samples = doc.at("n_samples").get<std::size_t>();
        if (doc.contains("base_seed")) cfg.base_seed = doc.at("base_seed").get<Seed>();
        if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<int>();
        if (doc.contains("bins")) cfg.n_bins = doc.at("bins").get<std::size_t>();
        if (doc.contains("bin_strategy")) {
            cfg.bin_strategy = parse_bin_strategy(doc.at("bin_strategy").get<std::string>());
        }
        if (doc.contains("sweep")) cfg.sweep = doc.at("sweep").get<std::vector<double>>();
        if (doc.contains("sigma")) cfg.sigma = doc.at("sigma").get<double>();
        if (doc.contains("label_noise")) cfg.label_noise = doc.at("label_noise").get<double>();
        if (doc.contains("a")) cfg.a = doc.at("a").get<double>();
        if (doc.contains("b")) cfg.b = doc.at("b").get<double>();
        if (doc.contains("c")) cfg.c = doc.at("c").get<double>();
        if (doc.contains("stat_kind")) cfg.stat_kind = doc.at("stat_kind").get<std::string>();
        if (doc.contains("stat_dist")) cfg.stat_dist = doc.at("stat_dist").get<std::string>();
        if (doc.contains("n_vars")) cfg.n_vars = doc.at("n_vars").get<std::size_t>();
        if (doc.contains("n_informative")) {
            cfg.n_informative = doc.at("n_informative").get<std::size_t>();
        }
        if (doc.contains("test_fraction")) {
            cfg.test_fraction = doc.at("test_fraction").get<double>();
        }
        if (doc.contains("knn_k")) cfg.knn_k = doc.at("knn_k").get<std::size_t>();
        if (doc.contains("standardize")) cfg.standardize = doc.at("standardize").get<bool>();
        if (doc.contains("out_dir")) cfg.out_dir = doc.at("out_dir").get<std::string>();

        if (doc.contains("selection")) {
            const Json& sel = doc.at("selection");
            static const std::set<std::string> sel_known = {
                "criterion", "alpha", "n_perm", "estimator", "k", "max_features",
            };
            for (const auto& item : sel.items()) {
                if (!sel_known.count(item.key())) {
                    throw ConfigError("unknown selection key '" + item.key() + "'");
                }
            }
            if (sel.contains("criterion")) {
                cfg.selection.criterion = parse_criterion(sel.at("criterion").get<std::string>());
            }
            if (sel.contains("alpha")) cfg.selection.alpha = sel.at("alpha").get<double>();
            if (sel.contains("n_perm")) cfg.selection.n_perm = sel.at("n_perm").get<int>();
            if (sel.contains("estimator")) {
                cfg.selection.estimator = parse_estimator(sel.at("estimator").get<std::string>());
            }
            if (sel.contains("k")) cfg.selection.knn.k = sel.at("k").get<int>();
            if (sel.contains("max_features")) {
                cfg.selection.max_features = sel.at("max_features").get<std::size_t>();
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed config value: ") + e.what());
    }
    return cfg;
}

std::string experiment_config_json(const ExperimentConfig& cfg) {
    Json doc;
    doc["experiment"] = cfg.experiment;
    doc["n_runs"] = cfg.n_runs;
    doc["n_samples"] = cfg.n_samples;
    doc["base_seed"] = cfg.base_seed;
    doc["jobs"] = cfg.jobs;
    doc["selection"] = Json{{"criterion", to_string(cfg.selection.criterion)},
                            {"alpha", cfg.selection.alpha},
                            {"n_perm", cfg.selection.n_perm},
                            {"estimator", to_string(cfg.selection.estimator)},
                            {"k", cfg.selection.knn.k}};
    if (cfg.selection.max_features) {
        doc["selection"]["max_features"] = *cfg.selection.max_features;
    }
    doc["bins"] = cfg.n_bins;
    doc["bin_strategy"] = to_string(cfg.bin_strategy);
    if (!cfg.sweep.empty()) doc["sweep"] = cfg.sweep;
    if (cfg.sigma) doc["sigma"] = *cfg.sigma;
    if (cfg.label_noise) doc["label_noise"] = *cfg.label_noise;
    if (cfg.a) doc["a"] = *cfg.a;
    if (cfg.b) doc["b"] = *cfg.b;
    if (cfg.c) doc["c"] = *cfg.c;
    if (cfg.stat_kind) doc["stat_kind"] = *cfg.stat_kind;
    if (cfg.stat_dist) doc["stat_dist"] = *cfg.stat_dist;
    if (cfg.n_vars) doc["n_vars"] = *cfg.n_vars;
    if (cfg.n_informative) doc["n_informative"] = *cfg.n_informative;
    doc["test_fraction"] = cfg.test_fraction;
    doc["knn_k"] = cfg.knn_k;
    if (cfg.standardize) doc["standardize"] = *cfg.standardize;
    doc["out_dir"] = cfg.out_dir;
    return doc.dump(2);
}

namespace {

// ---------------------------------------------------------------------------
// Shared per-run helpers.

SelectionConfig run_selection(const ExperimentConfig& cfg, Seed run_seed, Criterion criterion) {
    SelectionConfig sel = cfg.selection;
    sel.criterion = criterion;
    sel.seed = run_seed;
    sel.jobs = 1;  // the batch is already parallel over runs
    return sel;
}

Dataset selection_view(const Dataset& data, const ExperimentConfig& cfg) {
    if (cfg.selection.estimator == EstimatorKind::Plugin) {
        return discretize_dataset(data, cfg.n_bins, cfg.bin_strategy);
    }
    return data;
}

Json names_of(const Dataset& data, const std::vector<std::size_t>& indices) {
    Json names = Json::array();
    for (std::size_t idx : indices) names.push_back(data.variables[idx].name);
    return names;
}

Json selection_record(const Dataset& data, const SelectionResult& result) {
    Json steps = Json::array();
    for (const SelectionStep& step : result.steps) {
        steps.push_back(Json{{"winner", data.variables[step.winner].name},
                             {"observed", step.observed},
                             {"p_value", step.p_value},
                             {"significant", step.significant}});
    }
    return Json{{"selected", names_of(data, result.selected)},
                {"selected_indices", result.selected},
                {"pruned", names_of(data, result.pruned)},
                {"termination", to_string(result.termination)},
                {"forward_steps", steps}};
}

// Discrete codes for a decomposition input: integer-valued columns keep
// their natural alphabet, anything else is binned.
std::vector<int> pid_codes(const std::vector<double>& values, std::size_t n_bins,
                           BinStrategy strategy) {
    std::set<double> distinct;
    bool integral = true;
    for (double v : values) {
        if (std::fabs(v - std::round(v)) > 1e-9) {
            integral = false;
            break;
        }
        distinct.insert(v);
        if (distinct.size() > 64) {
            integral = false;
            break;
        }
    }
    if (integral) {
        std::vector<int> codes(values.size());
        std::map<double, int> id;
        for (double v : distinct) id.emplace(v, static_cast<int>(id.size()));
        for (std::size_t i = 0; i < values.size(); ++i) codes[i] = id[values[i]];
        return codes;
    }
    return discretize(values, n_bins, strategy);
}

// Decomposition target for empirical tables.  Sparse draws can stall the
// solver with a certified bracket a few thousandths of a bit wide, and a
// hundredth of a bit is still far below the run-to-run spread the
// experiments aggregate over.
constexpr double kPidTol = 1e-2;

// All five information terms of a triple plus its decomposition, in bits.
Json triple_record(const TripleDistribution& triple) {
    const TripleInformation info = triple_information(triple);
    const PidAtoms atoms = pid_decompose(triple, kPidTol);
    return Json{{"mi_x1", info.mi_x1},
                {"mi_x2", info.mi_x2},
                {"mi_joint", info.mi_joint},
                {"cmi_x1_x2", info.cmi_x1_x2},
                {"cmi_x2_x1", info.cmi_x2_x1},
                {"unq_x1", atoms.unq_x1},
                {"unq_x2", atoms.unq_x2},
                {"shd", atoms.shd},
                {"syn", atoms.syn}};
}

// Permutation surrogate test of I(X;Y|Z) under the nearest-neighbor
// estimator; the tested (single) X column is shuffled n_perm times under
// streams (surrogate, test_key, permutation).
struct PairTest {
    double observed = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

PairTest knn_surrogate_test(const std::vector<double>& x, const Columns& y, const Columns& z,
                            const KnnConfig& knn, int n_perm, double alpha, Seed seed,
                            std::uint64_t test_key) {
    const Columns xc = {x};
    const double observed = z.empty() ? mi_knn(xc, y, knn) : cmi_knn(xc, y, z, knn);
    int exceed = 0;
    for (int p = 0; p < n_perm; ++p) {
        Columns xp = {x};
        Rng rng = Rng(seed).stream(streams::kSurrogate, test_key, static_cast<std::uint64_t>(p));
        shuffle_in_place(xp[0], rng);
        const double surrogate = z.empty() ? mi_knn(xp, y, knn) : cmi_knn(xp, y, z, knn);
        if (surrogate >= observed) ++exceed;
    }
    PairTest out;
    out.observed = observed;
    out.p_value = (1.0 + exceed) / (1.0 + n_perm);
    out.significant = out.p_value <= alpha;
    return out;
}

std::optional<double> selected_subset_mae(const Dataset& data,
                                          const std::vector<std::size_t>& selected,
                                          const ExperimentConfig& cfg, Seed run_seed) {
    if (selected.empty()) return std::nullopt;
    auto [train, test] = train_test_split(data, cfg.test_fraction, run_seed);
    if (cfg.standardize.value_or(false)) {
        auto scaled = standardize_split(train, test);
        train = std::move(scaled.first);
        test = std::move(scaled.second);
    }
    std::vector<std::size_t> subset = selected;
    std::sort(subset.begin(), subset.end());
    const std::vector<double> pred = knn_predict(train, test, subset, cfg.knn_k);
    return mae(pred, test.target().numeric_column());
}

// Task runner: executes fn over [0, count) with per-task error capture, so a
// failed run reports its index and stage while the batch keeps going.
struct TaskErrors {
    std::vector<std::optional<Json>> slots;

    explicit TaskErrors(std::size_t count) : slots(count) {}

    Json drain() const {
        Json list = Json::array();
        for (const auto& slot : slots) {
            if (slot) list.push_back(*slot);
        }
        return list;
    }
};

void run_tasks(std::size_t count, int jobs, TaskErrors& errors,
               const std::function<void(std::size_t, std::string&)>& fn) {
    parallel_for(0, count, jobs, [&](std::size_t i, int) {
        std::string stage = "setup";
        try {
            fn(i, stage);
        } catch (const std::exception& e) {
            errors.slots[i] = Json{{"task", i}, {"stage", stage}, {"message", e.what()}};
        }
    });
}

void attach_units(Json& report, const ExperimentConfig& cfg, bool has_pid) {
    const bool nats = cfg.selection.estimator == EstimatorKind::Ksg;
    report["estimator"] = to_string(cfg.selection.estimator);
    report["units"] = Json{{"mi", nats ? "nats" : "bits"}};
    if (has_pid) report["units"]["pid"] = "bits";
}

// ---------------------------------------------------------------------------
// Experiment bodies.  Each fills report["runs"] and report["aggregates"].

void exp_toy(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, false);
    std::vector<Json> runs(cfg.n_runs);
    TaskErrors errors(cfg.n_runs);

    run_tasks(cfg.n_runs, cfg.jobs, errors, [&](std::size_t r, std::string& stage) {
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data = gen_toy_system(cfg.n_samples, seed);
        const Dataset view = selection_view(data, cfg);
        stage = "select";
        const SelectionResult result =
            select_features(view, run_selection(cfg, seed, cfg.selection.criterion));
        runs[r] = Json{{"run", r}, {"seed", seed}, {"selection", selection_record(data, result)}};
    });

    std::map<std::string, std::size_t> set_counts;
    std::vector<double> sizes;
    for (const Json& run : runs) {
        if (run.is_null()) continue;
        std::vector<std::string> names =
            run.at("selection").at("selected").get<std::vector<std::string>>();
        std::sort(names.begin(), names.end());
        std::string key;
        for (const std::string& n : names) key += (key.empty() ? "" : "+") + n;
        if (key.empty()) key = "(empty)";
        ++set_counts[key];
        sizes.push_back(static_cast<double>(names.size()));
    }
    std::string modal = "(none)";
    std::size_t best = 0;
    for (const auto& [key, count] : set_counts) {
        if (count > best) {
            best = count;
            modal = key;
        }
    }
    Json counts = Json::object();
    for (const auto& [key, count] : set_counts) counts[key] = count;

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] =
        Json{{"set_counts", counts},
             {"modal_set", modal},
             {"modal_fraction", sizes.empty() ? 0.0
                                              : static_cast<double>(best) /
                                                    static_cast<double>(sizes.size())},
             {"n_selected", mean_sem_json(sizes)}};
}

void exp_friedman(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, false);
    const int model = friedman_model(cfg.experiment);
    const std::size_t k_true = model == 1 ? 5 : 4;
    const std::size_t nuisance = default_nuisance(model);
    std::vector<std::size_t> truth(k_true);
    for (std::size_t i = 0; i < k_true; ++i) truth[i] = i;

    std::vector<Json> runs(cfg.n_runs);
    std::vector<std::optional<SelectionResult>> cmi_results(cfg.n_runs), mi_results(cfg.n_runs);
    std::vector<std::optional<double>> cmi_mae(cfg.n_runs), mi_mae(cfg.n_runs);
    TaskErrors errors(cfg.n_runs);

    run_tasks(cfg.n_runs, cfg.jobs, errors, [&](std::size_t r, std::string& stage) {
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data =
            gen_friedman(model, cfg.n_samples, cfg.sigma.value_or(1.0), nuisance, seed);
        const Dataset view = selection_view(data, cfg);
        stage = "select-cmi";
        const SelectionResult cmi = select_features(view, run_selection(cfg, seed, Criterion::Cmi));
        stage = "select-mi";
        const SelectionResult mi = select_features(view, run_selection(cfg, seed, Criterion::Mi));
        stage = "evaluate";
        cmi_mae[r] = selected_subset_mae(data, cmi.selected, cfg, seed);
        mi_mae[r] = selected_subset_mae(data, mi.selected, cfg, seed);
        runs[r] = Json{{"run", r},
                       {"seed", seed},
                       {"cmi", selection_record(data, cmi)},
                       {"mi", selection_record(data, mi)},
                       {"cmi_mae", cmi_mae[r] ? Json(*cmi_mae[r]) : Json(nullptr)},
                       {"mi_mae", mi_mae[r] ? Json(*mi_mae[r]) : Json(nullptr)}};
        cmi_results[r] = cmi;
        mi_results[r] = mi;
    });

    auto aggregate = [&](const std::vector<std::optional<SelectionResult>>& results,
                         const std::vector<std::optional<double>>& maes) {
        std::vector<SelectionResult> ok;
        std::vector<double> errs;
        for (std::size_t r = 0; r < results.size(); ++r) {
            if (results[r]) ok.push_back(*results[r]);
            if (maes[r]) errs.push_back(*maes[r]);
        }
        Json agg;
        agg["confusion"] = ok.empty() ? Json(nullptr)
                                      : confusion_json(confusion_counts(
                                            ok, truth, k_true + nuisance));
        agg["mae"] = mean_sem_json(errs);
        return agg;
    };

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"truth", names_of(gen_friedman(model, 1, 0.0, nuisance, 0), truth)},
                                {"cmi", aggregate(cmi_results, cmi_mae)},
                                {"mi", aggregate(mi_results, mi_mae)}};
}

void exp_runge(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, false);
    const std::size_t n_inputs = 9;
    std::vector<std::size_t> truth(7);
    for (std::size_t i = 0; i < 7; ++i) truth[i] = i;  // the Z and W series

    std::vector<Json> runs(cfg.n_runs);
    std::vector<std::optional<SelectionResult>> cmi_results(cfg.n_runs), mi_results(cfg.n_runs);
    TaskErrors errors(cfg.n_runs);

    run_tasks(cfg.n_runs, cfg.jobs, errors, [&](std::size_t r, std::string& stage) {
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data = gen_runge(cfg.n_samples + 2, cfg.a.value_or(0.4),
                                       cfg.b.value_or(2.0), cfg.c.value_or(0.4),
                                       cfg.sigma.value_or(0.5), seed);
        const Dataset view = selection_view(data, cfg);
        stage = "select-cmi";
        const SelectionResult cmi = select_features(view, run_selection(cfg, seed, Criterion::Cmi));
        stage = "select-mi";
        const SelectionResult mi = select_features(view, run_selection(cfg, seed, Criterion::Mi));
        runs[r] = Json{{"run", r},
                       {"seed", seed},
                       {"cmi", selection_record(data, cmi)},
                       {"mi", selection_record(data, mi)}};
        cmi_results[r] = cmi;
        mi_results[r] = mi;
    });

    const Dataset schema = gen_runge(3, 0.4, 2.0, 0.4, 0.5, 0);
    auto inclusion = [&](const std::vector<std::optional<SelectionResult>>& results) {
        Json rows = Json::array();
        for (std::size_t v = 0; v < n_inputs; ++v) {
            std::size_t hits = 0, total = 0;
            double rank_sum = 0.0;
            for (const auto& res : results) {
                if (!res) continue;
                ++total;
                const auto it = std::find(res->selected.begin(), res->selected.end(), v);
                if (it != res->selected.end()) {
                    ++hits;
                    rank_sum +=
                        static_cast<double>(std::distance(res->selected.begin(), it)) + 1.0;
                }
            }
            rows.push_back(Json{
                {"variable", schema.variables[v].name},
                {"fraction_selected",
                 total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0},
                {"mean_rank", hits ? Json(rank_sum / static_cast<double>(hits)) : Json(nullptr)}});
        }
        return rows;
    };

    auto confusion_of = [&](const std::vector<std::optional<SelectionResult>>& results) {
        std::vector<SelectionResult> ok;
        for (const auto& res : results) {
            if (res) ok.push_back(*res);
        }
        return ok.empty() ? Json(nullptr)
                          : confusion_json(confusion_counts(ok, truth, n_inputs));
    };

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"truth", names_of(schema, truth)},
                                {"cmi", Json{{"confusion", confusion_of(cmi_results)},
                                             {"inclusion", inclusion(cmi_results)}}},
                                {"mi", Json{{"confusion", confusion_of(mi_results)},
                                            {"inclusion", inclusion(mi_results)}}}};
}

void exp_spheres(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, true);
    std::vector<Json> runs(cfg.n_runs);
    TaskErrors errors(cfg.n_runs);

    run_tasks(cfg.n_runs, cfg.jobs, errors, [&](std::size_t r, std::string& stage) {
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data = gen_spheres(cfg.n_samples, cfg.label_noise.value_or(0.1), seed);
        KnnConfig knn = cfg.selection.knn;
        knn.noise_seed = seed;
        const Columns y = {data.target().reals};

        stage = "estimate";
        Json tests = Json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            const std::vector<double>& xi = data.variables[i].reals;
            Columns rest;
            for (std::size_t j = 0; j < 3; ++j) {
                if (j != i) rest.push_back(data.variables[j].reals);
            }
            const PairTest mi_test = knn_surrogate_test(xi, y, {}, knn, cfg.selection.n_perm,
                                                        cfg.selection.alpha, seed, i);
            const PairTest cmi_test = knn_surrogate_test(xi, y, rest, knn, cfg.selection.n_perm,
                                                         cfg.selection.alpha, seed, 3 + i);
            tests.push_back(Json{{"variable", data.variables[i].name},
                                 {"mi", mi_test.observed},
                                 {"mi_p", mi_test.p_value},
                                 {"mi_significant", mi_test.significant},
                                 {"cmi", cmi_test.observed},
                                 {"cmi_p", cmi_test.p_value},
                                 {"cmi_significant", cmi_test.significant}});
        }

        stage = "pid";
        const Dataset binned = discretize_dataset(data, cfg.n_bins, cfg.bin_strategy);
        Json pid = Json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<std::vector<int>> rest;
            for (std::size_t j = 0; j < 3; ++j) {
                if (j != i) rest.push_back(binned.variables[j].symbols);
            }
            const TripleDistribution triple =
                empirical_triple(binned.target().symbols, binned.variables[i].symbols, rest);
            Json record = triple_record(triple);
            record["variable"] = data.variables[i].name;
            pid.push_back(record);
        }

        runs[r] = Json{{"run", r}, {"seed", seed}, {"tests", tests}, {"pid", pid}};
    });

    Json variables = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> mi_sig, cmi_sig, mi_p, cmi_p;
        std::vector<double> unq, unq_rest, shd, syn;
        for (const Json& run : runs) {
            if (run.is_null()) continue;
            const Json& row = run.at("tests").at(i);
            mi_sig.push_back(row.at("mi_significant").get<bool>() ? 1.0 : 0.0);
            cmi_sig.push_back(row.at("cmi_significant").get<bool>() ? 1.0 : 0.0);
            mi_p.push_back(row.at("mi_p").get<double>());
            cmi_p.push_back(row.at("cmi_p").get<double>());
            const Json& atoms = run.at("pid").at(i);
            unq.push_back(atoms.at("unq_x1").get<double>());
            unq_rest.push_back(atoms.at("unq_x2").get<double>());
            shd.push_back(atoms.at("shd").get<double>());
            syn.push_back(atoms.at("syn").get<double>());
        }
        variables.push_back(Json{{"variable", "X" + std::to_string(i + 1)},
                                 {"mi_significant_fraction", mean_sem(mi_sig).mean},
                                 {"cmi_significant_fraction", mean_sem(cmi_sig).mean},
                                 {"mi_p", mean_sem_json(mi_p)},
                                 {"cmi_p", mean_sem_json(cmi_p)},
                                 {"unq_x", mean_sem_json(unq)},
                                 {"unq_rest", mean_sem_json(unq_rest)},
                                 {"shd", mean_sem_json(shd)},
                                 {"syn", mean_sem_json(syn)}});
    }

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"variables", variables}};
}

void exp_noise(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, true);
    const NoiseModelKind kind = cfg.experiment == "noise-mackay" ? NoiseModelKind::Mackay
                                                                 : NoiseModelKind::Haufe;
    const std::vector<double>& sweep = cfg.sweep;
    const std::size_t tasks = sweep.size() * cfg.n_runs;
    std::vector<Json> runs(tasks);
    TaskErrors errors(tasks);

    run_tasks(tasks, cfg.jobs, errors, [&](std::size_t t, std::string& stage) {
        const std::size_t s = t / cfg.n_runs;
        const std::size_t r = t % cfg.n_runs;
        const double a = sweep[s];
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data =
            gen_noise_model(kind, a, cfg.sigma.value_or(0.1), cfg.n_samples, seed);
        KnnConfig knn = cfg.selection.knn;
        knn.noise_seed = seed;
        const std::vector<double>& x1 = data.variables[0].reals;
        const std::vector<double>& x2 = data.variables[1].reals;
        const std::vector<double>& y = data.target().reals;

        stage = "estimate";
        Json record;
        record["a"] = a;
        record["run"] = r;
        record["seed"] = seed;
        record["mi_x1"] = mi_knn(x1, y, knn);
        record["mi_x2"] = mi_knn(x2, y, knn);
        record["cmi_x1_x2"] = cmi_knn(x1, y, x2, knn);
        record["cmi_x2_x1"] = cmi_knn(x2, y, x1, knn);
        record["mi_joint"] = mi_knn(Columns{x1, x2}, Columns{y}, knn);

        stage = "pid";
        const TripleDistribution triple =
            empirical_triple(pid_codes(y, cfg.n_bins, cfg.bin_strategy),
                             pid_codes(x1, cfg.n_bins, cfg.bin_strategy),
                             {pid_codes(x2, cfg.n_bins, cfg.bin_strategy)});
        const PidAtoms atoms = pid_decompose(triple, kPidTol);
        record["unq_x1"] = atoms.unq_x1;
        record["unq_x2"] = atoms.unq_x2;
        record["shd"] = atoms.shd;
        record["syn"] = atoms.syn;
        runs[t] = std::move(record);
    });

    static const std::vector<std::string> kQuantities = {
        "mi_x1", "mi_x2", "cmi_x1_x2", "cmi_x2_x1", "mi_joint",
        "unq_x1", "unq_x2", "shd", "syn"};
    Json points = Json::array();
    for (std::size_t s = 0; s < sweep.size(); ++s) {
        Json point;
        point["a"] = sweep[s];
        for (const std::string& q : kQuantities) {
            std::vector<double> values;
            for (std::size_t r = 0; r < cfg.n_runs; ++r) {
                const Json& record = runs[s * cfg.n_runs + r];
                if (!record.is_null()) values.push_back(record.at(q).get<double>());
            }
            point[q] = mean_sem_json(values);
        }
        points.push_back(point);
    }

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"sweep", points}};
}

void exp_statmodels(const ExperimentConfig& cfg, Json& report) {
    report["estimator"] = "plugin";
    report["units"] = Json{{"mi", "bits"}, {"pid", "bits"}};
    const std::string kind_text = cfg.stat_kind.value_or("both");
    std::vector<StatModelKind> kinds;
    if (kind_text == "both") {
        kinds = {StatModelKind::Additive, StatModelKind::Multiplicative};
    } else {
        kinds = {parse_stat_kind(kind_text)};
    }
    const StatModelDist dist = parse_stat_dist(cfg.stat_dist.value_or("uniform"));
    const std::vector<double>& sweep = cfg.sweep;
    const std::size_t tasks = kinds.size() * sweep.size() * cfg.n_runs;
    std::vector<Json> runs(tasks);
    TaskErrors errors(tasks);

    run_tasks(tasks, cfg.jobs, errors, [&](std::size_t t, std::string& stage) {
        const std::size_t ki = t / (sweep.size() * cfg.n_runs);
        const std::size_t s = (t / cfg.n_runs) % sweep.size();
        const std::size_t r = t % cfg.n_runs;
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data = gen_statistical_model(kinds[ki], sweep[s], cfg.sigma.value_or(0.1),
                                                   dist, cfg.n_samples, seed);
        stage = "pid";
        const TripleDistribution triple = empirical_triple(
            pid_codes(data.target().reals, cfg.n_bins, cfg.bin_strategy),
            pid_codes(data.variables[0].reals, cfg.n_bins, cfg.bin_strategy),
            {pid_codes(data.variables[1].reals, cfg.n_bins, cfg.bin_strategy)});
        Json record = triple_record(triple);
        record["kind"] = to_string(kinds[ki]);
        record["weight_alpha"] = sweep[s];
        record["run"] = r;
        record["seed"] = seed;
        runs[t] = std::move(record);
    });

    static const std::vector<std::string> kQuantities = {
        "mi_x1", "mi_x2", "mi_joint", "cmi_x1_x2", "cmi_x2_x1",
        "unq_x1", "unq_x2", "shd", "syn"};
    Json points = Json::array();
    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
        for (std::size_t s = 0; s < sweep.size(); ++s) {
            Json point;
            point["kind"] = to_string(kinds[ki]);
            point["weight_alpha"] = sweep[s];
            point["sigma"] = cfg.sigma.value_or(0.1);
            point["dist"] = to_string(dist);
            for (const std::string& q : kQuantities) {
                std::vector<double> values;
                for (std::size_t r = 0; r < cfg.n_runs; ++r) {
                    const Json& record = runs[(ki * sweep.size() + s) * cfg.n_runs + r];
                    if (!record.is_null()) values.push_back(record.at(q).get<double>());
                }
                point[q] = mean_sem_json(values);
            }
            points.push_back(point);
        }
    }

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"sweep", points}};
}

void exp_gaussian(const ExperimentConfig& cfg, Json& report) {
    report["estimator"] = "plugin";
    report["units"] = Json{{"mi", "bits"}, {"pid", "bits"}};
    const int example = gaussian_example(cfg.experiment);
    std::vector<Json> runs(cfg.n_runs);
    TaskErrors errors(cfg.n_runs);

    run_tasks(cfg.n_runs, cfg.jobs, errors, [&](std::size_t r, std::string& stage) {
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const Dataset data = gen_gaussian_classes(example, cfg.n_samples, seed);
        stage = "estimate";
        const double corr =
            pearson_correlation(data.variables[0].reals, data.variables[1].reals);
        stage = "pid";
        const TripleDistribution triple = empirical_triple(
            data.target().symbols,
            pid_codes(data.variables[0].reals, cfg.n_bins, cfg.bin_strategy),
            {pid_codes(data.variables[1].reals, cfg.n_bins, cfg.bin_strategy)});
        Json record = triple_record(triple);
        record["run"] = r;
        record["seed"] = seed;
        record["correlation"] = corr;
        runs[r] = std::move(record);
    });

    static const std::vector<std::string> kQuantities = {
        "correlation", "mi_x1", "mi_x2", "mi_joint", "cmi_x1_x2", "cmi_x2_x1",
        "unq_x1", "unq_x2", "shd", "syn"};
    Json agg;
    agg["example"] = example;
    for (const std::string& q : kQuantities) {
        std::vector<double> values;
        for (const Json& record : runs) {
            if (!record.is_null()) values.push_back(record.at(q).get<double>());
        }
        agg[q] = mean_sem_json(values);
    }

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = agg;
}

void exp_appendix_c(const ExperimentConfig& cfg, Json& report) {
    attach_units(report, cfg, false);
    const std::size_t n_vars = cfg.n_vars.value_or(50);
    const std::size_t n_informative = cfg.n_informative.value_or(10);
    const std::vector<double>& sweep = cfg.sweep;
    const std::size_t tasks = sweep.size() * cfg.n_runs;
    std::vector<Json> runs(tasks);
    std::vector<std::optional<SelectionResult>> results(tasks);
    std::vector<std::vector<std::size_t>> truths(tasks);
    TaskErrors errors(tasks);

    run_tasks(tasks, cfg.jobs, errors, [&](std::size_t t, std::string& stage) {
        const std::size_t s = t / cfg.n_runs;
        const std::size_t r = t % cfg.n_runs;
        const double raw_n = sweep[s];
        if (raw_n < 1.0 || raw_n != std::floor(raw_n)) {
            throw ConfigError("appendix-c: sweep entries must be positive sample counts");
        }
        const auto n = static_cast<std::size_t>(raw_n);
        const Seed seed = cfg.base_seed + r;
        stage = "generate";
        const LinearRegressionProblem problem =
            gen_linear_regression(n_vars, n_informative, n, cfg.sigma.value_or(0.0), seed);
        const Dataset view = selection_view(problem.data, cfg);
        stage = "select";
        const SelectionResult result =
            select_features(view, run_selection(cfg, seed, cfg.selection.criterion));
        runs[t] = Json{{"n_samples", n},
                       {"run", r},
                       {"seed", seed},
                       {"informative", problem.informative},
                       {"selection", selection_record(problem.data, result)}};
        results[t] = result;
        truths[t] = problem.informative;
    });

    Json points = Json::array();
    for (std::size_t s = 0; s < sweep.size(); ++s) {
        // The informative subset varies per seed, so rates are averaged over
        // per-run confusion rows rather than pooled.
        std::vector<double> tp, fp, n_sel;
        for (std::size_t r = 0; r < cfg.n_runs; ++r) {
            const std::size_t t = s * cfg.n_runs + r;
            if (!results[t]) continue;
            const ConfusionCounts counts =
                confusion_counts({*results[t]}, truths[t], n_vars);
            if (counts.tp) tp.push_back(*counts.tp);
            if (counts.fp) fp.push_back(*counts.fp);
            n_sel.push_back(static_cast<double>(results[t]->selected.size()));
        }
        const MeanSem tp_ms = mean_sem(tp), fp_ms = mean_sem(fp);
        points.push_back(Json{{"n_samples", sweep[s]},
                              {"tp", tp_ms.mean},
                              {"tn", 100.0 - fp_ms.mean},
                              {"fp", fp_ms.mean},
                              {"fn", 100.0 - tp_ms.mean},
                              {"n_selected", mean_sem_json(n_sel)}});
    }

    report["runs"] = runs;
    report["errors"] = errors.drain();
    report["aggregates"] = Json{{"sweep", points}};
}

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.n_runs == 0) throw ConfigError("run_experiment: n_runs must be positive");
    if (cfg.n_samples < 3) throw ConfigError("run_experiment: n_samples too small");
    if (cfg.jobs < 1) throw ConfigError("run_experiment: jobs must be positive");
    if (cfg.n_bins < 2) throw ConfigError("run_experiment: bins must be at least 2");
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
        throw ConfigError("run_experiment: test_fraction must lie in (0, 1)");
    }
    if (cfg.knn_k == 0) throw ConfigError("run_experiment: knn_k must be positive");
    const bool swept = cfg.experiment == "statmodels" || starts_with(cfg.experiment, "noise-") ||
                       cfg.experiment == "appendix-c";
    if (swept && cfg.sweep.empty()) {
        throw ConfigError("run_experiment: " + cfg.experiment + " needs a non-empty sweep");
    }
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& raw) {
    const ExperimentConfig defaults = default_experiment_config(raw.experiment);
    ExperimentConfig cfg = raw;
    if (!cfg.sigma) cfg.sigma = defaults.sigma;
    if (!cfg.label_noise) cfg.label_noise = defaults.label_noise;
    if (!cfg.a) cfg.a = defaults.a;
    if (!cfg.b) cfg.b = defaults.b;
    if (!cfg.c) cfg.c = defaults.c;
    if (!cfg.stat_kind) cfg.stat_kind = defaults.stat_kind;
    if (!cfg.stat_dist) cfg.stat_dist = defaults.stat_dist;
    if (!cfg.n_vars) cfg.n_vars = defaults.n_vars;
    if (!cfg.n_informative) cfg.n_informative = defaults.n_informative;
    if (!cfg.standardize) cfg.standardize = defaults.standardize;
    if (cfg.sweep.empty()) cfg.sweep = defaults.sweep;
    validate_common(cfg);

    Json report;
    report["schema_version"] = 1;
    report["experiment"] = cfg.experiment;
    report["config"] = Json::parse(experiment_config_json(cfg));

    if (cfg.experiment == "toy-3.3.3") {
        exp_toy(cfg, report);
    } else if (starts_with(cfg.experiment, "friedman")) {
        exp_friedman(cfg, report);
    } else if (cfg.experiment == "runge") {
        exp_runge(cfg, report);
    } else if (cfg.experiment == "spheres") {
        exp_spheres(cfg, report);
    } else if (starts_with(cfg.experiment, "noise-")) {
        exp_noise(cfg, report);
    } else if (cfg.experiment == "statmodels") {
        exp_statmodels(cfg, report);
    } else if (starts_with(cfg.experiment, "gaussian-")) {
        exp_gaussian(cfg, report);
    } else {
        exp_appendix_c(cfg, report);
    }

    const bool complete = report["errors"].empty();
    report["complete"] = complete;

    ExperimentOutcome outcome;
    outcome.exit_code = complete ? 0 : 2;
    outcome.report_json = report.dump(2);
    outcome.tables = report_tables(outcome.report_json);
    return outcome;
}

namespace {

const Json& section(const Json& report, const char* name) {
    if (!report.contains(name)) {
        throw ConfigError(std::string("report missing section '") + name + "'");
    }
    return report.at(name);
}

std::string csv_ms(const Json& cell) {
    return fmt(cell.at("mean").get<double>()) + "," + fmt(cell.at("sem").get<double>());
}

std::string csv_opt(const Json& cell) {
    return cell.is_null() ? "" : fmt(cell.get<double>());
}

}  // namespace

std::vector<std::pair<std::string, std::string>> report_tables(const std::string& report_json) {
    Json report;
    try {
        report = Json::parse(report_json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    const std::string id = section(report, "experiment").get<std::string>();
    const Json& aggregates = section(report, "aggregates");
    const Json& runs = section(report, "runs");

    std::vector<std::pair<std::string, std::string>> tables;

    if (id == "toy-3.3.3") {
        std::string csv = "run,selected,n_selected\n";
        for (const Json& run : runs) {
            if (run.is_null()) continue;
            const auto names = run.at("selection").at("selected").get<std::vector<std::string>>();
            std::string joined;
            for (const std::string& n : names) joined += (joined.empty() ? "" : "+") + n;
            csv += std::to_string(run.at("run").get<std::size_t>()) + "," + joined + "," +
                   std::to_string(names.size()) + "\n";
        }
        tables.emplace_back("selection.csv", csv);
    } else if (starts_with(id, "friedman")) {
        std::string rates = "criterion,tp,tn,fp,fn\n";
        for (const char* crit : {"cmi", "mi"}) {
            const Json& confusion = aggregates.at(crit).at("confusion");
            if (confusion.is_null()) continue;
            rates += std::string(crit) + "," + csv_opt(confusion.at("tp")) + "," +
                     csv_opt(confusion.at("tn")) + "," + csv_opt(confusion.at("fp")) + "," +
                     csv_opt(confusion.at("fn")) + "\n";
        }
        tables.emplace_back("rates.csv", rates);

        std::string per_run = "run,criterion,selected,n_selected,mae\n";
        for (const Json& run : runs) {
            if (run.is_null()) continue;
            for (const char* crit : {"cmi", "mi"}) {
                const auto names = run.at(crit).at("selected").get<std::vector<std::string>>();
                std::string joined;
                for (const std::string& n : names) joined += (joined.empty() ? "" : "+") + n;
                const Json& err = run.at(std::string(crit) + "_mae");
                per_run += std::to_string(run.at("run").get<std::size_t>()) + "," + crit + "," +
                           joined + "," + std::to_string(names.size()) + "," + csv_opt(err) +
                           "\n";
            }
        }
        tables.emplace_back("runs.csv", per_run);
    } else if (id == "runge") {
        std::string rates = "criterion,tp,tn,fp,fn\n";
        for (const char* crit : {"cmi", "mi"}) {
            const Json& confusion = aggregates.at(crit).at("confusion");
            if (confusion.is_null()) continue;
            rates += std::string(crit) + "," + csv_opt(confusion.at("tp")) + "," +
                     csv_opt(confusion.at("tn")) + "," + csv_opt(confusion.at("fp")) + "," +
                     csv_opt(confusion.at("fn")) + "\n";
        }
        tables.emplace_back("rates.csv", rates);

        std::string inclusion = "criterion,variable,fraction_selected,mean_rank\n";
        for (const char* crit : {"cmi", "mi"}) {
            for (const Json& row : aggregates.at(crit).at("inclusion")) {
                inclusion += std::string(crit) + "," + row.at("variable").get<std::string>() +
                             "," + fmt(row.at("fraction_selected").get<double>()) + "," +
                             csv_opt(row.at("mean_rank")) + "\n";
            }
        }
        tables.emplace_back("inclusion.csv", inclusion);
    } else if (id == "spheres") {
        std::string sig = "variable,mi_significant_fraction,cmi_significant_fraction,"
                          "mean_mi_p,mean_cmi_p\n";
        std::string pid = "variable,unq_x,unq_rest,shd,syn\n";
        for (const Json& row : aggregates.at("variables")) {
            const std::string name = row.at("variable").get<std::string>();
            sig += name + "," + fmt(row.at("mi_significant_fraction").get<double>()) + "," +
                   fmt(row.at("cmi_significant_fraction").get<double>()) + "," +
                   fmt(row.at("mi_p").at("mean").get<double>()) + "," +
                   fmt(row.at("cmi_p").at("mean").get<double>()) + "\n";
            pid += name + "," + fmt(row.at("unq_x").at("mean").get<double>()) + "," +
                   fmt(row.at("unq_rest").at("mean").get<double>()) + "," +
                   fmt(row.at("shd").at("mean").get<double>()) + "," +
                   fmt(row.at("syn").at("mean").get<double>()) + "\n";
        }
        tables.emplace_back("significance.csv", sig);
        tables.emplace_back("pid.csv", pid);
    } else if (starts_with(id, "noise-")) {
        std::string csv =
            "a,mi_x1,mi_x1_sem,mi_x2,mi_x2_sem,cmi_x1_x2,cmi_x1_x2_sem,"
            "cmi_x2_x1,cmi_x2_x1_sem,mi_joint,mi_joint_sem,"
            "unq_x1,unq_x1_sem,unq_x2,unq_x2_sem,shd,shd_sem,syn,syn_sem\n";
        for (const Json& point : aggregates.at("sweep")) {
            csv += fmt(point.at("a").get<double>());
            for (const char* q : {"mi_x1", "mi_x2", "cmi_x1_x2", "cmi_x2_x1", "mi_joint",
                                  "unq_x1", "unq_x2", "shd", "syn"}) {
                csv += "," + csv_ms(point.at(q));
            }
            csv += "\n";
        }
        tables.emplace_back("sweep.csv", csv);
    } else if (id == "statmodels") {
        std::string csv =
            "kind,weight_alpha,sigma,dist,mi_x1,mi_x2,mi_joint,cmi_x1_x2,cmi_x2_x1,"
            "unq_x1,unq_x2,shd,syn\n";
        for (const Json& point : aggregates.at("sweep")) {
            csv += point.at("kind").get<std::string>() + "," +
                   fmt(point.at("weight_alpha").get<double>()) + "," +
                   fmt(point.at("sigma").get<double>()) + "," +
                   point.at("dist").get<std::string>();
            for (const char* q : {"mi_x1", "mi_x2", "mi_joint", "cmi_x1_x2", "cmi_x2_x1",
                                  "unq_x1", "unq_x2", "shd", "syn"}) {
                csv += "," + fmt(point.at(q).at("mean").get<double>());
            }
            csv += "\n";
        }
        tables.emplace_back("sweep.csv", csv);
    } else if (starts_with(id, "gaussian-")) {
        std::string csv =
            "example,correlation,mi_x1,mi_x2,mi_joint,cmi_x1_x2,cmi_x2_x1,"
            "unq_x1,unq_x2,shd,syn\n";
        csv += std::to_string(aggregates.at("example").get<int>());
        for (const char* q : {"correlation", "mi_x1", "mi_x2", "mi_joint", "cmi_x1_x2",
                              "cmi_x2_x1", "unq_x1", "unq_x2", "shd", "syn"}) {
            csv += "," + fmt(aggregates.at(q).at("mean").get<double>());
        }
        csv += "\n";
        tables.emplace_back("atoms.csv", csv);
    } else if (id == "appendix-c") {
        std::string csv = "n_samples,tp,tn,fp,fn,n_selected\n";
        for (const Json& point : aggregates.at("sweep")) {
            csv += fmt(point.at("n_samples").get<double>()) + "," +
                   fmt(point.at("tp").get<double>()) + "," + fmt(point.at("tn").get<double>()) +
                   "," + fmt(point.at("fp").get<double>()) + "," +
                   fmt(point.at("fn").get<double>()) + "," +
                   fmt(point.at("n_selected").at("mean").get<double>()) + "\n";
        }
        tables.emplace_back("rates.csv", csv);
    } else {
        throw ConfigError("report names unknown experiment '" + id + "'");
    }
    return tables;
}

void write_outcome(const ExperimentOutcome& outcome, const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    fs::create_directories(root / "tables");

    const Json report = Json::parse(outcome.report_json);
    std::ofstream config_file(root / "config.json");
    config_file << section(report, "config").dump(2) << "\n";
    std::ofstream report_file(root / "report.json");
    report_file << outcome.report_json << "\n";
    for (const auto& [name, csv] : outcome.tables) {
        std::ofstream table(root / "tables" / name);
        table << csv;
    }
}

}  // namespace infosel
