// Command-line front end: samples benchmark systems to CSV, runs the
// selection pipeline and the information decomposition on CSV data, scores
// feature subsets, inspects the redundancy lattice, and drives full
// experiment batches.

#include <cstddef>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "infosel/dataset.hpp"
#include "infosel/errors.hpp"
#include "infosel/estimators.hpp"
#include "infosel/evaluation.hpp"
#include "infosel/experiment.hpp"
#include "infosel/generators.hpp"
#include "infosel/lattice.hpp"
#include "infosel/pid.hpp"
#include "infosel/selection.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return buffer;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw infosel::DataError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// Creates parent directories as needed.
void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw infosel::DataError("cannot write '" + path.string() + "'");
    out << text;
}

std::string joined_names(const std::vector<std::string>& names) {
    std::string text;
    for (const std::string& name : names) text += (text.empty() ? "" : "+") + name;
    return text;
}

// ---------------------------------------------------------------------------
// generate

// --params accepts inline JSON (first character '{') or the path of a JSON
// file.
Json params_document(const std::string& text) {
    if (text.empty()) return Json::object();
    const std::string body = text.front() == '{' ? text : slurp(text);
    try {
        return Json::parse(body);
    } catch (const std::exception& e) {
        throw infosel::ConfigError(std::string("parameters are not valid JSON: ") + e.what());
    }
}

// Typed parameter lookup with defaults; every key read is checked off, and
// leftovers are rejected so a misspelled key fails instead of silently
// falling back.
class Params {
public:
    explicit Params(Json doc) : doc_(std::move(doc)) {
        if (!doc_.is_object()) throw infosel::ConfigError("parameters must be a JSON object");
    }

    double number(const std::string& key, double fallback) { return fetch(key, fallback); }
    std::size_t count(const std::string& key, std::size_t fallback) {
        return fetch(key, fallback);
    }
    std::string token(const std::string& key, const std::string& fallback) {
        return fetch(key, fallback);
    }

    void reject_unused() const {
        for (const auto& item : doc_.items()) {
            if (!used_.count(item.key())) {
                throw infosel::ConfigError("unknown parameter '" + item.key() + "'");
            }
        }
    }

private:
    template <typename T>
    T fetch(const std::string& key, const T& fallback) {
        used_.insert(key);
        if (!doc_.contains(key)) return fallback;
        try {
            return doc_.at(key).get<T>();
        } catch (const std::exception&) {
            throw infosel::ConfigError("parameter '" + key + "' has the wrong type");
        }
    }

    Json doc_;
    std::set<std::string> used_;
};

const std::vector<std::string>& system_ids() {
    static const std::vector<std::string> ids = {
        "spheres",    "statmodels", "friedman1",  "friedman2", "friedman3",
        "runge",      "noise-mackay", "noise-haufe", "gaussian-1", "gaussian-2",
        "gaussian-3", "gaussian-4", "gaussian-5", "linear-regression", "toy-3.3.3"};
    return ids;
}

// Samples one dataset; `informative` receives ground-truth column names when
// the system defines them.  Parameter defaults match the experiment-batch
// defaults of the corresponding experiments.
infosel::Dataset build_system(const std::string& system, Params& params, infosel::Seed seed,
                              std::vector<std::string>& informative) {
    using namespace infosel;
    const std::size_t n = params.count("n", 1000);
    if (system == "spheres") {
        return gen_spheres(n, params.number("label_noise", 0.1), seed);
    }
    if (system == "statmodels") {
        const StatModelKind kind = parse_stat_kind(params.token("kind", "additive"));
        const StatModelDist dist = parse_stat_dist(params.token("dist", "uniform"));
        return gen_statistical_model(kind, params.number("weight_alpha", 0.5),
                                     params.number("sigma", 0.1), dist, n, seed);
    }
    if (system.rfind("friedman", 0) == 0) {
        const int model = system.back() - '0';
        return gen_friedman(model, n, params.number("sigma", 1.0),
                            params.count("nuisance", default_nuisance(model)), seed);
    }
    if (system == "runge") {
        // n counts raw time steps; the two warm-up steps drop, giving n-2 rows.
        return gen_runge(n, params.number("a", 0.4), params.number("b", 2.0),
                         params.number("c", 0.4), params.number("sigma", 0.5), seed);
    }
    if (system.rfind("noise-", 0) == 0) {
        const NoiseModelKind kind = parse_noise_kind(system.substr(6));
        return gen_noise_model(kind, params.number("a", 1.0), params.number("sigma", 0.1), n,
                               seed);
    }
    if (system.rfind("gaussian-", 0) == 0) {
        return gen_gaussian_classes(system.back() - '0', n, seed);
    }
    if (system == "linear-regression") {
        LinearRegressionProblem problem =
            gen_linear_regression(params.count("n_vars", 50), params.count("n_informative", 10),
                                  n, params.number("noise", 0.0), seed);
        for (std::size_t idx : problem.informative) {
            informative.push_back(problem.data.variables[idx].name);
        }
        return std::move(problem.data);
    }
    if (system == "toy-3.3.3") return gen_toy_system(n, seed);
    throw ConfigError("unknown system '" + system + "'");
}

int cmd_generate(const std::string& system, const std::string& params_text, infosel::Seed seed,
                 const std::string& out) {
    if (out.empty()) throw infosel::ConfigError("generate: --out must name the output CSV");
    Params params(params_document(params_text));
    std::vector<std::string> informative;
    const infosel::Dataset data = build_system(system, params, seed, informative);
    params.reject_unused();

    const std::filesystem::path path(out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    infosel::save_csv(data, out);

    Json columns = Json::array();
    for (const infosel::Variable& var : data.variables) columns.push_back(var.name);
    Json summary{{"system", system},
                 {"seed", seed},
                 {"n_samples", data.n_samples},
                 {"target", data.target().name},
                 {"columns", columns},
                 {"out", out}};
    if (!informative.empty()) summary["informative"] = informative;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
    std::string csv;
    std::string target;
    bool no_header = false;
    std::string criterion = "cmi";
    double alpha = 0.05;
    int n_perm = 200;
    std::string estimator = "ksg";
    int k = 4;
    std::optional<std::size_t> max_features;
    std::size_t bins = 5;
    std::string bin_strategy = "equal-frequency";
};

Json step_json(const infosel::Dataset& data, const infosel::SelectionStep& step) {
    Json candidates = Json::array();
    for (std::size_t idx : step.candidates) candidates.push_back(data.variables[idx].name);
    return Json{{"candidates", candidates},
                {"scores", step.scores},
                {"winner", data.variables[step.winner].name},
                {"observed", step.observed},
                {"p_value", step.p_value},
                {"significant", step.significant}};
}

void append_step_rows(std::string& csv, const infosel::Dataset& data, const char* phase,
                      std::size_t round, const infosel::SelectionStep& step) {
    for (std::size_t i = 0; i < step.candidates.size(); ++i) {
        const std::size_t idx = step.candidates[i];
        csv += std::string(phase) + "," + std::to_string(round) + "," +
               data.variables[idx].name + "," + fmt(step.scores[i]) + "," +
               (idx == step.winner ? "1" : "0") + "," + fmt(step.observed) + "," +
               fmt(step.p_value) + "," + (step.significant ? "1" : "0") + "\n";
    }
}

int cmd_select(const SelectArgs& args, infosel::Seed seed, int jobs, const std::string& out) {
    using namespace infosel;
    Dataset data = load_csv(args.csv, args.target, !args.no_header);

    SelectionConfig cfg;
    cfg.criterion = parse_criterion(args.criterion);
    cfg.alpha = args.alpha;
    cfg.n_perm = args.n_perm;
    cfg.estimator = parse_estimator(args.estimator);
    cfg.knn.k = args.k;
    cfg.max_features = args.max_features;
    cfg.seed = seed;
    cfg.jobs = jobs;
    if (cfg.estimator == EstimatorKind::Plugin) {
        data = discretize_dataset(data, args.bins, parse_bin_strategy(args.bin_strategy));
    }

    const SelectionResult result = select_features(data, cfg);

    Json selected = Json::array(), pruned = Json::array();
    for (std::size_t idx : result.selected) selected.push_back(data.variables[idx].name);
    for (std::size_t idx : result.pruned) pruned.push_back(data.variables[idx].name);
    Json forward = Json::array(), pruning = Json::array();
    for (const SelectionStep& step : result.steps) forward.push_back(step_json(data, step));
    for (const SelectionStep& step : result.pruning_steps) {
        pruning.push_back(step_json(data, step));
    }
    const Json doc{{"selected", selected},
                   {"pruned", pruned},
                   {"termination", to_string(result.termination)},
                   {"criterion", to_string(cfg.criterion)},
                   {"estimator", to_string(cfg.estimator)},
                   {"units", cfg.estimator == EstimatorKind::Plugin ? "bits" : "nats"},
                   {"seed", seed},
                   {"forward_steps", forward},
                   {"pruning_steps", pruning}};
    std::cout << doc.dump(2) << "\n";

    if (!out.empty()) {
        std::string csv = "phase,round,variable,score,is_winner,observed,p_value,significant\n";
        for (std::size_t r = 0; r < result.steps.size(); ++r) {
            append_step_rows(csv, data, "forward", r, result.steps[r]);
        }
        for (std::size_t r = 0; r < result.pruning_steps.size(); ++r) {
            append_step_rows(csv, data, "pruning", r, result.pruning_steps[r]);
        }
        write_text(std::filesystem::path(out) / "selection.json", doc.dump(2) + "\n");
        write_text(std::filesystem::path(out) / "steps.csv", csv);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// pid

struct PidArgs {
    std::string csv;
    std::string target;
    bool no_header = false;
    std::vector<std::string> x1;
    std::vector<std::string> x2;
    std::size_t bins = 5;
    std::string bin_strategy = "equal-frequency";
    double tol = 1e-4;
};

// Discrete columns keep their stored codes; continuous ones are binned.
std::vector<int> column_codes(const infosel::Variable& var, std::size_t bins,
                              infosel::BinStrategy strategy) {
    if (var.kind == infosel::VarKind::Discrete) return var.symbols;
    return infosel::discretize(var.reals, bins, strategy);
}

int cmd_pid(const PidArgs& args, const std::string& out) {
    using namespace infosel;
    const Dataset data = load_csv(args.csv, args.target, !args.no_header);
    const BinStrategy strategy = parse_bin_strategy(args.bin_strategy);

    const auto group_codes = [&](const std::vector<std::string>& names) {
        std::vector<std::vector<int>> codes;
        for (const std::string& name : names) {
            codes.push_back(column_codes(data.variables[data.index_of(name)], args.bins,
                                         strategy));
        }
        return codes;
    };
    const std::vector<int> y = column_codes(data.target(), args.bins, strategy);
    std::vector<std::vector<int>> x1 = group_codes(args.x1);
    const std::vector<std::vector<int>> x2 = group_codes(args.x2);

    // A multi-column first group folds into one composite variable, exactly
    // as empirical_triple folds the second group.
    std::vector<int> x1_codes;
    if (x1.size() == 1) {
        x1_codes = std::move(x1.front());
    } else {
        std::vector<const std::vector<int>*> pointers;
        for (const auto& column : x1) pointers.push_back(&column);
        x1_codes = detail::product_codes(pointers).first;
    }

    const TripleDistribution triple = empirical_triple(y, x1_codes, x2);
    const TripleInformation info = triple_information(triple);
    const PidAtoms atoms = pid_decompose(triple, args.tol);

    const Json doc{{"target", args.target},
                   {"x1", args.x1},
                   {"x2", args.x2},
                   {"units", "bits"},
                   {"atoms",
                    Json{{"unq_x1", atoms.unq_x1},
                         {"unq_x2", atoms.unq_x2},
                         {"shd", atoms.shd},
                         {"syn", atoms.syn}}},
                   {"information",
                    Json{{"mi_x1", info.mi_x1},
                         {"mi_x2", info.mi_x2},
                         {"mi_joint", info.mi_joint},
                         {"cmi_x1_x2", info.cmi_x1_x2},
                         {"cmi_x2_x1", info.cmi_x2_x1}}}};
    std::cout << doc.dump(2) << "\n";
    if (!out.empty()) write_text(out, doc.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
    std::string csv;
    std::string target;
    bool no_header = false;
    std::size_t k = 5;
    double test_fraction = 0.3;
    std::optional<std::size_t> max_set_size;
    bool standardize = false;
};

int cmd_evaluate(const EvaluateArgs& args, infosel::Seed seed, const std::string& out) {
    using namespace infosel;
    const Dataset data = load_csv(args.csv, args.target, !args.no_header);
    const std::vector<SubsetScore> scores = powerset_evaluation(
        data, args.k, args.test_fraction, args.max_set_size, seed, args.standardize);

    std::string csv = "subset,size,mae\n";
    for (const SubsetScore& score : scores) {
        std::vector<std::string> names;
        for (std::size_t idx : score.subset) names.push_back(data.variables[idx].name);
        csv += joined_names(names) + "," + std::to_string(score.subset.size()) + "," +
               fmt(score.mae) + "\n";
    }
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_text(out, csv);
        std::cout << "wrote " << out << " (" << scores.size() << " subsets)\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// lattice

int cmd_lattice(std::size_t n, bool allow_large) {
    const infosel::PartitionReport report = infosel::verify_cmi_partition(n, allow_large);

    const auto yesno = [](bool v) { return v ? "yes" : "no"; };
    const auto sizes = [](const std::vector<std::size_t>& values) {
        std::string text;
        for (std::size_t v : values) text += (text.empty() ? "" : " ") + std::to_string(v);
        return text;
    };
    std::cout << "features: " << report.n_features << "\n"
              << "atoms: " << report.atom_count << "\n"
              << "cmi chain cover sizes: " << sizes(report.cmi_cover_sizes) << "\n"
              << "cmi pairwise disjoint: " << yesno(report.cmi_pairwise_disjoint) << "\n"
              << "cmi covers everything: " << yesno(report.cmi_covers_everything) << "\n"
              << "mi term cover sizes: " << sizes(report.mi_cover_sizes) << "\n"
              << "mi union size: " << report.mi_union_size << "\n"
              << "mi chain overlaps: " << yesno(report.mi_chain_overlaps) << "\n"
              << "mi covers top: " << yesno(report.mi_covers_top) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// run-experiment and report

std::string timestamp_token() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    localtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y%m%d-%H%M%S");
    return out.str();
}

struct ExperimentArgs {
    std::string config_path;
    std::string experiment;
    std::optional<std::size_t> n_runs;
    std::optional<std::size_t> n_samples;
    std::optional<infosel::Seed> seed;
    std::optional<int> jobs;
    std::string out;
};

int cmd_run_experiment(const ExperimentArgs& args) {
    using namespace infosel;
    if (args.config_path.empty() == args.experiment.empty()) {
        throw ConfigError("run-experiment: give exactly one of --config or --experiment");
    }
    ExperimentConfig cfg = args.config_path.empty()
                               ? default_experiment_config(args.experiment)
                               : parse_experiment_config(slurp(args.config_path));
    if (args.n_runs) cfg.n_runs = *args.n_runs;
    if (args.n_samples) cfg.n_samples = *args.n_samples;
    if (args.seed) cfg.base_seed = *args.seed;
    if (args.jobs) cfg.jobs = *args.jobs;

    const std::string dir =
        args.out.empty() ? cfg.out_dir + "/" + cfg.experiment + "-" + timestamp_token()
                         : args.out;
    const ExperimentOutcome outcome = run_experiment(cfg);
    write_outcome(outcome, dir);

    std::cout << "experiment: " << cfg.experiment << "\n"
              << "wrote: " << dir << " (config.json, report.json, " << outcome.tables.size()
              << " tables)\n";
    if (outcome.exit_code != 0) {
        std::cerr << "some runs failed; see the errors section of " << dir << "/report.json\n";
    }
    return outcome.exit_code;
}

int cmd_report(const std::string& report_path, const std::string& out) {
    const std::string dir = out.empty() ? "tables" : out;
    const auto tables = infosel::report_tables(slurp(report_path));
    for (const auto& [name, csv] : tables) {
        write_text(std::filesystem::path(dir) / name, csv);
        std::cout << "wrote " << (std::filesystem::path(dir) / name).string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-theoretic feature selection, decomposition, and benchmarks"};
    app.require_subcommand(1);

    infosel::Seed seed = 1;
    int jobs = 1;
    std::string out;
    auto* seed_opt =
        app.add_option("--seed", seed, "Root seed for all randomness")->capture_default_str();
    auto* jobs_opt =
        app.add_option("--jobs", jobs, "Worker thread bound")->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option(
        "--out", out, "Output path; a file or a directory depending on the subcommand");

    std::string gen_system, gen_params;
    auto* gen = app.add_subcommand("generate", "Sample a benchmark system to CSV");
    gen->fallthrough();
    gen->add_option("--system", gen_system, "System to sample")
        ->required()
        ->check(CLI::IsMember(system_ids()));
    gen->add_option("--params", gen_params, "Inline JSON or a JSON file of system parameters");

    SelectArgs sel;
    auto* select = app.add_subcommand("select", "Forward selection with surrogate testing");
    select->fallthrough();
    select->add_option("csv", sel.csv, "Input CSV")->required();
    select->add_option("--target", sel.target, "Target column (name, or 0-based index without a header)")
        ->required();
    select->add_flag("--no-header", sel.no_header, "Input CSV has no header row");
    select->add_option("--criterion", sel.criterion, "Scoring criterion")
        ->check(CLI::IsMember({"cmi", "mi"}))
        ->capture_default_str();
    select->add_option("--alpha", sel.alpha, "Significance level")->capture_default_str();
    select->add_option("--n-perm", sel.n_perm, "Surrogate permutations per test")
        ->capture_default_str();
    select->add_option("--estimator", sel.estimator, "Information estimator")
        ->check(CLI::IsMember({"plugin", "ksg"}))
        ->capture_default_str();
    select->add_option("--k", sel.k, "Nearest-neighbor count for the ksg estimator")
        ->capture_default_str();
    select->add_option("--max-features", sel.max_features, "Cap on the selected set size");
    select->add_option("--bins", sel.bins, "Bin count for the plugin estimator")
        ->capture_default_str();
    select->add_option("--bin-strategy", sel.bin_strategy, "Binning strategy")
        ->check(CLI::IsMember({"equal-width", "equal-frequency"}))
        ->capture_default_str();

    PidArgs pid;
    auto* pid_cmd = app.add_subcommand(
        "pid", "Decompose the information two input groups carry about a target");
    pid_cmd->fallthrough();
    pid_cmd->add_option("csv", pid.csv, "Input CSV")->required();
    pid_cmd->add_option("--target", pid.target, "Target column")->required();
    pid_cmd->add_flag("--no-header", pid.no_header, "Input CSV has no header row");
    pid_cmd->add_option("--x1", pid.x1, "First input column group (comma separated)")
        ->required()
        ->delimiter(',');
    pid_cmd->add_option("--x2", pid.x2, "Second input column group (comma separated)")
        ->required()
        ->delimiter(',');
    pid_cmd->add_option("--bins", pid.bins, "Bin count for continuous columns")
        ->capture_default_str();
    pid_cmd->add_option("--bin-strategy", pid.bin_strategy, "Binning strategy")
        ->check(CLI::IsMember({"equal-width", "equal-frequency"}))
        ->capture_default_str();
    pid_cmd->add_option("--tol", pid.tol, "Certified optimality gap, bits")
        ->capture_default_str();

    EvaluateArgs eval;
    auto* evaluate = app.add_subcommand("evaluate", "Score feature subsets by kNN regression");
    evaluate->fallthrough();
    evaluate->add_option("csv", eval.csv, "Input CSV")->required();
    evaluate->add_option("--target", eval.target, "Target column")->required();
    evaluate->add_flag("--no-header", eval.no_header, "Input CSV has no header row");
    evaluate->add_option("--k", eval.k, "Nearest-neighbor count")->capture_default_str();
    evaluate->add_option("--test-fraction", eval.test_fraction, "Held-out row fraction")
        ->capture_default_str();
    evaluate->add_option("--max-set-size", eval.max_set_size, "Cap on subset size");
    evaluate->add_flag("--standardize", eval.standardize,
                       "Scale features by training mean and spread");

    std::size_t lattice_n = 3;
    bool lattice_large = false;
    auto* lattice = app.add_subcommand("lattice", "Redundancy lattice counts and coverage");
    lattice->fallthrough();
    lattice->add_option("--n", lattice_n, "Feature count")->required();
    lattice->add_flag("--allow-large", lattice_large, "Permit the 7579-atom case n=5");

    ExperimentArgs exp;
    auto* run = app.add_subcommand("run-experiment", "Run a full experiment batch");
    run->fallthrough();
    run->add_option("--config", exp.config_path, "Experiment config JSON file");
    run->add_option("--experiment", exp.experiment, "Experiment id, run with defaults")
        ->check(CLI::IsMember(infosel::experiment_ids()));
    run->add_option("--runs", exp.n_runs, "Override the run count");
    run->add_option("--samples", exp.n_samples, "Override the per-run sample count");

    std::string report_path;
    auto* report = app.add_subcommand("report", "Rebuild CSV tables from a report");
    report->fallthrough();
    report->add_option("report", report_path, "report.json produced by run-experiment")
        ->required();

    int exit_code = 0;
    gen->callback([&] { exit_code = cmd_generate(gen_system, gen_params, seed, out); });
    select->callback([&] { exit_code = cmd_select(sel, seed, jobs, out); });
    pid_cmd->callback([&] { exit_code = cmd_pid(pid, out); });
    evaluate->callback([&] { exit_code = cmd_evaluate(eval, seed, out); });
    lattice->callback([&] { exit_code = cmd_lattice(lattice_n, lattice_large); });
    run->callback([&] {
        if (out_opt->count() > 0) exp.out = out;
        if (seed_opt->count() > 0) exp.seed = seed;
        if (jobs_opt->count() > 0) exp.jobs = jobs;
        exit_code = cmd_run_experiment(exp);
    });
    report->callback([&] { exit_code = cmd_report(report_path, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
