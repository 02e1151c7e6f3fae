#include "infosel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "infosel/detail/score_workspace.hpp"
#include "infosel/errors.hpp"
#include "infosel/parallel.hpp"

namespace infosel {

Criterion parse_criterion(const std::string& text) {
    if (text == "cmi") return Criterion::Cmi;
    if (text == "mi") return Criterion::Mi;
    throw ConfigError("unknown criterion '" + text + "' (expected cmi or mi)");
}

EstimatorKind parse_estimator(const std::string& text) {
    if (text == "plugin") return EstimatorKind::Plugin;
    if (text == "ksg") return EstimatorKind::Ksg;
    throw ConfigError("unknown estimator '" + text + "' (expected plugin or ksg)");
}

std::string to_string(Criterion c) { return c == Criterion::Cmi ? "cmi" : "mi"; }

std::string to_string(EstimatorKind e) { return e == EstimatorKind::Plugin ? "plugin" : "ksg"; }

std::string to_string(Termination t) {
    switch (t) {
        case Termination::NoSignificantCandidate: return "no-significant-candidate";
        case Termination::MaxFeatures: return "max-features";
        case Termination::Exhausted: return "exhausted";
    }
    return "unknown";
}

namespace {

constexpr std::uint64_t kForward = 0;
constexpr std::uint64_t kBackward = 1;

void validate_config(const SelectionConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw ConfigError("alpha must lie strictly between 0 and 1");
    }
    const int min_perm = static_cast<int>(std::ceil(1.0 / cfg.alpha)) - 1;
    if (cfg.n_perm < min_perm) {
        throw ConfigError("n_perm=" + std::to_string(cfg.n_perm) + " cannot reach alpha=" +
                          std::to_string(cfg.alpha) + "; need at least " +
                          std::to_string(min_perm) + " permutations");
    }
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
}

// Scores candidate variables against the fixed target/conditioning pair,
// dispatching to the estimator the config asks for.  Holds the per-variable
// noisy (or coded) columns for the whole selection run so every round and
// every surrogate sees the same data.
class ScoreEngine {
public:
    ScoreEngine(const Dataset& data, const SelectionConfig& cfg)
        : data_(data), cfg_(cfg), workers_(std::max(1, cfg.jobs)) {
        if (cfg_.estimator == EstimatorKind::Ksg) {
            numeric_.resize(data.n_variables());
            for (std::size_t v = 0; v < data.n_variables(); ++v) {
                numeric_[v] =
                    detail::add_subnoise(data.variables[v].numeric_column(), cfg_.seed, v);
            }
            ksg_.emplace(&numeric_[data.target_index], cfg_.knn.k);
            kscratch_.resize(static_cast<std::size_t>(workers_));
        } else {
            codes_.resize(data.n_variables());
            alphabets_.resize(data.n_variables());
            for (std::size_t v = 0; v < data.n_variables(); ++v) {
                const Variable& var = data.variables[v];
                if (var.kind != VarKind::Discrete) {
                    throw ConfigError("plug-in estimator requires discrete variables; '" +
                                      var.name + "' is continuous (discretize first)");
                }
                codes_[v] = &var.symbols;
                alphabets_[v] = var.alphabet_size();
            }
            plug_.emplace(codes_[data.target_index], alphabets_[data.target_index]);
            pscratch_.resize(static_cast<std::size_t>(workers_));
        }
    }

    int workers() const { return workers_; }

    void set_conditioning(const std::vector<std::size_t>& z_vars) {
        if (ksg_) {
            std::vector<const std::vector<double>*> z;
            z.reserve(z_vars.size());
            for (std::size_t v : z_vars) z.push_back(&numeric_[v]);
            ksg_->set_conditioning(std::move(z));
        } else {
            std::vector<const std::vector<int>*> z;
            z.reserve(z_vars.size());
            for (std::size_t v : z_vars) z.push_back(codes_[v]);
            plug_->set_conditioning(z);
        }
    }

    double score(std::size_t v, int worker) {
        try {
            if (ksg_) return ksg_->score(numeric_[v], kscratch_[worker]);
            return plug_->score(*codes_[v], alphabets_[v], pscratch_[worker]);
        } catch (const BudgetError& e) {
            throw BudgetError(scoring_context(v) + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError(scoring_context(v) + e.what());
        }
    }

    double score_permuted(std::size_t v, Rng rng, int worker) {
        try {
            if (ksg_) {
                auto& s = kscratch_[worker];
                s.column = numeric_[v];
                shuffle_in_place(s.column, rng);
                return ksg_->score(s.column, s);
            }
            auto& s = pscratch_[worker];
            s.column = *codes_[v];
            shuffle_in_place(s.column, rng);
            return plug_->score(s.column, alphabets_[v], s);
        } catch (const BudgetError& e) {
            throw BudgetError(scoring_context(v) + e.what());
        } catch (const ConfigError& e) {
            throw ConfigError(scoring_context(v) + e.what());
        }
    }

private:
    std::string scoring_context(std::size_t v) const {
        return "while scoring variable '" + data_.variables[v].name + "': ";
    }

    const Dataset& data_;
    SelectionConfig cfg_;
    int workers_;
    std::vector<std::vector<double>> numeric_;
    std::optional<detail::KsgScoreWorkspace> ksg_;
    std::vector<detail::KsgScoreWorkspace::Scratch> kscratch_;
    std::vector<const std::vector<int>*> codes_;
    std::vector<std::size_t> alphabets_;
    std::optional<detail::PluginScoreWorkspace> plug_;
    std::vector<detail::PluginScoreWorkspace::Scratch> pscratch_;
};

void check_disjoint(const Dataset& data, const std::vector<std::size_t>& selected,
                    const std::vector<std::size_t>& remaining) {
    for (std::size_t v : remaining) {
        if (v == data.target_index) throw ConfigError("target cannot be a candidate");
        if (std::find(selected.begin(), selected.end(), v) != selected.end()) {
            throw ConfigError("variable '" + data.variables[v].name +
                              "' is both selected and remaining");
        }
    }
    for (std::size_t v : selected) {
        if (v == data.target_index) throw ConfigError("target cannot be selected");
        if (v >= data.n_variables()) throw ConfigError("selected index out of range");
    }
}

std::vector<double> observed_scores(ScoreEngine& eng, const std::vector<std::size_t>& vars,
                                    int jobs) {
    std::vector<double> scores(vars.size());
    parallel_for(0, vars.size(), jobs,
                 [&](std::size_t i, int w) { scores[i] = eng.score(vars[i], w); });
    return scores;
}

// Per permutation round: permute every variable independently, score it, and
// keep the extreme across variables (max for forward, min for backward).
// Streams are keyed by (direction, selection round, variable, permutation),
// so results do not depend on scheduling.
std::vector<double> surrogate_extrema(ScoreEngine& eng, const std::vector<std::size_t>& vars,
                                      const SelectionConfig& cfg, std::uint64_t direction,
                                      std::uint64_t round, bool take_min) {
    std::vector<double> extrema(static_cast<std::size_t>(cfg.n_perm));
    const Rng base = Rng(cfg.seed).stream(streams::kSurrogate, direction, round);
    parallel_for(0, extrema.size(), cfg.jobs, [&](std::size_t p, int w) {
        double ext = take_min ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
        for (std::size_t v : vars) {
            const double s = eng.score_permuted(v, base.stream(v, p), w);
            ext = take_min ? std::min(ext, s) : std::max(ext, s);
        }
        extrema[p] = ext;
    });
    return extrema;
}

SurrogateVerdict verdict_from(const std::vector<double>& nulls, double observed, double alpha) {
    std::size_t count = 0;
    for (double s : nulls) count += s >= observed;
    SurrogateVerdict v;
    v.null_statistics = nulls;
    v.p_value = static_cast<double>(1 + count) / static_cast<double>(1 + nulls.size());
    v.significant = v.p_value <= alpha;
    return v;
}

// Position of the extreme score; ties go to the lowest variable index.
std::size_t arg_extreme(const std::vector<std::size_t>& vars, const std::vector<double>& scores,
                        bool take_min) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        const bool better = take_min ? scores[i] < scores[best] : scores[i] > scores[best];
        if (better || (scores[i] == scores[best] && vars[i] < vars[best])) best = i;
    }
    return best;
}

}  // namespace

std::vector<std::pair<std::size_t, double>> score_candidates(
    const Dataset& data, const std::vector<std::size_t>& selected,
    const std::vector<std::size_t>& remaining, const SelectionConfig& cfg) {
    validate_config(cfg);
    data.validate();
    if (remaining.empty()) throw ConfigError("score_candidates: no remaining candidates");
    check_disjoint(data, selected, remaining);

    ScoreEngine eng(data, cfg);
    eng.set_conditioning(cfg.criterion == Criterion::Cmi ? selected
                                                         : std::vector<std::size_t>{});
    const std::vector<double> scores = observed_scores(eng, remaining, cfg.jobs);
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) out.emplace_back(remaining[i], scores[i]);
    return out;
}

SurrogateVerdict max_statistic_test(const Dataset& data, const std::vector<std::size_t>& selected,
                                    const std::vector<std::size_t>& remaining, std::size_t winner,
                                    double observed, const SelectionConfig& cfg) {
    validate_config(cfg);
    data.validate();
    if (std::find(remaining.begin(), remaining.end(), winner) == remaining.end()) {
        throw ConfigError("winner must be one of the remaining candidates");
    }
    check_disjoint(data, selected, remaining);

    ScoreEngine eng(data, cfg);
    eng.set_conditioning(cfg.criterion == Criterion::Cmi ? selected
                                                         : std::vector<std::size_t>{});
    const auto nulls =
        surrogate_extrema(eng, remaining, cfg, kForward, selected.size(), /*take_min=*/false);
    return verdict_from(nulls, observed, cfg.alpha);
}

SelectionResult forward_select(const Dataset& data, const SelectionConfig& cfg) {
    validate_config(cfg);
    data.validate();
    std::vector<std::size_t> remaining = data.input_indices();
    if (remaining.empty()) throw ConfigError("forward_select: dataset has no input variables");

    ScoreEngine eng(data, cfg);
    SelectionResult res;
    std::vector<std::size_t> selected;

    for (std::uint64_t round = 0;; ++round) {
        if (cfg.max_features && selected.size() >= *cfg.max_features) {
            res.termination = Termination::MaxFeatures;
            break;
        }
        if (remaining.empty()) {
            res.termination = Termination::Exhausted;
            break;
        }
        eng.set_conditioning(cfg.criterion == Criterion::Cmi ? selected
                                                             : std::vector<std::size_t>{});
        SelectionStep step;
        step.candidates = remaining;
        step.scores = observed_scores(eng, remaining, cfg.jobs);
        const std::size_t best = arg_extreme(remaining, step.scores, /*take_min=*/false);
        step.winner = remaining[best];
        step.observed = step.scores[best];

        const auto nulls =
            surrogate_extrema(eng, remaining, cfg, kForward, round, /*take_min=*/false);
        const SurrogateVerdict verdict = verdict_from(nulls, step.observed, cfg.alpha);
        step.p_value = verdict.p_value;
        step.significant = verdict.significant;
        res.steps.push_back(std::move(step));

        if (!verdict.significant) {
            res.termination = Termination::NoSignificantCandidate;
            break;
        }
        selected.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }

    res.selected = std::move(selected);
    return res;
}

SelectionResult backward_eliminate(const Dataset& data, const std::vector<std::size_t>& selected,
                                   const SelectionConfig& cfg) {
    validate_config(cfg);
    data.validate();
    check_disjoint(data, selected, {});

    SelectionResult res;
    res.selected = selected;
    res.termination = Termination::NoSignificantCandidate;
    if (selected.empty()) {
        res.termination = Termination::Exhausted;
        return res;
    }

    ScoreEngine eng(data, cfg);
    std::vector<std::size_t>& current = res.selected;

    for (std::uint64_t round = 0; !current.empty(); ++round) {
        SelectionStep step;
        step.candidates = current;
        step.scores.resize(current.size());
        std::vector<std::vector<double>> nulls(current.size());

        // Each feature is scored and permuted against the rest of the set,
        // so the conditioning set changes per feature, not per permutation.
        for (std::size_t i = 0; i < current.size(); ++i) {
            std::vector<std::size_t> rest;
            rest.reserve(current.size() - 1);
            for (std::size_t j = 0; j < current.size(); ++j) {
                if (j != i) rest.push_back(current[j]);
            }
            eng.set_conditioning(rest);
            step.scores[i] = eng.score(current[i], 0);
            nulls[i] = surrogate_extrema(eng, {current[i]}, cfg, kBackward, round,
                                         /*take_min=*/false);
        }

        const std::size_t weakest = arg_extreme(current, step.scores, /*take_min=*/true);
        step.winner = current[weakest];
        step.observed = step.scores[weakest];

        std::vector<double> null_minima(static_cast<std::size_t>(cfg.n_perm),
                                        std::numeric_limits<double>::infinity());
        for (const auto& per_var : nulls) {
            for (std::size_t p = 0; p < per_var.size(); ++p) {
                null_minima[p] = std::min(null_minima[p], per_var[p]);
            }
        }
        const SurrogateVerdict verdict = verdict_from(null_minima, step.observed, cfg.alpha);
        step.p_value = verdict.p_value;
        step.significant = verdict.significant;
        res.pruning_steps.push_back(std::move(step));

        if (verdict.significant) {
            res.termination = Termination::NoSignificantCandidate;
            break;
        }
        res.pruned.push_back(current[weakest]);
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(weakest));
        if (current.empty()) res.termination = Termination::Exhausted;
    }
    return res;
}

SelectionResult select_features(const Dataset& data, const SelectionConfig& cfg) {
    SelectionResult res = forward_select(data, cfg);
    SelectionResult pruned = backward_eliminate(data, res.selected, cfg);
    res.selected = std::move(pruned.selected);
    res.pruned = std::move(pruned.pruned);
    res.pruning_steps = std::move(pruned.pruning_steps);
    return res;
}

}  // namespace infosel
