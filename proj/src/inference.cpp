#include "rankci/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rankci/numerics.hpp"

namespace rankci {

std::string to_string(QuantileConvention convention) {
    return convention == QuantileConvention::TwoSided ? "two-sided" : "code";
}

std::string to_string(IntervalMode mode) {
    return mode == IntervalMode::Simultaneous ? "simultaneous" : "individual";
}

IntervalMode parse_mode(const std::string& name) {
    if (name == "simultaneous") return IntervalMode::Simultaneous;
    if (name == "individual") return IntervalMode::Individual;
    throw std::invalid_argument("unknown interval mode '" + name + "'");
}

CpdpVariance cpdp_variance(const RankMatrix& matrix, const DominanceEstimate& dominance) {
    const std::size_t n = matrix.entity_count();
    const std::size_t m = matrix.ranker_count();
    CpdpVariance out{std::vector<double>(n, 0.0)};

    // Per target i: both[k][c] = column c observed in rows k and i,
    // le[k][c] = additionally value(k) <= value(i).
    std::vector<std::uint8_t> both(n * m);
    std::vector<std::uint8_t> le(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row_i = matrix.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const auto row_k = matrix.row(k);
            for (std::size_t c = 0; c < m; ++c) {
                const bool shared = row_k[c] && row_i[c];
                both[k * m + c] = shared;
                le[k * m + c] = shared && *row_k[c] <= *row_i[c];
            }
        }

        double diagonal = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i || !dominance.defined(k, i)) continue;
            const double p = dominance.probability(k, i);
            diagonal += p * (1.0 - p) / static_cast<double>(dominance.overlap(k, i));
        }

        // Terms with s == i or t == i vanish: the joint event reduces to the
        // single one on the same columns.
        double cross = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            if (s == i || !dominance.defined(s, i)) continue;
            for (std::size_t t = s + 1; t < n; ++t) {
                if (t == i || !dominance.defined(t, i)) continue;
                std::size_t shared = 0;
                std::size_t joint = 0;
                for (std::size_t c = 0; c < m; ++c) {
                    shared += both[s * m + c] & both[t * m + c];
                    joint += le[s * m + c] & le[t * m + c];
                }
                if (shared == 0) continue;
                const double p_joint = static_cast<double>(joint) / static_cast<double>(shared);
                const double p_s = dominance.probability(s, i);
                const double p_t = dominance.probability(t, i);
                cross += 2.0 * static_cast<double>(shared) * (p_joint - p_s * p_t) /
                         (static_cast<double>(dominance.overlap(s, i)) * static_cast<double>(dominance.overlap(t, i)));
            }
        }
        out.values[i] = std::max(0.0, diagonal + cross);
    }
    return out;
}

CpdpVariance cpdp_variance_complete(const RankMatrix& matrix, const DominanceEstimate& dominance) {
    if (!matrix.complete()) {
        throw std::invalid_argument("cpdp_variance_complete requires a matrix without missing cells");
    }
    const std::size_t n = matrix.entity_count();
    const double m = static_cast<double>(matrix.ranker_count());
    CpdpVariance out{std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double p = dominance.probability(k, i);
            sum += p * (1.0 - p);
        }
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (s == t) continue;
                sum += joint_prob(matrix, s, t, i).probability -
                       dominance.probability(s, i) * dominance.probability(t, i);
            }
        }
        out.values[i] = std::max(0.0, sum / m);
    }
    return out;
}

CtpdpVarianceBound ctpdp_variance_bound(const DominanceEstimate& dominance) {
    const std::size_t n = dominance.entity_count();
    CtpdpVarianceBound out;
    out.entities = n;
    out.values.assign(n, 0.0);
    out.tails.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> tau;
        tau.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (!dominance.defined(k, i)) continue;
            const double t = numerics::binom_tail_gt({static_cast<std::int64_t>(dominance.overlap(k, i)), 0.5,
                                                      dominance.probability(k, i)});
            out.tails[k * n + i] = t;
            tau.push_back(t);
        }
        double bound = 0.0;
        for (std::size_t a = 0; a < tau.size(); ++a) {
            bound += tau[a] * (1.0 - tau[a]);
            for (std::size_t b = a + 1; b < tau.size(); ++b) {
                bound += 2.0 * (std::min(tau[a], tau[b]) - tau[a] * tau[b]);
            }
        }
        out.values[i] = std::max(0.0, bound);
    }
    return out;
}

double z_value(double level, QuantileConvention convention) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    }
    if (convention == QuantileConvention::TwoSided) {
        return numerics::norm_quantile(1.0 - (1.0 - level) / 2.0);
    }
    return std::max(0.0, numerics::norm_quantile(level));
}

std::vector<ScoreInterval> score_intervals(std::span<const double> scores,
                                           std::span<const double> variances,
                                           std::span<const double> levels,
                                           QuantileConvention convention) {
    if (scores.size() != variances.size() || scores.size() != levels.size()) {
        throw std::invalid_argument("score_intervals: scores, variances and levels must have equal length");
    }
    std::vector<ScoreInterval> out;
    out.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!(variances[i] >= 0.0)) throw std::invalid_argument("score_intervals: negative variance");
        const double half = z_value(levels[i], convention) * std::sqrt(variances[i]);
        out.push_back({i, scores[i] - half, scores[i] + half, levels[i]});
    }
    return out;
}

namespace {

RankBounds bounds_for(std::span<const ScoreInterval> intervals, std::size_t i,
                      Orientation better = Orientation::HigherIsBetter) {
    const bool inclusive = better == Orientation::HigherIsBetter;
    RankBounds b;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        if (j == i) continue;
        const auto& a = intervals[j];
        const auto& t = intervals[i];
        if (inclusive ? a.upper <= t.lower : a.upper < t.lower) ++b.lower;
        if (inclusive ? a.lower <= t.upper : a.lower < t.upper) ++b.upper;
    }
    return b;
}

}  // namespace

std::vector<RankBounds> worst_best(std::span<const ScoreInterval> intervals) {
    std::vector<RankBounds> out;
    out.reserve(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) out.push_back(bounds_for(intervals, i));
    return out;
}

std::vector<RankBounds> worst_best(std::span<const ScoreInterval> intervals, Orientation better) {
    std::vector<RankBounds> out;
    out.reserve(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) out.push_back(bounds_for(intervals, i, better));
    return out;
}

RankBounds to_display(RankBounds bounds, Orientation better, std::size_t entities) {
    if (better == Orientation::LowerIsBetter) return bounds;
    const int flip = static_cast<int>(entities) + 1;
    return {flip - bounds.upper, flip - bounds.lower};
}

ScoreModel fit_scores(const RankMatrix& matrix, const DominanceEstimate& dominance, Criterion criterion) {
    ScoreModel model;
    switch (criterion) {
        case Criterion::Cpdp:
            model.scores = cpdp_scores(dominance, matrix.orientation());
            model.variances = cpdp_variance(matrix, dominance).values;
            break;
        case Criterion::Ctpdp:
            model.scores = ctpdp_scores(dominance, matrix.orientation());
            model.variances = ctpdp_variance_bound(dominance).values;
            break;
        default:
            throw std::invalid_argument("rank intervals are only available for the cpdp and ctpdp criteria");
    }
    model.ranks = scores_to_ranks(model.scores);
    return model;
}

ScoreModel fit_scores(const RankMatrix& matrix, Criterion criterion, MissingPairPolicy policy) {
    return fit_scores(matrix, dominance_matrix(matrix, policy), criterion);
}

namespace {

RankInterval make_interval(const ScoreModel& model, std::size_t entity, RankBounds bounds, double level,
                           IntervalMode mode, int split) {
    const auto display = to_display(bounds, model.scores.better, model.entity_count());
    return {.entity = entity,
            .lower = bounds.lower,
            .upper = bounds.upper,
            .display_lower = display.lower,
            .display_upper = display.upper,
            .level = level,
            .mode = mode,
            .criterion = model.criterion(),
            .split = split};
}

}  // namespace

std::vector<RankInterval> simultaneous_rank_cis(const ScoreModel& model, double level) {
    const std::size_t n = model.entity_count();
    const double alpha = 1.0 - level;
    const std::vector<double> levels(n, 1.0 - alpha / static_cast<double>(n));
    const auto intervals = score_intervals(model.scores.scores, model.variances, levels, QuantileConvention::TwoSided);
    const auto bounds = worst_best(intervals, model.scores.better);
    std::vector<RankInterval> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(make_interval(model, i, bounds[i], level, IntervalMode::Simultaneous, 1));
    }
    return out;
}

std::vector<RankInterval> simultaneous_rank_cis(const RankMatrix& matrix, Criterion criterion, double level) {
    return simultaneous_rank_cis(fit_scores(matrix, criterion), level);
}

std::vector<double> individual_levels(std::size_t entities, std::size_t target, std::size_t k, double level) {
    if (entities < 2 || target >= entities || k < 1 || k >= entities) {
        throw std::invalid_argument("individual_levels: need N >= 2, target < N and 1 <= k < N");
    }
    const double alpha = 1.0 - level;
    const double nd = static_cast<double>(entities);
    const double kd = static_cast<double>(k);
    std::vector<double> levels(entities, 1.0 - (nd - kd) * alpha / (nd * (nd - 1.0)));
    levels[target] = 1.0 - kd * alpha / nd;
    return levels;
}

RankInterval individual_rank_ci(const ScoreModel& model, std::size_t target, double level,
                                QuantileConvention convention) {
    const std::size_t n = model.entity_count();
    if (target >= n) throw std::out_of_range("individual_rank_ci: target index out of range");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");

    RankBounds best_bounds;
    int best_split = 0;
    for (std::size_t k = 1; k < n; ++k) {
        const auto levels = individual_levels(n, target, k, level);
        const auto intervals = score_intervals(model.scores.scores, model.variances, levels, convention);
        const auto bounds = bounds_for(intervals, target, model.scores.better);
        if (best_split == 0 || bounds.upper - bounds.lower < best_bounds.upper - best_bounds.lower) {
            best_bounds = bounds;
            best_split = static_cast<int>(k);
        }
    }
    return make_interval(model, target, best_bounds, level, IntervalMode::Individual, best_split);
}

RankInterval individual_rank_ci(const RankMatrix& matrix, Criterion criterion, std::size_t target, double level,
                                QuantileConvention convention) {
    return individual_rank_ci(fit_scores(matrix, criterion), target, level, convention);
}

std::vector<RankInterval> individual_rank_cis(const ScoreModel& model, double level, QuantileConvention convention) {
    std::vector<RankInterval> out;
    out.reserve(model.entity_count());
    for (std::size_t i = 0; i < model.entity_count(); ++i) {
        out.push_back(individual_rank_ci(model, i, level, convention));
    }
    return out;
}

}  // namespace rankci
