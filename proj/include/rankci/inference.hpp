#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rankci/criteria.hpp"
#include "rankci/dominance.hpp"
#include "rankci/rank_matrix.hpp"

namespace rankci {

/// Estimated V(s_hat_i) per entity, from the pairwise-overlap formula that
/// stays unbiased under missing data.
struct CpdpVariance {
    std::vector<double> values;
};

/// Estimated upper bound on V(t_hat_i), with the binomial tail estimates
/// P(N_ki > m_ki / 2) it was built from (row-major N x N, entry [k][i]).
struct CtpdpVarianceBound {
    std::size_t entities = 0;
    std::vector<double> values;
    std::vector<double> tails;

    double tail(std::size_t k, std::size_t i) const { return tails[k * entities + i]; }
};

/// Missing-data variance estimator. Cross terms are weighted by the exact
/// number of columns shared by rows s, t and i.
CpdpVariance cpdp_variance(const RankMatrix& matrix, const DominanceEstimate& dominance);

/// Complete-data estimator (1/m)(sum p(1-p) + sum_{s!=t} (p_st(i) - p_si p_ti)).
/// Throws std::invalid_argument when the matrix has missing cells.
CpdpVariance cpdp_variance_complete(const RankMatrix& matrix, const DominanceEstimate& dominance);

/// Plug-in variance bound sum_k tau_k(1 - tau_k) + sum_{s!=t} (min(tau_s, tau_t) - tau_s tau_t)
/// with tau_k = P(Binomial(m_ki, p_hat_ki) > m_ki / 2).
CtpdpVarianceBound ctpdp_variance_bound(const DominanceEstimate& dominance);

/// How a confidence level maps to a normal quantile.
enum class QuantileConvention {
    TwoSided,   ///< z = Phi^-1(1 - (1 - level) / 2)
    UpperTail,  ///< z = Phi^-1(level); what the reference analysis uses for individual intervals
};

std::string to_string(QuantileConvention convention);

double z_value(double level, QuantileConvention convention);

struct ScoreInterval {
    std::size_t entity = 0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

/// score_i +/- z(level_i) sqrt(variance_i). Throws std::invalid_argument for
/// a level outside (0, 1), a negative variance or mismatched lengths.
std::vector<ScoreInterval> score_intervals(std::span<const double> scores,
                                           std::span<const double> variances,
                                           std::span<const double> levels,
                                           QuantileConvention convention);

/// Rank bounds counted from the low end of the score scale.
struct RankBounds {
    int lower = 1;
    int upper = 1;
};

/// Worst-Best construction: lower_i = 1 + #{j != i : U_j <= L_i},
/// upper_i = 1 + #{j != i : L_j <= U_i}.
std::vector<RankBounds> worst_best(std::span<const ScoreInterval> intervals);

/// Same counts taken from the better end of the scale. For LowerIsBetter the
/// rule is mirrored (lower_i = 1 + #{U_j < L_i}, upper_i = 1 + #{L_j < U_i}),
/// so bounds do not depend on which way the values are encoded.
std::vector<RankBounds> worst_best(std::span<const ScoreInterval> intervals, Orientation better);

enum class IntervalMode { Simultaneous, Individual };

std::string to_string(IntervalMode mode);
IntervalMode parse_mode(const std::string& name);

struct RankInterval {
    std::size_t entity = 0;
    int lower = 1;  ///< low-score end
    int upper = 1;
    int display_lower = 1;  ///< 1 = best entity
    int display_upper = 1;
    double level = 0.95;
    IntervalMode mode = IntervalMode::Simultaneous;
    Criterion criterion = Criterion::Cpdp;
    int split = 1;  ///< the k of the individual-interval search; 1 for simultaneous

    int width() const noexcept { return upper - lower; }
};

/// Maps low-score-end bounds to display bounds (1 = best).
RankBounds to_display(RankBounds bounds, Orientation better, std::size_t entities);

/// Scores, their variance (estimate or bound) and point ranks for one
/// criterion on one matrix.
struct ScoreModel {
    ScoreVector scores;
    std::vector<double> variances;
    RankVector ranks;

    Criterion criterion() const noexcept { return scores.criterion; }
    std::size_t entity_count() const noexcept { return scores.scores.size(); }
};

/// Estimates scores and variances for Cpdp or Ctpdp.
ScoreModel fit_scores(const RankMatrix& matrix, Criterion criterion,
                      MissingPairPolicy policy = MissingPairPolicy::Error);
ScoreModel fit_scores(const RankMatrix& matrix, const DominanceEstimate& dominance, Criterion criterion);

/// Bonferroni family at 1 - alpha/N per entity (two-sided quantiles), then
/// Worst-Best. Joint coverage is at least `level`.
std::vector<RankInterval> simultaneous_rank_cis(const ScoreModel& model, double level);
std::vector<RankInterval> simultaneous_rank_cis(const RankMatrix& matrix, Criterion criterion, double level);

/// Per-entity levels of the split-k family: the target at 1 - k alpha / N,
/// every other entity at 1 - (N - k) alpha / (N (N - 1)).
std::vector<double> individual_levels(std::size_t entities, std::size_t target, std::size_t k, double level);

/// Searches k in [1, N-1]: target at level 1 - k alpha / N, every other
/// entity at 1 - (N - k) alpha / (N (N - 1)); keeps the k giving the
/// narrowest rank interval for the target (smallest k on ties).
RankInterval individual_rank_ci(const ScoreModel& model, std::size_t target, double level,
                                QuantileConvention convention = QuantileConvention::UpperTail);
RankInterval individual_rank_ci(const RankMatrix& matrix, Criterion criterion, std::size_t target, double level,
                                QuantileConvention convention = QuantileConvention::UpperTail);
std::vector<RankInterval> individual_rank_cis(const ScoreModel& model, double level,
                                              QuantileConvention convention = QuantileConvention::UpperTail);

}  // namespace rankci
