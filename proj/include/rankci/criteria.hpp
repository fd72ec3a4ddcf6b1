#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rankci/dominance.hpp"
#include "rankci/rank_matrix.hpp"

namespace rankci {

enum class Criterion { Cpdp, Ctpdp, Borda, Copeland };

std::string to_string(Criterion criterion);
Criterion parse_criterion(const std::string& name);

/// Per-entity scores. `better` says which end of the score scale is the
/// better entity; it follows the orientation of the matrix the scores were
/// estimated from.
struct ScoreVector {
    Criterion criterion = Criterion::Cpdp;
    Orientation better = Orientation::HigherIsBetter;
    std::vector<double> scores;
};

/// Display ranks (1 = best) using competition-min ties, plus the raw
/// ascending count #{k : score_k <= score_i}.
struct RankVector {
    std::vector<int> display;
    std::vector<int> ascending_count;
    std::vector<std::vector<std::size_t>> tie_groups;
};

/// Score equality used for tie detection. Scores are sums of fractions, so
/// equal values can differ in the last few bits.
bool scores_tied(double a, double b) noexcept;

/// s_i = sum_k p_hat[k][i] over defined pairs (diagonal contributes 1).
ScoreVector cpdp_scores(const DominanceEstimate& dominance, Orientation better);

/// t_i = #{k : p_hat[k][i] > 1/2} over defined pairs (diagonal contributes 1).
ScoreVector ctpdp_scores(const DominanceEstimate& dominance, Orientation better);

RankVector scores_to_ranks(const ScoreVector& scores);

/// Position of each score counted from the low end with competition-min
/// ties: 1 + #{k : score_k < score_i}.
std::vector<int> ascending_min_ranks(const std::vector<double>& scores);

/// Borda count on complete data: sum of within-column ranks after
/// canonicalization (larger = better). Throws std::invalid_argument on
/// missing cells.
ScoreVector borda_scores(const RankMatrix& matrix);
RankVector borda_ranks(const RankMatrix& matrix);

/// Copeland pairwise method on complete data: one point per opponent beaten
/// in a strict majority of columns, half a point per exact split.
ScoreVector copeland_scores(const RankMatrix& matrix);
RankVector copeland_ranks(const RankMatrix& matrix);

/// True when some pair of entities splits its common columns exactly 50/50.
bool has_pairwise_split(const DominanceEstimate& dominance);

}  // namespace rankci
