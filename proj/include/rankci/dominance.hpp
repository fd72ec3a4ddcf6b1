#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rankci/rank_matrix.hpp"

namespace rankci {

/// An estimated probability together with the number of columns it was
/// computed from.
struct PairEstimate {
    double probability = 0.0;
    std::size_t overlap = 0;
};

/// Raised when a pair (or triple) of entities shares no ranker, leaving the
/// dominance probability undefined.
class NoCommonRanker : public std::runtime_error {
public:
    explicit NoCommonRanker(std::vector<std::pair<std::size_t, std::size_t>> pairs);
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const noexcept { return pairs_; }

private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// How dominance_matrix treats pairs with no common ranker.
enum class MissingPairPolicy {
    Error,    ///< throw NoCommonRanker listing every such pair
    Exclude,  ///< leave the pair undefined; its terms drop out of every sum
};

/// Fraction of co-observed columns where value(k) <= value(i), i.e. the
/// estimate of P(X_k <= X_i) in the matrix's native value order. The
/// diagonal is fixed at (1, m_ii).
PairEstimate pairwise_prob(const RankMatrix& matrix, std::size_t k, std::size_t i);

/// Fraction of columns observed in rows s, t and i where both
/// value(s) <= value(i) and value(t) <= value(i). Requires s != t.
PairEstimate joint_prob(const RankMatrix& matrix, std::size_t s, std::size_t t, std::size_t i);

/// All N^2 pairwise estimates.
class DominanceEstimate {
public:
    DominanceEstimate(std::size_t entities, std::vector<double> probabilities,
                      std::vector<std::size_t> overlaps, std::vector<bool> defined);

    std::size_t entity_count() const noexcept { return n_; }

    /// p_hat[k][i], estimate of P(X_k <= X_i).
    double probability(std::size_t k, std::size_t i) const { return p_[k * n_ + i]; }
    std::size_t overlap(std::size_t k, std::size_t i) const { return overlaps_[k * n_ + i]; }
    /// False only for k != i with no common ranker under MissingPairPolicy::Exclude.
    bool defined(std::size_t k, std::size_t i) const { return defined_[k * n_ + i]; }
    bool all_defined() const noexcept;

private:
    std::size_t n_;
    std::vector<double> p_;
    std::vector<std::size_t> overlaps_;
    std::vector<bool> defined_;
};

DominanceEstimate dominance_matrix(const RankMatrix& matrix,
                                   MissingPairPolicy policy = MissingPairPolicy::Error);

}  // namespace rankci
