#include "rankci/dominance.hpp"

#include <algorithm>
#include <string>

namespace rankci {

namespace {

std::string describe(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::string text = "no common ranker for";
    const std::size_t shown = std::min<std::size_t>(pairs.size(), 8);
    for (std::size_t j = 0; j < shown; ++j) {
        text += " (" + std::to_string(pairs[j].first) + "," + std::to_string(pairs[j].second) + ")";
    }
    if (pairs.size() > shown) text += " and " + std::to_string(pairs.size() - shown) + " more";
    return text;
}

void check_index(const RankMatrix& matrix, std::size_t index) {
    if (index >= matrix.entity_count()) throw std::out_of_range("entity index out of range");
}

}  // namespace

NoCommonRanker::NoCommonRanker(std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : std::runtime_error(describe(pairs)), pairs_(std::move(pairs)) {}

PairEstimate pairwise_prob(const RankMatrix& matrix, std::size_t k, std::size_t i) {
    check_index(matrix, k);
    check_index(matrix, i);
    std::size_t overlap = 0;
    std::size_t hits = 0;
    for (std::size_t c = 0; c < matrix.ranker_count(); ++c) {
        const auto vk = matrix.value(k, c);
        const auto vi = matrix.value(i, c);
        if (!vk || !vi) continue;
        ++overlap;
        hits += *vk <= *vi ? 1 : 0;
    }
    if (k == i) return {1.0, overlap};
    if (overlap == 0) throw NoCommonRanker({{k, i}});
    return {static_cast<double>(hits) / static_cast<double>(overlap), overlap};
}

PairEstimate joint_prob(const RankMatrix& matrix, std::size_t s, std::size_t t, std::size_t i) {
    check_index(matrix, s);
    check_index(matrix, t);
    check_index(matrix, i);
    if (s == t) throw std::invalid_argument("joint_prob: s and t must differ");
    std::size_t overlap = 0;
    std::size_t hits = 0;
    for (std::size_t c = 0; c < matrix.ranker_count(); ++c) {
        const auto vs = matrix.value(s, c);
        const auto vt = matrix.value(t, c);
        const auto vi = matrix.value(i, c);
        if (!vs || !vt || !vi) continue;
        ++overlap;
        hits += (*vs <= *vi && *vt <= *vi) ? 1 : 0;
    }
    if (overlap == 0) throw NoCommonRanker({{s, i}, {t, i}});
    return {static_cast<double>(hits) / static_cast<double>(overlap), overlap};
}

DominanceEstimate::DominanceEstimate(std::size_t entities, std::vector<double> probabilities,
                                     std::vector<std::size_t> overlaps, std::vector<bool> defined)
    : n_(entities), p_(std::move(probabilities)), overlaps_(std::move(overlaps)), defined_(std::move(defined)) {
    if (p_.size() != n_ * n_ || overlaps_.size() != n_ * n_ || defined_.size() != n_ * n_) {
        throw std::invalid_argument("DominanceEstimate: grid sizes do not match entity count");
    }
}

bool DominanceEstimate::all_defined() const noexcept {
    return std::all_of(defined_.begin(), defined_.end(), [](bool d) { return d; });
}

DominanceEstimate dominance_matrix(const RankMatrix& matrix, MissingPairPolicy policy) {
    const std::size_t n = matrix.entity_count();
    const std::size_t m = matrix.ranker_count();
    std::vector<double> p(n * n, 0.0);
    std::vector<std::size_t> overlaps(n * n, 0);
    std::vector<bool> defined(n * n, true);
    std::vector<std::pair<std::size_t, std::size_t>> missing;

    for (std::size_t k = 0; k < n; ++k) {
        const auto row_k = matrix.row(k);
        for (std::size_t i = k; i < n; ++i) {
            const auto row_i = matrix.row(i);
            std::size_t overlap = 0;
            std::size_t k_le_i = 0;
            std::size_t i_le_k = 0;
            for (std::size_t c = 0; c < m; ++c) {
                if (!row_k[c] || !row_i[c]) continue;
                ++overlap;
                k_le_i += *row_k[c] <= *row_i[c] ? 1 : 0;
                i_le_k += *row_i[c] <= *row_k[c] ? 1 : 0;
            }
            overlaps[k * n + i] = overlap;
            overlaps[i * n + k] = overlap;
            if (k == i) {
                p[k * n + k] = 1.0;
                continue;
            }
            if (overlap == 0) {
                missing.emplace_back(k, i);
                defined[k * n + i] = false;
                defined[i * n + k] = false;
                continue;
            }
            p[k * n + i] = static_cast<double>(k_le_i) / static_cast<double>(overlap);
            p[i * n + k] = static_cast<double>(i_le_k) / static_cast<double>(overlap);
        }
    }
    if (!missing.empty() && policy == MissingPairPolicy::Error) throw NoCommonRanker(std::move(missing));
    return DominanceEstimate(n, std::move(p), std::move(overlaps), std::move(defined));
}

}  // namespace rankci
