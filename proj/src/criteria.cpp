#include "rankci/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rankci {

std::string to_string(Criterion criterion) {
    switch (criterion) {
        case Criterion::Cpdp: return "cpdp";
        case Criterion::Ctpdp: return "ctpdp";
        case Criterion::Borda: return "borda";
        case Criterion::Copeland: return "copeland";
    }
    return "unknown";
}

Criterion parse_criterion(const std::string& name) {
    if (name == "cpdp") return Criterion::Cpdp;
    if (name == "ctpdp") return Criterion::Ctpdp;
    if (name == "borda") return Criterion::Borda;
    if (name == "copeland") return Criterion::Copeland;
    throw std::invalid_argument("unknown criterion '" + name + "'");
}

bool scores_tied(double a, double b) noexcept {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

ScoreVector cpdp_scores(const DominanceEstimate& dominance, Orientation better) {
    const std::size_t n = dominance.entity_count();
    ScoreVector out{Criterion::Cpdp, better, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (dominance.defined(k, i)) sum += dominance.probability(k, i);
        }
        out.scores[i] = sum;
    }
    return out;
}

ScoreVector ctpdp_scores(const DominanceEstimate& dominance, Orientation better) {
    const std::size_t n = dominance.entity_count();
    ScoreVector out{Criterion::Ctpdp, better, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        int count = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (dominance.defined(k, i) && dominance.probability(k, i) > 0.5) ++count;
        }
        out.scores[i] = count;
    }
    return out;
}

std::vector<int> ascending_min_ranks(const std::vector<double>& scores) {
    std::vector<int> ranks(scores.size(), 1);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        for (std::size_t k = 0; k < scores.size(); ++k) {
            if (scores[k] < scores[i] && !scores_tied(scores[k], scores[i])) ++ranks[i];
        }
    }
    return ranks;
}

RankVector scores_to_ranks(const ScoreVector& scores) {
    const auto& s = scores.scores;
    const std::size_t n = s.size();
    const bool higher_better = scores.better == Orientation::HigherIsBetter;
    RankVector out;
    out.display.assign(n, 1);
    out.ascending_count.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const bool tied = scores_tied(s[k], s[i]);
            if (tied || s[k] < s[i]) ++out.ascending_count[i];
            if (tied) continue;
            if (higher_better ? s[k] > s[i] : s[k] < s[i]) ++out.display[i];
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.display[a] < out.display[b]; });
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t e = order[pos];
        if (pos > 0 && out.display[order[pos - 1]] == out.display[e]) {
            out.tie_groups.back().push_back(e);
        } else {
            out.tie_groups.push_back({e});
        }
    }
    return out;
}

namespace {

void require_complete(const RankMatrix& matrix, const char* method) {
    if (!matrix.complete()) {
        throw std::invalid_argument(std::string(method) + " is only defined for complete data");
    }
}

}  // namespace

ScoreVector borda_scores(const RankMatrix& matrix) {
    require_complete(matrix, "Borda count");
    const auto canonical = canonicalize(matrix);
    const std::size_t n = canonical.entity_count();
    ScoreVector out{Criterion::Borda, Orientation::HigherIsBetter, std::vector<double>(n, 0.0)};
    for (std::size_t c = 0; c < canonical.ranker_count(); ++c) {
        const auto ranks = within_column_ranks(canonical, c);
        for (std::size_t i = 0; i < n; ++i) out.scores[i] += *ranks[i];
    }
    return out;
}

RankVector borda_ranks(const RankMatrix& matrix) {
    return scores_to_ranks(borda_scores(matrix));
}

ScoreVector copeland_scores(const RankMatrix& matrix) {
    require_complete(matrix, "Copeland method");
    const auto canonical = canonicalize(matrix);
    const std::size_t n = canonical.entity_count();
    const std::size_t m = canonical.ranker_count();
    ScoreVector out{Criterion::Copeland, Orientation::HigherIsBetter, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            std::size_t beats = 0;
            for (std::size_t c = 0; c < m; ++c) beats += *canonical.value(i, c) > *canonical.value(k, c) ? 1 : 0;
            if (2 * beats > m) {
                out.scores[i] += 1.0;
            } else if (2 * beats == m) {
                out.scores[i] += 0.5;
            }
        }
    }
    return out;
}

RankVector copeland_ranks(const RankMatrix& matrix) {
    return scores_to_ranks(copeland_scores(matrix));
}

bool has_pairwise_split(const DominanceEstimate& dominance) {
    const std::size_t n = dominance.entity_count();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) {
            if (dominance.defined(k, i) && dominance.probability(k, i) == 0.5) return true;
        }
    }
    return false;
}

}  // namespace rankci
