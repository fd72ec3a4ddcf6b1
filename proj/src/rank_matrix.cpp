#include "rankci/rank_matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rankci {

std::string to_string(Orientation orientation) {
    return orientation == Orientation::LowerIsBetter ? "lower-better" : "higher-better";
}

std::string RankIssue::message() const {
    std::ostringstream out;
    switch (kind) {
        case IssueKind::TooFewEntities:
            out << "at least two entities are required";
            break;
        case IssueKind::NoRankers:
            out << "at least one ranker column is required";
            break;
        case IssueKind::RaggedRow:
            out << "row " << row << " (" << label << ") has " << value << " cells, expected " << column;
            break;
        case IssueKind::DuplicateLabel:
            out << "duplicate entity label '" << label << "' at row " << row;
            break;
        case IssueKind::NonPositiveValue:
            out << "non-positive value " << value << " at row " << row << " (" << label << "), column " << column;
            break;
        case IssueKind::DuplicateRank:
            out << "column " << column << " contains rank value " << value << " more than once";
            break;
        case IssueKind::EmptyColumn:
            out << "column " << column << " has no observed entries";
            break;
        case IssueKind::EmptyRow:
            out << "row " << row << " (" << label << ") has no observed entries";
            break;
    }
    return out.str();
}

namespace {

std::string join_messages(const std::vector<RankIssue>& issues) {
    std::string text = "invalid rank matrix:";
    for (const auto& issue : issues) {
        text += "\n  - " + issue.message();
    }
    return text;
}

}  // namespace

InvalidRankMatrix::InvalidRankMatrix(std::vector<RankIssue> issues)
    : std::invalid_argument(join_messages(issues)), issues_(std::move(issues)) {}

std::vector<RankIssue> find_issues(const std::vector<std::string>& entities,
                                   const std::vector<std::vector<Cell>>& rows) {
    std::vector<RankIssue> issues;
    const std::size_t n = rows.size();
    if (n < 2) issues.push_back({.kind = IssueKind::TooFewEntities});
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    if (n > 0 && m == 0) issues.push_back({.kind = IssueKind::NoRankers});

    auto label_of = [&](std::size_t r) { return r < entities.size() ? entities[r] : std::string{}; };

    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t r = 0; r < entities.size(); ++r) {
        if (!seen.emplace(entities[r], r).second) {
            issues.push_back({.kind = IssueKind::DuplicateLabel, .row = r, .label = entities[r]});
        }
    }

    bool ragged = false;
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != m) {
            ragged = true;
            issues.push_back({.kind = IssueKind::RaggedRow,
                              .row = r,
                              .column = m,
                              .value = static_cast<std::int64_t>(rows[r].size()),
                              .label = label_of(r)});
        }
    }
    if (ragged || m == 0) return issues;

    for (std::size_t r = 0; r < n; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < m; ++c) {
            const auto& cell = rows[r][c];
            if (!cell) continue;
            any = true;
            if (*cell <= 0) {
                issues.push_back({.kind = IssueKind::NonPositiveValue,
                                  .row = r,
                                  .column = c,
                                  .value = *cell,
                                  .label = label_of(r)});
            }
        }
        if (!any) issues.push_back({.kind = IssueKind::EmptyRow, .row = r, .label = label_of(r)});
    }

    for (std::size_t c = 0; c < m; ++c) {
        std::map<std::int64_t, int> counts;
        for (std::size_t r = 0; r < n; ++r) {
            if (rows[r][c]) ++counts[*rows[r][c]];
        }
        if (counts.empty()) {
            issues.push_back({.kind = IssueKind::EmptyColumn, .column = c});
            continue;
        }
        for (const auto& [value, count] : counts) {
            if (count > 1) issues.push_back({.kind = IssueKind::DuplicateRank, .column = c, .value = value});
        }
    }
    return issues;
}

RankMatrix::RankMatrix(std::vector<std::string> entities,
                       std::vector<std::vector<Cell>> rows,
                       Orientation orientation,
                       std::vector<std::string> rankers)
    : entities_(std::move(entities)), orientation_(orientation) {
    if (entities_.size() != rows.size()) {
        throw std::invalid_argument("RankMatrix: label count does not match row count");
    }
    if (auto issues = find_issues(entities_, rows); !issues.empty()) {
        throw InvalidRankMatrix(std::move(issues));
    }
    ranker_count_ = rows.front().size();
    if (rankers.empty()) {
        for (std::size_t c = 0; c < ranker_count_; ++c) rankers.push_back("r" + std::to_string(c + 1));
    } else if (rankers.size() != ranker_count_) {
        throw std::invalid_argument("RankMatrix: ranker label count does not match column count");
    }
    rankers_ = std::move(rankers);

    cells_.reserve(entities_.size() * ranker_count_);
    for (const auto& row : rows) {
        for (const auto& cell : row) {
            if (!cell) ++missing_;
            cells_.push_back(cell);
        }
    }
}

std::optional<std::size_t> RankMatrix::find_entity(const std::string& label) const {
    const auto it = std::find(entities_.begin(), entities_.end(), label);
    if (it == entities_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - entities_.begin());
}

std::vector<std::optional<int>> within_column_ranks(const RankMatrix& matrix, std::size_t column) {
    const std::size_t n = matrix.entity_count();
    std::vector<std::size_t> present;
    for (std::size_t r = 0; r < n; ++r) {
        if (matrix.observed(r, column)) present.push_back(r);
    }
    // Stable on entity index for equal values.
    std::stable_sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) {
        return *matrix.value(a, column) < *matrix.value(b, column);
    });
    std::vector<std::optional<int>> ranks(n);
    for (std::size_t pos = 0; pos < present.size(); ++pos) {
        ranks[present[pos]] = static_cast<int>(pos + 1);
    }
    return ranks;
}

namespace {

RankMatrix rebuild(const RankMatrix& matrix, Orientation orientation, bool reverse) {
    const std::size_t n = matrix.entity_count();
    const std::size_t m = matrix.ranker_count();
    std::vector<std::vector<Cell>> rows(n, std::vector<Cell>(m));
    for (std::size_t c = 0; c < m; ++c) {
        const auto ranks = within_column_ranks(matrix, c);
        const auto observed = std::count_if(ranks.begin(), ranks.end(), [](const auto& r) { return r.has_value(); });
        for (std::size_t r = 0; r < n; ++r) {
            if (!ranks[r]) continue;
            rows[r][c] = reverse ? observed + 1 - *ranks[r] : *ranks[r];
        }
    }
    return RankMatrix(matrix.entities(), std::move(rows), orientation, matrix.rankers());
}

}  // namespace

RankMatrix to_within_column_ranks(const RankMatrix& matrix) {
    return rebuild(matrix, matrix.orientation(), false);
}

RankMatrix canonicalize(const RankMatrix& matrix) {
    if (matrix.orientation() == Orientation::HigherIsBetter) return matrix;
    return rebuild(matrix, Orientation::HigherIsBetter, true);
}

MissingIndex::MissingIndex(const RankMatrix& matrix)
    : n_(matrix.entity_count()),
      m_(matrix.ranker_count()),
      mask_(n_ * m_, 0),
      missing_rows_(m_),
      overlap_(n_ * n_, 0) {
    for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < m_; ++c) {
            if (matrix.observed(r, c)) {
                mask_[r * m_ + c] = 1;
            } else {
                missing_rows_[c].push_back(r);
            }
        }
    }
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i = k; i < n_; ++i) {
            std::size_t count = 0;
            for (std::size_t c = 0; c < m_; ++c) count += mask_[k * m_ + c] & mask_[i * m_ + c];
            overlap_[k * n_ + i] = count;
            overlap_[i * n_ + k] = count;
        }
    }
}

std::vector<std::size_t> MissingIndex::missing_columns(std::size_t k, std::size_t i) const {
    std::vector<std::size_t> columns;
    for (std::size_t c = 0; c < m_; ++c) {
        if (!(mask_[k * m_ + c] && mask_[i * m_ + c])) columns.push_back(c);
    }
    return columns;
}

std::size_t MissingIndex::overlap(std::size_t s, std::size_t t, std::size_t i) const {
    std::size_t count = 0;
    for (std::size_t c = 0; c < m_; ++c) {
        count += mask_[s * m_ + c] & mask_[t * m_ + c] & mask_[i * m_ + c];
    }
    return count;
}

}  // namespace rankci
