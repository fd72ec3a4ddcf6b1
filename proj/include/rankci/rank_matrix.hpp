#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankci {

/// Which end of a ranker's value scale marks the better entity. Ballots
/// (1 = best) are LowerIsBetter; simulated latent scores are HigherIsBetter.
enum class Orientation { LowerIsBetter, HigherIsBetter };

std::string to_string(Orientation orientation);

using Cell = std::optional<std::int64_t>;

enum class IssueKind {
    TooFewEntities,
    NoRankers,
    RaggedRow,
    DuplicateLabel,
    NonPositiveValue,
    DuplicateRank,
    EmptyColumn,
    EmptyRow,
};

struct RankIssue {
    IssueKind kind;
    std::size_t row = 0;
    std::size_t column = 0;
    std::int64_t value = 0;
    std::string label{};

    std::string message() const;
};

/// Thrown when a rank matrix violates its invariants. Carries every
/// violation found, not just the first.
class InvalidRankMatrix : public std::invalid_argument {
public:
    explicit InvalidRankMatrix(std::vector<RankIssue> issues);
    const std::vector<RankIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<RankIssue> issues_;
};

/// Lists every invariant violation of the given table.
std::vector<RankIssue> find_issues(const std::vector<std::string>& entities,
                                   const std::vector<std::vector<Cell>>& rows);

/// N x m matrix of per-ranker values with per-cell missingness. Each ranker
/// (column) is a strict ordering of the entities it ranked.
class RankMatrix {
public:
    /// Validates on construction; throws InvalidRankMatrix.
    RankMatrix(std::vector<std::string> entities,
               std::vector<std::vector<Cell>> rows,
               Orientation orientation,
               std::vector<std::string> rankers = {});

    std::size_t entity_count() const noexcept { return entities_.size(); }
    std::size_t ranker_count() const noexcept { return ranker_count_; }
    Orientation orientation() const noexcept { return orientation_; }

    const std::vector<std::string>& entities() const noexcept { return entities_; }
    const std::vector<std::string>& rankers() const noexcept { return rankers_; }
    const std::string& label(std::size_t entity) const { return entities_.at(entity); }

    Cell value(std::size_t entity, std::size_t ranker) const {
        return cells_[entity * ranker_count_ + ranker];
    }
    bool observed(std::size_t entity, std::size_t ranker) const {
        return cells_[entity * ranker_count_ + ranker].has_value();
    }
    std::span<const Cell> row(std::size_t entity) const {
        return {cells_.data() + entity * ranker_count_, ranker_count_};
    }

    std::size_t missing_count() const noexcept { return missing_; }
    bool complete() const noexcept { return missing_ == 0; }

    std::optional<std::size_t> find_entity(const std::string& label) const;

private:
    std::vector<std::string> entities_;
    std::vector<std::string> rankers_;
    std::size_t ranker_count_ = 0;
    std::vector<Cell> cells_;
    Orientation orientation_;
    std::size_t missing_ = 0;
};

/// Dense 1..#observed ranks of the column's observed entries in increasing
/// value order (rank 1 = smallest value). Missing entities map to nullopt.
std::vector<std::optional<int>> within_column_ranks(const RankMatrix& matrix, std::size_t column);

/// Same matrix with every column replaced by its within-column ranks.
RankMatrix to_within_column_ranks(const RankMatrix& matrix);

/// Rewrites a LowerIsBetter matrix so that larger values are better
/// (observed x -> #observed + 1 - rank(x)); HigherIsBetter input passes
/// through unchanged.
RankMatrix canonicalize(const RankMatrix& matrix);

/// Missingness bookkeeping: per-column missing rows, and pairwise / triple
/// overlap counts of co-observed columns.
class MissingIndex {
public:
    explicit MissingIndex(const RankMatrix& matrix);

    std::size_t entity_count() const noexcept { return n_; }
    std::size_t ranker_count() const noexcept { return m_; }

    /// Rows missing in column l.
    const std::vector<std::size_t>& missing_rows(std::size_t column) const { return missing_rows_.at(column); }

    /// Columns where entity k or entity i is missing.
    std::vector<std::size_t> missing_columns(std::size_t k, std::size_t i) const;

    /// m_ki: columns observed in both rows.
    std::size_t overlap(std::size_t k, std::size_t i) const { return overlap_[k * n_ + i]; }

    /// Columns observed in all three rows.
    std::size_t overlap(std::size_t s, std::size_t t, std::size_t i) const;

    bool observed(std::size_t entity, std::size_t column) const { return mask_[entity * m_ + column] != 0; }

private:
    std::size_t n_;
    std::size_t m_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::vector<std::size_t>> missing_rows_;
    std::vector<std::size_t> overlap_;
};

}  // namespace rankci
