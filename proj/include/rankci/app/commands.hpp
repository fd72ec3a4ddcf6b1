#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rankci/app/results.hpp"
#include "rankci/inference.hpp"
#include "rankci/rank_matrix.hpp"
#include "rankci/simulation.hpp"

namespace rankci::app {

/// Point ranks for CPDP and CTPDP, plus Borda and Copeland when the matrix
/// is complete.
ResultsDocument cmd_rank(const RankMatrix& matrix);

struct CiOptions {
    double level = 0.95;
    IntervalMode mode = IntervalMode::Simultaneous;
    Criterion criterion = Criterion::Cpdp;
    QuantileConvention convention = QuantileConvention::UpperTail;
};

ResultsDocument cmd_ci(const RankMatrix& matrix, const CiOptions& options);

/// Reads {"name", "m", "means", "variances", "missingness": {"row_fraction",
/// "max_cell_fraction"}, "seed"}. Throws AppError (InvalidScenario).
sim::Scenario load_scenario(std::istream& in);

/// "30" or "5:55:5" (inclusive).
std::vector<std::size_t> parse_m_values(const std::string& text);

std::vector<sim::CoverageReport> cmd_simulate(const sim::Scenario& scenario, const std::vector<std::size_t>& m_values,
                                              const sim::CoverageConfig& config);

void write_coverage_csv(const std::vector<sim::CoverageReport>& reports, std::ostream& out);
void write_coverage_structured(const std::vector<sim::CoverageReport>& reports, std::ostream& out);
void write_truth_csv(const sim::Scenario& scenario, const sim::TruthTable& truth, std::ostream& out);

/// Display ranks (1 = best, competition-min) of a built-in criterion.
std::vector<int> method_display_ranks(const RankMatrix& matrix, Criterion criterion);

/// Reads "entity,rank" rows (header required). Every entity of the matrix
/// must appear; throws AppError (MissingEntity) otherwise.
std::vector<int> read_method_ranks(std::istream& in, const RankMatrix& matrix);

/// Per-ballot squared error: the method's display ranks restricted to the
/// ballot's observed entities and re-ranked (competition-min), against the
/// ballot's dense within-column display ranks.
std::vector<long long> sse_by_ballot(const RankMatrix& matrix, const std::vector<int>& display_ranks);

struct SseResult {
    std::string method;
    long long total = 0;
    std::vector<long long> per_ballot;
};

SseResult cmd_sse(const RankMatrix& matrix, const std::string& method, const std::vector<int>& display_ranks);

void write_sse_csv(const RankMatrix& matrix, const std::vector<SseResult>& results, bool per_ballot, std::ostream& out);
void write_sse_structured(const RankMatrix& matrix, const std::vector<SseResult>& results, std::ostream& out);

}  // namespace rankci::app
