#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rankci::app {

/// One row of a results document. Point-only records leave the level and
/// interval empty; Borda and Copeland records leave the variance empty.
struct ResultRecord {
    std::string entity;
    std::string criterion;
    std::string mode;  ///< point, simultaneous or individual
    std::optional<double> level;
    double score = 0.0;
    std::optional<double> variance;
    int point_rank = 0;
    std::optional<int> ci_lower;
    std::optional<int> ci_upper;

    bool operator==(const ResultRecord&) const = default;
};

struct ResultsDocument {
    std::vector<ResultRecord> records;

    bool operator==(const ResultsDocument&) const = default;
};

inline constexpr const char* kResultsHeader = "entity,criterion,mode,level,score,variance,point_rank,ci_lower,ci_upper";
inline constexpr const char* kResultsSchema = "rankci.results/1";

/// Fixed 6-decimal rendering used by every numeric output.
std::string format_number(double value);

void write_csv(const ResultsDocument& doc, std::ostream& out);
void write_structured(const ResultsDocument& doc, std::ostream& out);

/// Parses what write_csv / write_structured emit. Throws AppError
/// (MalformedCsv) on a wrong header, field count or number.
ResultsDocument read_results_csv(std::istream& in);
ResultsDocument read_results_structured(std::istream& in);

}  // namespace rankci::app
