#include "rankci/app/input.hpp"

#include <charconv>
#include <fstream>

#include "rankci/app/csv.hpp"
#include "rankci/app/errors.hpp"

namespace rankci::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

ErrorCode code_for(IssueKind kind) {
    switch (kind) {
        case IssueKind::DuplicateLabel: return ErrorCode::DuplicateLabel;
        case IssueKind::DuplicateRank: return ErrorCode::DuplicateRank;
        case IssueKind::EmptyColumn: return ErrorCode::EmptyColumn;
        case IssueKind::RaggedRow: return ErrorCode::MalformedCsv;
        default: return ErrorCode::InvalidMatrix;
    }
}

}  // namespace

Orientation parse_orientation(const std::string& name) {
    if (name == "lower-better") return Orientation::LowerIsBetter;
    if (name == "higher-better") return Orientation::HigherIsBetter;
    throw AppError(ErrorCode::Usage, "unknown orientation '" + name + "' (expected lower-better or higher-better)");
}

RankMatrix parse_input(std::istream& in, Orientation orientation, const std::string& source) {
    const auto records = read_csv(in);
    if (records.empty()) throw AppError(ErrorCode::MalformedCsv, source + ": empty file");
    const auto& header = records.front().fields;
    if (header.size() < 2) {
        throw AppError(ErrorCode::MalformedCsv, source + ": header needs an entity column and at least one ranker");
    }
    std::vector<std::string> rankers;
    for (std::size_t c = 1; c < header.size(); ++c) rankers.push_back(trim(header[c]));

    std::vector<std::string> labels;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::size_t> lines;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size()) {
            throw AppError(ErrorCode::MalformedCsv, source + ": line " + std::to_string(rec.line) + " has " +
                                                        std::to_string(rec.fields.size()) + " fields, header has " +
                                                        std::to_string(header.size()));
        }
        labels.push_back(trim(rec.fields[0]));
        std::vector<Cell> row;
        for (std::size_t c = 1; c < rec.fields.size(); ++c) {
            const std::string cell = trim(rec.fields[c]);
            if (cell.empty() || cell == "NA") {
                row.emplace_back();
                continue;
            }
            std::int64_t value = 0;
            const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || end != cell.data() + cell.size()) {
                throw AppError(ErrorCode::MalformedCsv, source + ": line " + std::to_string(rec.line) + ", column '" +
                                                            rankers[c - 1] + "': '" + cell + "' is not an integer");
            }
            row.emplace_back(value);
        }
        rows.push_back(std::move(row));
        lines.push_back(rec.line);
    }

    const auto issues = find_issues(labels, rows);
    if (!issues.empty()) {
        const auto& first = issues.front();
        std::string where;
        switch (first.kind) {
            case IssueKind::DuplicateLabel:
                where = "line " + std::to_string(lines[first.row]) + ": duplicate entity label '" + first.label + "'";
                break;
            case IssueKind::DuplicateRank:
                where = "column '" + rankers[first.column] + "' contains value " + std::to_string(first.value) +
                        " more than once";
                break;
            case IssueKind::EmptyColumn:
                where = "column '" + rankers[first.column] + "' has no observed entries";
                break;
            case IssueKind::NonPositiveValue:
                where = "line " + std::to_string(lines[first.row]) + ", column '" + rankers[first.column] +
                        "': value " + std::to_string(first.value) + " is not positive";
                break;
            case IssueKind::EmptyRow:
                where = "line " + std::to_string(lines[first.row]) + ": entity '" + first.label + "' has no values";
                break;
            default:
                where = first.message();
        }
        std::string message = source + ": " + where;
        if (issues.size() > 1) message += " (" + std::to_string(issues.size() - 1) + " further problem(s))";
        throw AppError(code_for(first.kind), message);
    }
    return RankMatrix(std::move(labels), std::move(rows), orientation, std::move(rankers));
}

RankMatrix parse_input(const std::string& path, Orientation orientation) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AppError(ErrorCode::Io, "cannot open '" + path + "'");
    return parse_input(in, orientation, path);
}

}  // namespace rankci::app
