#include "rankci/app/commands.hpp"

#include <json.hpp>

#include "rankci/app/csv.hpp"
#include "rankci/app/errors.hpp"
#include "rankci/dominance.hpp"

namespace rankci::app {

namespace {

using json = nlohmann::ordered_json;

void append_points(ResultsDocument& doc, const RankMatrix& matrix, const ScoreVector& scores, const RankVector& ranks,
                   const std::vector<double>* variances) {
    for (std::size_t i = 0; i < matrix.entity_count(); ++i) {
        ResultRecord rec;
        rec.entity = matrix.label(i);
        rec.criterion = to_string(scores.criterion);
        rec.mode = "point";
        rec.score = scores.scores[i];
        if (variances) rec.variance = (*variances)[i];
        rec.point_rank = ranks.display[i];
        doc.records.push_back(std::move(rec));
    }
}

}  // namespace

ResultsDocument cmd_rank(const RankMatrix& matrix) {
    ResultsDocument doc;
    const auto dominance = dominance_matrix(matrix);
    for (auto criterion : {Criterion::Cpdp, Criterion::Ctpdp}) {
        const auto model = fit_scores(matrix, dominance, criterion);
        append_points(doc, matrix, model.scores, model.ranks, &model.variances);
    }
    if (matrix.complete()) {
        const auto borda = borda_scores(matrix);
        append_points(doc, matrix, borda, scores_to_ranks(borda), nullptr);
        const auto copeland = copeland_scores(matrix);
        append_points(doc, matrix, copeland, scores_to_ranks(copeland), nullptr);
    }
    return doc;
}

ResultsDocument cmd_ci(const RankMatrix& matrix, const CiOptions& options) {
    if (options.criterion != Criterion::Cpdp && options.criterion != Criterion::Ctpdp) {
        throw AppError(ErrorCode::Unsupported, "rank intervals are available for cpdp and ctpdp only");
    }
    if (!(options.level > 0.0 && options.level < 1.0)) {
        throw AppError(ErrorCode::Usage, "--level must lie strictly between 0 and 1");
    }
    const auto model = fit_scores(matrix, options.criterion);
    const auto intervals = options.mode == IntervalMode::Simultaneous
                               ? simultaneous_rank_cis(model, options.level)
                               : individual_rank_cis(model, options.level, options.convention);
    ResultsDocument doc;
    for (std::size_t i = 0; i < matrix.entity_count(); ++i) {
        ResultRecord rec;
        rec.entity = matrix.label(i);
        rec.criterion = to_string(options.criterion);
        rec.mode = to_string(options.mode);
        rec.level = options.level;
        rec.score = model.scores.scores[i];
        rec.variance = model.variances[i];
        rec.point_rank = model.ranks.display[i];
        rec.ci_lower = intervals[i].display_lower;
        rec.ci_upper = intervals[i].display_upper;
        doc.records.push_back(std::move(rec));
    }
    return doc;
}

sim::Scenario load_scenario(std::istream& in) {
    sim::Scenario s;
    try {
        const json j = json::parse(in);
        s.name = j.value("name", std::string("custom"));
        s.m = j.value("m", std::size_t{10});
        s.means = j.at("means").get<std::vector<double>>();
        s.variances = j.at("variances").get<std::vector<double>>();
        s.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("missingness") && !j["missingness"].is_null()) {
            const auto& miss = j["missingness"];
            s.missingness = sim::Missingness{miss.at("row_fraction").get<double>(),
                                             miss.at("max_cell_fraction").get<double>()};
        }
        sim::validate(s);
    } catch (const json::exception& e) {
        throw AppError(ErrorCode::InvalidScenario, std::string("scenario file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw AppError(ErrorCode::InvalidScenario, std::string("scenario file: ") + e.what());
    }
    return s;
}

std::vector<std::size_t> parse_m_values(const std::string& text) {
    auto bad = [&] { return AppError(ErrorCode::Usage, "bad m specification '" + text + "' (use 30 or 5:55:5)"); };
    std::vector<long long> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        const std::string piece = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        try {
            std::size_t used = 0;
            parts.push_back(std::stoll(piece, &used));
            if (used != piece.size()) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) parts = {parts[0], parts[0], 1};
    if (parts.size() != 3 || parts[0] < 1 || parts[1] < parts[0] || parts[2] < 1) throw bad();
    std::vector<std::size_t> out;
    for (long long m = parts[0]; m <= parts[1]; m += parts[2]) out.push_back(static_cast<std::size_t>(m));
    return out;
}

std::vector<sim::CoverageReport> cmd_simulate(const sim::Scenario& scenario, const std::vector<std::size_t>& m_values,
                                              const sim::CoverageConfig& config) {
    if (config.reps == 0) throw AppError(ErrorCode::Usage, "--reps must be at least 1");
    std::vector<sim::CoverageReport> reports;
    for (std::size_t m : m_values) {
        auto s = scenario;
        s.m = m;
        reports.push_back(sim::coverage_experiment(s, config));
    }
    return reports;
}

void write_coverage_csv(const std::vector<sim::CoverageReport>& reports, std::ostream& out) {
    out << "case,criterion,mode,m,reps,coverage,mc_stderr\n";
    for (const auto& r : reports) {
        out << csv_escape(r.scenario) << ',' << to_string(r.criterion) << ',' << to_string(r.mode) << ',' << r.m << ','
            << r.reps << ',' << format_number(r.coverage) << ',' << format_number(r.mc_stderr) << '\n';
    }
}

void write_coverage_structured(const std::vector<sim::CoverageReport>& reports, std::ostream& out) {
    json rows = json::array();
    for (const auto& r : reports) {
        json row{{"case", r.scenario},     {"criterion", to_string(r.criterion)}, {"mode", to_string(r.mode)},
                 {"m", r.m},               {"reps", r.reps},                      {"level", r.level},
                 {"coverage", r.coverage}, {"mc_stderr", r.mc_stderr}};
        if (!r.entity_coverage.empty()) row["entity_coverage"] = r.entity_coverage;
        rows.push_back(std::move(row));
    }
    out << json{{"schema", "rankci.coverage/1"}, {"reports", rows}}.dump(2) << '\n';
}

void write_truth_csv(const sim::Scenario& scenario, const sim::TruthTable& truth, std::ostream& out) {
    out << "entity,mean,variance,cpdp,cpdp_rank,ctpdp,ctpdp_rank,mean_rank\n";
    for (std::size_t i = 0; i < truth.entities; ++i) {
        out << 'X' << (i + 1) << ',' << format_number(scenario.means[i]) << ',' << format_number(scenario.variances[i])
            << ',' << format_number(truth.cpdp[i]) << ',' << truth.cpdp_ranks[i] << ','
            << static_cast<int>(truth.ctpdp[i]) << ',' << truth.ctpdp_ranks[i] << ',' << truth.mean_ranks[i] << '\n';
    }
}

std::vector<int> method_display_ranks(const RankMatrix& matrix, Criterion criterion) {
    switch (criterion) {
        case Criterion::Cpdp:
        case Criterion::Ctpdp: return fit_scores(matrix, criterion).ranks.display;
        case Criterion::Borda:
        case Criterion::Copeland:
            if (!matrix.complete()) {
                throw AppError(ErrorCode::Unsupported,
                               to_string(criterion) + " needs complete data; supply its ranks with --ranks");
            }
            return criterion == Criterion::Borda ? borda_ranks(matrix).display : copeland_ranks(matrix).display;
    }
    throw AppError(ErrorCode::Internal, "unhandled criterion");
}

std::vector<int> read_method_ranks(std::istream& in, const RankMatrix& matrix) {
    const auto rows = read_csv(in);
    std::vector<std::optional<int>> ranks(matrix.entity_count());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r].fields;
        if (f.size() != 2) {
            throw AppError(ErrorCode::MalformedCsv, "ranks file line " + std::to_string(rows[r].line) +
                                                        ": expected entity,rank");
        }
        const auto index = matrix.find_entity(f[0]);
        if (!index) {
            throw AppError(ErrorCode::MissingEntity, "ranks file names unknown entity '" + f[0] + "'");
        }
        try {
            std::size_t used = 0;
            const int value = std::stoi(f[1], &used);
            if (used != f[1].size() || value < 1) throw std::invalid_argument("rank");
            ranks[*index] = value;
        } catch (const std::logic_error&) {
            throw AppError(ErrorCode::MalformedCsv,
                           "ranks file line " + std::to_string(rows[r].line) + ": '" + f[1] + "' is not a positive rank");
        }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (!ranks[i]) throw AppError(ErrorCode::MissingEntity, "ranks file has no rank for '" + matrix.label(i) + "'");
        out.push_back(*ranks[i]);
    }
    return out;
}

std::vector<long long> sse_by_ballot(const RankMatrix& matrix, const std::vector<int>& display_ranks) {
    if (display_ranks.size() != matrix.entity_count()) {
        throw AppError(ErrorCode::MissingEntity, "method ranks must cover every entity");
    }
    const std::size_t n = matrix.entity_count();
    std::vector<long long> out;
    for (std::size_t c = 0; c < matrix.ranker_count(); ++c) {
        const auto ascending = within_column_ranks(matrix, c);
        int observed = 0;
        for (const auto& r : ascending) observed += r ? 1 : 0;
        long long sse = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!ascending[i]) continue;
            const int ballot = matrix.orientation() == Orientation::LowerIsBetter ? *ascending[i]
                                                                                  : observed + 1 - *ascending[i];
            int method = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (ascending[j] && display_ranks[j] < display_ranks[i]) ++method;
            }
            const long long d = ballot - method;
            sse += d * d;
        }
        out.push_back(sse);
    }
    return out;
}

SseResult cmd_sse(const RankMatrix& matrix, const std::string& method, const std::vector<int>& display_ranks) {
    SseResult result{method, 0, sse_by_ballot(matrix, display_ranks)};
    for (auto v : result.per_ballot) result.total += v;
    return result;
}

void write_sse_csv(const RankMatrix& matrix, const std::vector<SseResult>& results, bool per_ballot, std::ostream& out) {
    out << "method,ballot,sse\n";
    for (const auto& r : results) {
        if (per_ballot) {
            for (std::size_t c = 0; c < r.per_ballot.size(); ++c) {
                out << csv_escape(r.method) << ',' << csv_escape(matrix.rankers()[c]) << ',' << r.per_ballot[c] << '\n';
            }
        }
        out << csv_escape(r.method) << ",total," << r.total << '\n';
    }
}

void write_sse_structured(const RankMatrix& matrix, const std::vector<SseResult>& results, std::ostream& out) {
    json rows = json::array();
    for (const auto& r : results) {
        json ballots = json::object();
        for (std::size_t c = 0; c < r.per_ballot.size(); ++c) ballots[matrix.rankers()[c]] = r.per_ballot[c];
        rows.push_back({{"method", r.method}, {"total", r.total}, {"per_ballot", ballots}});
    }
    out << json{{"schema", "rankci.sse/1"}, {"results", rows}}.dump(2) << '\n';
}

}  // namespace rankci::app
