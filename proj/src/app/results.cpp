#include "rankci/app/results.hpp"

#include <cstdio>
#include <json.hpp>

#include "rankci/app/csv.hpp"
#include "rankci/app/errors.hpp"

namespace rankci::app {

namespace {

using json = nlohmann::ordered_json;

template <typename T>
std::string opt_text(const std::optional<T>& value) {
    if (!value) return {};
    if constexpr (std::is_same_v<T, double>) {
        return format_number(*value);
    } else {
        return std::to_string(*value);
    }
}

double parse_double(const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw AppError(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": '" + text + "' is not a number");
}

int parse_int(const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw AppError(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": '" + text + "' is not an integer");
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

void write_csv(const ResultsDocument& doc, std::ostream& out) {
    out << kResultsHeader << '\n';
    for (const auto& r : doc.records) {
        out << csv_escape(r.entity) << ',' << r.criterion << ',' << r.mode << ',' << opt_text(r.level) << ','
            << format_number(r.score) << ',' << opt_text(r.variance) << ',' << r.point_rank << ','
            << opt_text(r.ci_lower) << ',' << opt_text(r.ci_upper) << '\n';
    }
}

void write_structured(const ResultsDocument& doc, std::ostream& out) {
    json records = json::array();
    for (const auto& r : doc.records) {
        records.push_back({{"entity", r.entity},
                           {"criterion", r.criterion},
                           {"mode", r.mode},
                           {"level", opt_json(r.level)},
                           {"score", r.score},
                           {"variance", opt_json(r.variance)},
                           {"point_rank", r.point_rank},
                           {"ci_lower", opt_json(r.ci_lower)},
                           {"ci_upper", opt_json(r.ci_upper)}});
    }
    out << json{{"schema", kResultsSchema}, {"records", records}}.dump(2) << '\n';
}

ResultsDocument read_results_csv(std::istream& in) {
    const auto rows = read_csv(in);
    if (rows.empty()) throw AppError(ErrorCode::MalformedCsv, "results file is empty");
    std::string header;
    for (std::size_t c = 0; c < rows[0].fields.size(); ++c) header += (c ? "," : "") + rows[0].fields[c];
    if (header != kResultsHeader) throw AppError(ErrorCode::MalformedCsv, "unexpected results header '" + header + "'");
    ResultsDocument doc;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r].fields;
        const auto line = rows[r].line;
        if (f.size() != 9) {
            throw AppError(ErrorCode::MalformedCsv, "line " + std::to_string(line) + ": expected 9 fields");
        }
        ResultRecord rec;
        rec.entity = f[0];
        rec.criterion = f[1];
        rec.mode = f[2];
        if (!f[3].empty()) rec.level = parse_double(f[3], line);
        rec.score = parse_double(f[4], line);
        if (!f[5].empty()) rec.variance = parse_double(f[5], line);
        rec.point_rank = parse_int(f[6], line);
        if (!f[7].empty()) rec.ci_lower = parse_int(f[7], line);
        if (!f[8].empty()) rec.ci_upper = parse_int(f[8], line);
        doc.records.push_back(std::move(rec));
    }
    return doc;
}

ResultsDocument read_results_structured(std::istream& in) {
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw AppError(ErrorCode::MalformedCsv, std::string("results document is not valid JSON: ") + e.what());
    }
    if (root.value("schema", "") != kResultsSchema) {
        throw AppError(ErrorCode::MalformedCsv, "results document has an unknown schema");
    }
    ResultsDocument doc;
    try {
        for (const auto& j : root.at("records")) {
            ResultRecord rec;
            rec.entity = j.at("entity").get<std::string>();
            rec.criterion = j.at("criterion").get<std::string>();
            rec.mode = j.at("mode").get<std::string>();
            if (!j.at("level").is_null()) rec.level = j["level"].get<double>();
            rec.score = j.at("score").get<double>();
            if (!j.at("variance").is_null()) rec.variance = j["variance"].get<double>();
            rec.point_rank = j.at("point_rank").get<int>();
            if (!j.at("ci_lower").is_null()) rec.ci_lower = j["ci_lower"].get<int>();
            if (!j.at("ci_upper").is_null()) rec.ci_upper = j["ci_upper"].get<int>();
            doc.records.push_back(std::move(rec));
        }
    } catch (const json::exception& e) {
        throw AppError(ErrorCode::MalformedCsv, std::string("results document: ") + e.what());
    }
    return doc;
}

}  // namespace rankci::app
