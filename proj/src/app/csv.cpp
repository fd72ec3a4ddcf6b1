#include "rankci/app/csv.hpp"

#include <iterator>

#include "rankci/app/errors.hpp"

namespace rankci::app {

std::vector<CsvRecord> read_csv(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    std::size_t line = 1;
    current.line = 1;
    bool quoted = false;
    bool after_quote = false;
    bool record_has_content = false;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = current.fields.size() == 1 && current.fields.front().empty() && !record_has_content;
        if (!blank) records.push_back(std::move(current));
        current = CsvRecord{};
        current.line = line;
        record_has_content = false;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (quoted) {
            if (ch == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        if (ch == ',') {
            end_field();
            record_has_content = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            ++line;
            end_record();
        } else if (ch == '"' && field.empty() && !after_quote) {
            quoted = true;
            record_has_content = true;
        } else if (after_quote) {
            throw AppError(ErrorCode::MalformedCsv,
                           "line " + std::to_string(line) + ": unexpected character after closing quote");
        } else {
            field.push_back(ch);
            record_has_content = true;
        }
    }
    if (quoted) {
        throw AppError(ErrorCode::MalformedCsv, "line " + std::to_string(current.line) + ": unterminated quoted field");
    }
    if (record_has_content || !field.empty()) end_record();
    return records;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

}  // namespace rankci::app
