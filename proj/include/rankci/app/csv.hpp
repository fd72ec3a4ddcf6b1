#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace rankci::app {

struct CsvRecord {
    std::size_t line = 0;  ///< 1-based line where the record starts
    std::vector<std::string> fields;
};

/// RFC 4180 reader: double-quoted fields, "" escapes, CRLF or LF endings,
/// leading UTF-8 BOM skipped, blank lines dropped. Throws AppError
/// (MalformedCsv) on an unterminated quote or stray characters after one.
std::vector<CsvRecord> read_csv(std::istream& in);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

}  // namespace rankci::app
