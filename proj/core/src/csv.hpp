#pragma once

#include <string>
#include <vector>

namespace squashnet::detail {

struct CsvRow {
    long line_no = 0;
    std::vector<std::string> fields;
};

/// Reads comma-separated rows from a file, skipping blank lines and trailing
/// carriage returns. Throws InvalidInputError if the file cannot be opened.
std::vector<CsvRow> read_csv_rows(const std::string& path);

/// Parses a full field as a double; returns false on any trailing garbage.
bool parse_double(const std::string& field, double& out);

/// %.17g — enough digits to round-trip any double.
std::string format_double(double v);

}  // namespace squashnet::detail
