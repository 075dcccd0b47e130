#include "csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "squashnet/errors.hpp"

namespace squashnet::detail {

std::vector<CsvRow> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open file: " + path);
    }
    std::vector<CsvRow> rows;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        CsvRow row;
        row.line_no = line_no;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                row.fields.push_back(line.substr(start));
                break;
            }
            row.fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool parse_double(const std::string& field, double& out) {
    std::size_t begin = field.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return false;
    }
    std::size_t end = field.find_last_not_of(" \t");
    std::string trimmed = field.substr(begin, end - begin + 1);
    char* tail = nullptr;
    out = std::strtod(trimmed.c_str(), &tail);
    return tail != nullptr && *tail == '\0' && tail != trimmed.c_str();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace squashnet::detail
