#include "nabfs/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nabfs {

namespace {

// RFC-4180 field splitting for one logical record; handles quoted fields
// with doubled-quote escapes. Records never span lines here because all
// data cells are numeric and header names with embedded newlines are not
// supported.
std::vector<std::string> split_record(const std::string& line,
                                      std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
        ++i;
    }
    if (quoted) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  std::size_t col) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw ValidationError("line " + std::to_string(line_no) + ", column " +
                              std::to_string(col + 1) + ": cell '" + cell +
                              "' is not numeric");
    }
    return value;
}

}  // namespace

CsvTable read_numeric_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");

    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        auto fields = split_record(line, line_no);
        if (line_no == 1) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            row[c] = parse_cell(fields[c], line_no, c);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) {
        throw ValidationError("input file '" + path + "' is empty or has no header row");
    }
    if (table.rows.empty()) {
        throw ValidationError("input file '" + path + "' has a header but no data rows");
    }
    return table;
}

Dataset dataset_from_csv(const std::string& path, const std::string& target,
                         std::optional<TaskKind> task) {
    const CsvTable table = read_numeric_csv(path);

    std::size_t target_col = table.header.size();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == target) {
            target_col = c;
            break;
        }
    }
    if (target_col == table.header.size()) {
        throw ValidationError("target column '" + target + "' not found in '" +
                              path + "'");
    }
    if (table.header.size() < 2) {
        throw ValidationError("input needs at least one feature column besides the target");
    }

    const auto n = static_cast<Eigen::Index>(table.rows.size());
    const auto p = static_cast<Eigen::Index>(table.header.size() - 1);
    Dataset data;
    data.features.resize(n, p);
    data.response.resize(n);
    data.feature_names.reserve(static_cast<std::size_t>(p));
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c != target_col) data.feature_names.push_back(table.header[c]);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<std::size_t>(i)];
        Eigen::Index feature = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == target_col) {
                data.response(i) = row[c];
            } else {
                data.features(i, feature++) = row[c];
            }
        }
    }

    if (task.has_value()) {
        data.task = *task;
    } else {
        bool binary = true, has_zero = false, has_one = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double y = data.response(i);
            if (y == 0.0) has_zero = true;
            else if (y == 1.0) has_one = true;
            else { binary = false; break; }
        }
        data.task = binary && has_zero && has_one
                        ? TaskKind::BinaryClassification
                        : TaskKind::Regression;
    }
    check_dataset(data);
    return data;
}

}  // namespace nabfs
