#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nabfs/dataset.hpp"

namespace nabfs {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// RFC-4180-style reader: comma-separated, header row required, quoted fields
// allowed, UTF-8, '.' decimal separator. Every data cell must parse as a
// number; anything else is a ValidationError naming the row and column.
CsvTable read_numeric_csv(const std::string& path);

// Build a validated Dataset from a CSV file. The target column is selected
// by name; remaining columns become features in file order. When task is
// absent it is inferred: a response taking only values {0, 1} (with both
// present) is classification, anything else regression.
Dataset dataset_from_csv(const std::string& path, const std::string& target,
                         std::optional<TaskKind> task = std::nullopt);

}  // namespace nabfs
