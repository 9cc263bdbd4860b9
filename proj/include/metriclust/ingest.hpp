#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metriclust/dataset.hpp"

namespace metriclust {

struct DatasetSchema {
    /// Empty means every column except the label column.
    std::vector<std::string> feature_columns;
    std::optional<std::string> label_column;
    /// Keep only these classes, numbered in this order. Empty keeps all,
    /// numbered by first appearance.
    std::vector<std::string> class_filter;
    /// Header renames applied before column lookup (old name -> new name).
    std::map<std::string, std::string> rename;
};

std::vector<std::string> validate(const DatasetSchema& schema);

/// Comma-separated, header row required, '.' decimal point, no quoting.
/// Every selected cell must parse as a finite real; empty cells are errors.
LabeledDataset read_csv(std::istream& in, const DatasetSchema& schema,
                        std::string_view source = "<stream>");
LabeledDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema);

/// Features with 17 significant digits, then the label column (class name,
/// or the integer label when there are no names).
void write_csv(std::ostream& out, const LabeledDataset& ds, std::string_view label_column = "label");
void write_csv(const std::filesystem::path& path, const LabeledDataset& ds,
               std::string_view label_column = "label");

/// "Old=New,Other=Name" -> map.
std::map<std::string, std::string> parse_rename_map(std::string_view spec);

/// Comma-separated list, empty items dropped.
std::vector<std::string> split_list(std::string_view text);

/// 17 significant digits; parses back to the identical double.
std::string format_real(double v);

}  // namespace metriclust
