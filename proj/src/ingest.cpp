#include "metriclust/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace metriclust {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string location(std::string_view source, std::size_t line, std::string_view column) {
    return std::string(source) + ":" + std::to_string(line) + " column '" + std::string(column) + "'";
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    for (const auto& f : split_fields(text)) {
        const auto t = trim(f);
        if (!t.empty()) items.emplace_back(t);
    }
    return items;
}

std::map<std::string, std::string> parse_rename_map(std::string_view spec) {
    std::map<std::string, std::string> renames;
    for (const auto& item : split_list(spec)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw config_error("rename entry '" + item + "' is not of the form Old=New");
        }
        renames[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return renames;
}

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

std::vector<std::string> validate(const DatasetSchema& schema) {
    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& f : schema.feature_columns) {
        if (!seen.insert(f).second) problems.push_back("feature column '" + f + "' listed twice");
    }
    if (schema.label_column && seen.contains(*schema.label_column)) {
        problems.push_back("label column '" + *schema.label_column + "' is also a feature");
    }
    if (!schema.class_filter.empty() && !schema.label_column) {
        problems.emplace_back("class filter requires a label column");
    }
    std::set<std::string> classes;
    for (const auto& c : schema.class_filter) {
        if (!classes.insert(c).second) problems.push_back("class '" + c + "' listed twice");
    }
    return problems;
}

LabeledDataset read_csv(std::istream& in, const DatasetSchema& schema, std::string_view source) {
    if (const auto problems = validate(schema); !problems.empty()) throw config_error(problems.front());

    std::string line;
    if (!std::getline(in, line)) throw data_error(std::string(source) + ": missing header row");
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    std::vector<std::string> header;
    for (const auto& f : split_fields(line)) {
        std::string name(trim(f));
        if (const auto it = schema.rename.find(name); it != schema.rename.end()) name = it->second;
        header.push_back(std::move(name));
    }
    auto column_index = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw data_error(std::string(source) + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };

    std::optional<std::size_t> label_idx;
    if (schema.label_column) label_idx = column_index(*schema.label_column);
    std::vector<std::size_t> feature_idx;
    LabeledDataset ds;
    if (schema.feature_columns.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (label_idx && c == *label_idx) continue;
            feature_idx.push_back(c);
            ds.feature_names.push_back(header[c]);
        }
    } else {
        for (const auto& name : schema.feature_columns) feature_idx.push_back(column_index(name));
        ds.feature_names = schema.feature_columns;
    }
    if (feature_idx.empty()) throw data_error(std::string(source) + ": no feature columns");

    ds.class_names = schema.class_filter;
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw data_error(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
        }
        int label = -1;
        if (label_idx) {
            const std::string cls(trim(fields[*label_idx]));
            if (cls.empty()) throw data_error(location(source, line_no, header[*label_idx]) + ": empty cell");
            const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), cls);
            if (it != ds.class_names.end()) {
                label = static_cast<int>(it - ds.class_names.begin());
            } else if (schema.class_filter.empty()) {
                label = static_cast<int>(ds.class_names.size());
                ds.class_names.push_back(cls);
            } else {
                continue;
            }
        }
        for (std::size_t c : feature_idx) {
            const auto cell = trim(fields[c]);
            if (cell.empty()) throw data_error(location(source, line_no, header[c]) + ": empty cell");
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                throw data_error(location(source, line_no, header[c]) + ": cannot parse '" +
                                 std::string(cell) + "' as a finite number");
            }
            values.push_back(v);
        }
        if (label_idx) ds.labels.push_back(label);
    }

    const std::size_t d = feature_idx.size();
    const std::size_t n = values.size() / d;
    if (n == 0) throw data_error(std::string(source) + ": no rows left after filtering");
    ds.data = DataMatrix(n, d, std::move(values));
    return ds;
}

LabeledDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path.string());
    return read_csv(in, schema, path.string());
}

void write_csv(std::ostream& out, const LabeledDataset& ds, std::string_view label_column) {
    const std::size_t d = ds.data.cols();
    const bool labelled = !ds.labels.empty();
    for (std::size_t j = 0; j < d; ++j) {
        if (j > 0) out << ',';
        out << (j < ds.feature_names.size() ? ds.feature_names[j] : "X" + std::to_string(j + 1));
    }
    if (labelled) out << ',' << label_column;
    out << '\n';
    for (std::size_t i = 0; i < ds.data.rows(); ++i) {
        const auto row = ds.data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            if (j > 0) out << ',';
            out << format_real(row[j]);
        }
        if (labelled) {
            const int label = ds.labels[i];
            out << ',';
            if (label >= 0 && static_cast<std::size_t>(label) < ds.class_names.size()) {
                out << ds.class_names[static_cast<std::size_t>(label)];
            } else {
                out << label;
            }
        }
        out << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const LabeledDataset& ds, std::string_view label_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write " + path.string());
    write_csv(out, ds, label_column);
    if (!out) throw data_error("write failed for " + path.string());
}

}  // namespace metriclust
