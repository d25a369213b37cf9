#pragma once

#include "qcrec/datagen/dataset.hpp"
#include "qcrec/datagen/preprocess.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace qcrec {

/// Column layout of a real-world CSV: header row, feature columns, then one
/// label column (the last unless named here).
struct CsvSchema {
    int n_features = -1;                 // -1 = infer as (columns - 1)
    std::string label_column;            // empty = last column
};

/// How to collapse the raw label column to {0,1}.
/// Either keep a class pair (by label text), or threshold a numeric label.
struct Binarization {
    std::vector<std::string> class_pair;   // size 2 when used
    std::optional<double> threshold;       // label >= threshold -> 1

    bool is_pair() const { return class_pair.size() == 2; }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        // trim whitespace and CR
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline double parse_number(const std::string& s, const std::string& ctx) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw InputError("");
        return v;
    } catch (...) {
        throw InputError("CSV parse error: bad numeric value '" + s + "' in " + ctx);
    }
}

} // namespace detail

/// Read a whole CSV file into a raw table (header + string cells).
inline std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>
read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(f, line)) throw InputError("empty CSV file: " + path);
    auto header = detail::split_csv_line(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(f, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw InputError("CSV parse error: row with " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(header.size()) + " in " + path);
        rows.push_back(std::move(cells));
    }
    return {header, rows};
}

/// Load a real-world dataset: parse, binarize, then take a seeded stratified
/// subsample of exactly n_samples rows.
inline LabeledDataset load_real(const std::string& path, const CsvSchema& schema,
                                const Binarization& bin, int n_samples, std::uint64_t seed,
                                const std::string& name = "") {
    auto [header, rows] = read_csv(path);
    int n_cols = static_cast<int>(header.size());
    int label_col = n_cols - 1;
    if (!schema.label_column.empty()) {
        label_col = -1;
        for (int j = 0; j < n_cols; ++j)
            if (header[j] == schema.label_column) label_col = j;
        if (label_col < 0) throw InputError("missing label column '" + schema.label_column + "' in " + path);
    }
    int n_features = schema.n_features >= 0 ? schema.n_features : n_cols - 1;
    if (n_features != n_cols - 1)
        throw InputError("CSV parse error: " + path + " has " + std::to_string(n_cols - 1) +
                         " feature columns, schema expects " + std::to_string(n_features));

    // Binarize.
    std::vector<int> keep;
    std::vector<int> labels;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const std::string& raw = rows[i][label_col];
        if (bin.is_pair()) {
            if (raw == bin.class_pair[0]) { keep.push_back(i); labels.push_back(0); }
            else if (raw == bin.class_pair[1]) { keep.push_back(i); labels.push_back(1); }
        } else if (bin.threshold) {
            keep.push_back(i);
            labels.push_back(detail::parse_number(raw, path) >= *bin.threshold ? 1 : 0);
        } else {
            throw InputError("binarization rule required for " + path);
        }
    }
    int c0 = static_cast<int>(std::count(labels.begin(), labels.end(), 0));
    int c1 = static_cast<int>(labels.size()) - c0;
    if (c0 < 2 || c1 < 2)
        throw InputError("class collapse after binarization in " + path);
    if (n_samples <= 0) n_samples = static_cast<int>(keep.size());  // take everything
    if (n_samples > static_cast<int>(keep.size()))
        throw InputError("n_samples " + std::to_string(n_samples) + " exceeds available rows " +
                         std::to_string(keep.size()) + " in " + path);

    // Stratified subsample of size n_samples.
    std::vector<int> sub, rest;
    if (n_samples == static_cast<int>(keep.size())) {
        sub.resize(keep.size());
        std::iota(sub.begin(), sub.end(), 0);
    } else {
        double frac = static_cast<double>(n_samples) / keep.size();
        stratified_split(labels, frac, seed, rest, sub);
    }
    // stratified_split sizes the "test" side by round(); trim or top up to exact n.
    while (static_cast<int>(sub.size()) > n_samples) { rest.push_back(sub.back()); sub.pop_back(); }
    while (static_cast<int>(sub.size()) < n_samples && !rest.empty()) { sub.push_back(rest.back()); rest.pop_back(); }
    std::sort(sub.begin(), sub.end());

    LabeledDataset d;
    d.name = name.empty() ? path : name;
    d.seed = seed;
    d.features.resize(sub.size(), n_features);
    d.labels.resize(sub.size());
    for (size_t r = 0; r < sub.size(); ++r) {
        int src = keep[sub[r]];
        int jj = 0;
        for (int j = 0; j < n_cols; ++j) {
            if (j == label_col) continue;
            d.features(r, jj++) = detail::parse_number(rows[src][j], path);
        }
        d.labels[r] = labels[sub[r]];
    }
    d.validate();
    return d;
}

} // namespace qcrec
