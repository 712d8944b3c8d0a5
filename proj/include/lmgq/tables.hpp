// tables.hpp — deterministic columnar output: numeric tables with an ordered
// metadata header, serialized to CSV or JSON with 12 significant digits.

#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lmgq {

struct OutputTable {
    std::string name;                  // panel name, e.g. "scan"
    std::vector<std::string> columns;
    std::vector<double> values;        // row-major
    std::vector<std::pair<std::string, std::string>> metadata;   // ordered

    std::size_t rows() const { return columns.empty() ? 0 : values.size() / columns.size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }

    void add_row(std::initializer_list<double> row);
    void add_row(std::span<const double> row);
    void set_meta(const std::string& key, const std::string& value);
    void set_meta(const std::string& key, double value);
    const std::string* find_meta(const std::string& key) const;
};

// printf %.12g in the C locale, via std::to_chars.
std::string format_number(double value);
double parse_number(std::string_view text);

// FNV-1a 64-bit over the little-endian bytes of the values, as 16 hex digits.
std::string grid_hash(std::span<const double> values);

// Writers remove their (partial) output file before rethrowing on failure.
void write_csv(const OutputTable& table, const std::filesystem::path& path);
void write_json(const OutputTable& table, const std::filesystem::path& path);

OutputTable read_csv(const std::filesystem::path& path);

} // namespace lmgq
