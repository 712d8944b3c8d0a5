#include "lmgq/tables.hpp"

#include "lmgq/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lmgq {

void OutputTable::add_row(std::initializer_list<double> row) {
    add_row(std::span<const double>(row.begin(), row.size()));
}

void OutputTable::add_row(std::span<const double> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("OutputTable: row width " + std::to_string(row.size()) +
                                    " does not match " + std::to_string(columns.size()) +
                                    " columns");
    values.insert(values.end(), row.begin(), row.end());
}

void OutputTable::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : metadata) {
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    }
    metadata.emplace_back(key, value);
}

void OutputTable::set_meta(const std::string& key, double value) {
    set_meta(key, format_number(value));
}

const std::string* OutputTable::find_meta(const std::string& key) const {
    for (const auto& kv : metadata)
        if (kv.first == key) return &kv.second;
    return nullptr;
}

std::string format_number(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 12);
    if (res.ec != std::errc())
        throw numeric_error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("parse_number: not a number: '" + std::string(text) + "'");
    return value;
}

std::string grid_hash(std::span<const double> values) {
    std::uint64_t h = 1469598103934665603ull;
    for (const double v : values) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffull;
            h *= 1099511628211ull;
        }
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) buf[15 - i] = hex[(h >> (4 * i)) & 0xf];
    buf[16] = '\0';
    return std::string(buf);
}

namespace {

void fail_and_remove(const std::filesystem::path& path, const std::string& what) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw io_error(what + ": " + path.string());
}

} // namespace

void write_csv(const OutputTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("write_csv: cannot open " + path.string());
    for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < table.cols(); ++c)
        out << table.columns[c] << (c + 1 < table.cols() ? "," : "\n");
    for (std::size_t r = 0; r < table.rows(); ++r)
        for (std::size_t c = 0; c < table.cols(); ++c)
            out << format_number(table.at(r, c)) << (c + 1 < table.cols() ? "," : "\n");
    out.flush();
    if (!out) fail_and_remove(path, "write_csv: write failed");
}

void write_json(const OutputTable& table, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["table"] = table.name;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < table.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        // quantize to the serialized 12-digit value so dumps are stable
        for (std::size_t c = 0; c < table.cols(); ++c)
            row.push_back(parse_number(format_number(table.at(r, c))));
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("write_json: cannot open " + path.string());
    out << doc.dump(2) << "\n";
    out.flush();
    if (!out) fail_and_remove(path, "write_json: write failed");
}

OutputTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("read_csv: cannot open " + path.string());
    OutputTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos)
                table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!header_seen) {
            table.columns = std::move(fields);
            header_seen = true;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw io_error("read_csv: ragged row in " + path.string());
        for (const auto& f : fields) table.values.push_back(parse_number(f));
    }
    if (!header_seen) throw io_error("read_csv: no header row in " + path.string());
    return table;
}

} // namespace lmgq
