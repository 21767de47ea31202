// Rectangular output tables with byte-deterministic CSV/JSON rendering.
//
// CSV: comma separator, '\n' line endings, header row always present,
// reals with 6 fractional digits, booleans as true/false. JSON: an array
// of objects keyed by header names, numbers at full binary precision.
#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qinfo {

using Cell = std::variant<double, long long, bool>;

enum class TableFormat { Csv, Json };

struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != header.size())
            throw std::invalid_argument("OutputTable: row width does not match header");
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline std::string format_csv_real(double value) {
    if (value == 0.0) value = 0.0; // fold -0 into 0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

} // namespace detail

inline void render_csv(const OutputTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const std::vector<Cell>& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const double* d = std::get_if<double>(&row[i]))
                out << detail::format_csv_real(*d);
            else if (const long long* n = std::get_if<long long>(&row[i]))
                out << *n;
            else
                out << (std::get<bool>(row[i]) ? "true" : "false");
        }
        out << '\n';
    }
}

inline void render_json(const OutputTable& table, std::ostream& out) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const std::vector<Cell>& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i]))
                obj[table.header[i]] = (*d == 0.0) ? 0.0 : *d;
            else if (const long long* n = std::get_if<long long>(&row[i]))
                obj[table.header[i]] = *n;
            else
                obj[table.header[i]] = std::get<bool>(row[i]);
        }
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

inline void render_table(const OutputTable& table, TableFormat format, std::ostream& out) {
    if (format == TableFormat::Csv)
        render_csv(table, out);
    else
        render_json(table, out);
}

} // namespace qinfo
