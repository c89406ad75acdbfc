#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "cvmem/errors.hpp"

namespace cvmem {

/// Shortest decimal representation that round-trips the exact double.
inline std::string format_double(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

inline double parse_double(const std::string& text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw ParseError("not a number: '" + text + "'");
    }
    return value;
}

/// Rectangular table with a mandatory header row. Cells are preformatted
/// strings; numeric cells should go through format_double so that emitted
/// files are byte-stable and parse back exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < header.size(); ++i) {
            out += (i == 0 ? "" : ",") + header[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += (i == 0 ? "" : ",") + row[i];
            }
            out += '\n';
        }
        return out;
    }
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("failed while writing " + path);
    }
}

inline void write_csv(const std::string& path, const CsvTable& table) {
    write_text_file(path, table.to_string());
}

/// Splits CSV text back into header and cell rows (no quoting dialects; the
/// emitters never produce quoted cells).
inline CsvTable parse_csv_text(const std::string& text) {
    CsvTable table;
    std::vector<std::string> lines;
    std::string current;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    if (!current.empty()) {
        lines.push_back(current);
    }
    if (lines.empty()) {
        throw ParseError("CSV text has no header row");
    }
    const auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        for (char ch : line) {
            if (ch == ',') {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += ch;
            }
        }
        cells.push_back(cell);
        return cells;
    };
    table.header = split(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        table.rows.push_back(split(lines[i]));
    }
    return table;
}

} // namespace cvmem
