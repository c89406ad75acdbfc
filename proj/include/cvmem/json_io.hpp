#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cvmem/errors.hpp"

namespace cvmem {

/// Parses JSON text, rethrowing syntax errors as ParseError with a
/// line/column location computed from the byte offset.
inline nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + e.what());
    }
}

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

} // namespace cvmem
