#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gvcrand {

// Locale-independent double formatting, 17 significant digits (round-trip
// exact for IEEE doubles).
std::string format_double(double value);

// RFC-4180-style field quoting: quotes applied when the field contains a
// comma, quote, or newline; embedded quotes doubled.
std::string csv_escape(const std::string& field);

std::string csv_join(const std::vector<std::string>& fields);

// Parses CSV text (LF or CRLF line endings, quoted fields) into rows of
// fields. The final unterminated line, if any, is included.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace gvcrand
