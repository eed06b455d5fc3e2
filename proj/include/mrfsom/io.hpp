#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace mrfsom::io {

/// Whole file as a string. IoError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so
/// readers never observe a partial file. Creates missing parent
/// directories. IoError on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Shortest text that is guaranteed to round-trip: 17 significant digits.
std::string format_double(double value);

}  // namespace mrfsom::io
