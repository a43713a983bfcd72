#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmp {

// Shortest round-trip decimal representation; parsing it back yields the
// same bits. Used for every number written to report files.
std::string format_double(double v);

std::optional<double> parse_double(std::string_view text);

// Splits on the delimiter, keeping empty fields. Trims surrounding
// whitespace and a UTF-8 BOM on the first field.
std::vector<std::string> split_fields(std::string_view line, char delim);

std::string to_lower(std::string_view s);

// Write-temp-then-rename so partially written reports are never observed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// Flat key=value file; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> load_key_value_file(const std::filesystem::path& path);

}  // namespace fmp
