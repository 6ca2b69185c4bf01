#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace logsplit {

/// Lower-case hex SHA-256 digests.
std::string sha256_hex(std::span<const std::byte> data);
std::string sha256_hex(std::string_view text);
std::string sha256_file(const std::filesystem::path &path);

/// Writes `contents` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

} // namespace logsplit
