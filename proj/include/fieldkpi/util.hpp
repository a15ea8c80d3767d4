#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fieldkpi {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Writes to stderr when `level` is at or below FIELDKPI_LOG_LEVEL (default warn).
void log(LogLevel level, std::string_view message);

/// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hex digest ("fnv1a64:...") of a file's contents.
std::string file_digest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary file in the same directory, then renames into place.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

/// printf-style "%.*g" formatting used by the CSV/markdown renderers.
std::string format_sig(double value, int significant_digits = 6);

}  // namespace fieldkpi
