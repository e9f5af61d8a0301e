#pragma once

#include <filesystem>
#include <string>

#include "boundedflow/types.hpp"

namespace boundedflow {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form of a double.
std::string format_real(Real v);

/// Writes content to path via a temporary file and rename, so readers never
/// observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace boundedflow
