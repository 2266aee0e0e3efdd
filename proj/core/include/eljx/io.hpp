#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace eljx {

/// %.17g rendering used for every floating-point value we serialize.
std::string fmt17(double v);

/// FNV-1a 64-bit over a byte string; the checksum recorded in manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string to_hex(std::uint64_t v);

/// Write text atomically enough for our purposes (truncate + write + close).
void write_text_file(const std::filesystem::path& path, std::string_view text);

std::string utc_timestamp();

} // namespace eljx
