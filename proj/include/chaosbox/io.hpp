#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "chaosbox/sbox.hpp"

namespace chaosbox {

// Decimal: 16 lines x 16 base-10 integers, single spaces, row-major.
// Hex: same layout, two lowercase hex digits per value.
// Json: {"sbox": [256 integers]} (a bare array is accepted on input).
enum class GridFormat { Decimal, Hex, Json };

std::string_view to_string(GridFormat format);
GridFormat parse_grid_format(std::string_view text);
// .json -> Json, everything else -> fallback.
GridFormat grid_format_for(const std::filesystem::path& path, GridFormat fallback);

// Grid input tolerates any run of spaces/tabs between values and blank lines.
// Error positions are 1-based row/column of the 16x16 grid.
// Throws ParseError (bad token, value > 255, wrong count) or NotBijective.
SBox parse_sbox(std::string_view text, GridFormat format, bool allow_non_bijective = false);
SBox load_sbox(const std::filesystem::path& path, GridFormat format,
               bool allow_non_bijective = false);

std::string format_sbox(const SBox& box, GridFormat format);
void save_sbox(const std::filesystem::path& path, const SBox& box, GridFormat format);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace chaosbox
