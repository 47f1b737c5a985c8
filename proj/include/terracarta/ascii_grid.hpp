#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "terracarta/raster.hpp"

namespace terracarta {

/// Parses an ARC/INFO ASCII Grid. Header keys are matched case-insensitively;
/// xllcenter/yllcenter origins are normalized to the corner convention and a
/// missing NODATA_value defaults to -9999. The format carries no CRS, so the
/// caller supplies one (geographic by default).
///
/// Throws MalformedHeader, CellCountMismatch, NonNumericCell.
Grid parse_ascii_grid(std::string_view text, const Crs& crs = Crs::geographic());

Grid read_ascii_grid(const std::filesystem::path& file,
                     const Crs& crs = Crs::geographic());

/// Serializes a grid to ASCII Grid text: lowercase keys, corner convention,
/// LF line endings. Header reals are written with full round-trip precision,
/// cell values with 6 significant digits; nodata cells emit the same token as
/// the nodata_value header line.
std::string write_ascii_grid(const Grid& grid);

void write_ascii_grid(const Grid& grid, const std::filesystem::path& file);

}  // namespace terracarta
