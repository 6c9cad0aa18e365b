#ifndef CDIFF_GRID_IO_HPP
#define CDIFF_GRID_IO_HPP

#include <filesystem>
#include <string>

#include "cdiff/grid.hpp"

namespace cdiff {

// Grid container format, bit-exact across write/read:
//   line 1: "CDG1"
//   line 2: "N rows cols dx origin_x origin_y"   (doubles as %.17g text)
//   payload: rows*cols little-endian IEEE-754 doubles, row-major.
// N is the space dimension the field belongs to (2 for the gridded pipeline).
void save_grid(const Grid2D& g, const std::filesystem::path& path, int dimension_tag = 2);
Grid2D load_grid(const std::filesystem::path& path, int* dimension_tag = nullptr);

// 8-bit binary PGM preview with linear min-max scaling; the scaling bounds
// are recorded in a comment line. Previews are for eyeballing only — the
// authoritative data lives in the grid files.
void save_pgm(const Grid2D& g, const std::filesystem::path& path);

// Shortest text representation that round-trips a double exactly.
std::string format_double(double v);

} // namespace cdiff

#endif
