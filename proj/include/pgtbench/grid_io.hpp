#ifndef PGTBENCH_GRID_IO_HPP_
#define PGTBENCH_GRID_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pgtbench/core_types.hpp"

namespace pgtbench {

// "PGTGRID v1" text format:
//
//   PGTGRID 1 <width> <height> <resolution> <origin_x> <origin_y>
//   <width log-odds values for row 0>
//   ...
//   <width log-odds values for row height-1>
//
// Numbers are written with 17 significant digits, which round-trips every
// double exactly.

void write_grid(std::ostream& out, const OccupancyGrid& grid);
OccupancyGrid read_grid(std::istream& in);

std::string grid_to_string(const OccupancyGrid& grid);
OccupancyGrid grid_from_string(const std::string& text);

void save_grid(const std::filesystem::path& path, const OccupancyGrid& grid);
OccupancyGrid load_grid(const std::filesystem::path& path);

/// Fixed 17-significant-digit form used by the grid file format.
std::string format_double(double v);

/// Shortest decimal form that still parses back to the same double.
std::string format_shortest(double v);

}  // namespace pgtbench

#endif  // PGTBENCH_GRID_IO_HPP_
