#include "pgtbench/grid_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pgtbench {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_grid(std::ostream& out, const OccupancyGrid& grid) {
  out << "PGTGRID 1 " << grid.width() << ' ' << grid.height() << ' '
      << format_double(grid.resolution()) << ' ' << format_double(grid.origin().x()) << ' '
      << format_double(grid.origin().y()) << '\n';
  const auto& cells = grid.cells();
  std::string line;
  for (int row = 0; row < grid.height(); ++row) {
    line.clear();
    for (int col = 0; col < grid.width(); ++col) {
      if (col) line += ' ';
      line += format_double(cells(row, col));
    }
    line += '\n';
    out << line;
  }
}

namespace {

double parse_number(const std::string& token, int line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty())
    throw DataError("PGTGRID line " + std::to_string(line_no) + ": bad number '" + token + "'");
  return v;
}

}  // namespace

OccupancyGrid read_grid(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw DataError("PGTGRID: empty input");
  std::istringstream hs(header);
  std::string magic, version, w, h, res, ox, oy, extra;
  if (!(hs >> magic >> version >> w >> h >> res >> ox >> oy) || (hs >> extra))
    throw DataError("PGTGRID line 1: malformed header");
  if (magic != "PGTGRID") throw DataError("PGTGRID line 1: bad magic '" + magic + "'");
  if (version != "1") throw DataError("PGTGRID line 1: unsupported version " + version);

  GridGeometry g;
  g.width = static_cast<int>(parse_number(w, 1));
  g.height = static_cast<int>(parse_number(h, 1));
  g.resolution = parse_number(res, 1);
  g.origin = Point2D(parse_number(ox, 1), parse_number(oy, 1));
  g.validate();

  OccupancyGrid::Cells cells(g.height, g.width);
  std::string line;
  for (int row = 0; row < g.height; ++row) {
    const int line_no = row + 2;
    if (!std::getline(in, line))
      throw DataError("PGTGRID line " + std::to_string(line_no) + ": missing row");
    std::istringstream ls(line);
    std::string token;
    int col = 0;
    while (ls >> token) {
      if (col >= g.width)
        throw DataError("PGTGRID line " + std::to_string(line_no) + ": too many values");
      const double v = parse_number(token, line_no);
      if (!(v >= kLogOddsMin && v <= kLogOddsMax))
        throw DataError("PGTGRID line " + std::to_string(line_no) + ": value outside [-10, 10]");
      cells(row, col++) = v;
    }
    if (col != g.width)
      throw DataError("PGTGRID line " + std::to_string(line_no) + ": expected " +
                      std::to_string(g.width) + " values, got " + std::to_string(col));
  }
  OccupancyGrid grid(g);
  grid.assign(cells);
  return grid;
}

std::string grid_to_string(const OccupancyGrid& grid) {
  std::ostringstream out;
  write_grid(out, grid);
  return out.str();
}

OccupancyGrid grid_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_grid(in);
}

void save_grid(const std::filesystem::path& path, const OccupancyGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_grid(out, grid);
  if (!out) throw DataError("failed writing " + path.string());
}

OccupancyGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_grid(in);
}

}  // namespace pgtbench
