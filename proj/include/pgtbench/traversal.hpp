#ifndef PGTBENCH_TRAVERSAL_HPP_
#define PGTBENCH_TRAVERSAL_HPP_

#include <cmath>
#include <limits>

#include "pgtbench/core_types.hpp"

namespace pgtbench {

/// Incremental grid traversal (Amanatides & Woo). Calls
/// `visit(cell, t_enter, t_exit)` for every cell the ray passes through, in
/// order, where t is distance along `direction` from `origin`. Stops when
/// `visit` returns false, when t_enter exceeds `max_t`, or when the ray
/// leaves the grid. A ray through an exact cell corner steps diagonally.
///
/// Boundary distances are recomputed from cell indices at every step rather
/// than accumulated, so two walks with the same inputs produce bit-identical
/// t values.
template <typename Visitor>
void walk_ray(const GridGeometry& g, const Point2D& origin, const Point2D& direction,
              double max_t, Visitor&& visit) {
  auto start = g.world_to_cell(origin);
  if (!start) return;
  int col = start->col;
  int row = start->row;

  const double dx = direction.x();
  const double dy = direction.y();
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  auto next_x = [&](int c) {
    if (step_x == 0) return kInf;
    const double boundary = g.origin.x() + (step_x > 0 ? c + 1 : c) * g.resolution;
    return (boundary - origin.x()) / dx;
  };
  auto next_y = [&](int r) {
    if (step_y == 0) return kInf;
    const double boundary = g.origin.y() + (step_y > 0 ? r + 1 : r) * g.resolution;
    return (boundary - origin.y()) / dy;
  };

  double t_enter = 0.0;
  double t_max_x = next_x(col);
  double t_max_y = next_y(row);
  while (true) {
    // Guards against a slightly negative boundary distance when the origin
    // sits on a cell edge and floor() picked the neighbouring cell.
    if (t_max_x < t_enter) t_max_x = t_enter;
    if (t_max_y < t_enter) t_max_y = t_enter;
    const double t_exit = std::min(t_max_x, t_max_y);
    if (!visit(CellIndex{col, row}, t_enter, t_exit)) return;
    if (t_exit > max_t || t_exit == kInf) return;
    if (t_max_x < t_max_y) {
      col += step_x;
      t_max_x = next_x(col);
    } else if (t_max_y < t_max_x) {
      row += step_y;
      t_max_y = next_y(row);
    } else {
      col += step_x;
      row += step_y;
      t_max_x = next_x(col);
      t_max_y = next_y(row);
    }
    t_enter = t_exit;
    if (!g.contains(CellIndex{col, row})) return;
  }
}

}  // namespace pgtbench

#endif  // PGTBENCH_TRAVERSAL_HPP_
