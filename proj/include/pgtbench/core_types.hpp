#ifndef PGTBENCH_CORE_TYPES_HPP_
#define PGTBENCH_CORE_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pgtbench {

// Raised for malformed input files, bad parameters, and other data errors.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal invariant does not hold.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kLogOddsMin = -10.0;
inline constexpr double kLogOddsMax = 10.0;

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point2D = Point2<double>;

/// Wraps an angle into [-pi, pi).
template <typename Scalar>
Scalar normalize_angle(Scalar a) {
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  constexpr Scalar kTwoPi = 2 * kPi;
  a = std::fmod(a + kPi, kTwoPi);
  if (a < 0) a += kTwoPi;
  a -= kPi;
  // fmod can land exactly on +pi after the shift for inputs just below -pi.
  if (a >= kPi) a -= kTwoPi;
  return a;
}

/// Planar vehicle pose. Heading is kept in [-pi, pi).
template <typename Scalar>
struct Pose2 {
  Point2<Scalar> position = Point2<Scalar>::Zero();
  Scalar heading = 0;

  Pose2() = default;
  Pose2(Scalar x, Scalar y, Scalar theta)
      : position(x, y), heading(normalize_angle(theta)) {}

  Scalar x() const { return position.x(); }
  Scalar y() const { return position.y(); }

  Eigen::Matrix<Scalar, 2, 2> rotation() const {
    const Scalar c = std::cos(heading);
    const Scalar s = std::sin(heading);
    Eigen::Matrix<Scalar, 2, 2> r;
    r << c, -s, s, c;
    return r;
  }

  Pose2 inverse() const {
    const Point2<Scalar> t = -(rotation().transpose() * position);
    return Pose2(t.x(), t.y(), -heading);
  }

  bool operator==(const Pose2& o) const {
    return position == o.position && heading == o.heading;
  }
};
using Pose2D = Pose2<double>;

/// Rotates `local` by the pose heading, then translates by the pose position.
template <typename Scalar, typename Derived>
Point2<Scalar> pose_transform(const Pose2<Scalar>& pose,
                              const Eigen::MatrixBase<Derived>& local) {
  return pose.rotation() * local + pose.position;
}

/// Unit direction of a beam at sensor-frame azimuth `azimuth` for `pose`.
inline Point2D beam_direction(const Pose2D& pose, double azimuth) {
  const double a = pose.heading + azimuth;
  return {std::cos(a), std::sin(a)};
}

/// p = 1 - 1 / (1 + e^L). Scalar overload.
template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar logodds_to_prob(Scalar l) {
  return Scalar(1) - Scalar(1) / (Scalar(1) + std::exp(l));
}

/// Coefficient-wise overload; returns an expression.
template <typename Derived>
auto logodds_to_prob(const Eigen::ArrayBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  return Scalar(1) - (Scalar(1) + l.exp()).inverse();
}

template <typename Scalar>
Scalar prob_to_logodds(Scalar p) {
  return std::log(p / (Scalar(1) - p));
}

// ---------------------------------------------------------------------------
// Point clouds.

enum class BeamLabel : std::uint8_t { kGenuine, kClutter, kDropped };

struct BeamReturn {
  double azimuth = 0.0;          // sensor frame, radians
  std::optional<double> range;   // nullopt means no return
  BeamLabel label = BeamLabel::kGenuine;

  bool has_return() const { return range.has_value(); }
  bool operator==(const BeamReturn&) const = default;
};

struct PointCloud {
  std::int64_t frame_id = 0;
  double timestamp = 0.0;
  std::vector<BeamReturn> beams;

  bool operator==(const PointCloud&) const = default;
};

// A cloud after weather perturbation. Same layout, labels are meaningful.
using PerturbedCloud = PointCloud;

// ---------------------------------------------------------------------------
// Occupancy grid.

struct CellIndex {
  int col = 0;
  int row = 0;
  bool operator==(const CellIndex&) const = default;
};

/// Frame of a grid: size, resolution and the world position of the (0,0)
/// cell corner. Cells are half-open [k*res, (k+1)*res).
struct GridGeometry {
  int width = 1;
  int height = 1;
  double resolution = 0.1;
  Point2D origin = Point2D::Zero();

  bool operator==(const GridGeometry& o) const {
    return width == o.width && height == o.height &&
           resolution == o.resolution && origin == o.origin;
  }
  bool aligned_with(const GridGeometry& o) const { return *this == o; }

  bool contains(const CellIndex& c) const {
    return c.col >= 0 && c.col < width && c.row >= 0 && c.row < height;
  }

  /// nullopt when outside [0,width) x [0,height).
  std::optional<CellIndex> world_to_cell(const Point2D& p) const {
    const double fx = std::floor((p.x() - origin.x()) / resolution);
    const double fy = std::floor((p.y() - origin.y()) / resolution);
    if (!(fx >= 0 && fy >= 0 && fx < width && fy < height)) return std::nullopt;
    return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
  }

  Point2D cell_center(const CellIndex& c) const {
    return origin + Point2D((c.col + 0.5) * resolution, (c.row + 0.5) * resolution);
  }

  bool contains(const Point2D& p) const { return world_to_cell(p).has_value(); }

  void validate() const {
    if (width < 1 || height < 1) throw DataError("grid: width and height must be >= 1");
    if (!(resolution > 0) || !std::isfinite(resolution))
      throw DataError("grid: resolution must be > 0");
    if (!origin.allFinite()) throw DataError("grid: origin must be finite");
  }
};

/// Dense 2-D log-odds grid. Storage is row-major in the sense that
/// `cells(row, col)` addresses the cell at column `col`, row `row`.
template <typename Scalar>
class OccupancyGridT {
 public:
  using Cells = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  OccupancyGridT() : OccupancyGridT(GridGeometry{}) {}
  explicit OccupancyGridT(const GridGeometry& geometry, Scalar fill = 0)
      : geometry_(geometry) {
    geometry_.validate();
    cells_ = Cells::Constant(geometry_.height, geometry_.width, fill);
  }

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  double resolution() const { return geometry_.resolution; }
  const Point2D& origin() const { return geometry_.origin; }

  const Cells& cells() const { return cells_; }

  /// Replaces all cell values, clamping into [kLogOddsMin, kLogOddsMax].
  template <typename Derived>
  void assign(const Eigen::ArrayBase<Derived>& values) {
    if (values.rows() != height() || values.cols() != width())
      throw DataError("grid: assigned array has wrong shape");
    cells_ = values.template cast<Scalar>().cwiseMax(Scalar(kLogOddsMin)).cwiseMin(Scalar(kLogOddsMax));
  }

  Scalar at(const CellIndex& c) const {
    check(c);
    return cells_(c.row, c.col);
  }

  /// L' = clamp(L + delta, kLogOddsMin, kLogOddsMax).
  void update(const CellIndex& c, Scalar delta) {
    check(c);
    Scalar& l = cells_(c.row, c.col);
    l = std::clamp<Scalar>(l + delta, Scalar(kLogOddsMin), Scalar(kLogOddsMax));
  }

  std::optional<CellIndex> world_to_cell(const Point2D& p) const {
    return geometry_.world_to_cell(p);
  }

  bool occupied(const CellIndex& c) const { return cells_(c.row, c.col) > 0; }

  auto probabilities() const { return logodds_to_prob(cells_); }

  bool operator==(const OccupancyGridT& o) const {
    return geometry_ == o.geometry_ && (cells_ == o.cells_).all();
  }

 private:
  void check(const CellIndex& c) const {
    if (!geometry_.contains(c))
      throw DataError("grid: cell (" + std::to_string(c.col) + "," +
                      std::to_string(c.row) + ") out of bounds");
  }

  GridGeometry geometry_;
  Cells cells_;
};

using OccupancyGrid = OccupancyGridT<double>;

/// Free-function form of OccupancyGrid::update.
template <typename Scalar>
void update_cell(OccupancyGridT<Scalar>& grid, const CellIndex& cell, Scalar delta) {
  grid.update(cell, delta);
}

}  // namespace pgtbench

#endif  // PGTBENCH_CORE_TYPES_HPP_
