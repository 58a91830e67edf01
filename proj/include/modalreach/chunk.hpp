#ifndef MODALREACH_CHUNK_HPP_
#define MODALREACH_CHUNK_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalreach/trajectory.hpp"

namespace modalreach {

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) {
    r += 2.0 * std::numbers::pi;
  }
  return r;
}

/// Smallest angle between a direction and the line spanned by axis_angle;
/// always in [0, pi/2].
inline double line_angle_distance(double heading, double axis_angle) {
  const double d = std::abs(wrap_angle(heading - axis_angle));
  return std::min(d, std::numbers::pi - d);
}

/// Behavior mode identity; equality is decided by id.
struct ModeLabel {
  int id = 0;
  std::string name;

  friend bool operator==(const ModeLabel& a, const ModeLabel& b) {
    return a.id == b.id;
  }
};

inline ModeLabel crossing_mode() { return {1, "crossing"}; }
inline ModeLabel walking_along_mode() { return {2, "walking-along"}; }
inline ModeLabel other_mode() { return {3, "other"}; }

inline std::vector<ModeLabel> default_mode_set() {
  return {crossing_mode(), walking_along_mode(), other_mode()};
}

/**
 * @brief Fixed-length trajectory window with per-point headings and a label.
 *
 * Headings come from consecutive displacements; the final point repeats
 * the penultimate heading since it has no forward displacement.
 */
struct TrajectoryChunk {
  std::vector<Eigen::Vector2d> points;
  std::vector<Eigen::Vector2d> inputs;
  std::vector<double> headings;
  ModeLabel label;
};

inline std::vector<double> chunk_headings(
    const std::vector<Eigen::Vector2d>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("chunk_headings: need at least two points.");
  }
  std::vector<double> headings(points.size());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Eigen::Vector2d d = points[i + 1] - points[i];
    headings[i] = wrap_angle(std::atan2(d.y(), d.x()));
  }
  headings.back() = headings[points.size() - 2];
  return headings;
}

/// Axis-aligned crossing region plus the axis pedestrians cross along
/// (0 for x, 1 for y).
struct CrossingGeometry {
  Eigen::Vector2d lower{0.0, 0.0};
  Eigen::Vector2d upper{1.0, 1.0};
  int crossing_axis = 1;
};

/**
 * @brief Built-in labeling rule for crosswalk scenes.
 *
 * "crossing" when the chunk starts inside the region and its initial
 * heading is within pi/4 of the crossing axis (either direction, boundary
 * included); otherwise "walking-along" when within pi/4 of the
 * perpendicular axis; otherwise "other".
 */
inline ModeLabel default_crossing_oracle(const TrajectoryChunk& chunk,
                                         const CrossingGeometry& geometry) {
  if (geometry.crossing_axis != 0 && geometry.crossing_axis != 1) {
    throw std::invalid_argument(
        "default_crossing_oracle: crossing_axis must be 0 or 1.");
  }
  const Eigen::Vector2d& start = chunk.points.front();
  const double heading = chunk.headings.front();
  const double axis_angle =
      geometry.crossing_axis == 0 ? 0.0 : std::numbers::pi / 2.0;
  const bool inside = (start.array() >= geometry.lower.array()).all() &&
                      (start.array() <= geometry.upper.array()).all();
  const double quarter = std::numbers::pi / 4.0;
  if (inside && line_angle_distance(heading, axis_angle) <= quarter) {
    return crossing_mode();
  }
  if (line_angle_distance(heading, axis_angle + std::numbers::pi / 2.0) <=
      quarter) {
    return walking_along_mode();
  }
  return other_mode();
}

/**
 * @brief Split trajectories into non-overlapping labeled windows.
 *
 * Windows of chunk_size points are cut per trajectory in order; a trailing
 * remainder shorter than chunk_size is discarded. The oracle labels each
 * chunk from its geometry.
 */
template <class Oracle>
std::vector<TrajectoryChunk> chunk_trajectories(
    const std::vector<StateInputTrajectory>& trajectories,
    std::size_t chunk_size, Oracle&& oracle) {
  if (chunk_size < 2) {
    throw std::invalid_argument(
        "chunk_trajectories: chunk size must be at least 2.");
  }
  std::vector<TrajectoryChunk> chunks;
  for (const auto& traj : trajectories) {
    if (traj.inputs.size() + 1 != traj.states.size()) {
      throw std::invalid_argument(
          "chunk_trajectories: need one more state than inputs.");
    }
    for (std::size_t start = 0; start + chunk_size <= traj.states.size();
         start += chunk_size) {
      TrajectoryChunk chunk;
      chunk.points.reserve(chunk_size);
      chunk.inputs.reserve(chunk_size - 1);
      for (std::size_t i = 0; i < chunk_size; ++i) {
        const Eigen::VectorXd& x = traj.states[start + i];
        if (x.size() != 2) {
          throw std::invalid_argument(
              "chunk_trajectories: states must be planar positions.");
        }
        chunk.points.emplace_back(x(0), x(1));
      }
      for (std::size_t i = 0; i + 1 < chunk_size; ++i) {
        const Eigen::VectorXd& u = traj.inputs[start + i];
        if (u.size() != 2) {
          throw std::invalid_argument(
              "chunk_trajectories: inputs must be planar velocities.");
        }
        chunk.inputs.emplace_back(u(0), u(1));
      }
      chunk.headings = chunk_headings(chunk.points);
      chunk.label = oracle(chunk);
      chunks.push_back(std::move(chunk));
    }
  }
  return chunks;
}

}  // namespace modalreach

#endif  // MODALREACH_CHUNK_HPP_
